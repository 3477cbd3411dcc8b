"""Normal forms and isomorphism of perfect two-dimensional evolution algebras.

Matrices are written ``[[a, b], [c, d]]`` meaning ``e1^2 = a e1 + b e2`` and
``e2^2 = c e1 + d e2``.  The families and their normal forms:

========  ==========================  =====================================
family    normal form                 parameter conditions
========  ==========================  =====================================
A1        [[1, 0], [0, 1]]
A2        [[0, 1], [α, 0]]            α unit
A3        [[1, 0], [λ, 1]]            λ nonzero
A4a       [[0, λ], [1, 1]]            λ unit
A4b       [[0, 1], [λ, μ]]            λ unit, μ nonzero nonunit
B5I_i     [[1, λ], [μ, 1]]            λ, μ nonzero, 1 - λμ unit
B5I_ii    [[1, 1], [λ, μ]]            λ unit, μ nonunit, λ - μ unit
B5I_iii   [[1, 1], [λ, μ]]            λ, μ nonunit, λ - μ unit
B5I_iv    [[1, ξ], [ν, ρ]]            ν unit, ξ, ρ nonunit, ρ - ξν unit
B5I_v     [[1, ξ], [ν, ρ]]            ξ, ν, ρ nonunit, ρ - ξν unit
B5II_a    [[μ, 1], [λ, ω]]            μ, λ, ω nonunit, μω - λ unit
B5II_b    [[ξ, 1], [1, ρ]]            ξ, ρ nonunit, ξρ - 1 unit
B5II_c    [[μ, 1], [λ, ω]]            λ unit, not a cube; μ, ω nonunit
B5III     [[α, β], [γ, δ]]            all nonunit, αδ - βγ unit
========  ==========================  =====================================

"nonunit" always means nonzero and not invertible.

B5I_iv is kept with ν unscaled: making ν = 1 needs a square root of ν⁻¹,
which the domain may not have.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .errors import DomainMismatch, NotDivisible, NotPerfect, Unsupported
from .evalg import BasisChange, EvolutionAlgebra, apply_basis_change, is_perfect
from .ring import Capability, Domain, Elem, enumerate_units, exact_div, solve_unit_power

FAMILIES = {
    "A1": ((), "Singleton"),
    "A2": (("α",), "Lim2Mod3"),
    "A3": (("λ",), "Monoid"),
    "A4a": (("λ",), "UnitGroup"),
    "A4b": (("λ", "μ"), "MbarMonoid"),
    "B5I_i": (("λ", "μ"), "Z2Quotient"),
    "B5I_ii": (("λ", "μ"), "PairEquality"),
    "B5I_iii": (("λ", "μ"), "PairEquality"),
    "B5I_iv": (("ξ", "ν", "ρ"), "Curve∂"),
    "B5I_v": (("ξ", "ν", "ρ"), "Curve∂"),
    "B5II_a": (("μ", "λ", "ω"), "Curveσ"),
    "B5II_b": (("ξ", "ρ"), "Curveh"),
    "B5II_c": (("μ", "λ", "ω"), "Curveσ′"),
    "B5III": (("α", "β", "γ", "δ"), "Surfaceω"),
}

# families whose normal form has only finitely many isomorphic variants on
# every domain, so a canonical pick is always possible
_FINITE_RESIDUAL = {"A1", "A3", "A4a", "B5I_i", "B5I_ii", "B5I_iii", "B5II_b"}

FIELD_FAMILIES = frozenset({"A1", "A2", "A3", "A4a", "B5I_i"})


@dataclass(frozen=True)
class CanonicalClass:
    domain: Domain
    family: str
    params: tuple[Elem, ...]
    note: str | None = field(default=None, compare=False)

    def __post_init__(self):
        names, _ = FAMILIES[self.family]
        if len(names) != len(self.params):
            raise ValueError(f"{self.family} takes {len(names)} parameters")

    @property
    def moduli_tag(self) -> str:
        return FAMILIES[self.family][1]

    @property
    def param_names(self) -> tuple[str, ...]:
        return FAMILIES[self.family][0]

    def named_params(self) -> dict[str, Elem]:
        return dict(zip(self.param_names, self.params))

    def matrix(self) -> tuple[tuple[Elem, Elem], tuple[Elem, Elem]]:
        o, z = self.domain.one, self.domain.zero
        p = self.params
        f = self.family
        if f == "A1":
            rows = ((o, z), (z, o))
        elif f == "A2":
            rows = ((z, o), (p[0], z))
        elif f == "A3":
            rows = ((o, z), (p[0], o))
        elif f == "A4a":
            rows = ((z, p[0]), (o, o))
        elif f == "A4b":
            rows = ((z, o), (p[0], p[1]))
        elif f == "B5I_i":
            rows = ((o, p[0]), (p[1], o))
        elif f in ("B5I_ii", "B5I_iii"):
            rows = ((o, o), (p[0], p[1]))
        elif f in ("B5I_iv", "B5I_v"):
            rows = ((o, p[0]), (p[1], p[2]))
        elif f in ("B5II_a", "B5II_c"):
            rows = ((p[0], o), (p[1], p[2]))
        elif f == "B5II_b":
            rows = ((p[0], o), (o, p[1]))
        else:
            rows = ((p[0], p[1]), (p[2], p[3]))
        return rows

    def algebra(self) -> EvolutionAlgebra:
        return EvolutionAlgebra(self.domain, self.matrix())

    def satisfies_constraints(self) -> bool:
        """Whether the parameters meet the conditions of the family."""
        p = self.params
        f = self.family

        def nn(x):
            return not x.is_zero() and not x.is_unit()

        def nz(x):
            return not x.is_zero()

        if f == "A1":
            return True
        if f in ("A2", "A4a"):
            return p[0].is_unit()
        if f == "A3":
            return nz(p[0])
        if f == "A4b":
            return p[0].is_unit() and nn(p[1])
        if f == "B5I_i":
            return nz(p[0]) and nz(p[1]) and (1 - p[0] * p[1]).is_unit()
        if f == "B5I_ii":
            return p[0].is_unit() and nn(p[1]) and (p[0] - p[1]).is_unit()
        if f == "B5I_iii":
            return nn(p[0]) and nn(p[1]) and (p[0] - p[1]).is_unit()
        if f == "B5I_iv":
            xi, nu, rho = p
            return nu.is_unit() and nn(xi) and nn(rho) and (rho - xi * nu).is_unit()
        if f == "B5I_v":
            xi, nu, rho = p
            return all(map(nn, p)) and (rho - xi * nu).is_unit()
        if f == "B5II_a":
            mu, lam, om = p
            return all(map(nn, p)) and (mu * om - lam).is_unit()
        if f == "B5II_b":
            xi, rho = p
            return nn(xi) and nn(rho) and (xi * rho - 1).is_unit()
        if f == "B5II_c":
            mu, lam, om = p
            if not (nn(mu) and nn(om) and lam.is_unit() and (mu * om - lam).is_unit()):
                return False
            try:
                return not solve_unit_power(lam, 3)
            except Unsupported:
                return True
        return all(map(nn, p)) and (p[0] * p[3] - p[1] * p[2]).is_unit()

    def __str__(self):
        if not self.params:
            return self.family
        inner = ", ".join(f"{k}={v}" for k, v in self.named_params().items())
        return f"{self.family}{{{inner}}}"


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class IsoAnswer:
    verdict: Verdict
    witness: BasisChange | Elem | None = None
    reason: str | None = None

    def __bool__(self):
        return self.verdict is Verdict.YES


@dataclass(frozen=True)
class Dim1Class:
    """One-dimensional algebra ``D_d`` with ``1*1 = d``; ``d == 0`` is trivial."""

    d: Elem

    @property
    def family(self) -> str:
        return "Trivial" if self.d.is_zero() else "Dd"


# ---------------------------------------------------------------------------
# normal forms


def _swap(p, q, r, s):
    return s, r, q, p


def _normal_form(a: EvolutionAlgebra) -> tuple[str, tuple[Elem, ...], str | None]:
    (p, q), (r, s) = a.omega
    if q.is_zero() and r.is_zero():
        return "A1", (), None
    if p.is_zero() and s.is_zero():
        return "A2", (q * q * r,), None
    if q.is_zero() or r.is_zero():
        if r.is_zero():
            p, q, r, s = _swap(p, q, r, s)
        return "A3", (p * r * s.inverse() ** 2,), None
    if p.is_zero() or s.is_zero():
        if s.is_zero():
            p, q, r, s = _swap(p, q, r, s)
        if s.is_unit():
            return "A4a", (q * r * r * s.inverse() ** 3,), None
        return "A4b", (q * q * r, s * q), None

    if p.is_unit() and s.is_unit():
        return "B5I_i", (s * q * p.inverse() ** 2, p * r * s.inverse() ** 2), None
    if p.is_unit() or s.is_unit():
        if not p.is_unit():
            p, q, r, s = _swap(p, q, r, s)
        xi, nu, rho = q * p.inverse() ** 2, p * r, s
        if xi.is_unit():
            family = "B5I_ii" if nu.is_unit() else "B5I_iii"
            return family, (xi * xi * nu, xi * rho), None
        return ("B5I_iv" if nu.is_unit() else "B5I_v"), (xi, nu, rho), None

    if q.is_unit() or r.is_unit():
        if not q.is_unit():
            p, q, r, s = _swap(p, q, r, s)
        mu, lam, om = p, q * q * r, q * s
        if not lam.is_unit():
            return "B5II_a", (mu, lam, om), None
        try:
            roots = solve_unit_power(lam, 3)
        except Unsupported:
            return "B5II_c", (mu, lam, om), "cube root extraction unsupported; ξ,ρ form not attempted"
        if not roots:
            return "B5II_c", (mu, lam, om), None
        k = min(roots, key=Elem.sort_key).inverse()
        return "B5II_b", (k * mu, k * k * om), None
    return "B5III", (p, q, r, s), None


def _cube_roots_of_one(domain: Domain) -> list[Elem]:
    try:
        return sorted(solve_unit_power(domain.one, 3), key=Elem.sort_key)
    except Unsupported:
        return [domain.one]


def residual_images(family: str, params: tuple[Elem, ...], units: list[Elem]):
    """Parameter tuples isomorphic to ``params`` within ``family``.

    ``units`` is the set of scalings to try; with the full unit group this is
    the complete list of isomorphic normal forms.
    """
    if family in ("A1", "A3", "A4a", "B5I_ii", "B5I_iii"):
        return [params]
    if family == "A2":
        (al,) = params
        return [(k**3 * al,) for k in units] + [(k**3 * al * al,) for k in units]
    if family == "A4b":
        lam, mu = params
        return [(k**3 * lam, k * k * mu) for k in units]
    if family == "B5I_i":
        lam, mu = params
        return [(lam, mu), (mu, lam)]
    if family in ("B5I_iv", "B5I_v"):
        xi, nu, rho = params
        return [(xi * k.inverse(), k * k * nu, k * rho) for k in units]
    if family == "B5II_a":
        mu, lam, om = params
        return [(k * mu, k**3 * lam, k * k * om) for k in units]
    if family == "B5II_b":
        xi, rho = params
        out = []
        for k in _cube_roots_of_one(xi.domain):
            out += [(k * xi, k.inverse() * rho), (k * rho, k.inverse() * xi)]
        return out
    if family == "B5II_c":
        mu, lam, om = params
        out = [(k * mu, k**3 * lam, k * k * om) for k in units]
        # the vertex swap also preserves this shape
        out += [(k * om, k**3 * lam * lam, k * k * lam * mu) for k in units]
        return out
    al, be, ga, de = params
    out = []
    for k1, k2 in itertools.product(units, repeat=2):
        a, b = k1 * k1 * k2.inverse(), k2 * k2 * k1.inverse()
        out.append((k1 * al, a * be, b * ga, k2 * de))
        out.append((k1 * de, a * ga, b * be, k2 * al))
    return out


def is_complete_invariant(cls: CanonicalClass) -> bool:
    """True when equal classes are exactly the isomorphic ones for this family/domain."""
    return cls.family in _FINITE_RESIDUAL or cls.domain.has(Capability.FINITE_UNITS)


def _canonicalize(domain: Domain, family: str, params, note) -> CanonicalClass:
    if domain.has(Capability.FINITE_UNITS):
        units = list(enumerate_units(domain))
    elif family in _FINITE_RESIDUAL:
        units = [domain.one]
    else:
        return CanonicalClass(domain, family, params, note)
    best = min(
        residual_images(family, params, units),
        key=lambda t: tuple(x.sort_key() for x in t),
    )
    return CanonicalClass(domain, family, tuple(best), note)


def classify(a: EvolutionAlgebra) -> CanonicalClass:
    """Family and normalized parameters of a perfect 2-dimensional algebra.

    Over domains with finitely many units the parameters are the minimal
    representative of the isomorphism class (sign pattern first over Z, so
    the first parameter is positive when possible).  Elsewhere families with
    an infinite unit action report the parameters as normalized.
    """
    if a.dim != 2:
        raise ValueError("classification is for dimension 2")
    if not is_perfect(a):
        raise NotPerfect(f"{a} is not perfect")
    family, params, note = _normal_form(a)
    return _canonicalize(a.domain, family, params, note)


# ---------------------------------------------------------------------------
# isomorphism


def _unit_quotient(num: Elem, den: Elem) -> Elem | None:
    try:
        q = exact_div(num, den)
    except NotDivisible:
        return None
    return q if q.is_unit() else None


def _candidate_units(w, t) -> list[tuple[Elem, Elem]]:
    """Pairs ``(k1, k2)`` that could send ``w`` to ``t`` under the identity
    permutation, using ``t_iq = k_i^2 / k_q * w_iq``.  Candidates still need
    to be checked against all four equations."""
    for i in range(2):
        for j in range(2):
            if w[i][j].is_zero() != t[i][j].is_zero():
                return []
    k1 = k2 = None
    if not w[0][0].is_zero():
        k1 = _unit_quotient(t[0][0], w[0][0])
        if k1 is None:
            return []
    if not w[1][1].is_zero():
        k2 = _unit_quotient(t[1][1], w[1][1])
        if k2 is None:
            return []
    if k1 is not None and k2 is None:
        k2 = _unit_quotient(k1 * k1 * w[0][1], t[0][1])
        return [] if k2 is None else [(k1, k2)]
    if k2 is not None and k1 is None:
        k1 = _unit_quotient(k2 * k2 * w[1][0], t[1][0])
        return [] if k1 is None else [(k1, k2)]
    if k1 is not None:
        return [(k1, k2)]
    # antidiagonal: k1^2/k2 = p and k2^2/k1 = q give k1^3 = q p^2
    p = _unit_quotient(t[0][1], w[0][1])
    q = _unit_quotient(t[1][0], w[1][0])
    if p is None or q is None:
        return []
    roots = solve_unit_power(q * p * p, 3)
    return [(k, k * k * p.inverse()) for k in sorted(roots, key=Elem.sort_key)]


def iso(a: EvolutionAlgebra, b: EvolutionAlgebra) -> IsoAnswer:
    """Decide whether two perfect 2-dimensional algebras are isomorphic.

    Every isomorphism maps natural basis to natural basis up to a permutation
    and unit scalings, so it suffices to solve for ``(perm, k1, k2)``.
    """
    if a.domain != b.domain:
        raise DomainMismatch(f"{a.domain.descriptor} vs {b.domain.descriptor}")
    if a.dim != 2 or b.dim != 2:
        raise ValueError("isomorphism test is for dimension 2")
    for x in (a, b):
        if not is_perfect(x):
            raise NotPerfect(f"{x} is not perfect")
    domain = a.domain
    unresolved = []
    for perm in ((0, 1), (1, 0)):
        w = [[a.omega[perm[i]][perm[j]] for j in range(2)] for i in range(2)]
        try:
            candidates = [BasisChange(perm, ks) for ks in _candidate_units(w, b.omega)]
        except Unsupported as exc:
            if not domain.has(Capability.FINITE_UNITS):
                unresolved.append(str(exc))
                continue
            units = list(enumerate_units(domain))
            candidates = [BasisChange(perm, ks) for ks in itertools.product(units, repeat=2)]
        for c in candidates:
            if apply_basis_change(a, c) == b:
                return IsoAnswer(Verdict.YES, witness=c)
    if unresolved:
        return IsoAnswer(Verdict.UNKNOWN, reason="; ".join(unresolved))
    return IsoAnswer(Verdict.NO)


def brute_force_iso(a: EvolutionAlgebra, b: EvolutionAlgebra) -> BasisChange | None:
    """Search every permutation x unit pair; needs a finite unit group."""
    units = list(enumerate_units(a.domain))
    for perm in ((0, 1), (1, 0)):
        for ks in itertools.product(units, repeat=2):
            c = BasisChange(perm, ks)
            if apply_basis_change(a, c) == b:
                return c
    return None


# ---------------------------------------------------------------------------
# dimension one


def classify_dim1(d: Elem) -> Dim1Class:
    return Dim1Class(d)


def iso_dim1(d: Elem, e: Elem) -> IsoAnswer:
    """``D_d`` and ``D_e`` are isomorphic iff ``d = x e`` for a unit ``x``."""
    if d.domain != e.domain:
        raise DomainMismatch(f"{d.domain.descriptor} vs {e.domain.descriptor}")
    if d.is_zero() or e.is_zero():
        if d.is_zero() and e.is_zero():
            return IsoAnswer(Verdict.YES, witness=d.domain.one)
        return IsoAnswer(Verdict.NO)
    x = _unit_quotient(d, e)
    if x is None or _unit_quotient(e, d) is None:
        return IsoAnswer(Verdict.NO)
    return IsoAnswer(Verdict.YES, witness=x)
