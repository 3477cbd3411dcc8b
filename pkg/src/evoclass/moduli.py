"""Parameter spaces, unit actions and the curves their orbits lie on.

Each family with a nontrivial unit action has a parameter space and a
defining set of polynomial identities; an orbit always lies on the curve
(or surface) through its seed.  The converse is not assumed.
"""

from __future__ import annotations

import enum
import itertools

from .classify import CanonicalClass, Verdict, residual_images
from .errors import ArityMismatch, NotAUnit, Unsupported
from .ring import Capability, Elem, enumerate_units, solve_unit_power


class ParamSpace(enum.Enum):
    X0 = ("X0", 2)
    OMEGA2 = ("Omega2", 2)
    OMEGA3 = ("Omega3", 3)
    SIGMA3 = ("Sigma3", 3)
    SET_S = ("SetS", 3)
    OMEGA4 = ("Omega4", 4)

    @property
    def arity(self) -> int:
        return self.value[1]


class Curve(enum.Enum):
    C = ("c", 2)
    PARTIAL = ("∂", 3)
    SIGMA = ("σ", 3)
    H = ("h", 2)
    OMEGA = ("ω", 4)

    @property
    def arity(self) -> int:
        return self.value[1]


# family -> (space, curve); A4b lies on the cuspidal curve c
FAMILY_SPACE = {
    "A4b": ParamSpace.X0,
    "B5I_v": ParamSpace.OMEGA3,
    "B5II_a": ParamSpace.SIGMA3,
    "B5II_b": ParamSpace.OMEGA2,
    "B5II_c": ParamSpace.SET_S,
    "B5III": ParamSpace.OMEGA4,
}

FAMILY_CURVE = {
    "A4b": Curve.C,
    "B5I_iv": Curve.PARTIAL,
    "B5I_v": Curve.PARTIAL,
    "B5II_a": Curve.SIGMA,
    "B5II_c": Curve.SIGMA,
    "B5II_b": Curve.H,
    "B5III": Curve.OMEGA,
}


def _nonunit(x: Elem) -> bool:
    return not x.is_zero() and not x.is_unit()


def is_cube(u: Elem) -> bool:
    return bool(solve_unit_power(u, 3))


def in_space(space: ParamSpace, point) -> bool:
    if len(point) != space.arity:
        raise ArityMismatch(f"{space.value[0]} has arity {space.arity}")
    if space is ParamSpace.X0:
        lam, mu = point
        return lam.is_unit() and _nonunit(mu)
    if space is ParamSpace.OMEGA2:
        xi, rho = point
        return _nonunit(xi) and _nonunit(rho) and (xi * rho - 1).is_unit()
    if space is ParamSpace.OMEGA3:
        xi, nu, rho = point
        return all(map(_nonunit, point)) and (rho - xi * nu).is_unit()
    if space is ParamSpace.SIGMA3:
        mu, lam, om = point
        return all(map(_nonunit, point)) and (mu * om - lam).is_unit()
    if space is ParamSpace.SET_S:
        mu, lam, om = point
        if not (_nonunit(mu) and _nonunit(om) and lam.is_unit()):
            return False
        return (mu * om - lam).is_unit() and not is_cube(lam)
    al, be, ga, de = point
    return all(map(_nonunit, point)) and (al * de - ga * be).is_unit()


def curve_member(curve: Curve, base, point) -> bool:
    """Whether ``point`` satisfies the defining identities of the curve through ``base``."""
    if len(base) != curve.arity or len(point) != curve.arity:
        raise ArityMismatch(f"curve {curve.value[0]} needs {curve.arity} coordinates")
    if curve is Curve.C:
        lam, mu = base
        x, y = point
        return mu**3 * x * x == lam * lam * y**3
    if curve is Curve.PARTIAL:
        xi, nu, rho = base
        x, y, z = point
        return x * z == xi * rho and rho * rho * y == nu * z * z
    if curve is Curve.SIGMA:
        mu, lam, om = base
        x, y, z = point
        return mu**3 * y == x**3 * lam and mu * mu * z == x * x * om
    if curve is Curve.H:
        xi, rho = base
        x, y = point
        return x * y == xi * rho
    al, be, ga, de = base
    x, y, z, t = point
    return y * t * al * al == be * de * x * x and z * x * de * de == al * ga * t * t


def _verdict(fn):
    try:
        return Verdict.YES if fn() else Verdict.NO
    except Unsupported:
        return Verdict.UNKNOWN


def _require_units(*xs):
    for x in xs:
        if not x.is_unit():
            raise NotAUnit(f"{x} is not a unit")


def lim2mod3_equal(lam: Elem, mu: Elem) -> Verdict:
    """Same image in the direct limit of D^x / (D^x)^3 under squaring:
    ``mu = lam r^3`` or ``mu = lam^2 r^3`` for a unit ``r``."""
    _require_units(lam, mu)
    li = lam.inverse()
    return _verdict(lambda: is_cube(mu * li) or is_cube(mu * li * li))


def cube_class_test(alpha: Elem, beta: Elem) -> Verdict:
    """``A_{2,alpha}`` vs ``A_{2,beta}``: is ``beta/alpha`` or ``beta/alpha^2`` a cube?"""
    _require_units(alpha, beta)
    ai = alpha.inverse()
    return _verdict(lambda: is_cube(beta * ai) or is_cube(beta * ai * ai))


def _action(family, params, units):
    """Orbit of ``params`` under the unit action that defines the family's moduli."""
    if family == "B5I_i":
        lam, mu = params
        return [(lam, mu), (mu, lam)]
    if family == "B5II_b":
        xi, rho = params
        roots = solve_unit_power(xi.domain.one, 3)
        return [(k * xi, k.inverse() * rho) for k in roots]
    if family == "B5II_c":
        mu, lam, om = params
        return [(k * mu, k**3 * lam, k * k * om) for k in units]
    if family == "B5III":
        al, be, ga, de = params
        return [
            (k1 * al, k1 * k1 * k2.inverse() * be, k2 * k2 * k1.inverse() * ga, k2 * de)
            for k1, k2 in itertools.product(units, repeat=2)
        ]
    return residual_images(family, params, units)


def orbit(cls: CanonicalClass) -> frozenset[CanonicalClass]:
    """All parameter tuples reachable from ``cls`` under its family's action.

    Needs a finite unit group.  The vertex swap is not part of the action
    except for B5I_i, whose moduli is the swap quotient itself.
    """
    domain = cls.domain
    if not domain.has(Capability.FINITE_UNITS):
        raise Unsupported(f"{domain.descriptor} has infinitely many units")
    units = list(enumerate_units(domain))
    return frozenset(
        CanonicalClass(domain, cls.family, tuple(p)) for p in _action(cls.family, cls.params, units)
    )
