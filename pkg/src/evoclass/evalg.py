"""Evolution algebras given by a structure matrix over a domain.

Row ``i`` of ``omega`` holds the coordinates of ``e_i^2`` in the natural
basis.  Arithmetic is written for ``n x n`` but classification and the CLI
only use ``n = 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainMismatch, NotAUnit, NotQuasiperfect
from .ring import Domain, Elem, enumerate_units

Matrix = tuple[tuple[Elem, ...], ...]


def det(rows, domain: Domain | None = None) -> Elem:
    """Determinant of a square matrix, or of an algebra's structure matrix.

    Cofactor expansion, so no division is needed.
    """
    if isinstance(rows, EvolutionAlgebra):
        rows, domain = rows.omega, rows.domain
    n = len(rows)
    if n == 0:
        return domain.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


@dataclass(frozen=True)
class EvolutionAlgebra:
    domain: Domain
    omega: Matrix

    def __post_init__(self):
        n = len(self.omega)
        if n == 0 or any(len(row) != n for row in self.omega):
            raise ValueError("structure matrix must be square and nonempty")
        for row in self.omega:
            for x in row:
                if not isinstance(x, Elem) or x.domain != self.domain:
                    raise DomainMismatch(f"entry {x!r} is not in {self.domain.descriptor}")

    @classmethod
    def of(cls, domain: Domain, rows) -> EvolutionAlgebra:
        """Build from nested rows of ints, Fractions, strings or elements."""
        return cls(domain, tuple(tuple(domain(x) for x in row) for row in rows))

    @property
    def dim(self) -> int:
        return len(self.omega)

    def __getitem__(self, ij):
        i, j = ij
        return self.omega[i][j]

    def entries(self):
        return [x for row in self.omega for x in row]

    def __str__(self):
        rows = "; ".join(", ".join(str(x) for x in row) for row in self.omega)
        return f"[{rows}] over {self.domain.descriptor}"


@dataclass(frozen=True)
class BasisChange:
    """New basis ``f_i = units[i] * e_{perm[i]}`` (0-based ``perm``)."""

    perm: tuple[int, ...]
    units: tuple[Elem, ...]

    @classmethod
    def identity(cls, domain: Domain, n: int = 2) -> BasisChange:
        return cls(tuple(range(n)), (domain.one,) * n)

    def inverse(self) -> BasisChange:
        n = len(self.perm)
        inv_perm = [0] * n
        for i, j in enumerate(self.perm):
            inv_perm[j] = i
        return BasisChange(
            tuple(inv_perm), tuple(self.units[inv_perm[j]].inverse() for j in range(n))
        )

    def then(self, other: BasisChange) -> BasisChange:
        """Apply ``self`` first, then ``other`` to the resulting basis."""
        return BasisChange(
            tuple(self.perm[p] for p in other.perm),
            tuple(h * self.units[p] for h, p in zip(other.units, other.perm)),
        )


def all_basis_changes(domain: Domain, n: int = 2):
    """Every permutation x units change; requires finitely many units."""
    units = list(enumerate_units(domain))
    for perm in itertools.permutations(range(n)):
        for ks in itertools.product(units, repeat=n):
            yield BasisChange(perm, ks)


@dataclass(frozen=True)
class InvariantCounts:
    nonzero_total: int
    nonzero_diag: int
    unit_total: int
    unit_diag: int


def _same_domain(a: EvolutionAlgebra, xs):
    for x in xs:
        if x.domain != a.domain:
            raise DomainMismatch(f"{x!r} is not in {a.domain.descriptor}")


def is_perfect(a: EvolutionAlgebra) -> bool:
    return det(a).is_unit()


def is_quasiperfect(a: EvolutionAlgebra) -> bool:
    return not det(a).is_zero()


def require_quasiperfect(a: EvolutionAlgebra):
    if not is_quasiperfect(a):
        raise NotQuasiperfect(f"{a} has zero determinant")


def multiply(a: EvolutionAlgebra, u: Sequence[Elem], v: Sequence[Elem]) -> tuple[Elem, ...]:
    """Product of two vectors given by coordinates in the natural basis."""
    if len(u) != a.dim or len(v) != a.dim:
        raise ValueError("coordinate length does not match dimension")
    u = [a.domain(x) for x in u]
    v = [a.domain(x) for x in v]
    _same_domain(a, u + v)
    out = [a.domain.zero] * a.dim
    for i in range(a.dim):
        s = u[i] * v[i]
        if s.is_zero():
            continue
        for j in range(a.dim):
            out[j] = out[j] + s * a.omega[i][j]
    return tuple(out)


def apply_basis_change(a: EvolutionAlgebra, c: BasisChange) -> EvolutionAlgebra:
    """Structure constants ``k_i^2 / k_q * omega[perm[i]][perm[q]]`` in the new basis."""
    n = a.dim
    if len(c.perm) != n or len(c.units) != n:
        raise ValueError("basis change has the wrong size")
    _same_domain(a, c.units)
    for k in c.units:
        if not k.is_unit():
            raise NotAUnit(f"{k} is not a unit")
    inv = [k.inverse() for k in c.units]
    sq = [k * k for k in c.units]
    rows = tuple(
        tuple(sq[i] * inv[q] * a.omega[c.perm[i]][c.perm[q]] for q in range(n))
        for i in range(n)
    )
    return EvolutionAlgebra(a.domain, rows)


def invariant_counts(a: EvolutionAlgebra) -> InvariantCounts:
    require_quasiperfect(a)
    n = a.dim
    nz = [[not a.omega[i][j].is_zero() for j in range(n)] for i in range(n)]
    un = [[a.omega[i][j].is_unit() for j in range(n)] for i in range(n)]
    return InvariantCounts(
        nonzero_total=sum(map(sum, nz)),
        nonzero_diag=sum(nz[i][i] for i in range(n)),
        unit_total=sum(map(sum, un)),
        unit_diag=sum(un[i][i] for i in range(n)),
    )


def is_natural_basis(a: EvolutionAlgebra, rows: Sequence[Sequence[Elem]]) -> bool:
    """Whether the vectors given by ``rows`` form a natural basis of ``a``.

    They must multiply pairwise to zero and the change of basis matrix must
    have unit determinant.
    """
    require_quasiperfect(a)
    rows = [tuple(a.domain(x) for x in r) for r in rows]
    if len(rows) != a.dim:
        raise ValueError("need one coordinate row per basis vector")
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            if any(not x.is_zero() for x in multiply(a, rows[i], rows[j])):
                return False
    return det(rows, a.domain).is_unit()
