"""Integral domains with exact arithmetic.

A :class:`Domain` does arithmetic on raw payloads (``int``, ``Fraction``,
coefficient tuples); :class:`Elem` pairs a payload with its domain and gives
the usual operators.  Five concrete domains are provided:

* :class:`Integers` -- payload ``int``
* :class:`Rationals` -- payload ``Fraction``
* :class:`PrimeField` -- payload ``int`` in ``range(p)``
* :class:`Poly` -- polynomials over ``Rationals`` or a ``PrimeField``;
  payload is a tuple of base payloads, ascending by degree, no trailing zeros
* :class:`LaurentInt` -- ``Z[x, 1/x]``; payload ``(offset, coeffs)`` with
  nonzero first and last coefficient, zero is ``(0, ())``
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator

import gmpy2

from .errors import (
    DivisionByZero,
    DomainMismatch,
    NotAUnit,
    NotDivisible,
    ParseError,
    Unsupported,
)


class Capability(enum.Enum):
    FINITE_UNITS = "FiniteUnits"
    UNIT_POWER_SOLVER = "UnitPowerSolver"
    UNIT_ROOT_EXTRACTION = "UnitRootExtraction"


_SOLVERS = frozenset({Capability.UNIT_POWER_SOLVER, Capability.UNIT_ROOT_EXTRACTION})
_FINITE = _SOLVERS | {Capability.FINITE_UNITS}

MAX_FIELD_PRIME = 10**6


def integer_root(n: int, k: int) -> int | None:
    """Exact ``k``-th root of a nonnegative integer, or None."""
    root, exact = gmpy2.iroot(n, k)
    return int(root) if exact else None


class Domain:
    """Base class.  Subclasses are frozen dataclasses and work on payloads."""

    is_field = False
    var: str | None = None
    capabilities: frozenset

    # -- construction -------------------------------------------------------

    def __call__(self, x) -> Elem:
        if isinstance(x, Elem):
            if x.domain != self:
                raise DomainMismatch(f"{x!r} is not in {self.descriptor}")
            return x
        if isinstance(x, str):
            from .parsing import parse_elem

            return parse_elem(self, x)
        if isinstance(x, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(x, int):
            return Elem(self, self.from_int(x))
        if isinstance(x, Fraction):
            return Elem(self, self.from_fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self.descriptor}")

    @property
    def zero(self) -> Elem:
        return Elem(self, self.from_int(0))

    @property
    def one(self) -> Elem:
        return Elem(self, self.from_int(1))

    def from_fraction(self, q: Fraction):
        if q.denominator == 1:
            return self.from_int(q.numerator)
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def without(self, *caps: Capability) -> Domain:
        """Copy of this domain with some capabilities withdrawn (testing aid)."""
        return replace(self, capabilities=self.capabilities - set(caps))

    def has(self, cap: Capability) -> bool:
        return cap in self.capabilities

    # -- generic helpers built on the payload primitives --------------------

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def pow(self, x, n: int):
        if n < 0:
            return self.pow(self.inv(x), -n)
        result = self.from_int(1)
        base = x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def units(self) -> Iterator:
        raise Unsupported(f"{self.descriptor} has no finite enumeration of units")

    def sort_key(self, x):
        return x

    def __str__(self):
        return self.descriptor


@dataclass(frozen=True)
class Integers(Domain):
    capabilities: frozenset = field(default=_FINITE, compare=False, repr=False)

    descriptor = "Z"

    def from_int(self, n):
        return int(n)

    def from_fraction(self, q):
        if q.denominator != 1:
            raise NotDivisible(f"{q} is not an integer")
        return q.numerator

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x == 1 or x == -1

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{x} is not a unit of Z")
        return x

    def div(self, x, y):
        if y == 0:
            raise DivisionByZero("division by zero")
        q, r = divmod(x, y)
        if r:
            raise NotDivisible(f"{y} does not divide {x}")
        return q

    def unit_roots(self, q, n):
        if q == 1:
            return [1, -1] if n % 2 == 0 else [1]
        if q == -1 and n % 2 == 1:
            return [-1]
        return []

    def units(self):
        return iter((1, -1))

    def sort_key(self, x):
        return (x < 0, abs(x))

    def fmt(self, x):
        return str(x)


@dataclass(frozen=True)
class Rationals(Domain):
    capabilities: frozenset = field(default=_SOLVERS, compare=False, repr=False)

    descriptor = "Q"
    is_field = True

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NotAUnit("0 is not a unit of Q")
        return 1 / x

    def div(self, x, y):
        if y == 0:
            raise DivisionByZero("division by zero")
        return x / y

    def unit_roots(self, q, n):
        if q == 0 or (q < 0 and n % 2 == 0):
            return []
        num = integer_root(abs(q.numerator), n)
        den = integer_root(q.denominator, n)
        if num is None or den is None:
            return []
        r = Fraction(num, den)
        if q < 0:
            return [-r]
        return [r, -r] if n % 2 == 0 else [r]

    def sort_key(self, x):
        return (x < 0, abs(x))

    def fmt(self, x):
        return str(x)


@dataclass(frozen=True)
class PrimeField(Domain):
    p: int = 2
    capabilities: frozenset = field(default=_FINITE, compare=False, repr=False)

    is_field = True

    def __post_init__(self):
        if self.p < 2 or not gmpy2.is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def descriptor(self):
        return f"Fp:{self.p}"

    def from_int(self, n):
        return n % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NotAUnit(f"0 is not a unit of F_{self.p}")
        return pow(x, -1, self.p)

    def div(self, x, y):
        if y == 0:
            raise DivisionByZero("division by zero")
        return x * pow(y, -1, self.p) % self.p

    def unit_roots(self, q, n):
        # exhaustive scan; p is bounded by MAX_FIELD_PRIME at the CLI
        if q == 0:
            return []
        return [k for k in range(1, self.p) if pow(k, n, self.p) == q]

    def units(self):
        return iter(range(1, self.p))

    def fmt(self, x):
        return str(x)


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient tuples, ascending degree)


def _trim(base, coeffs):
    coeffs = list(coeffs)
    while coeffs and base.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def _poly_add(base, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = base.add(out[i], c)
    return _trim(base, out)


def _poly_mul(base, a, b):
    if not a or not b:
        return ()
    zero = base.from_int(0)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if base.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = base.add(out[i + j], base.mul(x, y))
    return _trim(base, out)


def _poly_divmod(base, a, b):
    """Long division; every leading-coefficient quotient must be exact in ``base``."""
    if not b:
        raise DivisionByZero("division by zero polynomial")
    rem = list(a)
    zero = base.from_int(0)
    quot = [zero] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = base.div(rem[-1], lead)
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] = base.sub(rem[shift + i], base.mul(c, y))
        rem = list(_trim(base, rem))
    return _trim(base, quot), tuple(rem)


@dataclass(frozen=True)
class Poly(Domain):
    """Polynomial ring in one variable over ``Rationals`` or a ``PrimeField``."""

    base: Domain = field(default_factory=Rationals)
    var: str = "x"
    capabilities: frozenset = field(default=_SOLVERS, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.base, (Rationals, PrimeField)):
            raise ValueError("polynomial coefficients must come from Q or F_p")

    @property
    def descriptor(self):
        if isinstance(self.base, Rationals):
            return f"PolyQ:{self.var}"
        return f"PolyFp:{self.base.p}:{self.var}"

    def from_int(self, n):
        return _trim(self.base, (self.base.from_int(n),))

    def from_fraction(self, q):
        return _trim(self.base, (self.base.from_fraction(q),))

    def add(self, x, y):
        return _poly_add(self.base, x, y)

    def neg(self, x):
        return tuple(self.base.neg(c) for c in x)

    def mul(self, x, y):
        return _poly_mul(self.base, x, y)

    def is_zero(self, x):
        return not x

    def is_unit(self, x):
        return len(x) == 1

    def inv(self, x):
        if len(x) != 1:
            raise NotAUnit(f"{self.fmt(x)} is not a unit")
        return (self.base.inv(x[0]),)

    def div(self, x, y):
        if not y:
            raise DivisionByZero("division by zero")
        q, r = _poly_divmod(self.base, x, y)
        if r:
            raise NotDivisible(f"{self.fmt(y)} does not divide {self.fmt(x)}")
        return q

    def unit_roots(self, q, n):
        if len(q) != 1:
            return []
        return [(r,) for r in self.base.unit_roots(q[0], n)]

    def sort_key(self, x):
        return (len(x), tuple(self.base.sort_key(c) for c in reversed(x)))

    def terms(self, x):
        return [(i, c) for i, c in enumerate(x) if not self.base.is_zero(c)]

    def fmt(self, x):
        return _format_terms(self.base, self.terms(x), self.var)


@dataclass(frozen=True)
class LaurentInt(Domain):
    """Laurent polynomials ``Z[x, 1/x]``; units are exactly ``±x^n``."""

    var: str = "x"
    capabilities: frozenset = field(default=_SOLVERS, compare=False, repr=False)

    base = Integers()

    @property
    def descriptor(self):
        return f"LaurentZ:{self.var}"

    @staticmethod
    def normalize(offset, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        if start == len(coeffs):
            return (0, ())
        return (offset + start, tuple(coeffs[start:]))

    def from_int(self, n):
        return self.normalize(0, (int(n),))

    def from_fraction(self, q):
        if q.denominator != 1:
            raise NotDivisible(f"{q} is not in Z[{self.var}, 1/{self.var}]")
        return self.from_int(q.numerator)

    def monomial(self, coeff: int, exp: int) -> Elem:
        return Elem(self, self.normalize(exp, (coeff,)))

    def add(self, x, y):
        if not x[1]:
            return y
        if not y[1]:
            return x
        lo = min(x[0], y[0])
        hi = max(x[0] + len(x[1]), y[0] + len(y[1]))
        out = [0] * (hi - lo)
        for off, cs in (x, y):
            for i, c in enumerate(cs):
                out[off - lo + i] += c
        return self.normalize(lo, out)

    def neg(self, x):
        return (x[0], tuple(-c for c in x[1]))

    def mul(self, x, y):
        if not x[1] or not y[1]:
            return (0, ())
        prod = _poly_mul(self.base, x[1], y[1])
        return self.normalize(x[0] + y[0], prod)

    def is_zero(self, x):
        return not x[1]

    def is_unit(self, x):
        return len(x[1]) == 1 and x[1][0] in (1, -1)

    def inv(self, x):
        if not self.is_unit(x):
            raise NotAUnit(f"{self.fmt(x)} is not a unit")
        return (-x[0], x[1])

    def div(self, x, y):
        if not y[1]:
            raise DivisionByZero("division by zero")
        if not x[1]:
            return x
        # both coefficient sequences have nonzero constant term, so divisibility
        # in the Laurent ring is divisibility in Z[x]
        try:
            q, r = _poly_divmod(self.base, x[1], y[1])
        except NotDivisible:
            r = True
        if r:
            raise NotDivisible(f"{self.fmt(y)} does not divide {self.fmt(x)}")
        return self.normalize(x[0] - y[0], q)

    def unit_roots(self, q, n):
        if not self.is_unit(q) or q[0] % n:
            return []
        exp = q[0] // n
        return [(exp, (c,)) for c in Integers().unit_roots(q[1][0], n)]

    def sort_key(self, x):
        return (len(x[1]), x[0], tuple(Integers().sort_key(c) for c in reversed(x[1])))

    def terms(self, x):
        return [(x[0] + i, c) for i, c in enumerate(x[1]) if c]

    def fmt(self, x):
        return _format_terms(self.base, self.terms(x), self.var)


def _format_terms(base, terms, var):
    """Render ``[(exp, coeff), ...]`` highest degree first, e.g. ``3*x^2 - 1/2``."""
    if not terms:
        return "0"
    parts = []
    for exp, c in sorted(terms, key=lambda t: -t[0]):
        negative = not isinstance(base, PrimeField) and c < 0
        mag = base.neg(c) if negative else c
        text = base.fmt(mag)
        if exp != 0:
            mono = var if exp == 1 else f"{var}^{exp}"
            text = mono if text == "1" else f"{text}*{mono}"
        if not parts:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f" - {text}" if negative else f" + {text}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# elements


class Elem:
    """An immutable element of a :class:`Domain`."""

    __slots__ = ("domain", "value")

    def __init__(self, domain: Domain, value):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Elem is immutable")

    def _other(self, other):
        if isinstance(other, Elem):
            if other.domain is not self.domain and other.domain != self.domain:
                raise DomainMismatch(
                    f"{self.domain.descriptor} vs {other.domain.descriptor}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.domain.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Elem(self.domain, self.domain.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Elem(self.domain, self.domain.sub(self.value, v))

    def __rsub__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Elem(self.domain, self.domain.sub(v, self.value))

    def __mul__(self, other):
        v = self._other(other)
        if v is NotImplemented:
            return v
        return Elem(self.domain, self.domain.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.domain, self.domain.neg(self.value))

    def __pow__(self, n: int):
        return Elem(self.domain, self.domain.pow(self.value, n))

    def __bool__(self):
        return not self.domain.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.domain == other.domain and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.domain.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return self.domain.fmt(self.value)

    def __repr__(self):
        return f"Elem({self.domain.descriptor}, {self})"

    def is_zero(self) -> bool:
        return self.domain.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.domain.is_unit(self.value)

    def inverse(self) -> Elem:
        return Elem(self.domain, self.domain.inv(self.value))

    def sort_key(self):
        return self.domain.sort_key(self.value)


# ---------------------------------------------------------------------------
# functional surface


def _check(a: Elem, b: Elem):
    if a.domain is not b.domain and a.domain != b.domain:
        raise DomainMismatch(f"{a.domain.descriptor} vs {b.domain.descriptor}")


def add(a: Elem, b: Elem) -> Elem:
    _check(a, b)
    return a + b


def mul(a: Elem, b: Elem) -> Elem:
    _check(a, b)
    return a * b


def neg(a: Elem) -> Elem:
    return -a


def is_zero(a: Elem) -> bool:
    return a.is_zero()


def is_unit(a: Elem) -> bool:
    return a.is_unit()


def exact_div(a: Elem, b: Elem) -> Elem:
    """Return ``q`` with ``q*b == a``; raise :class:`NotDivisible` otherwise."""
    _check(a, b)
    return Elem(a.domain, a.domain.div(a.value, b.value))


def inv_unit(u: Elem) -> Elem:
    return u.inverse()


def solve_unit_power(q: Elem, n: int) -> frozenset[Elem]:
    """All units ``k`` with ``k**n == q``.

    Empty when ``q`` is not an ``n``-th power of a unit.  Raises
    :class:`Unsupported` when the domain has no complete solver for ``n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    d = q.domain
    needed = Capability.UNIT_POWER_SOLVER if n <= 3 else Capability.UNIT_ROOT_EXTRACTION
    if not d.has(needed):
        raise Unsupported(f"{d.descriptor} cannot solve k^{n} = {q}")
    if not d.is_unit(q.value):
        return frozenset()
    return frozenset(Elem(d, r) for r in d.unit_roots(q.value, n))


def enumerate_units(d: Domain) -> Iterator[Elem]:
    if not d.has(Capability.FINITE_UNITS):
        raise Unsupported(f"{d.descriptor} has infinitely many units")
    return (Elem(d, u) for u in d.units())


def format_elem(e: Elem) -> str:
    return str(e)


def parse_elem(d: Domain, text: str) -> Elem:
    from .parsing import parse_elem as _parse

    return _parse(d, text)


def parse_domain(desc: str) -> Domain:
    """Domain from a descriptor: ``Z``, ``Q``, ``Fp:7``, ``PolyQ:x``,
    ``PolyFp:5:t``, ``LaurentZ:x``."""
    parts = desc.strip().split(":")
    kind, args = parts[0], parts[1:]

    def prime(text):
        try:
            p = int(text)
        except ValueError:
            raise ParseError(f"bad prime {text!r} in domain {desc!r}") from None
        if not 2 <= p <= MAX_FIELD_PRIME or not gmpy2.is_prime(p):
            raise ParseError(f"{p} is not a prime <= {MAX_FIELD_PRIME}")
        return p

    def variable(text):
        if not text.isidentifier():
            raise ParseError(f"bad variable name {text!r} in domain {desc!r}")
        return text

    if kind == "Z" and not args:
        return Integers()
    if kind == "Q" and not args:
        return Rationals()
    if kind == "Fp" and len(args) == 1:
        return PrimeField(prime(args[0]))
    if kind == "PolyQ" and len(args) == 1:
        return Poly(Rationals(), variable(args[0]))
    if kind == "PolyFp" and len(args) == 2:
        return Poly(PrimeField(prime(args[0])), variable(args[1]))
    if kind == "LaurentZ" and len(args) == 1:
        return LaurentInt(variable(args[0]))
    raise ParseError(
        f"unknown domain descriptor {desc!r}",
        expected="Z | Q | Fp:<p> | PolyQ:<var> | PolyFp:<p>:<var> | LaurentZ:<var>",
    )


def elements_in_box(d: Domain, bound: int) -> list[Elem]:
    """Distinct images of the integers in ``[-bound, bound]``, sorted."""
    seen = {}
    for n in range(-bound, bound + 1):
        e = d(n)
        seen.setdefault(e.value, e)
    return sorted(seen.values(), key=Elem.sort_key)


__all__ = [
    "Capability",
    "Domain",
    "Elem",
    "Integers",
    "LaurentInt",
    "Poly",
    "PrimeField",
    "Rationals",
    "add",
    "elements_in_box",
    "enumerate_units",
    "exact_div",
    "format_elem",
    "integer_root",
    "inv_unit",
    "is_unit",
    "is_zero",
    "mul",
    "neg",
    "parse_domain",
    "parse_elem",
    "solve_unit_power",
]

