from fractions import Fraction

from hypothesis import strategies as st

from evoclass.ring import Integers, LaurentInt, Poly, PrimeField, Rationals

Z = Integers()
Q = Rationals()
F5 = PrimeField(5)
F7 = PrimeField(7)
PQ = Poly(Rationals(), "x")
P5 = Poly(PrimeField(5), "x")
LZ = LaurentInt("x")

DOMAINS = [Z, Q, F7, PQ, P5, LZ]

small_ints = st.integers(-20, 20)
small_fracs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))


def _poly(d, coeffs, shift=0):
    x = d("x")
    total = d.zero
    for i, c in enumerate(coeffs):
        total = total + d(c) * x ** (i + shift)
    return total


def elems(d):
    """Hypothesis strategy for elements of ``d`` with small coefficients."""
    if d is Z or d is F7 or d is F5:
        return small_ints.map(d)
    if d is Q:
        return small_fracs.map(d)
    if d is PQ:
        return st.lists(small_fracs, max_size=4).map(lambda cs: _poly(d, cs))
    if d is P5:
        return st.lists(small_ints, max_size=4).map(lambda cs: _poly(d, cs))
    if d is LZ:
        return st.tuples(st.integers(-3, 3), st.lists(st.integers(-5, 5), max_size=4)).map(
            lambda t: _poly(d, t[1], t[0])
        )
    raise ValueError(d)


def nonzero(d):
    return elems(d).filter(lambda e: not e.is_zero())


def units(d):
    return elems(d).filter(lambda e: e.is_unit())


domains = st.sampled_from(DOMAINS)
