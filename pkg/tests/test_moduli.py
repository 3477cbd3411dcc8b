import itertools

import pytest

from conftest import F5, F7, LZ, PQ, Q, Z
from evoclass.classify import FAMILIES, CanonicalClass, Verdict, classify, iso
from evoclass.errors import ArityMismatch, NotAUnit, Unsupported
from evoclass.evalg import EvolutionAlgebra, is_perfect
from evoclass.moduli import (
    FAMILY_CURVE,
    FAMILY_SPACE,
    Curve,
    ParamSpace,
    cube_class_test,
    curve_member,
    in_space,
    lim2mod3_equal,
    orbit,
)
from evoclass.ring import Capability, Rationals, elements_in_box


def zs(*xs, d=Z):
    return tuple(d(x) for x in xs)


def test_in_space_examples():
    assert in_space(ParamSpace.OMEGA4, zs(2, 3, 3, 5))
    assert in_space(ParamSpace.OMEGA3, zs(3, 2, 5))
    assert not in_space(ParamSpace.X0, zs(2, 3))
    assert in_space(ParamSpace.X0, zs(-1, 3))
    assert in_space(ParamSpace.OMEGA2, zs(2, 1, d=LZ)) is False
    assert in_space(ParamSpace.OMEGA2, (LZ("x+1"), LZ("x^2-x+1")))
    assert in_space(ParamSpace.SIGMA3, zs(2, 3, 2))
    assert in_space(ParamSpace.SET_S, (LZ("x+1"), LZ("x"), LZ("x^3-x^2+x")))
    assert not in_space(ParamSpace.SET_S, (LZ("x+1"), LZ("-x^3"), LZ("x^3-x^2+x")))
    with pytest.raises(ArityMismatch):
        in_space(ParamSpace.OMEGA4, zs(1, 2))


def test_curve_member_examples():
    assert curve_member(Curve.C, zs(1, 2), zs(1, 2))
    assert curve_member(Curve.C, zs(1, 2), zs(-1, 2))
    assert not curve_member(Curve.C, zs(1, 2), zs(1, -2))
    assert curve_member(Curve.H, zs(3, 5), zs(5, 3))
    assert curve_member(Curve.PARTIAL, zs(3, 2, 5), zs(-3, 2, -5))
    assert curve_member(Curve.OMEGA, zs(2, 3, 3, 5), zs(-2, 3, -3, 5))
    assert not curve_member(Curve.OMEGA, zs(2, 3, 3, 5), zs(2, 3, 3, -5))
    assert curve_member(Curve.SIGMA, zs(2, 3, 2), zs(-2, -3, 2))
    with pytest.raises(ArityMismatch):
        curve_member(Curve.H, zs(1, 2, 3), zs(1, 2, 3))


def test_lim2mod3_examples():
    assert lim2mod3_equal(Q(1), Q(8)) is Verdict.YES
    assert lim2mod3_equal(Q(2), Q(4)) is Verdict.YES
    assert lim2mod3_equal(Q(1), Q(2)) is Verdict.NO
    with pytest.raises(NotAUnit):
        lim2mod3_equal(Z(2), Z(1))
    d = Rationals().without(Capability.UNIT_POWER_SOLVER)
    assert lim2mod3_equal(d(1), d(8)) is Verdict.UNKNOWN


def test_cube_class_examples():
    assert cube_class_test(Q(1), Q(8)) is Verdict.YES
    assert cube_class_test(Q(1), Q(4)) is Verdict.NO
    assert cube_class_test(Z(1), Z(-1)) is Verdict.YES
    assert cube_class_test(F7(1), F7(3)) is Verdict.NO
    assert cube_class_test(F7(3), F7(2)) is Verdict.YES
    with pytest.raises(NotAUnit):
        cube_class_test(Q(0), Q(1))


def _tuples(cls):
    return {tuple(str(x) for x in c.params) for c in cls}


def test_orbit_examples():
    seed = classify(EvolutionAlgebra.of(Z, [[2, 3], [3, 5]]))
    assert _tuples(orbit(seed)) == {
        ("2", "3", "3", "5"),
        ("-2", "3", "-3", "5"),
        ("2", "-3", "3", "-5"),
        ("-2", "-3", "-3", "-5"),
    }
    seed = classify(EvolutionAlgebra.of(Z, [[1, 3], [2, 5]]))
    assert _tuples(orbit(seed)) == {("3", "2", "5"), ("-3", "2", "-5")}
    assert _tuples(orbit(CanonicalClass(F5, "A3", (F5(2),)))) == {("2",)}
    with pytest.raises(Unsupported):
        orbit(CanonicalClass(PQ, "A3", (PQ("x"),)))


def test_family_tables_consistent():
    for fam in FAMILY_SPACE:
        assert fam in FAMILIES
    assert set(FAMILY_CURVE) >= set(FAMILY_SPACE)
    for fam, space in FAMILY_SPACE.items():
        assert len(FAMILIES[fam][0]) == space.arity
        assert FAMILY_CURVE[fam].arity == space.arity


def _pool(d, bound):
    box = elements_in_box(d, bound)
    for p, q, r, s in itertools.product(box, repeat=4):
        a = EvolutionAlgebra(d, ((p, q), (r, s)))
        if is_perfect(a):
            yield a


@pytest.mark.parametrize("d, bound", [(Z, 4), (F5, 2), (F7, 2)])
def test_orbit_properties(d, bound):
    seen = set()
    for a in _pool(d, bound):
        c = classify(a)
        if c in seen:
            continue
        seen.add(c)
        orb = orbit(c)
        assert c in orb
        if d is Z:
            assert 4 % len(orb) == 0
        curve = FAMILY_CURVE.get(c.family)
        space = FAMILY_SPACE.get(c.family)
        members = sorted(orb, key=lambda m: [x.sort_key() for x in m.params])
        for m in members:
            if curve is not None:
                assert curve_member(curve, c.params, m.params), (c, m)
            if space is not None:
                assert in_space(space, c.params) and in_space(space, m.params)
            assert m.satisfies_constraints()
        for m1, m2 in itertools.combinations(members[:4], 2):
            assert iso(m1.algebra(), m2.algebra()), (m1, m2)


def test_lim2mod3_is_equivalence_on_pool():
    pool = [Q(s * 2**a * 3**b) if a >= 0 and b >= 0 else Q(s) * Q(2) ** a * Q(3) ** b
            for s in (1, -1) for a in range(-2, 3) for b in range(-2, 3)]
    rel = {(x, y): lim2mod3_equal(x, y) is Verdict.YES for x in pool for y in pool}
    for x in pool:
        assert rel[x, x]
    for x, y in itertools.product(pool, repeat=2):
        assert rel[x, y] == rel[y, x]
    for x, y, z in itertools.product(pool[:20], repeat=3):
        if rel[x, y] and rel[y, z]:
            assert rel[x, z]
