import random
from fractions import Fraction

import pytest

from affvoa.c2 import membership
from affvoa.lie import char_poly, sl, to_matrix
from affvoa.poly import PolyRing
from affvoa.slodowy import (Sl2Triple, centralizer, eliminate, in_span, intersect_with_class, minimal_slice,
                            minimal_triple, regular_slice, regular_triple, same_variety, sample_solution,
                            slice_family, slice_point, variety_dimension)

g = sl(3)


def unit_multiple(p, q):
    """p = c q for a nonzero rational c."""
    if not p or not q:
        return not p and not q
    c = p.leading_coefficient() / q.leading_coefficient()
    return p == q * c


def test_triples_validate():
    minimal_triple()
    regular_triple()
    with pytest.raises(ValueError):
        Sl2Triple(g.e(1, 3), g.h(1), g.f(1, 3))


def test_centralizer_dimensions():
    assert len(centralizer(g.e(1, 3))) == 4
    reg = centralizer(g.e(1, 2) + g.e(2, 3))
    assert len(reg) == 2
    assert in_span(reg, g.e(1, 2) + g.e(2, 3)) and in_span(reg, g.e(1, 3))
    assert not in_span(reg, g.e(1, 2))
    assert len(centralizer(g.zero())) == 8


def test_slice_matrices():
    S = minimal_slice()
    a, b, c, d = S.ring.vars("a", "b", "c", "d")
    z = S.ring.zero()
    assert [list(r) for r in S.matrix.rows] == [[a, b, d], [z, -2 * a, c], [z + 1, z, a]]
    R = regular_slice()
    a, b = R.ring.vars("a", "b")
    z = R.ring.zero()
    assert [list(r) for r in R.matrix.rows] == [[z, a, b], [z + 2, z, a], [z, z + 2, z]]


@pytest.mark.parametrize("make", [minimal_slice, regular_slice])
def test_slice_is_f_plus_centralizer(make):
    S = make()
    base = slice_point(S, {p: 0 for p in S.params})
    assert base == to_matrix(S.triple.f, PolyRing(()))
    cent = centralizer(S.triple.e)
    for d in S.directions:
        assert in_span(cent, d)


def test_bad_directions_rejected():
    with pytest.raises(ValueError):
        slice_family(minimal_triple(), [g.h(1), g.e(1, 2), g.e(2, 3), g.e(1, 3)])
    with pytest.raises(ValueError):
        slice_family(minimal_triple(), [g.e(1, 2), g.e(2, 3), g.e(1, 3)])


def test_minimal_constraints():
    S = minimal_slice()
    a, b, c, d, mu = S.ring.vars("a", "b", "c", "d", "mu")
    cons = intersect_with_class(S)
    assert len(cons) == 2
    want = [d - 3 * (mu**2 - a**2), b * c - 2 * (a - mu) * (2 * a + mu) ** 2]
    for w in want:
        assert any(unit_multiple(c_, w) for c_ in cons)


def test_regular_constraints_and_orientation():
    S = regular_slice()
    a, b, mu = S.ring.vars("a", "b", "mu")
    cons = intersect_with_class(S)
    assert any(unit_multiple(c, 4 * a - 3 * mu**2) for c in cons)
    assert any(unit_multiple(c, 2 * b + mu**3) for c in cons)
    flipped = intersect_with_class(S, orientation=-1)
    assert any(unit_multiple(c, 2 * b - mu**3) for c in flipped)


@pytest.mark.parametrize("make", [minimal_slice, regular_slice])
def test_mu_zero_is_nilpotent(make):
    S = make()
    cons = [c.subs({"mu": 0}) for c in intersect_with_class(S)]
    rng = random.Random(1)
    found = 0
    for _ in range(10):
        pt = sample_solution(cons, rng)
        if pt is None:
            continue
        found += 1
        assert str(char_poly(slice_point(S, pt))) == "lam^3"
    assert found


def test_dimensions():
    S, R = minimal_slice(), regular_slice()
    assert variety_dimension(S, intersect_with_class(S)) == 3
    assert variety_dimension(R, intersect_with_class(R)) == 1
    assert variety_dimension(S, []) == 4


@pytest.mark.parametrize("make", [minimal_slice, regular_slice])
def test_elimination_order_independent(make):
    S = make()
    assert same_variety(intersect_with_class(S), intersect_with_class(S, order=tuple(S.params)))


def test_eliminate_linear_system():
    R = PolyRing(("x", "y"))
    x, y = R.vars("x", "y")
    out = eliminate([x + y - 3, x - y - 1], ("x", "y"))
    assert sorted(str(p) for p in out) == ["x - 2", "y - 1"]


@pytest.mark.parametrize("make", [minimal_slice, regular_slice])
def test_solutions_lie_in_mixed_sheet_closure(make):
    S = make()
    cons = intersect_with_class(S)
    rng = random.Random(7)
    for _ in range(25):
        pt = sample_solution(cons, rng)
        assert pt is not None
        assert membership(slice_point(S, pt), "mixed_sheet_closure")[0]


def test_non_solutions_fail_membership():
    S = minimal_slice()
    rng = random.Random(2)
    misses = 0
    for _ in range(10):
        pt = {p: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for p in S.params}
        if not membership(slice_point(S, pt), "mixed_sheet_closure")[0]:
            misses += 1
    assert misses == 10
