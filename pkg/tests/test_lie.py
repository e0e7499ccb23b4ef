import itertools
from fractions import Fraction

import pytest

from affvoa.lie import (BasisElement, MatrixRep, adjoint_orbit_sample, bracket, char_poly, dual_basis,
                        matrix_form, normalized_form, param_matrix, sl, to_matrix)
from affvoa.poly import PolyRing


@pytest.fixture
def g3():
    return sl(3)


def test_basis_order(g3):
    assert [b.varname for b in g3.basis] == ["e12", "e23", "e13", "f12", "f23", "f13", "h1", "h2"]
    assert BasisElement.parse("E[1,3]") == g3.basis[2]


def test_brackets(g3):
    assert bracket(g3.e(1, 2), g3.e(2, 3)) == g3.e(1, 3)
    assert not bracket(g3.h(1), g3.h(2))
    assert bracket(g3.e(2, 3), g3.f(1, 3)) == g3.f(1, 2)
    assert bracket(g3.e(1, 2), g3.f(1, 2)) == g3.h(1)


def test_form_values(g3):
    assert normalized_form(g3.h(1), g3.h(1)) == 2
    assert normalized_form(g3.h(1), g3.h(2)) == -1
    assert normalized_form(g3.e(1, 3), g3.f(1, 3)) == 1


@pytest.mark.parametrize("n", [3, 4])
def test_jacobi_and_invariance_exhaustive(n):
    alg = sl(n)
    basis = [alg.basis_element(i) for i in range(alg.dim)]
    for x, y, z in itertools.product(basis, repeat=3):
        assert not (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y)))
        assert normalized_form(bracket(x, y), z) == normalized_form(x, bracket(y, z))


def test_dual_basis(g3):
    pairs = dict((str(x), y) for x, y in dual_basis(g3))
    assert pairs[str(g3.e(1, 2))] == g3.f(1, 2)
    assert pairs[str(g3.h(1))] == (g3.h(1) * 2 + g3.h(2)) * Fraction(1, 3)
    assert pairs[str(g3.h(2))] == (g3.h(1) + g3.h(2) * 2) * Fraction(1, 3)
    x = g3.e(1, 3)
    total = g3.zero()
    for xi, xd in dual_basis(g3):
        total = total + xd * normalized_form(x, xi)
    assert total == x


def test_char_polys(g3):
    R = PolyRing(("a", "b"))
    reg = param_matrix(g3, R, [(1, (g3.f(1, 2) + g3.f(2, 3)) * 2), (R.var("a"), g3.e(1, 2) + g3.e(2, 3)), (R.var("b"), g3.e(1, 3))])
    cp = char_poly(reg)
    lam, a, b = cp.ring.vars("lam", "a", "b")
    assert cp == lam**3 - 4 * a * lam - 4 * b
    Z = MatrixRep.zeros(PolyRing(()), 3)
    assert str(char_poly(Z)) == "lam^3"
    M = PolyRing(("mu",))
    A = param_matrix(g3, M, [(M.var("mu"), g3.h(1) - g3.h(2)), (1, g3.f(1, 3))])
    cp = char_poly(A)
    lam, mu = cp.ring.vars("lam", "mu")
    assert cp == (lam - mu) ** 2 * (lam + 2 * mu)


def test_orbit_sample(g3):
    R = PolyRing(())
    zero = MatrixRep.zeros(R, 3)
    assert adjoint_orbit_sample(zero, 1) == zero
    nil = to_matrix(g3.f(1, 2) + g3.f(2, 3), R)
    for s in range(5):
        assert str(char_poly(adjoint_orbit_sample(nil, s))) == "lam^3"
    lam = to_matrix(g3.h(1) - g3.h(2), R)
    for s in range(10):
        y = adjoint_orbit_sample(lam, s)
        assert y != lam or s < 0
        assert matrix_form(y, y) == matrix_form(lam, lam) == 6
