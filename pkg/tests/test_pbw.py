import random
from fractions import Fraction

import pytest

from affvoa.lie import bracket, normalized_form, sl
from affvoa.pbw import (PBWVector, VacuumModule, annihilates, apply_mode, build_vector, central_charge,
                        coefficient_report, depth_weights, format_monomial, format_vector, generating_dimension,
                        ideal_weight_space, normalize, parse_monomial, singular_vectors, sugawara_L0,
                        total_dimension, weight_space_basis)

from oracles import reference_u1, reference_u2, proportional

g = sl(3)
e1, e2, et = g.e(1, 2), g.e(2, 3), g.e(1, 3)
f1, f2, ft = g.f(1, 2), g.f(2, 3), g.f(1, 3)
h1, h2 = g.h(1), g.h(2)


def test_weight_space_small():
    assert weight_space_basis(3, 0, (0, 0)) == ((),)
    assert len(weight_space_basis(3, 1, (1, 0))) == 1
    basis = weight_space_basis(3, 3, (2, 1))
    for shape in ([(e1, -1), (e1, -1), (e2, -1)], [(e1, -1), (et, -1), (h2, -1)], [(et, -1), (et, -1), (f2, -1)]):
        mono = next(iter(build_vector(VacuumModule(3, 0), [(1, shape)]).terms))
        assert mono in basis


@pytest.mark.parametrize("n,d", [(3, 1), (3, 2), (3, 4), (3, 6), (4, 3)])
def test_dimension_generating_function(n, d):
    assert total_dimension(n, d) == generating_dimension(n, d)
    assert sum(len(weight_space_basis(n, d, mu)) for mu in depth_weights(n, d)) == total_dimension(n, d)


def test_mode_examples():
    M = VacuumModule(3, Fraction(-7, 3))
    v = build_vector(M, [(1, [(et, -1)])])
    assert apply_mode(ft, 1, v) == PBWVector.vacuum(M) * M.k


def test_commutator_identity_random():
    rng = random.Random(3)
    M = VacuumModule(3, Fraction(-5, 2))
    for _ in range(25):
        x, y = (g.basis_element(rng.randrange(g.dim)) for _ in range(2))
        m, n = rng.randint(-2, 2), rng.randint(-2, 2)
        factors = [(g.basis_element(rng.randrange(g.dim)), -rng.randint(1, 2)) for _ in range(rng.randint(0, 3))]
        v = build_vector(M, [(1, factors)])
        lhs = apply_mode(x, m, apply_mode(y, n, v)) - apply_mode(y, n, apply_mode(x, m, v))
        rhs = apply_mode(bracket(x, y), m + n, v)
        if m + n == 0:
            rhs = rhs + v * (m * normalized_form(x, y) * M.k)
        assert lhs == rhs


def test_grading_shift():
    M = VacuumModule(3, -1)
    v = build_vector(M, [(1, [(e1, -1), (h1, -2)])])
    (d, mu), = v.grading()
    w = apply_mode(f2, -2, v)
    assert w.grading() == {(d + 2, (mu[0], mu[1] - 1))}


def test_format_roundtrip(km1_module):
    u1 = reference_u1(km1_module)
    for mono in u1.terms:
        assert parse_monomial(g, format_monomial(g, mono)) == mono
    assert format_monomial(g, ()) == "1"
    text = format_vector(g, u1.terms)
    assert "E[1,2](-1)^2 E[2,3](-1)" in text
    assert PBWVector.deserialize(km1_module, u1.serialize()) == u1


def test_reference_u1_u2_singular(km1_module):
    u1, u2 = reference_u1(km1_module), reference_u2(km1_module)
    assert annihilates(km1_module, u1.terms, 3)
    assert annihilates(km1_module, u2.terms, 3)
    assert not apply_mode(e1, 0, u1) and not apply_mode(e2, 0, u1)


def test_solver_k_minus1(km1_module, km1_singular):
    v1, v2 = km1_singular
    assert len(v1) == 1 and len(v2) == 1
    assert proportional(v1[0], reference_u1(km1_module))
    assert proportional(v2[0], reference_u2(km1_module))


def test_solver_n4():
    M = VacuumModule(4, -1)
    g4 = sl(4)
    u = build_vector(M, [(1, [(g4.e(1, 4), -1), (g4.e(2, 3), -1)]), (-1, [(g4.e(1, 3), -1), (g4.e(2, 4), -1)])])
    sols = singular_vectors(-1, 4, 2, (1, 2, 1), module=M)
    assert len(sols) == 1 and proportional(sols[0], u)


def test_no_singular_vector_at_low_depth():
    assert singular_vectors(Fraction(-7, 3), 3, 3, (2, 1)) == []


def test_coefficient_report_m0(km1_module):
    rep = coefficient_report(reference_u1(km1_module), 0)
    # a_i multiplies h1(-1)^i h2(-1)^(6m+1-i), so e1 e_theta h2 is a_0
    assert rep["a_0"] == 1 and rep["a_1"] == 0
    assert rep["x_0"] == -1 and rep["y_0"] == 1
    assert rep.first_nonzero_a() is not None


def test_sugawara(km1_module):
    assert not sugawara_L0(PBWVector.vacuum(km1_module))
    u1 = reference_u1(km1_module)
    assert sugawara_L0(u1) == u1 * 3
    assert central_charge(-1, 3) == -4
    assert central_charge(Fraction(-7, 3), 3) == Fraction(-7, 3) * 8 / Fraction(2, 3)
    with pytest.raises(ValueError):
        central_charge(-3, 3)


def test_ideal_weight_space(km1_module, km1_singular):
    gens = [km1_singular[0][0], km1_singular[1][0]]
    assert ideal_weight_space(km1_module, gens, 3, (2, 1))[0] == 1
    assert ideal_weight_space(km1_module, gens, 2, (1, 1))[0] == 0


@pytest.mark.slow
def test_m1_singular_vector(m1_module, m1_singular):
    v1, v2 = m1_singular
    assert len(v1) == 1 and len(v2) == 1
    v = normalize(v1[0], 1)
    rep = coefficient_report(v, 1)
    assert rep["a_2"] == 1 and rep["a_0"] == 0 and rep["a_1"] == 0
    assert all(x == 0 for vals in rep.relations().values() for x in vals)
    assert rep.residual_in_V1()
