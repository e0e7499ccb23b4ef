from fractions import Fraction

import pytest

from affvoa.characters import (brute_force_character, character_table, compare, decompose, kostant_partition,
                               numerator_terms, parse_level, vacuum_character, vacuum_table, weyl_character)
from affvoa.pbw import VacuumModule, singular_vectors, total_dimension, weight_space_basis

K_M1 = Fraction(-7, 3)


def test_kostant_small():
    assert kostant_partition(3, (0, 0)) == 1
    assert kostant_partition(3, (1, 1)) == 2
    assert kostant_partition(3, (2, 1)) == 2
    assert kostant_partition(3, (-1, 0)) == 0


def test_parse_level():
    assert parse_level(3, -1) == 1
    assert parse_level(3, K_M1) == 3
    assert parse_level(4, Fraction(-5, 2)) == 2
    with pytest.raises(ValueError):
        parse_level(3, Fraction(-1, 2))


def test_weyl_characters():
    assert sum(weyl_character(3, (1, 1)).values()) == 8
    assert sum(weyl_character(3, (2, 1)).values()) == 10
    assert decompose(3, weyl_character(3, (2, 1))) == [((2, 1), 1)]


def test_vacuum_character_matches_basis():
    vc = vacuum_character(3, 4)
    for (d, mu), v in vc.items():
        assert v == len(weight_space_basis(3, d, mu))
    assert sum(v for (d, _), v in vc.items() if d == 4) == total_dimension(3, 4)


def test_numerator_terms_k_minus1():
    terms = numerator_terms(-1, 1, 3, 3)
    depth0 = [t for t in terms if t.depth == 0]
    assert len(depth0) == 6
    assert any(t.sign == 1 and t.weight == (0, 0) and t.w_word == "1" for t in depth0)
    hits = {(t.weight, t.sign) for t in terms if t.depth == 3}
    assert ((2, 1), -1) in hits and ((1, 2), -1) in hits
    counts = [len(numerator_terms(-1, 1, 3, d)) for d in range(0, 12, 3)]
    assert counts == sorted(counts)
    with pytest.raises(ValueError):
        numerator_terms(-1, 3, 3, 3)


def test_table_basics():
    t = character_table(-1, 3, 4)
    assert t.get(0, (0, 0)) == 1
    assert t.get(3, (2, 1)) == len(weight_space_basis(3, 3, (2, 1))) - 1
    for d, mu, v in t.rows():
        assert t.get(d, mu[::-1]) == v


def test_depth_rows_are_characters():
    t = character_table(K_M1, 3, 9)
    for d in range(10):
        row = t.depth_row(d)
        assert all(mult > 0 for _, mult in decompose(3, row))


def test_formula_equals_brute_force_k_minus1(km1_module, km1_singular):
    gens = [km1_singular[0][0], km1_singular[1][0]]
    brute = brute_force_character(km1_module, gens, 5)
    assert compare(character_table(-1, 3, 5), brute).empty


def test_formula_equals_brute_force_n4():
    M = VacuumModule(4, -1)
    gens = singular_vectors(-1, 4, 2, (1, 2, 1), module=M)
    brute = brute_force_character(M, gens, 3)
    table = character_table(-1, 4, 3)
    assert table.get(2, (1, 2, 1)) == len(weight_space_basis(4, 2, (1, 2, 1))) - 1
    assert compare(table, brute).empty


def test_compare_self_and_mismatch():
    t = character_table(-1, 3, 3)
    assert compare(t, t).empty
    with pytest.raises(ValueError):
        compare(t, vacuum_table(K_M1, 3, 3))


def test_km1_agrees_below_generators():
    t = character_table(K_M1, 3, 9)
    rep = compare(t, vacuum_table(K_M1, 3, 9))
    assert rep.first_depth() == 9
    diff = {mu: -x for mu, x in rep.at_depth(9).items()}
    assert decompose(3, diff) == [((1, 2), 1), ((2, 1), 1)]


def test_k_minus1_first_difference():
    rep = compare(character_table(-1, 3, 3), vacuum_table(-1, 3, 3))
    assert rep.first_depth() == 3
    assert decompose(3, {mu: -x for mu, x in rep.at_depth(3).items()}) == [((1, 2), 1), ((2, 1), 1)]
