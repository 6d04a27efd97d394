import math

import numpy as np
import pytest

from verlinde.characters import (
    ExceptionalWeightAbsent,
    character_table,
    exceptional_weight,
    freudenthal_row,
    kostant_character,
    t_count,
    t_count_bruteforce,
    weight_multiplicities,
)
from verlinde.rootdata import build_root_datum, level_weights, weyl_dimension


@pytest.mark.parametrize("k", [1, 2, 5])
def test_su2_characters_are_sine_ratios(k):
    d = build_root_datum("A1")
    table = character_table(d, k)
    for (m,) in table.weights:
        for (l,) in table.weights:
            x = math.pi * (l + 1) / (k + 2)
            expect = math.sin((m + 1) * x) / math.sin(x)
            assert abs(table.value((m,), (l,)).to_complex() - expect) < 1e-12


def test_multiplicities_sum_to_dimension():
    for name, mu in [("A2", (1, 1)), ("B2", (1, 1)), ("G2", (0, 1)), ("C3", (0, 1, 0))]:
        d = build_root_datum(name)
        assert sum(weight_multiplicities(d, mu).values()) == weyl_dimension(d, mu)


def test_adjoint_zero_weight_multiplicity_is_rank():
    d = build_root_datum("A2")
    assert weight_multiplicities(d, (1, 1))[(0, 0)] == 2


@pytest.mark.parametrize("name,k", [("A2", 3), ("B2", 2), ("G2", 2)])
def test_weyl_and_freudenthal_rows_agree(name, k):
    d = build_root_datum(name)
    table = character_table(d, k, "weyl")
    for mu in table.weights:
        a = table.row(mu).astype(object)
        b = freudenthal_row(d, mu, table.modulus, table.pairings).astype(object)
        assert np.array_equal(a, b)


def test_table_at_trivial_weight_is_one():
    d = build_root_datum("B2")
    table = character_table(d, 3)
    for lam in table.weights:
        assert table.value((0, 0), lam) == 1


def test_conjugate_character_is_dual():
    d = build_root_datum("A2")
    table = character_table(d, 4)
    for mu in table.weights:
        for lam in table.weights:
            assert table.value(mu, lam).conj() == table.value(d.dual_weight(mu), lam)


def test_e8_uses_freudenthal_fallback():
    d = build_root_datum("E8")
    table = character_table(d, 2)
    vals = sorted(round(table.value(m, table.weights[1]).to_complex().real, 9) for m in table.weights)
    assert vals == [-1.0, 0.0, 1.0]


def test_kostant_values():
    d = build_root_datum("A2")
    lam0 = exceptional_weight(d, 3)
    assert lam0 == (1, 1)
    table = character_table(d, 3)
    for mu in level_weights(d, 3):
        crit = kostant_character(d, mu, 3)
        assert crit in (-1, 0, 1)
        assert table.value(mu, lam0) == crit


def test_exceptional_weight_absent():
    with pytest.raises(ExceptionalWeightAbsent):
        exceptional_weight(build_root_datum("A2"), 2)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_t_count_matches_bruteforce(name):
    d = build_root_datum(name)
    for l in range(1, 7):
        assert t_count(d, l) == t_count_bruteforce(d, l)
