from fractions import Fraction

import pytest

from verlinde.center import (
    CenterCharacter,
    CenterSubgroup,
    all_subgroups,
    center_structure,
    generating_characters,
    level_action_by_reduction,
    level_action_table,
    orbit_representatives,
    pairing_exponent,
)
from verlinde.rootdata import build_root_datum, level_weights


@pytest.mark.parametrize("name,structure", [("A3", (4,)), ("D4", (2, 2)), ("D5", (4,)), ("E6", (3,)), ("G2", ())])
def test_center_structure(name, structure):
    assert tuple(x for x in center_structure(build_root_datum(name)) if x > 1) == structure


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C3", "D4", "D5", "E6", "E7"])
def test_action_is_free_group_action_on_alcove(name):
    d = build_root_datum(name)
    for k in (1, 2, 3):
        weights = set(level_weights(d, k))
        table = level_action_table(d, k)
        assert table[0] == {w: w for w in weights}
        for g in range(d.center_order):
            assert set(table[g].values()) == weights
            for w in weights:
                assert table[g][w] == level_action_by_reduction(d, g, w, k)


def test_su2_action_is_reflection():
    d = build_root_datum("A1")
    table = level_action_table(d, 5)
    assert all(table[1][(m,)] == (5 - m,) for m in range(6))


def test_pairing_on_fundamental_weights():
    d = build_root_datum("A2")
    assert {pairing_exponent(d, 1, (1, 0)), pairing_exponent(d, 1, (0, 1))} == {Fraction(1, 3), Fraction(2, 3)}
    assert pairing_exponent(d, 1, (1, 1)) == 0


def test_subgroup_lattice_d4():
    d = build_root_datum("D4")
    orders = sorted(g.order for g in all_subgroups((d,)))
    assert orders == [1, 2, 2, 2, 4]


def test_subgroup_rejects_non_closed_set():
    d = build_root_datum("A3")
    with pytest.raises(ValueError):
        CenterSubgroup((d,), frozenset({(0,), (1,)}))


def test_product_subgroups():
    a1 = build_root_datum("A1")
    diag = CenterSubgroup.generated_by((a1, a1), [(1, 1)])
    assert diag.order == 2
    assert len(all_subgroups((a1, a1))) == 5


def test_characters_generate():
    d = build_root_datum("A3")
    gamma = CenterSubgroup.full((d,))
    phis = generating_characters(gamma, 2)
    assert phis[0].is_trivial()
    assert len(phis) == 1 + 4
    phi = CenterCharacter.from_generator_exponents(gamma, [[1], [0], [2], [0]], 2)
    assert not phi.is_trivial()
    with pytest.raises(ValueError):
        CenterCharacter.from_generator_exponents(gamma, [[1, 0], [0], [0], [0]], 2)


def test_orbits_partition_weights():
    d = build_root_datum("A2")
    gamma = CenterSubgroup.full((d,))
    reps = orbit_representatives(d, gamma, 3)
    assert sum(n for _, n in reps) == len(level_weights(d, 3))
    assert ((1, 1), 1) in reps
