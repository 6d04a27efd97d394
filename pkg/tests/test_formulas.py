import math
from fractions import Fraction
from itertools import product

import mpmath
import pytest

from verlinde.center import CenterCharacter, CenterSubgroup
from verlinde.checks import su2_sine_oracle
from verlinde.formulas import (
    InadmissibleLevelError,
    NonIntegralResultError,
    VerlindeResult,
    admissible_level,
    min_level,
    ns_all_mu,
    two_holed_sphere,
    verlinde_closed,
    verlinde_conjclass,
    verlinde_ns,
    verlinde_sc,
    verlinde_sc_product,
)
from verlinde.registry import parse_group
from verlinde.rootdata import build_root_datum, level_weights


def float_closed(d, k, h):
    """Sum over the alcove of S_{0,lambda}^(2-2h), S from the Weyl denominator in floats."""
    theta2 = d.norm2(d.highest_root)
    n = k + d.dual_coxeter
    pos = d.positive_roots
    vals = []
    for lam in level_weights(d, k):
        x = d.to_ambient(tuple(a + 1 for a in lam))
        p = 1.0
        for a in pos:
            p *= math.sin(math.pi * float(d.inner(x, a)) * 2 / float(theta2) / n)
        vals.append(p)
    norm = math.sqrt(sum(v * v for v in vals))
    return sum((v / norm) ** (2 - 2 * h) for v in vals)


@pytest.mark.parametrize("name,k", [("A2", 3), ("B2", 2), ("C3", 2), ("G2", 3), ("D4", 2)])
def test_closed_against_float_s_matrix(name, k):
    d = build_root_datum(name)
    for h in (0, 1, 2, 3):
        exact = verlinde_closed(d, k, h).exact
        assert exact.denominator == 1
        assert abs(float(exact) - float_closed(d, k, h)) < 1e-6 * max(1, float(exact))


def test_known_values():
    a1 = build_root_datum("A1")
    assert verlinde_closed(a1, 1, 2).exact == 4
    assert verlinde_closed(a1, 2, 2).exact == 10
    assert verlinde_closed(build_root_datum("A2"), 1, 2).exact == 9
    assert verlinde_closed(build_root_datum("E8"), 2, 2).exact == 10
    assert verlinde_sc(a1, 2, 0, [(1,), (1,)]).exact == 1


def test_genus_one_counts_weights():
    for name, k in [("A3", 2), ("G2", 4)]:
        d = build_root_datum(name)
        assert verlinde_closed(d, k, 1).exact == len(level_weights(d, k))


@pytest.mark.parametrize("k,h", list(product(range(1, 6), range(0, 3))))
def test_su2_markings_against_sine_sum(k, h):
    d = build_root_datum("A1")
    for marks in product(range(k + 1), repeat=2):
        assert verlinde_sc(d, k, h, [(m,) for m in marks]).exact == int(mpmath.nint(su2_sine_oracle(k, h, marks)))


def test_sewing():
    """Cutting a genus 2 surface: N_2(mu) = sum_nu N_1(mu, nu) N_1(*nu)."""
    d = build_root_datum("A2")
    k = 2
    for mu in level_weights(d, k):
        total = sum(
            verlinde_sc(d, k, 1, [mu, nu]).exact * verlinde_sc(d, k, 1, [d.dual_weight(nu)]).exact
            for nu in level_weights(d, k)
        )
        assert total == verlinde_sc(d, k, 2, [mu]).exact


def test_two_holed_sphere_is_delta():
    d = build_root_datum("B2")
    for m1 in level_weights(d, 2):
        for m2 in level_weights(d, 2):
            assert two_holed_sphere(d, 2, m1, m2) == int(d.dual_weight(m1) == m2)


def test_product_group_factorises():
    a1, a2 = build_root_datum("A1"), build_root_datum("A2")
    got = verlinde_sc_product((a1, a2), (2, 1), 2, []).exact
    assert got == verlinde_closed(a1, 2, 2).exact * verlinde_closed(a2, 1, 2).exact


def test_weight_outside_alcove_rejected():
    with pytest.raises(ValueError):
        verlinde_sc(build_root_datum("A1"), 2, 1, [(3,)])


def test_admissibility():
    a1 = build_root_datum("A1")
    assert min_level(a1, 2) == 4
    assert min_level(a1, 2, "c") == 2
    assert not admissible_level(a1, 2, 2)
    assert admissible_level(a1, 2, 8)
    assert min_level(build_root_datum("E7"), 2) == 4


def test_so3_quotient():
    gamma = parse_group("SO(3)").gamma
    assert verlinde_ns(gamma, 4, 2, (0,)).exact == 5
    assert [verlinde_ns(gamma, 4, 1, (m,)).exact for m in range(5)] == [2, 0, 0, 0, 1]
    with pytest.raises(InadmissibleLevelError):
        verlinde_ns(gamma, 2, 1, (0,))


def test_weaker_predicate_gives_fraction():
    gamma = parse_group("SO(3)").gamma
    res = verlinde_ns(gamma, 2, 1, (0,), variant="c", unsafe=True)
    assert res.exact == Fraction(3, 2)
    with pytest.raises(NonIntegralResultError):
        res.value


def test_trivial_gamma_reduces_to_simply_connected():
    d = build_root_datum("A2")
    gamma = CenterSubgroup.trivial((d,))
    for h in (1, 2):
        assert verlinde_ns(gamma, (3,), h, ((1, 1),)).exact == verlinde_sc(d, 3, h, [(1, 1)]).exact


def test_threads_do_not_change_result():
    gamma = parse_group("PSU(3)").gamma
    a = verlinde_ns(gamma, 6, 2, (0, 0), threads=1, breakdown=True)
    b = verlinde_ns(gamma, 6, 2, (0, 0), threads=4, breakdown=True)
    assert a == b


def test_ns_all_mu_matches_single_calls():
    d = build_root_datum("A3")
    gamma = CenterSubgroup.generated_by((d,), [(2,)])
    phis = [CenterCharacter.trivial(gamma, 2)]
    table = ns_all_mu(d, 4, 2, gamma, phis)
    for mu in level_weights(d, 4)[:8]:
        assert table[(0, mu)].as_rational() == verlinde_ns(gamma, 4, 2, mu).exact


def test_conjclass_sums_orbit():
    gamma = parse_group("SO(3)").gamma
    assert verlinde_conjclass(gamma, 4, 2, (0,)).exact == 9
    assert verlinde_conjclass(gamma, 4, 2, (4,)).exact == 9


def test_result_round_trip():
    gamma = parse_group("SO(3)").gamma
    res = verlinde_ns(gamma, 4, 2, (0,), breakdown=True)
    assert VerlindeResult.from_dict(res.to_dict()) == res
