import math

import numpy as np
import pytest

from verlinde import fixedpoint as fp


def test_two_form_is_antisymmetric():
    rng = np.random.default_rng(1)
    a, b = fp.random_su(3, rng), fp.random_su(3, rng)
    c = fp.two_form_at(a, b)
    assert c.antisymmetry_residual() < 1e-12


def test_lie_basis_orthonormal():
    for group, n in (("SU", 2), ("SU", 3), ("SO", 5)):
        B = fp.lie_algebra_basis(group, n)
        gram = np.array([[-np.trace(x @ y).real for y in B] for x in B])
        assert np.allclose(gram, np.eye(len(B)))


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "D4", "E6"])
def test_torus_determinant_is_one(name):
    for w1, w2 in fp.weyl_pairs(name):
        assert fp.torus_det_check(w1, w2) <= fp.ATOL


def test_scalar_bound_exceeds_two():
    # the sup of the scalar form on commuting pairs is 5/2, attained in SU(3)
    assert math.isclose(fp.scalar_bound(2 * math.pi / 3, -2 * math.pi / 3), 2.5)
    assert math.isclose(fp.scalar_bound(math.pi, 0.3), 2.0)
    a, b = fp.shift_clock(3)
    assert fp.eigenvalue_bound_check(a, b) > 2.4


def test_homotopy_identity_holds_and_degenerates_on_shift_clock():
    a, b = fp.shift_clock(3)
    min_det, resid = fp.homotopy_nondegeneracy(a, b, s_grid=[0.0, 1 / 3, 0.5, 2 / 3, 1.0])
    assert resid < 1e-8
    assert min_det < 1e-9
    # nearby torus elements keep every eigenvalue below 2
    small, resid = fp.homotopy_nondegeneracy(fp.torus_su([0.05]), fp.torus_su([0.1]))
    assert small > 0.1 and resid < 1e-8


def test_homotopy_catches_paired_zero():
    # paired eigenvalues: det touches zero without changing sign
    a, b = fp.torus_su([0.4]), fp.torus_su([0.2])
    e = fp.eigenvalue_bound_check(a, b)
    m, _ = fp.homotopy_nondegeneracy(a, b)
    assert (e > 2) == (m < 1e-9)


def test_direct_phase_on_shift_clock():
    a, b = fp.shift_clock(3)
    rng = np.random.default_rng(0)
    t = fp.regular_witness(3, a, b, rng)
    assert abs(fp.direct_phase(a, b, t) - (-1) ** 3) < 1e-9


@pytest.mark.parametrize("structure", ["standard", "second"])
def test_phase_model(structure):
    rng = np.random.default_rng(3)
    for _ in range(20):
        t = fp.torus_su(rng.uniform(0, 1, size=2))
        assert abs(fp.phase_model(t, 1, structure) + 1) < 1e-9
        assert abs(fp.phase_model(t, 2, structure) - 1) < 1e-9


def test_phase_branch_cut_detected():
    theta = -1e-8
    A = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    with pytest.raises(fp.BranchCutError):
        fp.phase_factor(A)


def test_pfaffian_squares_to_determinant():
    rng = np.random.default_rng(5)
    for n in (2, 4, 6, 8):
        m = rng.normal(size=(n, n))
        a = m - m.T
        assert math.isclose(fp.pfaffian(a) ** 2, np.linalg.det(a), rel_tol=1e-9)
    assert fp.pfaffian(np.array([[0.0, 1.0], [-1.0, 0.0]])) == 1.0


def test_fusion_volume():
    pairs = fp.weyl_pairs("A3")
    r = fp.fusion_volume_check(pairs, 1000, seed=0)
    assert r["max_volume_error"] <= fp.RTOL
    assert r["max_fusion_error"] <= fp.RTOL
    a1 = fp.weyl_pairs("A1")
    assert {round(fp.torus_pfaffian(w1, w2)) for w1, w2 in a1} <= {1, -1}


@pytest.mark.parametrize("N", [2, 4, 6, 8])
def test_clifford_lifts_commute(N):
    assert fp.clifford_lift_commutes(N)


def test_clifford_lift_reproduces_rotation():
    g1, g2 = fp.dn_lifts(4)
    S, norm = fp.versor_lift(g1)
    assert S.is_even()
    assert fp.versor_action_ok(S, norm, g1)


def test_clifford_rejects_odd_and_large():
    with pytest.raises(ValueError):
        fp.clifford_lift_commutes(5)
    with pytest.raises(ValueError):
        fp.clifford_lift_commutes(10)


def test_blade_products():
    assert fp.blade_mul((1,), (1,)) == (1, ())
    assert fp.blade_mul((1,), (2,)) == (1, (1, 2))
    assert fp.blade_mul((2,), (1,)) == (-1, (1, 2))
    sign, idx = fp.blade_mul((1, 2), (1, 2))
    assert (sign, idx) == (-1, ())


def test_fixed_point_probe_separates_conjugacy_classes():
    gap = fp.fixed_point_probe(3, [0.1, 0.3], [0.15, 0.3], samples=2000, seed=0)
    bound = fp.spectrum_distance(3, [0.1, 0.3], [0.15, 0.3])
    assert bound > 0 and gap >= bound - 1e-9


def test_alcove_meets_classes_once():
    for t in ("A2", "B2", "G2"):
        assert fp.alcove_check(t, 20, 0) == 0


def test_report_is_serialisable():
    import json

    rep = fp.verification_report(samples=200, seed=1)
    again = json.loads(fp.report_json(rep))
    names = {c["name"] for c in again["checks"]}
    assert {"torus_det", "phase_factor", "clifford_D8", "fusion_volume"} <= names
