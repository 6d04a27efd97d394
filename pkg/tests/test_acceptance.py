"""Acceptance suite: one PASS/FAIL line per criterion.

Each test evaluates its criterion in full, records a line (shown in the
terminal summary and on stdout with -s), then asserts.  Timing budgets
are part of each criterion.
"""

import json
import time

import pytest

from conftest import ACCEPTANCE_LINES
from verlinde import checks as C
from verlinde.cli import main

# published smallest levels for adjoint groups, up to rank 9
L0_TABLE = {
    "A1": 4, "A2": 3, "A3": 8, "A4": 5, "A5": 12, "A6": 7, "A7": 16, "A8": 9, "A9": 20,
    "B2": 2, "B3": 2, "B4": 2, "B5": 2, "B6": 2, "B7": 2, "B8": 2, "B9": 2,
    "C2": 2, "C3": 4, "C4": 2, "C5": 4, "C6": 2, "C7": 4, "C8": 2, "C9": 4,
    "D4": 4, "D5": 16, "D6": 4, "D7": 8, "D8": 4, "D9": 16,
    "E6": 3, "E7": 4,
}

SAMPLES = 10_000
SEED = 20240601


def record(number: int, title: str, ok: bool, seconds: float, budget: float, detail: str = "") -> bool:
    within = seconds <= budget
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {number:>2}: {title} ({seconds:.1f}s, budget {budget:.0f}s)"
    if not within:
        line += " over budget"
    if detail:
        line += f" {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and within


def run_check(number, title, budget, fn):
    result = fn()
    extra = ", ".join(f"{k}={v}" for k, v in result.details.items() if k not in ("failures", "report"))
    passed = record(number, title, result.ok, result.seconds, budget, extra)
    return passed, result


def test_c01_l0_table(capsys):
    t0 = time.perf_counter()
    code = main(["levels", "--json"])
    rows = json.loads(capsys.readouterr().out)
    seconds = time.perf_counter() - t0
    got = {r["group"]: r["l0"] for r in rows}
    ok = code == 0 and got == L0_TABLE
    assert record(1, "smallest levels of adjoint groups", ok, seconds, 1.0, f"rows={len(got)}")


def test_c02_integrality():
    passed, r = run_check(2, "integrality sweep", 600, lambda: C.check_integrality(C.GRID_TYPES, 8, 3))
    assert passed, r.details["failures"]


def test_c03_orthogonality():
    passed, r = run_check(3, "two-holed sphere orthogonality", 60, lambda: C.check_orthogonality(C.GRID_TYPES, 8))
    assert passed, r.details["failures"]


def test_c04_su2_oracle():
    passed, r = run_check(4, "SU(2) sine-sum oracle", 60, lambda: C.check_su2_oracle(12, 4, 3))
    assert passed, r.details["failures"]


def test_c05_psu_reduction():
    passed, r = run_check(5, "PSU(p) reduction formula", 120, lambda: C.check_psu((2, 3, 5), 3))
    assert passed, r.details["failures"]


def test_c06_transformation_law():
    passed, r = run_check(6, "character transformation law", 120, lambda: C.check_transformation_law(C.GRID_TYPES, 8))
    assert passed, r.details["failures"]


def test_c07_dual_characters():
    passed, r = run_check(7, "Weyl vs Freudenthal characters", 120, lambda: C.check_dual_characters(C.GRID_TYPES, 8, 500))
    assert passed, r.details["failures"]


def test_c08_kostant():
    passed, r = run_check(8, "exceptional weight criterion", 60, lambda: C.check_kostant(C.GRID_TYPES, 8))
    assert passed, r.details["failures"]


def test_c09_t_count():
    passed, r = run_check(9, "special point count", 60, lambda: C.check_t_count(3, 8))
    assert passed, r.details["failures"]


@pytest.mark.xfail(
    strict=True,
    reason=(
        "the eigenvalue bound < 2 is false: the scalar form 1 - cos a - cos b - cos(a - b) reaches 5/2 "
        "at a = -b = 2pi/3 (SU(3) shift and clock pair); wherever it exceeds 2 the homotopy determinant "
        "vanishes inside (0, 1), at s = 1/3 and 2/3 for the extreme pair; "
        "torus determinant, phase factor and direct phase all hold"
    ),
)
def test_c10_fixed_point_numerics():
    passed, r = run_check(10, "fixed-point numerics", 180, lambda: C.check_fixed_point_numerics(SAMPLES, SEED))
    rep = r.details["report"]
    by = {c["name"]: c for c in rep["checks"]}
    # the parts that hold are asserted unconditionally in test_fixedpoint.py
    assert by["torus_det"]["ok"] and by["phase_factor"]["ok"]
    assert passed, {k: v for k, v in r.details.items() if k != "report"}


def test_c11_clifford_lifts():
    passed, r = run_check(11, "Clifford lifts commute", 1.0, lambda: C.check_clifford((4, 6, 8)))
    assert passed


def test_c12_conjugacy_classes():
    passed, r = run_check(12, "conjugacy-class dual path", 120, lambda: C.check_conjclass(C.GRID_TYPES, 8, 3))
    assert passed, r.details["failures"]
