"""Self-check suites: property and oracle checks at two grid sizes."""

from __future__ import annotations

import json
import platform
import time

from . import checks as C

FAST_TYPES = ("A1", "A2", "B2", "C2", "G2")
FULL_TYPES = ("A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3")


def run_suite(suite: str = "fast", variant: str = "2c", samples: int = 10000, seed: int = 0, log=None) -> dict:
    """Run a suite and return the JSON-ready report.

    ``variant`` selects the admissibility predicate used by the integrality
    sweep; "c" is weaker than the default and lets SO(3) at level 2 through,
    where the index is not an integer.
    """
    if suite == "fast":
        types, kmax, hmax = FAST_TYPES, 4, 2
    elif suite == "full":
        types, kmax, hmax = FULL_TYPES, 8, 3
    else:
        raise ValueError(f"unknown suite {suite!r}")
    t0 = time.perf_counter()
    jobs = [
        lambda: C.check_l0_table(),
        lambda: C.check_integrality(types, kmax, hmax, variant),
        lambda: C.check_orthogonality(types, kmax),
        lambda: C.check_su2_oracle(min(kmax, 12), hmax + 1, 2 if suite == "fast" else 3),
        lambda: C.check_psu((2, 3) if suite == "fast" else (2, 3, 5), hmax),
        lambda: C.check_transformation_law(types, kmax),
        lambda: C.check_dual_characters(types, kmax),
        lambda: C.check_kostant(types, kmax),
        lambda: C.check_t_count(2 if suite == "fast" else 3, kmax),
        lambda: C.check_clifford(),
        lambda: C.check_conjclass(types, kmax, hmax),
    ]
    if suite == "full":
        jobs.append(lambda: C.check_fixed_point_numerics(samples, seed))
    results = []
    for job in jobs:
        r = job()
        if log:
            log(r.line())
        results.append(r)
    return {
        "suite": suite,
        "variant": variant,
        "seed": seed,
        "python": platform.python_version(),
        "all_ok": all(r.ok for r in results),
        "seconds": round(time.perf_counter() - t0, 3),
        "checks": [r.to_dict() for r in results],
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str)
