"""Property and oracle checks shared by the selfcheck command and the test suite.

Every check returns a CheckResult; none of them raise on a mismatch.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Sequence

import mpmath
import numpy as np

from .center import (
    CenterCharacter,
    CenterSubgroup,
    all_subgroups,
    generating_characters,
    level_action_table,
    pairing_exponent,
)
from .characters import (
    ExceptionalWeightAbsent,
    _mult_matrix,
    character_table,
    exceptional_weight,
    freudenthal_row,
    kostant_character,
    t_count,
    t_count_bruteforce,
)
from .cyclotomic import CycloNumber, root_of_unity
from .formulas import (
    admissible_level,
    adjoint_min_level,
    conjclass_all_mu,
    conjclass_orbit_sum,
    level_data,
    ns_all_mu,
    orthogonality_matrix,
    psu_p_crosscheck,
    verlinde_closed,
    verlinde_conjclass_formula,
    verlinde_ns,
    verlinde_sc,
)
from .rootdata import LieType, build_root_datum, level_weights, weyl_dimension

GRID_TYPES = ("A1", "A2", "A3", "B2", "C2", "D4", "G2")


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items() if k not in ("failures", "report"))
        return f"{status} {self.name} ({self.seconds:.1f}s) {extra}".rstrip()

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "seconds": round(self.seconds, 3), "details": self.details}


def timed(name: str, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    ok, details = fn()
    return CheckResult(name, ok, details, time.perf_counter() - t0)


def _levels(d, gamma_order: int, kmax: int, variant: str = "2c") -> list[int]:
    return [k for k in range(1, kmax + 1) if admissible_level(d, gamma_order, k, variant)]


# -- 1. smallest admissible levels of adjoint groups ------------------------


def expected_l0(family: str, n: int) -> int:
    """The published table of smallest levels for adjoint groups."""
    if family == "A":
        return n + 1 if n % 2 == 0 else 2 * (n + 1)
    if family == "B":
        return 2
    if family == "C":
        return 2 if n % 2 == 0 else 4
    if family == "D":
        if n % 2 == 0:
            return 4
        return 16 if n % 4 == 1 else 8
    if family == "E":
        return {6: 3, 7: 4}[n]
    raise ValueError(family)


def l0_rows(max_rank: int = 9) -> list[tuple[str, int, int]]:
    """(type, computed, expected) for every type in the table up to max_rank."""
    rows = []
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        for n in range(lo, max_rank + 1):
            d = build_root_datum(LieType(fam, n))
            rows.append((f"{fam}{n}", adjoint_min_level(d), expected_l0(fam, n)))
    for n in (6, 7):
        d = build_root_datum(LieType("E", n))
        rows.append((f"E{n}", adjoint_min_level(d), expected_l0("E", n)))
    return rows


def check_l0_table(max_rank: int = 9) -> CheckResult:
    def run():
        rows = l0_rows(max_rank)
        bad = [r for r in rows if r[1] != r[2]]
        return not bad, {"rows": len(rows), "mismatches": bad}

    return timed("l0_table", run)


# -- 2. integrality ----------------------------------------------------------


def check_integrality(types=GRID_TYPES, kmax: int = 8, hmax: int = 3, variant: str = "2c", extra=()) -> CheckResult:
    """All admissible (Gamma, k, h, mu, phi) give integers.

    ``extra`` adds (type, gamma order, k) cases evaluated regardless of the
    admissibility predicate, to demonstrate failures of weaker predicates.
    """

    def run():
        count = 0
        bad = []
        for t in types:
            d = build_root_datum(t)
            for gamma in all_subgroups((d,)):
                for k in _levels(d, gamma.order, kmax, variant):
                    for h in range(1, hmax + 1):
                        phis = generating_characters(gamma, h)
                        vals = ns_all_mu(d, k, h, gamma, phis)
                        for (pi, mu), v in vals.items():
                            count += 1
                            if not v.is_rational() or v.den != 1:
                                shown = str(v.as_rational()) if v.is_rational() else f"{v.to_complex():.6g}"
                                bad.append((t, gamma.order, k, h, mu, pi, shown))
        for t, order, k in extra:
            d = build_root_datum(t)
            gamma = next(g for g in all_subgroups((d,)) if g.order == order)
            for h in range(1, hmax + 1):
                v = verlinde_ns(gamma, k, h, (0,) * d.rank, unsafe=True, variant=variant).exact
                count += 1
                if v.denominator != 1:
                    bad.append((t, order, k, h, "0", str(v)))
        return not bad, {"cases": count, "failures": bad[:20], "n_failures": len(bad)}

    return timed("integrality", run)


# -- 3. orthogonality ----------------------------------------------------------


def check_orthogonality(types=GRID_TYPES, kmax: int = 8) -> CheckResult:
    def run():
        count = 0
        bad = []
        for t in types:
            d = build_root_datum(t)
            for k in range(1, kmax + 1):
                for (m1, m2), v in orthogonality_matrix(d, k).items():
                    count += 1
                    if v != (1 if d.dual_weight(m1) == m2 else 0):
                        bad.append((t, k, m1, m2, str(v)))
        return not bad, {"pairs": count, "failures": bad[:20]}

    return timed("orthogonality", run)


# -- 4. SU(2) sine-sum oracle ---------------------------------------------------


def su2_sine_oracle(k: int, h: int, marks: Sequence[int], digits: int = 30) -> mpmath.mpf:
    """((k+2)/2)^(h-1) sum_j sin^(2-2h) prod_i sin(pi j (m_i+1)/(k+2)) / sin.

    Evaluated in binary floating point at ``digits`` decimal digits; at
    h = 4, k = 12 the terms reach 1e8 and cancel, which is beyond what
    double precision can resolve to 1e-6.
    """
    n = k + 2
    with mpmath.workdps(digits):
        total = mpmath.mpf(0)
        for j in range(1, n):
            s = mpmath.sinpi(mpmath.mpf(j) / n)
            term = s ** (2 - 2 * h)
            for m in marks:
                term *= mpmath.sinpi(mpmath.mpf(j * (m + 1)) / n) / s
            total += term
        return (mpmath.mpf(n) / 2) ** (h - 1) * total


def check_su2_oracle(kmax: int = 12, hmax: int = 4, rmax: int = 3) -> CheckResult:
    def run():
        d = build_root_datum("A1")
        count, worst = 0, 0.0
        bad = []
        for k in range(1, kmax + 1):
            for h in range(0, hmax + 1):
                for r in range(0, rmax + 1):
                    for marks in combinations_with_replacement(range(k + 1), r):
                        exact = verlinde_sc(d, k, h, [(m,) for m in marks]).exact
                        approx = su2_sine_oracle(k, h, marks)
                        nearest = int(mpmath.nint(approx))
                        resid = float(abs(approx - nearest))
                        worst = max(worst, resid)
                        count += 1
                        if exact.denominator != 1 or exact != nearest or resid >= 1e-6:
                            bad.append((k, h, marks, str(exact), float(approx)))
                    if r == 0 and h >= 0:
                        if verlinde_closed(d, k, h).exact != verlinde_sc(d, k, h).exact:
                            bad.append((k, h, "closed"))
        return not bad, {"cases": count, "max_residual": f"{worst:.2e}", "failures": bad[:20]}

    return timed("su2_sine_oracle", run)


# -- 5. PSU(p) reduction ------------------------------------------------------------


def check_psu(primes=(2, 3, 5), hmax: int = 3, all_mu_upto: int = 3) -> CheckResult:
    def run():
        count = 0
        bad = []
        for p in primes:
            d = build_root_datum(LieType("A", p - 1))
            gamma = CenterSubgroup.full((d,))
            for k in _levels(d, p, 4 * p):
                mus = level_weights(d, k) if p <= all_mu_upto else [(0,) * d.rank, (k,) + (0,) * (d.rank - 1)]
                mus = [m for m in mus if gamma.is_restricted((m,))] + [m for m in mus if not gamma.is_restricted((m,))]
                for h in range(1, hmax + 1):
                    phis = generating_characters(gamma, h) if p <= all_mu_upto else [CenterCharacter.trivial(gamma, h)]
                    for mu in mus:
                        for phi in phis:
                            lhs, rhs = psu_p_crosscheck(p, k, h, mu, phi)
                            count += 1
                            if lhs != rhs:
                                bad.append((p, k, h, mu, str(lhs), str(rhs)))
        d = build_root_datum("A1")
        anchor_ns = verlinde_ns(CenterSubgroup.full((d,)), 4, 2, (0,)).exact
        anchor = psu_p_crosscheck(2, 4, 2)
        ok_anchor = anchor_ns == 5 and anchor == (5, 5)
        return not bad and ok_anchor, {"cases": count, "anchor_SO3_k4_h2": str(anchor_ns), "failures": bad[:20]}

    return timed("psu_reduction", run)


# -- 6. transformation law ----------------------------------------------------------


def check_transformation_law(types=GRID_TYPES, kmax: int = 8) -> CheckResult:
    """chi_{gamma mu}(t_lambda) = gamma^lambda chi_mu(t_lambda) for all gamma, mu, lambda."""

    def run():
        count = 0
        bad = []
        for t in types:
            d = build_root_datum(t)
            for k in range(1, kmax + 1):
                table = character_table(d, k)
                n = table.modulus
                acts = level_action_table(d, k)
                for g in range(1, d.center_order):
                    exps = []
                    for lam in table.weights:
                        q = pairing_exponent(d, g, lam)
                        if n % q.denominator:
                            raise ArithmeticError("pairing root of unity outside the character field")
                        exps.append(q.numerator * (n // q.denominator))
                    mats = {e: _mult_matrix(root_of_unity(n, e).lift(n)) for e in set(exps)}
                    for mu in table.weights:
                        lhs = table.row(acts[g][mu]).astype(object)
                        base = table.row(mu).astype(object)
                        rhs = np.array([base[i].dot(mats[e].astype(object)) for i, e in enumerate(exps)], dtype=object)
                        count += len(exps)
                        if not np.array_equal(lhs, rhs):
                            bad.append((t, k, g, mu))
        return not bad, {"values": count, "failures": bad[:20]}

    return timed("transformation_law", run)


# -- 7. Weyl vs Freudenthal ------------------------------------------------------


def check_dual_characters(types=GRID_TYPES, kmax: int = 8, max_dim: int = 500) -> CheckResult:
    def run():
        count = 0
        bad = []
        for t in types:
            d = build_root_datum(t)
            for k in range(1, kmax + 1):
                table = character_table(d, k, "weyl")
                for mu in table.weights:
                    if weyl_dimension(d, mu) > max_dim:
                        continue
                    a = table.row(mu).astype(object)
                    b = freudenthal_row(d, mu, table.modulus, table.pairings).astype(object)
                    count += len(table.weights)
                    if not np.array_equal(a, b):
                        bad.append((t, k, mu))
        return not bad, {"pairs": count, "failures": bad[:20]}

    return timed("weyl_vs_freudenthal", run)


# -- 8. Kostant ---------------------------------------------------------------------


def check_kostant(types=GRID_TYPES, kmax: int = 8) -> CheckResult:
    def run():
        count = 0
        bad = []
        for t in types:
            d = build_root_datum(t)
            for k in range(1, kmax + 1):
                try:
                    lam0 = exceptional_weight(d, k)
                except ExceptionalWeightAbsent:
                    continue
                table = character_table(d, k)
                for mu in table.weights:
                    direct = table.value(mu, lam0)
                    crit = kostant_character(d, mu, k)
                    count += 1
                    if direct != crit or crit not in (-1, 0, 1):
                        bad.append((t, k, mu, crit))
        return not bad, {"weights": count, "failures": bad[:20]}

    return timed("kostant", run)


# -- 9. counting special points ----------------------------------------------------


def check_t_count(max_rank: int = 3, lmax: int = 8) -> CheckResult:
    def run():
        count = 0
        bad = []
        for fam in "ABCDG":
            for n in range(1, max_rank + 1):
                try:
                    d = build_root_datum(LieType(fam, n))
                except ValueError:
                    continue
                for l in range(1, lmax + 1):
                    count += 1
                    a, b = t_count(d, l), t_count_bruteforce(d, l)
                    if a != b:
                        bad.append((f"{fam}{n}", l, a, b))
        return not bad, {"cases": count, "failures": bad}

    return timed("t_count", run)


# -- 10, 11. numerics ------------------------------------------------------------------


def check_fixed_point_numerics(samples: int = 10000, seed: int = 0) -> CheckResult:
    from .fixedpoint import verification_report

    def run():
        rep = verification_report(samples, seed)
        by = {c["name"]: c for c in rep["checks"]}
        needed = ["torus_det", "eigenvalue_bound_SU2", "eigenvalue_bound_SU3", "phase_factor",
                  "homotopy_SU2", "homotopy_SU3"]
        ok = all(by[n]["ok"] for n in needed)
        details = {n: ("ok" if by[n]["ok"] else "FAILED") for n in needed}
        details["max_eigenvalue_SU2"] = round(by["eigenvalue_bound_SU2"]["max_eigenvalue"], 6)
        details["max_eigenvalue_SU3"] = round(by["eigenvalue_bound_SU3"]["max_eigenvalue"], 6)
        details["direct_phase"] = "ok" if by["direct_phase_SU2"]["ok"] and by["direct_phase_SU3"]["ok"] else "FAILED"
        details["report"] = rep
        return ok, details

    return timed("fixed_point_numerics", run)


def check_clifford(Ns=(4, 6, 8)) -> CheckResult:
    from .fixedpoint import clifford_lift_commutes

    def run():
        res = {N: clifford_lift_commutes(N) for N in Ns}
        return all(res.values()), {f"D{N}": v for N, v in res.items()}

    return timed("clifford_lifts", run)


# -- 12. conjugacy classes ----------------------------------------------------------


def check_conjclass(types=GRID_TYPES, kmax: int = 8, hmax: int = 3, max_weights: int = 60) -> CheckResult:
    """Orbit formula against the orbit sum of component indices.

    All admissible (Gamma, k, h) and every mu; phi is trivial, plus the
    generating characters whenever the level has at most ``max_weights``
    weights.  The batched orbit formula is also compared with the
    one-query implementation on the highest weight of each grid point.
    """

    def run():
        count = 0
        bad = []
        for t in types:
            d = build_root_datum(t)
            for gamma in all_subgroups((d,)):
                if gamma.order == 1:
                    continue
                for k in _levels(d, gamma.order, kmax):
                    weights = level_weights(d, k)
                    for h in range(1, hmax + 1):
                        phis = generating_characters(gamma, h) if len(weights) <= max_weights else [CenterCharacter.trivial(gamma, h)]
                        all_ns = ns_all_mu(d, k, h, gamma, phis)
                        formula = conjclass_all_mu(d, k, h, gamma, phis)
                        for pi, phi in enumerate(phis):
                            for mu in weights:
                                a = formula[(pi, mu)].as_rational()
                                orbit = {gamma.act(g, (mu,), (k,))[0] for g in gamma.elements}
                                b = sum((all_ns[(pi, m)].as_rational() for m in orbit), Fraction(0))
                                count += 1
                                if a != b:
                                    bad.append((t, gamma.order, k, h, mu, pi, str(a), str(b)))
                            single = verlinde_conjclass_formula(gamma, k, h, weights[-1], phi).exact
                            if single != formula[(pi, weights[-1])].as_rational():
                                bad.append((t, gamma.order, k, h, weights[-1], pi, "single", str(single)))
        return not bad, {"cases": count, "failures": bad[:20]}

    return timed("conjclass_dual_path", run)


def check_conjclass_spot() -> CheckResult:
    """A direct comparison through repeated verlinde_ns calls on a few cases."""

    def run():
        d = build_root_datum("A1")
        gamma = CenterSubgroup.full((d,))
        bad = []
        for mu in [(0,), (2,), (4,)]:
            a = verlinde_conjclass_formula(gamma, 4, 2, mu).exact
            b = conjclass_orbit_sum(gamma, 4, 2, mu)
            if a != b:
                bad.append((mu, str(a), str(b)))
        return not bad, {"failures": bad}

    return timed("conjclass_spot", run)


def level_data_warm(types=GRID_TYPES, kmax: int = 8):
    for t in types:
        d = build_root_datum(t)
        for k in range(1, kmax + 1):
            level_data(d, k)
