"""Characters and Weyl denominators at the special torus elements t_lambda.

A point xi of the Cartan subalgebra is described by a *pairing vector*
``p`` and modulus ``N`` such that <omega_i, xi> = p_i / N.  Then the phase
of a weight lam at exp(xi) is zeta_N^(lam . p).  For t_lambda at level k,
N = d (k + c) and p = Gd (lambda + rho), with Gd the integer Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .cyclotomic import (
    CycloNumber,
    euler_phi,
    one_minus_root_inverse,
    reduction_matrix,
    root_of_unity,
)
from .rootdata import (
    GroupTooLargeError,
    RootDatum,
    Vector,
    WEYL_GROUP_CAP,
    level_weights,
    weyl_dimension,
)

FREUDENTHAL_DIM_CAP = 10**6


class SingularPointError(ArithmeticError):
    """The Weyl denominator vanishes at the requested point."""


class ExceptionalWeightAbsent(ValueError):
    """c does not divide k, so (k/c) rho is not a level-k weight."""


@dataclass(frozen=True)
class SpecialPoint:
    datum: RootDatum
    k: int
    lam: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.datum.gram_denominator * (self.k + self.datum.dual_coxeter)

    @property
    def pairing(self) -> tuple[int, ...]:
        return special_pairing(self.datum, self.lam)

    @property
    def xi(self) -> Vector:
        shifted = tuple(c + 1 for c in self.lam)
        x = self.datum.to_ambient(shifted)
        return tuple(v / (self.k + self.datum.dual_coxeter) for v in x)


def special_pairing(d: RootDatum, lam: Sequence[int]) -> tuple[int, ...]:
    g = d.gram_int
    shifted = [c + 1 for c in lam]
    return tuple(sum(g[i][j] * shifted[j] for j in range(d.rank)) for i in range(d.rank))


def pairing_of_point(d: RootDatum, xi: Sequence) -> tuple[int, tuple[int, ...]]:
    """(N, p) with <omega_i, xi> = p_i / N for a rational ambient vector."""
    vals = [d.inner(w, xi) for w in d.fundamental_weights]
    n = 1
    for v in vals:
        n = n * v.denominator // math.gcd(n, v.denominator)
    return n, tuple(int(v * n) for v in vals)


def _phase(lam: Sequence[int], p: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(lam, p))


@lru_cache(maxsize=4096)
def _regular_orbit(d: RootDatum, top: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    pts = d.orbit_with_signs(top)
    return np.array([p for p, _ in pts], dtype=np.int64), np.array([s for _, s in pts], dtype=np.int64)


def _check_weyl_cap(d: RootDatum):
    if d.lie_type.weyl_order > WEYL_GROUP_CAP:
        raise GroupTooLargeError(f"|W({d.lie_type})| exceeds the cap; use the Freudenthal path")


def alternating_sum(d: RootDatum, top: Sequence[int], n: int, p: Sequence[int]) -> CycloNumber:
    """sum_w det(w) zeta_N^(w(top) . p) for a strictly dominant ``top``."""
    _check_weyl_cap(d)
    pts, signs = _regular_orbit(d, tuple(top))
    exps = (pts @ np.array(p, dtype=np.int64)) % n
    buckets = np.bincount(exps, weights=signs, minlength=n).astype(np.int64)
    return CycloNumber.from_buckets(n, buckets.tolist())


def weyl_denominator_sq(d: RootDatum, xi: Sequence) -> CycloNumber:
    n, p = pairing_of_point(d, xi)
    return _weyl_denominator_sq(d, n, p)


def _root_exponents(d: RootDatum, n: int, p: Sequence[int]) -> list[int]:
    return [_phase(a, p) % n for a in d.positive_roots_weight]


def _smallest_field(n: int, exps: Sequence[int]) -> tuple[int, list[int]]:
    """Shrink the modulus when all exponents share a factor with it."""
    g = n
    for e in exps:
        g = math.gcd(g, e)
    return n // g, [e // g for e in exps]


@lru_cache(maxsize=None)
def _abs_one_minus_sq(n: int, e: int) -> CycloNumber:
    return 2 - root_of_unity(n, e) - root_of_unity(n, -e)


@lru_cache(maxsize=None)
def _abs_one_minus_sq_inverse(n: int, e: int) -> CycloNumber:
    return one_minus_root_inverse(n, e) * one_minus_root_inverse(n, -e)


def _weyl_denominator_sq(d: RootDatum, n: int, p: Sequence[int]) -> CycloNumber:
    exps = _root_exponents(d, n, p)
    if any(e == 0 for e in exps):
        return CycloNumber.zero(n)
    m, exps = _smallest_field(n, exps)
    out = CycloNumber.one(m)
    for e in exps:
        out = out * _abs_one_minus_sq(m, e)
    return out


def _weyl_denominator_sq_inverse(d: RootDatum, n: int, p: Sequence[int]) -> CycloNumber:
    exps = _root_exponents(d, n, p)
    if any(e == 0 for e in exps):
        raise SingularPointError("Weyl denominator vanishes at this point")
    m, exps = _smallest_field(n, exps)
    out = CycloNumber.one(m)
    for e in exps:
        out = out * _abs_one_minus_sq_inverse(m, e)
    return out


def weyl_denominator_sq_inverse(d: RootDatum, xi: Sequence) -> CycloNumber:
    n, p = pairing_of_point(d, xi)
    return _weyl_denominator_sq_inverse(d, n, p)


def eval_character(d: RootDatum, mu: Sequence[int], xi: Sequence) -> CycloNumber:
    """chi_mu(exp xi) by the Weyl character formula (exact)."""
    if any(c < 0 for c in mu):
        raise ValueError("highest weight must be dominant")
    n, p = pairing_of_point(d, xi)
    return _eval_weyl(d, mu, n, p)


def _eval_weyl(d: RootDatum, mu: Sequence[int], n: int, p: Sequence[int]) -> CycloNumber:
    rho = d.rho_weight
    a_rho = alternating_sum(d, rho, n, p)
    if a_rho.is_zero():
        raise SingularPointError("singular point: Weyl denominator vanishes")
    num = alternating_sum(d, tuple(c + 1 for c in mu), n, p)
    # chi = A_{mu+rho} conj(A_rho) / |J|^2
    return num * a_rho.conj() * _weyl_denominator_sq_inverse(d, n, p)


# -- Freudenthal ---------------------------------------------------------


@lru_cache(maxsize=None)
def _cartan_inverse(d: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    from .rootdata import _mat_inverse

    return tuple(tuple(r) for r in _mat_inverse(d.cartan))


def root_coordinates_of_weight(d: RootDatum, x: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients c with x = sum c_i alpha_i (x in weight coordinates)."""
    inv = _cartan_inverse(d)
    return tuple(sum((inv[i][j] * x[j] for j in range(d.rank)), Fraction(0)) for i in range(d.rank))


def _is_below(d: RootDatum, mu: Sequence[int], nu: Sequence[int]) -> bool:
    diff = [a - b for a, b in zip(mu, nu)]
    return all(c.denominator == 1 and c >= 0 for c in root_coordinates_of_weight(d, diff))


@lru_cache(maxsize=512)
def weight_multiplicities(d: RootDatum, mu: tuple[int, ...], cap: int = FREUDENTHAL_DIM_CAP) -> dict:
    """Full weight system {nu: mult} of V_mu via Freudenthal's recursion."""
    dim = weyl_dimension(d, mu)
    if dim > cap:
        raise ValueError(f"dim V_mu = {dim} exceeds Freudenthal cap {cap}")
    simple = [tuple(d.cartan[j][i] for j in range(d.rank)) for i in range(d.rank)]
    # dominant weights below mu, by depth
    dominant = {mu: 0}
    seen = {mu}
    rejected: set = set()
    frontier = [mu]
    while frontier:
        nxt = []
        for nu in frontier:
            for a in simple:
                cand = tuple(x - y for x, y in zip(nu, a))
                if cand in seen:
                    continue
                dom, _ = d.dominant_conjugate(cand)
                if dom in rejected:
                    continue
                if dom not in dominant:
                    if not _is_below(d, mu, dom):
                        rejected.add(dom)
                        continue
                    dominant[dom] = sum(root_coordinates_of_weight(d, [x - y for x, y in zip(mu, dom)]))
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    order = sorted(dominant, key=lambda v: dominant[v])
    g = d.gram_weights
    r = d.rank

    def ip(x, y):
        return sum(g[i][j] * x[i] * y[j] for i in range(r) for j in range(r) if x[i] and y[j])

    rho = d.rho_weight
    mr = tuple(a + b for a, b in zip(mu, rho))
    norm_top = ip(mr, mr)
    mult = {mu: 1}
    pos = d.positive_roots_weight

    def m_of(x):
        dom, _ = d.dominant_conjugate(x)
        return mult.get(dom, 0)

    for nu in order[1:]:
        nr = tuple(a + b for a, b in zip(nu, rho))
        lhs = norm_top - ip(nr, nr)
        acc = Fraction(0)
        for a in pos:
            j = 1
            while True:
                x = tuple(v + j * c for v, c in zip(nu, a))
                dom, _ = d.dominant_conjugate(x)
                if dom not in dominant:
                    break
                m = mult.get(dom, 0)
                if m:
                    acc += m * ip(x, a)
                j += 1
        val = 2 * acc / lhs
        assert val.denominator == 1 and val >= 0
        mult[nu] = int(val)
    # expand to the full weight system
    full = {}
    for nu, m in mult.items():
        if m:
            for x, _ in d.orbit_with_signs(nu):
                full[x] = m
    return full


def eval_character_freudenthal(d: RootDatum, mu: Sequence[int], xi: Sequence, cap: int = FREUDENTHAL_DIM_CAP) -> CycloNumber:
    """chi_mu(exp xi) as sum_nu mult(nu) zeta^(nu . p); valid at singular points too."""
    n, p = pairing_of_point(d, xi)
    return _eval_freudenthal(d, tuple(mu), n, p, cap)


def _eval_freudenthal(d: RootDatum, mu: tuple[int, ...], n: int, p: Sequence[int], cap: int = FREUDENTHAL_DIM_CAP) -> CycloNumber:
    buckets = [0] * n
    for nu, m in weight_multiplicities(d, mu, cap).items():
        buckets[_phase(nu, p) % n] += m
    return CycloNumber.from_buckets(n, buckets)


# -- counting and Kostant --------------------------------------------------


def t_count(d: RootDatum, l: int) -> int:
    if l < 1:
        raise ValueError("l must be positive")
    return l**d.rank * d.center_order * d.long_index


def t_count_bruteforce(d: RootDatum, l: int) -> int:
    """Count weight-lattice points in a fundamental domain of l * coroot lattice.

    Works in weight coordinates: the coroot alpha_i^vee has coordinates
    (column i of the Cartan matrix) * 2/|alpha_i|^2.
    """
    r = d.rank
    basis = []
    for i in range(r):
        m = 2 / d.norm2(d.simple_roots[i])
        basis.append([int(l * m * d.cartan[j][i]) for j in range(r)])
    # bounding box of the parallelepiped
    lo = [0] * r
    hi = [0] * r
    for signs in product((0, 1), repeat=r):
        v = [sum(s * b[j] for s, b in zip(signs, basis)) for j in range(r)]
        lo = [min(a, b) for a, b in zip(lo, v)]
        hi = [max(a, b) for a, b in zip(hi, v)]
    bmat = np.array(basis, dtype=float).T  # columns are basis vectors
    binv = np.linalg.inv(bmat)
    from .rootdata import _mat_inverse

    exact_inv = _mat_inverse([[Fraction(basis[j][i]) for j in range(r)] for i in range(r)])
    count = 0
    grids = np.stack(np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij"), -1).reshape(-1, r)
    coords = grids @ binv.T
    eps = 1e-9
    cand = np.all((coords > -eps) & (coords < 1 + eps), axis=1)
    for pt in grids[cand]:
        c = [sum(exact_inv[i][j] * int(pt[j]) for j in range(r)) for i in range(r)]
        if all(0 <= x < 1 for x in c):
            count += 1
    return count


def exceptional_weight(d: RootDatum, k: int) -> tuple[int, ...]:
    c = d.dual_coxeter
    if k % c:
        raise ExceptionalWeightAbsent(f"c = {c} does not divide k = {k}")
    return tuple(k // c for _ in range(d.rank))


def kostant_character(d: RootDatum, mu: Sequence[int], k: int) -> int:
    """chi_mu(t_{lambda_0}) via the lattice criterion, a value in {-1, 0, 1}.

    Searches w with w(mu + rho) - rho in c * Q^vee.
    """
    exceptional_weight(d, k)
    c = d.dual_coxeter
    top = tuple(a + 1 for a in mu)
    rho = d.rho_weight
    pts, signs = _regular_orbit(d, top)
    for pt, s in zip(pts.tolist(), signs.tolist()):
        x = d.to_ambient([a - b for a, b in zip(pt, rho)])
        # coefficient of alpha_i^vee in x/c is <x, omega_i>/c
        if all((d.inner(x, w) / c).denominator == 1 for w in d.fundamental_weights):
            return int(s)
    return 0


def dual_weight(d: RootDatum, mu: Sequence[int]) -> tuple[int, ...]:
    return d.dual_weight(mu)


# -- character tables ------------------------------------------------------


class CharacterTable:
    """chi_mu(t_lambda) for mu, lambda in the level-k alcove weights.

    Rows are built lazily: ``row(mu)`` is an integer array of shape
    (L, phi) holding the power-basis coordinates of chi_mu(t_lambda) for
    every lambda.  Characters are algebraic integers, so these are integral.
    """

    def __init__(self, d: RootDatum, k: int, method: str = "auto"):
        self.datum = d
        self.k = k
        self.weights = level_weights(d, k)
        self.index = {w: i for i, w in enumerate(self.weights)}
        self.modulus = d.gram_denominator * (k + d.dual_coxeter)
        self.phi = euler_phi(self.modulus)
        self.pairings = [special_pairing(d, lam) for lam in self.weights]
        if method == "auto":
            method = "weyl" if d.lie_type.weyl_order <= WEYL_GROUP_CAP else "freudenthal"
        self.method = method
        self._rows: dict = {}
        self._conj_rows: dict = {}
        self._j2 = None
        self._j2_inv = None
        self._factors = None

    @property
    def j2(self) -> list[CycloNumber]:
        if self._j2 is None:
            self._j2 = [_weyl_denominator_sq(self.datum, self.modulus, p) for p in self.pairings]
        return self._j2

    @property
    def j2_inv(self) -> list[CycloNumber]:
        if self._j2_inv is None:
            self._j2_inv = [_weyl_denominator_sq_inverse(self.datum, self.modulus, p) for p in self.pairings]
        return self._j2_inv

    def _weyl_factors(self) -> list[np.ndarray]:
        # multiplication matrices of conj(A_rho) / |J|^2, one per lambda
        if self._factors is None:
            d, n = self.datum, self.modulus
            mats = []
            for li, p in enumerate(self.pairings):
                a_rho = alternating_sum(d, d.rho_weight, n, p)
                f = (a_rho.conj() * self.j2_inv[li]).lift(n)
                mats.append((_mult_matrix(f), f.den))
            self._factors = mats
        return self._factors

    def row(self, mu: Sequence[int]) -> np.ndarray:
        mu = tuple(mu)
        if mu in self._rows:
            return self._rows[mu]
        if mu not in self.index:
            raise ValueError(f"{mu} is not a level-{self.k} weight")
        d, n = self.datum, self.modulus
        L = len(self.weights)
        if not any(mu):
            out = np.zeros((L, self.phi), dtype=np.int64)
            out[:, 0] = 1
        elif self.method == "freudenthal":
            out = freudenthal_row(d, mu, n, self.pairings)
        else:
            P = np.array(self.pairings, dtype=np.int64)
            pts, signs = _regular_orbit(d, tuple(c + 1 for c in mu))
            exps = (pts @ P.T) % n  # (|W|, L)
            buckets = np.zeros((L, n), dtype=np.int64)
            for li in range(L):
                np.add.at(buckets[li], exps[:, li], signs)
            nums = buckets @ reduction_matrix(n)  # A_{mu+rho}(t_lambda)
            rows = []
            for li, (mat, den) in enumerate(self._weyl_factors()):
                v = _apply_mult(nums[li], mat)
                q = [int(x) for x in v]
                if any(x % den for x in q):
                    raise ArithmeticError("character value is not an algebraic integer")
                rows.append([x // den for x in q])
            out = _shrink(np.array(rows, dtype=object))
        self._rows[mu] = out
        return out

    def conj_row(self, mu: Sequence[int]) -> np.ndarray:
        mu = tuple(mu)
        if mu not in self._conj_rows:
            self._conj_rows[mu] = _apply_mult(self.row(mu), _conj_matrix(self.modulus))
        return self._conj_rows[mu]

    @property
    def chi(self) -> np.ndarray:
        """The full table, shape (M, L, phi)."""
        return np.stack([self.row(mu) for mu in self.weights])

    def value(self, mu: Sequence[int], lam: Sequence[int]) -> CycloNumber:
        li = self.index[tuple(lam)]
        return CycloNumber(self.modulus, [int(c) for c in self.row(mu)[li]])

    def conj_value(self, mu, lam) -> CycloNumber:
        li = self.index[tuple(lam)]
        return CycloNumber(self.modulus, [int(c) for c in self.conj_row(mu)[li]])


def freudenthal_row(d: RootDatum, mu: Sequence[int], n: int, pairings: Sequence[Sequence[int]], cap: int = FREUDENTHAL_DIM_CAP) -> np.ndarray:
    """chi_mu at every pairing vector via the weight system, shape (L, phi)."""
    mults = weight_multiplicities(d, tuple(mu), cap)
    wts = np.array(list(mults.keys()), dtype=np.int64)
    m = np.array(list(mults.values()), dtype=np.int64)
    P = np.array(pairings, dtype=np.int64)
    exps = (wts @ P.T) % n  # (#weights, L)
    L = len(pairings)
    buckets = np.zeros((L, n), dtype=np.int64)
    for li in range(L):
        np.add.at(buckets[li], exps[:, li], m)
    return buckets @ reduction_matrix(n)


def _mult_matrix(f: CycloNumber) -> np.ndarray:
    """Integer matrix M with (x * f.num) = x @ M in the power basis."""
    n, phi = f.modulus, f.phi
    red = reduction_matrix(n)
    big = max((abs(c) for c in f.num), default=0) * int(np.abs(red).max()) * 2 * phi
    dtype = np.int64 if big < 2**62 else object
    num = np.array(f.num, dtype=dtype)
    # row j holds z^j * f before reduction, exponents folded mod n
    width = max(n, 2 * phi - 1)
    shifted = np.zeros((phi, width), dtype=dtype)
    for j in range(phi):
        shifted[j, j : j + phi] = num
    folded = shifted[:, :n].copy()
    if width > n:
        folded[:, : width - n] += shifted[:, n:]
    return _shrink(folded @ red.astype(dtype))


@lru_cache(maxsize=None)
def _conj_matrix(n: int) -> np.ndarray:
    phi = euler_phi(n)
    red = reduction_matrix(n)
    return np.stack([red[(-j) % n] for j in range(phi)])


def _apply_mult(x: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """x @ mat exactly, using int64 only when the result provably fits."""
    mx = int(np.abs(x).max()) if x.size else 0
    mm = int(np.abs(mat).max()) if mat.size else 0
    if x.dtype != object and mat.dtype != object and mx * mm * mat.shape[0] < 2**62:
        return x @ mat
    return _shrink(x.astype(object).dot(mat.astype(object)))


def _shrink(arr: np.ndarray) -> np.ndarray:
    if arr.dtype != object:
        return arr
    if not arr.size:
        return arr.astype(np.int64)
    if max(arr.max(), -arr.min()) < 2**40:
        return arr.astype(np.int64)
    return arr


@lru_cache(maxsize=64)
def character_table(d: RootDatum, k: int, method: str = "auto") -> CharacterTable:
    return CharacterTable(d, k, method)
