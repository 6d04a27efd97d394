"""Floating-point checks of the fixed-point linear algebra.

Covers the 2-form matrix C on the once-punctured torus G x G, its
restriction to torus fixed sets, the homotopy to the standard form, the
phase-factor square root, commuting Clifford lifts for D_N and fusion
volume invariance on torus fixed sets.

Lie algebras carry the inner product <X, Y> = -tr(XY), and Ad is written in
an orthonormal basis for it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

import numpy as np

ATOL = 1e-10
RTOL = 1e-8
CLUSTER_TOL = 1e-8


class BranchCutError(ArithmeticError):
    """An eigenvalue sits at the square-root branch cut; perturb the sample."""


class SplittingError(ArithmeticError):
    """Joint eigenspaces could not be separated cleanly."""


# -- groups and adjoint representations ----------------------------------------


@dataclass(frozen=True)
class MatrixGroupElement:
    group: str  # "SU" or "SO"
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = self.matrix
        n = m.shape[0]
        if self.group not in ("SU", "SO"):
            raise ValueError("group must be 'SU' or 'SO'")
        if np.abs(m @ m.conj().T - np.eye(n)).max() > 1e-12:
            raise ValueError("matrix is not unitary")
        if abs(np.linalg.det(m) - 1) > 1e-12:
            raise ValueError("determinant is not 1")
        if self.group == "SO" and np.iscomplexobj(m) and np.abs(m.imag).max() > 0:
            raise ValueError("SO element must be real")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def inv(self) -> "MatrixGroupElement":
        return MatrixGroupElement(self.group, self.matrix.conj().T)

    def __mul__(self, other: "MatrixGroupElement") -> "MatrixGroupElement":
        return MatrixGroupElement(self.group, self.matrix @ other.matrix)


@lru_cache(maxsize=None)
def lie_algebra_basis(group: str, n: int) -> np.ndarray:
    """Orthonormal basis of su(n) or so(n) for <X, Y> = -tr(XY)."""
    out = []
    if group == "SU":
        for i in range(n):
            for j in range(i + 1, n):
                x = np.zeros((n, n), complex)
                x[i, j], x[j, i] = 1, -1
                out.append(x / math.sqrt(2))
                y = np.zeros((n, n), complex)
                y[i, j] = y[j, i] = 1j
                out.append(y / math.sqrt(2))
        for m in range(1, n):
            d = np.zeros(n)
            d[:m] = 1
            d[m] = -m
            d /= math.sqrt(m * (m + 1))
            out.append(np.diag(1j * d))
    elif group == "SO":
        for i in range(n):
            for j in range(i + 1, n):
                x = np.zeros((n, n))
                x[i, j], x[j, i] = -1, 1
                out.append(x / math.sqrt(2))
    else:
        raise ValueError(group)
    return np.array(out)


def adjoint_rep(g: MatrixGroupElement) -> np.ndarray:
    basis = lie_algebra_basis(g.group, g.n)
    m = g.matrix
    conj = np.einsum("ab,jbc,dc->jad", m, basis, m.conj())
    # <B_i, g B_j g^-1> = -tr(B_i gB_jg^-1)
    return -np.einsum("iab,jba->ij", basis, conj).real


def random_su(n: int, rng: np.random.Generator) -> MatrixGroupElement:
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    q = q / np.linalg.det(q) ** (1 / n)
    return MatrixGroupElement("SU", q)


def torus_su(angles: Sequence[float]) -> MatrixGroupElement:
    """diag(exp(2 pi i theta_j)) with the last entry fixing det = 1."""
    th = list(angles) + [-sum(angles)]
    return MatrixGroupElement("SU", np.diag(np.exp(2j * np.pi * np.array(th))))


def shift_clock(n: int) -> tuple[MatrixGroupElement, MatrixGroupElement]:
    """Shift and clock matrices scaled into SU(n); their commutator is central."""
    s = np.roll(np.eye(n), 1, axis=0).astype(complex)
    z = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    fix = lambda m: m / np.linalg.det(m) ** (1 / n)  # noqa: E731
    return MatrixGroupElement("SU", fix(s)), MatrixGroupElement("SU", fix(z))


# -- the 2-form C ----------------------------------------------------------------


@dataclass(frozen=True)
class TwoFormMatrix:
    c11: np.ndarray
    c12: np.ndarray
    c21: np.ndarray
    c22: np.ndarray

    @property
    def full(self) -> np.ndarray:
        return np.block([[self.c11, self.c12], [self.c21, self.c22]])

    def antisymmetry_residual(self) -> float:
        f = self.full
        return float(np.abs(f + f.T).max())


def two_form_blocks(ad_a: np.ndarray, ad_b: np.ndarray) -> TwoFormMatrix:
    one = np.eye(ad_a.shape[0])
    ad_ai, ad_bi = ad_a.T, ad_b.T
    c11 = 0.5 * (ad_b - ad_bi)
    c12 = 0.5 * (-one + ad_b + ad_ai + ad_b @ ad_ai)
    c21 = 0.5 * (one - ad_a - ad_bi - ad_a @ ad_bi)
    c22 = 0.5 * (ad_ai - ad_a)
    return TwoFormMatrix(c11, c12, c21, c22)


def two_form_at(a: MatrixGroupElement, b: MatrixGroupElement) -> TwoFormMatrix:
    return two_form_blocks(adjoint_rep(a), adjoint_rep(b))


def torus_blocks(w1: np.ndarray, w2: np.ndarray) -> TwoFormMatrix:
    """C restricted to t x t, where Ad_a, Ad_b act as the Weyl matrices w1, w2."""
    if np.abs(w1 @ w2 - w2 @ w1).max() > ATOL:
        raise ValueError("Weyl matrices must commute")
    return two_form_blocks(np.asarray(w1, float), np.asarray(w2, float))


def torus_det_check(w1: np.ndarray, w2: np.ndarray) -> float:
    """|| C11 C22 - C12 C21 - Id || for the torus restriction."""
    c = torus_blocks(w1, w2)
    res = c.c11 @ c.c22 - c.c12 @ c.c21 - np.eye(len(w1))
    return float(np.abs(res).max())


# -- eigenvalue bound and homotopy -----------------------------------------------


def _nullspace(m: np.ndarray, tol: float = CLUSTER_TOL) -> np.ndarray:
    u, s, vt = np.linalg.svd(m)
    rank = int((s > tol).sum())
    return vt[rank:].T


def split_k(ad_a: np.ndarray, ad_b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of k (joint eigenvalues (-1,1), (-1,-1), (1,-1)) and of k-perp."""
    if np.abs(ad_a @ ad_b - ad_b @ ad_a).max() > 1e-8:
        raise SplittingError("Ad_a and Ad_b do not commute")
    n = ad_a.shape[0]
    one = np.eye(n)
    parts = []
    for ea, eb in ((-1, 1), (-1, -1), (1, -1)):
        parts.append(_nullspace(np.vstack([ad_a - ea * one, ad_b - eb * one])))
    k = np.hstack(parts) if parts else np.zeros((n, 0))
    if k.shape[1]:
        q, _ = np.linalg.qr(k)
        k = q[:, : k.shape[1]]
        if np.abs(k.T @ k - np.eye(k.shape[1])).max() > 1e-8:
            raise SplittingError("eigenspaces overlap; clustering failed")
    perp = _nullspace(k.T) if k.shape[1] else one
    return k, perp


def bound_operator(ad_a: np.ndarray, ad_b: np.ndarray) -> np.ndarray:
    """C21 - C12 = 1 - (Ad_a + Ad_a^-1 + Ad_b + Ad_b^-1 + Ad_ab^-1 + Ad_ba^-1) / 2."""
    c = two_form_blocks(ad_a, ad_b)
    return c.c21 - c.c12


def eigenvalue_bound_check(a: MatrixGroupElement, b: MatrixGroupElement) -> float:
    """Largest eigenvalue of C21 - C12 on k-perp (expected < 2)."""
    ad_a, ad_b = adjoint_rep(a), adjoint_rep(b)
    return eigenvalue_bound_from_ad(ad_a, ad_b)


def eigenvalue_bound_from_ad(ad_a: np.ndarray, ad_b: np.ndarray) -> float:
    _, perp = split_k(ad_a, ad_b)
    if perp.shape[1] == 0:
        return -math.inf
    op = perp.T @ bound_operator(ad_a, ad_b) @ perp
    return float(np.linalg.eigvalsh(0.5 * (op + op.T)).max())


def scalar_bound(psi_a: float, psi_b: float) -> float:
    return 1 - math.cos(psi_a) - math.cos(psi_b) - math.cos(psi_a - psi_b)


def homotopy_nondegeneracy(a: MatrixGroupElement, b: MatrixGroupElement, s_grid=None) -> tuple[float, float]:
    """(min |det C_s| on k-perp over the grid, max identity residual)."""
    return homotopy_from_ad(adjoint_rep(a), adjoint_rep(b), s_grid)


def homotopy_from_ad(ad_a: np.ndarray, ad_b: np.ndarray, s_grid=None) -> tuple[float, float]:
    """Grid minimum of |det| along the homotopy, and the identity residual.

    The grid is augmented by the zeros the identity predicts: each real
    eigenvalue x >= 4 of 2 + (C21 - C12) gives (s^2 - s) x + 1 = 0 inside
    [0, 1], and the direct determinant is evaluated there too.  Paired
    eigenvalues make det touch zero without a sign change, so a plain grid
    can miss them.  A sign change between grid points also counts as a zero.
    """
    s_grid = np.linspace(0, 1, 101) if s_grid is None else np.asarray(s_grid)
    _, perp = split_k(ad_a, ad_b)
    m = perp.shape[1]
    if m == 0:
        return 1.0, 0.0
    c = two_form_blocks(ad_a, ad_b)
    r = lambda x: perp.T @ x @ perp  # noqa: E731
    c11, c12, c21, c22 = r(c.c11), r(c.c12), r(c.c21), r(c.c22)
    full = np.block([[c11, c12], [c21, c22]])
    one = np.eye(m)
    c0 = np.block([[np.zeros((m, m)), one], [-one, np.zeros((m, m))]])
    op = c21 - c12
    extra = []
    for x in np.linalg.eigvals(2 * one + op):
        if abs(x.imag) < 1e-9 and x.real >= 4:
            q = math.sqrt(1 - 4 / x.real)
            extra += [(1 - q) / 2, (1 + q) / 2]
    s_grid = np.sort(np.concatenate([s_grid, extra]))
    worst, resid, prev = math.inf, 0.0, 0.0
    for s in s_grid:
        direct = np.linalg.det((1 - s) * c0 + s * full)
        formula = np.linalg.det((s * s - s) * (2 * one + op) + one)
        worst = min(worst, abs(direct))
        if prev * direct < 0:
            worst = 0.0
        prev = direct
        resid = max(resid, abs(direct - formula) / max(1.0, abs(direct)))
    return float(worst), float(resid)


# -- phase factor ---------------------------------------------------------------


def complex_matrix(A: np.ndarray, J: np.ndarray) -> np.ndarray:
    """The complex-linear matrix of A on (R^2n, J); A must commute with J."""
    n2 = A.shape[0]
    n = n2 // 2
    if np.abs(A @ J - J @ A).max() > 1e-9:
        raise ValueError("A does not commute with the complex structure")
    rng = np.random.default_rng(0)
    V = np.eye(n2)[:, :n]
    M = np.hstack([V, J @ V])
    if abs(np.linalg.det(M)) < 1e-8:
        V = rng.normal(size=(n2, n))
        M = np.hstack([V, J @ V])
    coords = np.linalg.solve(M, A @ V)
    return coords[:n] + 1j * coords[n:]


def phase_factor(A: np.ndarray) -> complex:
    """det of the square root of unitary A with eigenvalue angles in [0, pi)."""
    ev = np.linalg.eigvals(A)
    theta = np.angle(ev)
    out = 1 + 0j
    for t in theta:
        if abs(t) <= 1e-9:
            continue
        if -1e-6 < t < 0:
            raise BranchCutError(f"eigenvalue angle {t:.3g} sits at the branch cut")
        t = t % (2 * math.pi)
        out *= complex(math.cos(t / 2), math.sin(t / 2))
    return out


def standard_J(n: int) -> np.ndarray:
    """(xi, eta) -> (-eta, xi) on g + g."""
    z = np.zeros((n, n))
    return np.block([[z, -np.eye(n)], [np.eye(n), z]])


def second_J(R: np.ndarray) -> np.ndarray:
    """(xi, eta) -> (-P^-1 eta, P xi) with P = 3 + (R + R^T)/2, commuting with R."""
    n = R.shape[0]
    P = 3 * np.eye(n) + 0.5 * (R + R.T)
    z = np.zeros((n, n))
    return np.block([[z, -np.linalg.inv(P)], [P, z]])


def phase_model(t: MatrixGroupElement, copies: int = 1, structure: str = "standard") -> complex:
    """Phase of Ad_t acting on (g + g)^copies, for a regular torus element t."""
    ad = adjoint_rep(t)
    n = ad.shape[0]
    A = np.kron(np.eye(2), ad)
    J = standard_J(n) if structure == "standard" else second_J(ad)
    # compatibility with the standard form on g + g
    omega = standard_J(n).T
    if np.abs(J.T @ omega @ J - omega).max() > 1e-9:
        raise ValueError("complex structure is not compatible")
    return phase_factor(complex_matrix(A, J)) ** copies


# -- Clifford lifts for D_N ----------------------------------------------------


@dataclass(frozen=True)
class CliffordBlade:
    """sign * e_{i1} ... e_{ir} with i1 < ... < ir (0-based indices)."""

    indices: tuple[int, ...]
    sign: int = 1

    def __mul__(self, other: "CliffordBlade") -> "CliffordBlade":
        s, blade = blade_mul(self.indices, other.indices)
        return CliffordBlade(blade, s * self.sign * other.sign)


def _mask(indices: Sequence[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _unmask(m: int) -> tuple[int, ...]:
    return tuple(i for i in range(m.bit_length()) if m >> i & 1)


def _reorder_sign(a: int, b: int) -> int:
    """Sign from moving the generators of blade b past those of blade a."""
    s = 0
    a >>= 1
    while a:
        s += bin(a & b).count("1")
        a >>= 1
    return -1 if s & 1 else 1


def blade_mul(x: Sequence[int], y: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Product of sorted basis blades with e_i^2 = +1, returned as (sign, blade)."""
    sign = 1
    for idx in (x, y):
        # unsorted input: count inversions first
        for i in range(len(idx)):
            for j in range(i + 1, len(idx)):
                if idx[i] > idx[j]:
                    sign = -sign
                elif idx[i] == idx[j]:
                    raise ValueError("repeated index inside a blade")
    a, b = _mask(x), _mask(y)
    return sign * _reorder_sign(a, b), _unmask(a ^ b)


class Multivector(dict):
    """Sparse element of the real Clifford algebra; keys are blade bitmasks."""

    def __mul__(self, other: "Multivector") -> "Multivector":
        out: dict = {}
        for a, ca in self.items():
            for b, cb in other.items():
                key = a ^ b
                out[key] = out.get(key, 0) + _reorder_sign(a, b) * ca * cb
        return Multivector({k: v for k, v in out.items() if v})

    def scale(self, c: int) -> "Multivector":
        return Multivector({k: c * v for k, v in self.items() if c * v})

    def __neg__(self):
        return self.scale(-1)

    def reverse(self) -> "Multivector":
        out = Multivector()
        for b, c in self.items():
            r = bin(b).count("1")
            out[b] = c * (-1 if (r * (r - 1) // 2) % 2 else 1)
        return out

    def is_even(self) -> bool:
        return all(bin(b).count("1") % 2 == 0 for b in self)

    def blades(self) -> list[tuple[CliffordBlade, int]]:
        return [(CliffordBlade(_unmask(b)), c) for b, c in sorted(self.items())]

    @classmethod
    def vector(cls, v: Sequence[int]) -> "Multivector":
        return cls({1 << i: int(c) for i, c in enumerate(v) if c})

    @classmethod
    def blade(cls, indices: Sequence[int], coeff: int = 1) -> "Multivector":
        s, b = blade_mul(tuple(indices), ())
        return cls({_mask(b): s * coeff})


def versor_lift(g: np.ndarray) -> tuple[Multivector, int]:
    """Integer versor S with S x S~ = norm * g(x) for a signed permutation g.

    g is factored into reflections along u = g e_i - e_i; the versor is the
    product of the u's and norm the product of |u|^2.
    """
    n = g.shape[0]
    cur = np.eye(n, dtype=int)
    target = np.rint(g).astype(int)
    vectors = []
    for i in range(n):
        # current map cur; we need cur' with cur' e_i = target e_i
        img = target[:, i]
        have = cur[:, i]
        if np.array_equal(img, have):
            continue
        u = img - have
        # reflection R_u swaps have and img (both unit coordinate vectors)
        R = np.eye(n, dtype=int) - (2 * np.outer(u, u)) // int(u @ u)
        cur = R @ cur
        vectors.append(u)
    if not np.array_equal(cur, target):
        raise ArithmeticError("reflection factorisation failed")
    if len(vectors) % 2:
        raise ValueError("odd number of reflections: g is not in SO(n)")
    norm = 1
    for u in vectors:
        norm *= int(u @ u)
    # reflections compose right to left: g = R_k ... R_1, so S = u_k ... u_1
    S = Multivector({0: 1})
    for u in reversed(vectors):
        S = S * Multivector.vector(u)
    return S, norm


def versor_action_ok(S: Multivector, norm: int, g: np.ndarray) -> bool:
    """S x S~ = norm * g(x) for all x.

    With S S~ = norm this is equivalent to S e_i = g(e_i) S, which avoids
    the full triple products.
    """
    if S * S.reverse() != Multivector({0: norm}):
        return False
    for i in range(g.shape[0]):
        img = Multivector.vector(np.rint(g[:, i]).astype(int))
        if S * Multivector({1 << i: 1}) != img * S:
            return False
    return True


def dn_lifts(N: int) -> tuple[np.ndarray, np.ndarray]:
    """The commuting SO(2N) elements g'_1, g'_2 lifting w_1, w_2 of D_N."""
    n = 2 * N
    g1 = np.eye(n)
    g1[1, 1] = -1
    g1[n - 1, n - 1] = -1
    g2 = np.zeros((n, n))
    # output pair j (0-based) reads input pair N-1-j: (x_{2m-1}, -x_{2m}) for j < N-1
    for j in range(N):
        src = N - 1 - j
        if j < N - 1:
            g2[2 * j, 2 * src] = 1
            g2[2 * j + 1, 2 * src + 1] = -1
        else:
            g2[2 * j, 2 * src] = -1
            g2[2 * j + 1, 2 * src + 1] = 1
    return g1, g2


def torus_action(g: np.ndarray) -> np.ndarray:
    """Matrix of Ad_g on the Cartan of so(2N) spanned by plane rotations."""
    n = g.shape[0]
    N = n // 2
    gens = []
    for i in range(N):
        t = np.zeros((n, n))
        t[2 * i + 1, 2 * i], t[2 * i, 2 * i + 1] = 1, -1
        gens.append(t)
    M = np.zeros((N, N))
    for j, t in enumerate(gens):
        img = g @ t @ g.T
        for i, s in enumerate(gens):
            M[i, j] = np.sum(img * s) / 2
    return M


def clifford_lift_commutes(N: int) -> bool:
    if N % 2 or N < 2:
        raise ValueError("N must be even")
    if N > 8:
        raise ValueError("N above the defensive cap of 8")
    g1, g2 = dn_lifts(N)
    if np.abs(g1 @ g2 - g2 @ g1).max() > 0:
        return False
    S1, n1 = versor_lift(g1)
    S2, n2 = versor_lift(g2)
    if not (versor_action_ok(S1, n1, g1) and versor_action_ok(S2, n2, g2)):
        return False
    if not (S1.is_even() and S2.is_even()):
        return False
    for s1, s2 in product((1, -1), repeat=2):
        a, b = S1.scale(s1), S2.scale(s2)
        if a * b != b * a:
            return False
    return True


def clifford_report(N: int) -> dict:
    g1, g2 = dn_lifts(N)
    S1, _ = versor_lift(g1)
    S2, _ = versor_lift(g2)
    w1 = torus_action(g1)
    w2 = torus_action(g2)
    ew1 = np.diag([-1.0] + [1.0] * (N - 2) + [-1.0])
    ew2 = -np.fliplr(np.eye(N))
    return {
        "N": N,
        "commute_SO": bool(np.abs(g1 @ g2 - g2 @ g1).max() == 0),
        "commute_spin_all_signs": clifford_lift_commutes(N),
        "w1_matches": bool(np.allclose(w1, ew1)),
        "w2_matches": bool(np.allclose(w2, ew2)),
        "lift_terms": [len(S1), len(S2)],
    }


# -- Pfaffian and fusion volume ------------------------------------------------------


def pfaffian(A: np.ndarray) -> float:
    """Pfaffian of an antisymmetric matrix by skew Gaussian elimination."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        p = k + 1 + int(np.argmax(np.abs(A[k, k + 1 :])))
        if p != k + 1:
            A[[k + 1, p], :] = A[[p, k + 1], :]
            A[:, [k + 1, p]] = A[:, [p, k + 1]]
            pf = -pf
        if A[k, k + 1] == 0:
            return 0.0
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2 :].copy() / A[k, k + 1]
            col = A[k + 2 :, k + 1].copy()
            A[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return pf


def fused_torus_form(pairs: Sequence[tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
    """2-form on the fixed torus of a fusion product of once-punctured tori.

    Blocks are the torus restrictions C^T of each handle, plus the fusion
    correction -1/2 B(Phi_i^* theta, Phi_j^* theta) for i < j; the moment map
    differential of a handle with Weyl pair (w1, w2) is [w1 - w1 w2, w1 w2 - w2].
    """
    r = pairs[0][0].shape[0]
    h = len(pairs)
    blocks = [torus_blocks(w1, w2).full for w1, w2 in pairs]
    L = [np.hstack([w1 - w1 @ w2, w1 @ w2 - w2]) for w1, w2 in pairs]
    F = np.zeros((2 * r * h, 2 * r * h))
    for i, b in enumerate(blocks):
        F[2 * r * i : 2 * r * (i + 1), 2 * r * i : 2 * r * (i + 1)] = b
    # each handle fuses with the product of all earlier moment maps
    for j in range(1, h):
        for i in range(j):
            cross = L[i].T @ L[j]
            F[2 * r * i : 2 * r * (i + 1), 2 * r * j : 2 * r * (j + 1)] -= 0.5 * cross
            F[2 * r * j : 2 * r * (j + 1), 2 * r * i : 2 * r * (i + 1)] += 0.5 * cross.T
    return F


def torus_pfaffian(w1: np.ndarray, w2: np.ndarray) -> float:
    """Signed Pfaffian of C^T in the basis (t, t); its absolute value is the volume density."""
    return pfaffian(torus_blocks(w1, w2).full)


def fusion_volume_check(
    pairs: Sequence[tuple[np.ndarray, np.ndarray]], samples: int = 1000, seed: int = 0, handles: int = 2
) -> dict:
    """Compare the fused fixed-torus volume density with the unfused one.

    Each sample picks a Weyl pair per handle.  The form is constant along the
    torus, so the sampled torus point does not enter; this is a consistency
    check.  Reported: the largest relative error of |Pf| against 1 and of the
    signed fused Pfaffian against the product of the handle Pfaffians.
    """
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    rng = np.random.default_rng(seed)
    vol_err = 0.0
    fus_err = 0.0
    signs = set()
    for _ in range(samples):
        chosen = [pairs[int(rng.integers(len(pairs)))] for _ in range(handles)]
        unfused = 1.0
        for w1, w2 in chosen:
            unfused *= torus_pfaffian(w1, w2)
        fused = pfaffian(fused_torus_form(chosen))
        signs.add(int(np.sign(fused)))
        vol_err = max(vol_err, abs(abs(fused) - 1.0), abs(abs(unfused) - 1.0))
        fus_err = max(fus_err, abs(fused - unfused) / abs(unfused))
    return {"samples": samples, "handles": handles, "max_volume_error": vol_err,
            "max_fusion_error": fus_err, "signs": sorted(signs)}


# -- samples of fixed points ---------------------------------------------------------


def sample_pairs(n: int, count: int, seed: int = 0):
    """Pairs (a, b) in SU(n) with central commutator, fixed up to the center by
    a regular torus element.

    Three families in turn: both in the torus (trivial commutator), and
    (S t, Z^j) or (Z^j, S t) with S, Z the shift and clock matrices.
    """
    rng = np.random.default_rng(seed)
    S, Z = shift_clock(n)
    out = []
    for i in range(count):
        kind = i % 3
        t = torus_su(rng.uniform(0, 1, size=n - 1))
        if kind == 0:
            out.append((t, torus_su(rng.uniform(0, 1, size=n - 1))))
            continue
        zj = Z
        for _ in range(int(rng.integers(0, n - 1))):
            zj = zj * Z
        pair = (S * t, zj)
        out.append(pair if kind == 1 else pair[::-1])
    return out


def compatible_structure(omega: np.ndarray) -> np.ndarray:
    """The complex structure J = Om^-1 |Om| compatible with the form u^T Om v.

    It commutes with every orthogonal map preserving Om.
    """
    w, V = np.linalg.eigh(-omega @ omega)
    if w.min() <= 0:
        raise ValueError("form is degenerate")
    return np.linalg.solve(omega, V @ np.diag(np.sqrt(w)) @ V.T)


def direct_phase(a: MatrixGroupElement, b: MatrixGroupElement, t: MatrixGroupElement) -> complex:
    """Phase of Ad_t on (g + g, C) using a structure compatible with C itself.

    t must act on (a, b) up to the center, so that Ad_t preserves C.  This
    avoids any homotopy of C to the standard form.
    """
    C = two_form_at(a, b).full
    A = np.kron(np.eye(2), adjoint_rep(t))
    if np.abs(A.T @ C @ A - C).max() > 1e-9:
        raise ValueError("Ad_t does not preserve the 2-form")
    return phase_factor(complex_matrix(A, compatible_structure(C)))


def regular_witness(n: int, a: MatrixGroupElement, b: MatrixGroupElement, rng) -> MatrixGroupElement:
    """A regular torus element acting on (a, b) up to the center."""
    S, Z = shift_clock(n)
    diag = lambda m: np.allclose(m.matrix, np.diag(np.diag(m.matrix)))  # noqa: E731
    if diag(a) and diag(b):
        while True:
            t = torus_su(rng.uniform(0, 1, size=n - 1))
            if np.min(np.abs(np.subtract.outer(np.diag(t.matrix), np.diag(t.matrix))) + 10 * np.eye(n)) > 1e-3:
                return t
    return Z


# -- fixed points of the conjugation action ------------------------------------------


def fixed_point_probe(n: int, lam1: Sequence[float], lam2: Sequence[float], samples: int = 100000, seed: int = 0) -> float:
    """min over random a of the Frobenius norm of t1 - a t2 a^-1."""
    rng = np.random.default_rng(seed)
    t1 = torus_su(lam1).matrix
    t2 = torus_su(lam2).matrix
    best = math.inf
    done = 0
    while done < samples:
        m = min(2000, samples - done)
        z = (rng.normal(size=(m, n, n)) + 1j * rng.normal(size=(m, n, n))) / math.sqrt(2)
        q, r = np.linalg.qr(z)
        d = np.diagonal(r, axis1=1, axis2=2)
        q = q * (d / np.abs(d))[:, None, :]
        conj = q @ t2 @ np.conj(np.transpose(q, (0, 2, 1)))
        best = min(best, float(np.sqrt((np.abs(conj - t1) ** 2).sum(axis=(1, 2))).min()))
        done += m
    return best


def spectrum_distance(n: int, lam1: Sequence[float], lam2: Sequence[float]) -> float:
    """Hoffman-Wielandt lower bound for the probe; positive iff the classes differ."""
    e1 = np.diag(torus_su(lam1).matrix)
    e2 = np.diag(torus_su(lam2).matrix)
    return min(float(np.sqrt((np.abs(e1 - e2[list(p)]) ** 2).sum())) for p in permutations(range(n)))


def alcove_check(type_name: str, samples: int = 200, seed: int = 0) -> int:
    """Count torus points whose Weyl and coroot translates reduce to a different alcove point."""
    from .rootdata import build_root_datum, affine_reduce, weyl_group_elements

    d = build_root_datum(type_name)
    rng = np.random.default_rng(seed)
    ws = list(weyl_group_elements(d))
    bad = 0
    for _ in range(samples):
        xi = d.to_ambient([Fraction(int(c), 97) for c in rng.integers(-300, 300, size=d.rank)])
        w = ws[int(rng.integers(len(ws)))]
        tau = [0] * d.ambient_dim
        for j, c in enumerate(rng.integers(-2, 3, size=d.rank)):
            tau = [x + int(c) * y for x, y in zip(tau, d.simple_coroots[j])]
        moved = tuple(x + y for x, y in zip(w.apply(xi), tau))
        if affine_reduce(d, xi).point != affine_reduce(d, moved).point:
            bad += 1
    return bad


# -- report ---------------------------------------------------------------------------


def so5_torus(angles: Sequence[float]) -> MatrixGroupElement:
    m = np.eye(5)
    for i, th in enumerate(angles):
        c, s = math.cos(2 * math.pi * th), math.sin(2 * math.pi * th)
        m[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = [[c, -s], [s, c]]
    return MatrixGroupElement("SO", m)


def weyl_pairs(type_name: str) -> list[tuple[np.ndarray, np.ndarray]]:
    """Commuting pairs (w_gamma1, w_gamma2) from the center, as ambient matrices."""
    from .center import center_elements, center_to_weyl
    from .rootdata import build_root_datum

    d = build_root_datum(type_name)
    ws = [np.array(center_to_weyl(g).matrix, dtype=float) for g in center_elements(d)]
    return [(a, b) for a in ws for b in ws if np.allclose(a @ b, b @ a)]


def bound_samples(n: int, samples: int, seed: int) -> dict:
    top, worst_pair = -math.inf, None
    hom, resid = math.inf, 0.0
    over = 0
    phase_err = 0.0
    rng = np.random.default_rng(seed + 1)
    npos = n * (n - 1) // 2
    for i, (a, b) in enumerate(sample_pairs(n, samples, seed)):
        ad_a, ad_b = adjoint_rep(a), adjoint_rep(b)
        e = eigenvalue_bound_from_ad(ad_a, ad_b)
        if e >= 2 - 1e-9:
            over += 1
        if e > top:
            top, worst_pair = e, (a, b)
        if i % 20 == 0:
            m, r = homotopy_from_ad(ad_a, ad_b)
            hom, resid = min(hom, m), max(resid, r)
            t = regular_witness(n, a, b, rng)
            phase_err = max(phase_err, abs(direct_phase(a, b, t) - (-1) ** npos))
    # the pair with the largest eigenvalue is the most likely to degenerate
    m, r = homotopy_from_ad(adjoint_rep(worst_pair[0]), adjoint_rep(worst_pair[1]))
    hom, resid = min(hom, m), max(resid, r)
    return {"samples": samples, "max_eigenvalue": top, "violations": over, "min_abs_det": hom,
            "identity_residual": resid, "direct_phase_error": phase_err,
            "worst_a_diag": bool(np.allclose(worst_pair[0].matrix, np.diag(np.diag(worst_pair[0].matrix))))}


def verification_report(samples: int = 10000, seed: int = 0) -> dict:
    """Run the numeric suite and return a JSON-serialisable report."""
    report: dict = {"seed": seed, "samples": samples, "checks": []}

    def add(name, ok, **kw):
        report["checks"].append({"name": name, "ok": bool(ok), **kw})

    worst, count = 0.0, 0
    for t in ("A1", "A2", "A3", "B2", "C3", "D4", "D5", "E6"):
        for a, b in weyl_pairs(t):
            worst = max(worst, torus_det_check(a, b))
            count += 1
    add("torus_det", worst <= ATOL, pairs=count, max_residual=worst)

    for n in (2, 3):
        r = bound_samples(n, samples, seed + n)
        add(f"eigenvalue_bound_SU{n}", r["violations"] == 0, **{k: r[k] for k in ("samples", "max_eigenvalue", "violations")})
        add(f"homotopy_SU{n}", r["min_abs_det"] >= 1e-9 and r["identity_residual"] <= 1e-8,
            min_abs_det=r["min_abs_det"], identity_residual=r["identity_residual"])
        add(f"direct_phase_SU{n}", r["direct_phase_error"] <= 1e-9, max_error=r["direct_phase_error"])

    rng = np.random.default_rng(seed)
    worst = 0.0
    for n, npos in ((2, 1), (3, 3)):
        for _ in range(200):
            t = torus_su(rng.uniform(0, 1, size=n - 1))
            for structure in ("standard", "second"):
                for h in (1, 2, 3):
                    worst = max(worst, abs(phase_model(t, h, structure) - (-1) ** (h * npos)))
    for _ in range(200):
        t = so5_torus(rng.uniform(0, 1, size=2))
        for structure in ("standard", "second"):
            worst = max(worst, abs(phase_model(t, 1, structure) - 1))
    add("phase_factor", worst <= 1e-9, max_error=worst)

    for N in (4, 6, 8):
        rep = clifford_report(N)
        add(f"clifford_D{N}", rep["commute_spin_all_signs"] and rep["w1_matches"] and rep["w2_matches"], **rep)

    pairs = weyl_pairs("A3") + weyl_pairs("D4")
    fv = fusion_volume_check(pairs, 1000, seed)
    add("fusion_volume", fv["max_volume_error"] <= RTOL and fv["max_fusion_error"] <= RTOL, **fv)

    gap = fixed_point_probe(3, [0.1, 0.3], [0.15, 0.3], samples=max(100000, samples), seed=seed)
    bound = spectrum_distance(3, [0.1, 0.3], [0.15, 0.3])
    add("fixed_point_probe", gap >= bound - 1e-9 and bound > 0, min_distance=gap, spectral_bound=bound)
    bad = sum(alcove_check(t, 50, seed) for t in ("A2", "B2", "G2"))
    add("alcove_uniqueness", bad == 0, mismatches=bad)

    report["all_ok"] = all(c["ok"] for c in report["checks"])
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=float)
