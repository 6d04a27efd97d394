"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as an integer numerator vector on the power basis
1, z, ..., z^{phi(N)-1} (reduced modulo the cyclotomic polynomial) over a
positive common denominator, with gcd(numerators, den) = 1.  The power
basis is an integral basis of Z[zeta_N], so algebraic integers always have
den == 1.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

_INT64_SAFE = 2**62


class NotRationalError(ValueError):
    """The number is not in Q (or not in Z).  ``approx`` is a float shadow."""

    def __init__(self, msg: str, approx: complex):
        super().__init__(f"{msg} (approx {approx.real:.12g}{approx.imag:+.12g}j)")
        self.approx = approx


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    """a / b for integer polynomials (low degree first), b monic, exact."""
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        p = _poly_exact_div(p, list(cyclotomic_poly(d)))
    return tuple(p)


@lru_cache(maxsize=None)
def reduction_matrix(n: int) -> np.ndarray:
    """Row e holds z^e reduced to the power basis, for 0 <= e < n (int64)."""
    phi = euler_phi(n)
    poly = cyclotomic_poly(n)
    rows = np.zeros((n, phi), dtype=np.int64)
    cur = [0] * phi
    cur[0] = 1
    for e in range(n):
        rows[e] = cur
        # multiply by z and reduce the overflow term with Phi_n (monic)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(phi):
                cur[j] -= top * poly[j]
    return rows


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in reduction_matrix(n))


@lru_cache(maxsize=None)
def _reduction_bound(n: int) -> int:
    return int(np.abs(reduction_matrix(n)).max())


@lru_cache(maxsize=None)
def _ramanujan(n: int, j: int) -> int:
    """Trace of zeta_n^j from Q(zeta_n) to Q."""
    m = n // math.gcd(j, n)
    return _mobius(m) * euler_phi(n) // euler_phi(m)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num, den = [-c for c in num], -den
    g = reduce(math.gcd, num, den)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    if not any(num):
        den = 1
    return tuple(num), den


def _reduce_buckets(n: int, buckets: Sequence[int]) -> list[int]:
    """Reduce sum_e buckets[e] z^e (len(buckets) <= n) to the power basis."""
    phi = euler_phi(n)
    out = list(buckets[:phi]) + [0] * max(0, phi - len(buckets))
    rows = _reduction_rows(n)
    for e in range(phi, len(buckets)):
        c = buckets[e]
        if c:
            r = rows[e]
            for j in range(phi):
                if r[j]:
                    out[j] += c * r[j]
    return out


class CycloNumber:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("modulus", "num", "den", "_hash")

    def __init__(self, modulus: int, num: Sequence[int], den: int = 1, *, _canonical: bool = False):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if len(num) != euler_phi(modulus):
            raise ValueError("coefficient vector must have length phi(N)")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.modulus = modulus
        if _canonical:
            self.num, self.den = tuple(num), den
        else:
            self.num, self.den = _normalize([int(c) for c in num], int(den))
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_buckets(cls, modulus: int, buckets: Sequence[int], den: int = 1) -> "CycloNumber":
        """sum_e buckets[e] z^e / den with exponents taken modulo N."""
        if len(buckets) > modulus:
            folded = [0] * modulus
            for e, c in enumerate(buckets):
                folded[e % modulus] += c
            buckets = folded
        return cls(modulus, _reduce_buckets(modulus, buckets), den)

    @classmethod
    def from_exponents(cls, modulus: int, terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> "CycloNumber":
        """sum of coeff * z^exponent over (exponent, coeff) pairs."""
        buckets = [0] * modulus
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            buckets[e % modulus] += c
        return cls.from_buckets(modulus, buckets)

    @classmethod
    def rational(cls, q, modulus: int = 1) -> "CycloNumber":
        q = Fraction(q)
        num = [0] * euler_phi(modulus)
        num[0] = q.numerator
        return cls(modulus, num, q.denominator)

    @classmethod
    def zero(cls, modulus: int = 1) -> "CycloNumber":
        return cls.rational(0, modulus)

    @classmethod
    def one(cls, modulus: int = 1) -> "CycloNumber":
        return cls.rational(1, modulus)

    # -- basic properties -------------------------------------------------

    @property
    def phi(self) -> int:
        return len(self.num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def lift(self, modulus: int) -> "CycloNumber":
        """The same number viewed in Q(zeta_modulus); N must divide modulus."""
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ValueError(f"cannot lift from {self.modulus} to {modulus}")
        step = modulus // self.modulus
        buckets = [0] * modulus
        for j, c in enumerate(self.num):
            buckets[j * step] = c
        return CycloNumber(modulus, _reduce_buckets(modulus, buckets), self.den)

    def _common(self, other) -> tuple["CycloNumber", "CycloNumber"]:
        if not isinstance(other, CycloNumber):
            other = CycloNumber.rational(other, self.modulus)
        if other.modulus == self.modulus:
            return self, other
        m = self.modulus * other.modulus // math.gcd(self.modulus, other.modulus)
        return self.lift(m), other.lift(m)

    # -- ring operations ------------------------------------------------

    def __add__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(other, self.modulus)
        elif not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(other)
        if a.den == b.den:
            return CycloNumber(a.modulus, [x + y for x, y in zip(a.num, b.num)], a.den)
        return CycloNumber(a.modulus, [x * b.den + y * a.den for x, y in zip(a.num, b.num)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.modulus, [-c for c in self.num], self.den, _canonical=True)

    def __sub__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.rational(other, self.modulus)
        elif not isinstance(other, CycloNumber):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycloNumber":
        return (-self) + other

    def __mul__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNumber(self.modulus, [c * q.numerator for c in self.num], self.den * q.denominator)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(other)
        n = a.modulus
        prod = _poly_mul(a.num, b.num)
        return CycloNumber(n, _reduce_buckets(n, _fold(prod, n)), a.den * b.den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloNumber":
        if e < 0:
            return self.inverse() ** (-e)
        out = CycloNumber.one(self.modulus)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __truediv__(self, other) -> "CycloNumber":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / q)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycloNumber":
        return self.inverse() * other

    def galois(self, a: int) -> "CycloNumber":
        """Apply the automorphism zeta -> zeta^a (a coprime to N)."""
        n = self.modulus
        if math.gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        buckets = [0] * n
        for j, c in enumerate(self.num):
            if c:
                buckets[(j * a) % n] += c
        return CycloNumber(n, _reduce_buckets(n, buckets), self.den)

    def conj(self) -> "CycloNumber":
        return self.galois(-1)

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycloNumber.rational(Fraction(self.den, self.num[0]), self.modulus)
        inv = _poly_inverse_mod(self.num, cyclotomic_poly(self.modulus))
        # inv is the inverse of the numerator polynomial
        den = 1
        for q in inv:
            den = den * q.denominator // math.gcd(den, q.denominator)
        num = [int(q * den) * self.den for q in inv]
        return CycloNumber(self.modulus, num, den)

    # -- comparisons and extraction -------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.modulus == self.modulus:
            return self.den == other.den and self.num == other.num
        a, b = self._common(other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        # the normalised trace does not depend on the ambient field
        if self._hash is None:
            self._hash = hash(self.trace() / self.phi)
        return self._hash

    def trace(self) -> Fraction:
        n = self.modulus
        return Fraction(sum(c * _ramanujan(n, j) for j, c in enumerate(self.num) if c), self.den)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRationalError("not a rational number", self.to_complex())
        return Fraction(self.num[0], self.den)

    def as_integer(self) -> int:
        q = self.as_rational()
        if q.denominator != 1:
            raise NotRationalError(f"rational {q} is not an integer", self.to_complex())
        return q.numerator

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.modulus)
        return sum(c * z**j for j, c in enumerate(self.num) if c) / self.den

    def root_exponent(self) -> int | None:
        """If self == zeta_N^a return a (mod N), else None."""
        n = self.modulus
        for a in range(n):
            if root_of_unity(n, a) == self:
                return a
        return None

    def __repr__(self):
        terms = [f"{c}*z^{j}" if j else str(c) for j, c in enumerate(self.num) if c]
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"CycloNumber[{self.modulus}]({body})"


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    la, lb = len(a), len(b)
    ma = max((abs(x) for x in a), default=0)
    mb = max((abs(x) for x in b), default=0)
    if ma * mb * min(la, lb) < _INT64_SAFE and la * lb > 64:
        return np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)).tolist()
    out = [0] * (la + lb - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _fold(p: list[int], n: int) -> list[int]:
    if len(p) <= n:
        return p
    out = p[:n]
    for e in range(n, len(p)):
        out[e % n] += p[e]
    return out


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for j, y in enumerate(b):
            a[s + j] -= c * y
        a.pop()
        _trim(a)
    return q, a


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim([Fraction(x) for x in out])


def _poly_inverse_mod(x: Sequence[int], modpoly: Sequence[int]) -> list[Fraction]:
    """Inverse of x modulo modpoly over Q via the extended Euclidean algorithm."""
    r0 = [Fraction(c) for c in modpoly]
    r1 = _trim([Fraction(c) for c in x])
    t0: list[Fraction] = []
    t1 = [Fraction(1)]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
        if not r1:
            raise ZeroDivisionError("element is not invertible (common factor)")
    c = r1[0]
    deg = len(modpoly) - 1
    out = [v / c for v in t1] + [Fraction(0)] * (deg - len(t1))
    return out[:deg]


@lru_cache(maxsize=65536)
def root_of_unity(modulus: int, a: int) -> CycloNumber:
    buckets = [0] * modulus
    buckets[a % modulus] = 1
    return CycloNumber(modulus, _reduce_buckets(modulus, buckets), 1)


def one_minus_root_inverse(modulus: int, e: int) -> CycloNumber:
    """1 / (1 - zeta_N^e) for zeta_N^e != 1, via the closed form.

    If z is a primitive m-th root of unity then sum_{j<m} j z^j = m / (z - 1).
    """
    n = modulus
    e %= n
    if e == 0:
        raise ZeroDivisionError("1 - 1 is not invertible")
    m = n // math.gcd(e, n)
    buckets = [0] * n
    for j in range(m):
        buckets[(j * e) % n] -= j
    return CycloNumber(n, _reduce_buckets(n, buckets), m)


def csum(values: Iterable[CycloNumber], modulus: int | None = None) -> CycloNumber:
    """Sum of many CycloNumbers with one normalisation at the end."""
    values = list(values)
    if not values:
        return CycloNumber.zero(modulus or 1)
    m = modulus or 1
    for v in values:
        m = m * v.modulus // math.gcd(m, v.modulus)
    den = 1
    lifted = [v.lift(m) for v in values]
    for v in lifted:
        den = den * v.den // math.gcd(den, v.den)
    acc = [0] * euler_phi(m)
    for v in lifted:
        f = den // v.den
        for j, c in enumerate(v.num):
            if c:
                acc[j] += c * f
    return CycloNumber(m, acc, den)


def weighted_sums(modulus: int, rows: np.ndarray, weights: Sequence[CycloNumber]) -> list[CycloNumber]:
    """For each r return sum_j weights[j] * x[r, j], vectorised.

    ``rows`` is an integer array of shape (R, C, phi(N)) holding algebraic
    integers x[r, j] on the power basis of Q(zeta_N); the weights may live in
    any subfield Q(zeta_M) with M | N.  Products are accumulated exactly:
    numpy int64 when a coefficient bound proves it safe, Python ints
    otherwise.
    """
    n = modulus
    phi = euler_phi(n)
    R = rows.shape[0]
    C = len(weights)
    if C == 0:
        return [CycloNumber.zero(n) for _ in range(R)]
    weights = [w.lift(n) for w in weights]
    den = 1
    for w in weights:
        den = den * w.den // math.gcd(den, w.den)
    W = [[c * (den // w.den) for c in w.num] for w in weights]
    mw = max((abs(c) for w in W for c in w), default=0)
    mx = int(np.abs(rows).max()) if rows.size else 0
    bound = mw * mx * C * phi * (_reduction_bound(n) + 1) * 2 * phi
    dtype = np.int64 if bound < _INT64_SAFE and rows.dtype != object else object
    Wa = np.array(W, dtype=dtype)  # (C, phi)
    Xa = rows.astype(dtype)
    conv = np.zeros((R, 2 * phi - 1), dtype=dtype)
    for i in range(phi):
        conv[:, i : i + phi] += Xa[:, :, i] @ Wa
    full = np.zeros((R, max(n, 2 * phi - 1)), dtype=dtype)
    full[:, : 2 * phi - 1] = conv
    if full.shape[1] > n:
        folded = full[:, :n].copy()
        for e in range(n, full.shape[1]):
            folded[:, e % n] += full[:, e]
        full = folded
    red = reduction_matrix(n)
    if dtype is object:
        red = red.astype(object)
    reduced = full @ red
    return [CycloNumber(n, [int(c) for c in reduced[r]], den) for r in range(R)]
