"""Root data for the compact simple Lie groups.

Every type is realised in a Bourbaki-style Euclidean model with rational
coordinates.  The invariant form is ``scale * dot(x, y)`` with ``scale``
chosen so that long roots have squared length 2 (the basic inner product).
``scale`` is 1 except for C_N (1/2) and G_2 (1/3), where the textbook
coordinates would otherwise need square roots.

Weights are carried in the fundamental-weight basis as integer tuples;
conversion to ambient coordinates is a fixed rational matrix per type.
Elements of the Cartan subalgebra are identified with ambient vectors
through the basic inner product, so a coweight is also an ambient vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Sequence

Vector = tuple  # tuple[Fraction, ...] in ambient coordinates

WEYL_GROUP_CAP = 10**7


class LieTypeError(ValueError):
    """Raised for an invalid (family, rank) pair."""


class GroupTooLargeError(RuntimeError):
    """Raised when a Weyl group exceeds the enumeration cap."""


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if not isinstance(n, int) or n < 1:
            raise LieTypeError(f"rank must be a positive integer, got {n!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f)
        if not ok:
            raise LieTypeError(f"no simple Lie type {f}{n}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "LieType":
        text = text.strip().replace("_", "")
        if len(text) < 2 or not text[1:].isdigit():
            raise LieTypeError(f"cannot parse Lie type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    @property
    def weyl_order(self) -> int:
        n = self.rank
        return {
            "A": math.factorial(n + 1),
            "B": 2**n * math.factorial(n),
            "C": 2**n * math.factorial(n),
            "D": 2 ** (n - 1) * math.factorial(n),
            "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
            "F": 1152,
            "G": 12,
        }[self.family]


def _vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _unit(n: int, i: int, c=1) -> Vector:
    return tuple(Fraction(c) if j == i else Fraction(0) for j in range(n))


def _add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def _sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def _scale(c, x: Vector) -> Vector:
    return tuple(c * a if a else a for a in x)


def _simple_roots(t: LieType) -> tuple[list[Vector], Fraction]:
    """Bourbaki simple roots and the ambient scale of the inner product."""
    n, f = t.rank, t.family
    e = lambda dim, i: _unit(dim, i)  # noqa: E731
    if f == "A":
        return [_sub(e(n + 1, i), e(n + 1, i + 1)) for i in range(n)], Fraction(1)
    if f == "B":
        roots = [_sub(e(n, i), e(n, i + 1)) for i in range(n - 1)]
        return roots + [e(n, n - 1)], Fraction(1)
    if f == "C":
        roots = [_sub(e(n, i), e(n, i + 1)) for i in range(n - 1)]
        return roots + [_unit(n, n - 1, 2)], Fraction(1, 2)
    if f == "D":
        roots = [_sub(e(n, i), e(n, i + 1)) for i in range(n - 1)]
        return roots + [_add(e(n, n - 2), e(n, n - 1))], Fraction(1)
    if f == "E":
        h = Fraction(1, 2)
        e8 = [
            _vec(h, -h, -h, -h, -h, -h, -h, h),
            _vec(1, 1, 0, 0, 0, 0, 0, 0),
            _vec(-1, 1, 0, 0, 0, 0, 0, 0),
            _vec(0, -1, 1, 0, 0, 0, 0, 0),
            _vec(0, 0, -1, 1, 0, 0, 0, 0),
            _vec(0, 0, 0, -1, 1, 0, 0, 0),
            _vec(0, 0, 0, 0, -1, 1, 0, 0),
            _vec(0, 0, 0, 0, 0, -1, 1, 0),
        ]
        return e8[:n], Fraction(1)
    if f == "F":
        h = Fraction(1, 2)
        return [
            _vec(0, 1, -1, 0),
            _vec(0, 0, 1, -1),
            _vec(0, 0, 0, 1),
            _vec(h, -h, -h, -h),
        ], Fraction(1)
    if f == "G":
        return [_vec(1, -1, 0), _vec(-2, 1, 1)], Fraction(1, 3)
    raise LieTypeError(str(t))


def _mat_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def lattice_index(vectors: Sequence[Sequence[int]], rank: int) -> int:
    """Index of the integer span of ``vectors`` in Z^rank (0 if not full rank)."""
    rows = [list(v) for v in vectors if any(v)]
    det = 1
    for col in range(rank):
        # Euclid on the column until a single nonzero pivot remains
        while True:
            nz = [r for r in range(col, len(rows)) if rows[r][col] != 0]
            if not nz:
                return 0
            p = min(nz, key=lambda r: abs(rows[r][col]))
            rows[col], rows[p] = rows[p], rows[col]
            done = True
            for r in range(col + 1, len(rows)):
                if rows[r][col]:
                    q = rows[r][col] // rows[col][col]
                    rows[r] = [x - q * y for x, y in zip(rows[r], rows[col])]
                    if rows[r][col]:
                        done = False
            if done:
                break
        det *= abs(rows[col][col])
    return det


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element w = s_{i1} s_{i2} ... s_{im} given by its word."""

    datum: "RootDatum" = field(repr=False, compare=False)
    word: tuple[int, ...] = ()

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    def apply(self, x: Vector) -> Vector:
        for i in reversed(self.word):
            x = self.datum.reflect(i, x)
        return x

    def apply_weight(self, lam: Sequence[int]) -> tuple[int, ...]:
        for i in reversed(self.word):
            lam = self.datum.reflect_weight(i, lam)
        return tuple(lam)

    @cached_property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        dim = self.datum.ambient_dim
        cols = [self.apply(_unit(dim, j)) for j in range(dim)]
        return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))

    @cached_property
    def key(self) -> tuple[int, ...]:
        # w is determined by w(rho)
        return self.apply_weight(self.datum.rho_weight)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.datum, self.word + other.word)

    def inverse(self) -> "WeylElement":
        return WeylElement(self.datum, tuple(reversed(self.word)))

    def reduced(self) -> "WeylElement":
        return self.datum.weyl_from_rho_image(self.key)

    @property
    def length(self) -> int:
        return len(self.reduced().word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.datum is other.datum and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_identity(self) -> bool:
        return self.key == self.datum.rho_weight


@dataclass(frozen=True)
class AffineReduction:
    point: Vector
    w: WeylElement
    translation: Vector


class RootDatum:
    """Static Lie-theoretic data of one simple type in basic normalisation."""

    def __init__(self, lie_type: LieType):
        self.lie_type = lie_type
        simple, self.scale = _simple_roots(lie_type)
        self.rank = lie_type.rank
        self.simple_roots: tuple[Vector, ...] = tuple(simple)
        self.ambient_dim = len(simple[0])
        r = self.rank
        self.simple_coroots = tuple(_scale(2 / self.norm2(a), a) for a in simple)
        self.cartan = tuple(
            tuple(int(self.inner(simple[j], self.simple_coroots[i])) for j in range(r)) for i in range(r)
        )
        # omega_i = sum_k X_ik alpha_k with X = (C^T)^{-1}
        ct = [[Fraction(self.cartan[j][i]) for j in range(r)] for i in range(r)]
        x = _mat_inverse(ct)
        self.fundamental_weights = tuple(
            tuple(sum((x[i][k] * simple[k][a] for k in range(r)), Fraction(0)) for a in range(self.ambient_dim))
            for i in range(r)
        )
        self.fundamental_coweights = tuple(
            _scale(2 / self.norm2(simple[i]), self.fundamental_weights[i]) for i in range(r)
        )
        self.gram_weights = tuple(
            tuple(self.inner(self.fundamental_weights[i], self.fundamental_weights[j]) for j in range(r))
            for i in range(r)
        )
        self._build_roots()
        self.rho_weight = (1,) * r
        self.rho = self.to_ambient(self.rho_weight)
        self.dual_coxeter = int(self.inner(self.rho, self.highest_root)) + 1
        self.center_order = round(_det(self.cartan))
        self.long_index = lattice_index(
            [self.root_coords(a) for a in self._long_roots], r
        )
        # coefficients of theta in simple roots / of theta^vee in simple coroots
        self.marks = self.root_coords(self.highest_root)
        self.comarks = tuple(int(self.inner(w, self.highest_root)) for w in self.fundamental_weights)
        minuscule = [i for i in range(r) if self.marks[i] == 1]
        self.center_nodes = (None,) + tuple(minuscule)
        zero = tuple(Fraction(0) for _ in range(self.ambient_dim))
        self.center_coweight_reps = (zero,) + tuple(self.fundamental_coweights[i] for i in minuscule)
        d = 1
        for row in self.gram_weights:
            for g in row:
                d = d * g.denominator // math.gcd(d, g.denominator)
        self.gram_denominator = d
        self.gram_int = tuple(tuple(int(g * d) for g in row) for row in self.gram_weights)

    # -- basic geometry -------------------------------------------------

    def __repr__(self):
        return f"RootDatum({self.lie_type})"

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        if len(x) != len(y):
            raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
        total = Fraction(0)
        for a, b in zip(x, y):
            if a and b:
                total += a * b
        return self.scale * total

    def norm2(self, x: Sequence) -> Fraction:
        return self.inner(x, x)

    def reflect(self, i: int, x: Vector) -> Vector:
        c = self.inner(x, self.simple_coroots[i])
        if c == 0:
            return tuple(x)
        a = self.simple_roots[i]
        return tuple(xi - c * ai for xi, ai in zip(x, a))

    def reflect_weight(self, i: int, lam: Sequence[int]) -> tuple[int, ...]:
        li = lam[i]
        if li == 0:
            return tuple(lam)
        return tuple(lj - li * self.cartan[j][i] for j, lj in enumerate(lam))

    def to_ambient(self, lam: Sequence) -> Vector:
        out = [Fraction(0)] * self.ambient_dim
        for c, w in zip(lam, self.fundamental_weights):
            if c:
                for a in range(self.ambient_dim):
                    out[a] += c * w[a]
        return tuple(out)

    def to_weight_coords(self, x: Vector) -> tuple[Fraction, ...]:
        return tuple(self.inner(x, ac) for ac in self.simple_coroots)

    def root_coords(self, x: Vector) -> tuple[int, ...]:
        """Coordinates of a root-lattice vector in the simple-root basis."""
        cached = getattr(self, "_root_coord_cache", {}).get(tuple(x))
        if cached is not None:
            return cached
        out = []
        for cw in self.fundamental_coweights:
            c = self.inner(x, cw)
            if c.denominator != 1:
                raise ValueError("vector is not in the root lattice")
            out.append(int(c))
        return tuple(out)

    def weight_inner(self, lam: Sequence, mu: Sequence) -> Fraction:
        g = self.gram_weights
        return sum((Fraction(lam[i]) * mu[j] * g[i][j] for i in range(self.rank) for j in range(self.rank) if lam[i] and mu[j]), Fraction(0))

    def level(self, lam: Sequence[int]) -> int:
        return sum(c * a for c, a in zip(lam, self.comarks))

    # -- roots ------------------------------------------------------------

    def _build_roots(self):
        # work in integer simple-root coordinates: s_i(b) = b - <b, alpha_i^vee> alpha_i
        r = self.rank
        cart = self.cartan
        units = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
        seen = {u: i for i, u in enumerate(units)}  # root -> simple root of the same length
        frontier = list(units)
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(r):
                    c = sum(cart[i][j] * b[j] for j in range(r))
                    if c == 0:
                        continue
                    img = tuple(x - c if j == i else x for j, x in enumerate(b))
                    if img not in seen:
                        seen[img] = seen[b]
                        nxt.append(img)
            frontier = nxt
        pos = sorted((b for b in seen if all(c >= 0 for c in b)), key=lambda b: (sum(b), b))
        den = 1
        for a in self.simple_roots:
            for x in a:
                den = den * x.denominator // math.gcd(den, x.denominator)
        simple_int = [[int(x * den) for x in a] for a in self.simple_roots]
        amb = []
        for b in pos:
            v = [0] * self.ambient_dim
            for j, c in enumerate(b):
                if c:
                    for a, x in enumerate(simple_int[j]):
                        v[a] += c * x
            amb.append(tuple(Fraction(x, den) for x in v))
        simple_norms = [self.norm2(a) for a in self.simple_roots]
        self._long_roots = [a for a, b in zip(amb, pos) if simple_norms[seen[b]] == 2]
        self._long_roots += [_scale(-1, a) for a in self._long_roots]
        self._root_coord_cache = {a: b for a, b in zip(amb, pos)}
        self._root_coord_cache.update({_scale(-1, a): tuple(-c for c in b) for a, b in zip(amb, pos)})
        self.positive_roots: tuple[Vector, ...] = tuple(amb)
        self.roots = tuple(amb) + tuple(_scale(-1, a) for a in amb)
        self.highest_root = amb[-1]
        # weight-lattice coordinates of positive roots, for integer work
        self.positive_roots_weight = tuple(
            tuple(sum(cart[i][j] * b[j] for j in range(r)) for i in range(r)) for b in pos
        )

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    # -- Weyl group -------------------------------------------------------

    def identity(self) -> WeylElement:
        return WeylElement(self, ())

    def simple_reflection(self, i: int) -> WeylElement:
        return WeylElement(self, (i,))

    def weyl_from_rho_image(self, v: Sequence[int]) -> WeylElement:
        """The element w with w(rho) = v, as a reduced word."""
        v = tuple(v)
        word = []
        while True:
            i = next((j for j, c in enumerate(v) if c < 0), None)
            if i is None:
                break
            v = self.reflect_weight(i, v)
            word.append(i)
        if v != self.rho_weight:
            raise ValueError("not in the Weyl orbit of rho")
        return WeylElement(self, tuple(word))

    @cached_property
    def longest_element(self) -> WeylElement:
        return self.weyl_from_rho_image(tuple(-c for c in self.rho_weight))

    @cached_property
    def highest_root_reflection(self) -> WeylElement:
        """A word for the reflection in the highest root."""
        theta = self.highest_root
        a, path = theta, []
        while a not in self.simple_roots:
            i = next(i for i in range(self.rank) if self.inner(a, self.simple_coroots[i]) > 0)
            a = self.reflect(i, a)
            path.append(i)
        j = self.simple_roots.index(a)
        # theta = s_{p1} ... s_{pm} (alpha_j)
        word = tuple(path) + (j,) + tuple(reversed(path))
        w = WeylElement(self, word)
        return w.reduced()

    def dual_weight(self, lam: Sequence[int]) -> tuple[int, ...]:
        """*lam = -w_0(lam), the highest weight of the dual representation."""
        return tuple(-c for c in self.longest_element.apply_weight(lam))

    def dominant_conjugate(self, lam: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """Return (dominant W-conjugate of lam, number of reflections used)."""
        lam = tuple(lam)
        n = 0
        while True:
            i = next((j for j, c in enumerate(lam) if c < 0), None)
            if i is None:
                return lam, n
            lam = self.reflect_weight(i, lam)
            n += 1

    def orbit_with_signs(self, lam: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
        """Weyl orbit of a dominant weight, each point with (-1)^{length}.

        For a regular weight the points are in bijection with W.
        """
        start = tuple(lam)
        sign = {start: 1}
        frontier = [start]
        out = [(start, 1)]
        while frontier:
            nxt = []
            for u in frontier:
                s = -sign[u]
                for i, ui in enumerate(u):
                    if ui > 0:
                        v = self.reflect_weight(i, u)
                        if v not in sign:
                            sign[v] = s
                            nxt.append(v)
                            out.append((v, s))
            frontier = nxt
        return out


def _det(m) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


@lru_cache(maxsize=None)
def build_root_datum(t: LieType | str) -> RootDatum:
    if isinstance(t, str):
        t = LieType.parse(t)
    return RootDatum(t)


def inner(d: RootDatum, x: Sequence, y: Sequence) -> Fraction:
    return d.inner(x, y)


def level_weights(d: RootDatum, k: int) -> list[tuple[int, ...]]:
    """Dominant weights of level <= k, in lexicographic order."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    out = []

    def rec(prefix, budget, i):
        if i == d.rank:
            out.append(tuple(prefix))
            return
        a = d.comarks[i]
        for c in range(budget // a + 1):
            prefix.append(c)
            rec(prefix, budget - c * a, i + 1)
            prefix.pop()

    rec([], k, 0)
    out.sort()
    return out


def in_alcove(d: RootDatum, xi: Vector) -> bool:
    return all(d.inner(a, xi) >= 0 for a in d.simple_roots) and d.inner(d.highest_root, xi) <= 1


def affine_reduce(d: RootDatum, xi: Sequence) -> AffineReduction:
    """Bring xi into the closed fundamental alcove.

    Returns (xi_red, w, tau) with xi = w(xi_red) + tau, tau in the coroot
    lattice.  Walls are only crossed on strict violation; afterwards w is
    shortened within the stabiliser of xi_red so that it is minimal in its
    coset.
    """
    x = tuple(Fraction(c) for c in xi)
    zero = tuple(Fraction(0) for _ in x)
    word: list[int] = []
    tau = zero
    theta = d.highest_root
    theta_co = theta  # |theta|^2 = 2
    s_theta = d.highest_root_reflection.word
    while True:
        i = next((j for j, a in enumerate(d.simple_roots) if d.inner(a, x) < 0), None)
        if i is not None:
            x = d.reflect(i, x)
            word.append(i)
            continue
        h = d.inner(theta, x)
        if h > 1:
            # x = s_theta(x') + theta^vee  with x' = s_theta(x - theta^vee)
            w = WeylElement(d, tuple(word))
            tau = _add(tau, w.apply(theta_co))
            y = _sub(x, theta_co)
            x = tuple(yi - d.inner(y, theta) * ti for yi, ti in zip(y, theta))
            word.extend(s_theta)
            continue
        break
    w = WeylElement(d, tuple(word)).reduced()
    # shorten w inside the stabiliser of x (simple walls through x)
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(d.simple_roots):
            if d.inner(a, x) == 0:
                wa = w.apply(a)
                if all(c <= 0 for c in d.root_coords(wa)):
                    w = (w * d.simple_reflection(i)).reduced()
                    changed = True
    return AffineReduction(x, w, tau)


def weyl_group_elements(d: RootDatum, cap: int = WEYL_GROUP_CAP) -> Iterator[WeylElement]:
    """Yield each Weyl group element once (reduced words, by length)."""
    if d.lie_type.weyl_order > cap:
        raise GroupTooLargeError(
            f"|W({d.lie_type})| = {d.lie_type.weyl_order} exceeds cap {cap}; "
            "use the Freudenthal character path instead"
        )
    start = d.rho_weight
    words = {start: ()}
    frontier = [start]
    yield WeylElement(d, ())
    while frontier:
        nxt = []
        for u in frontier:
            for i, ui in enumerate(u):
                if ui > 0:
                    v = d.reflect_weight(i, u)
                    if v not in words:
                        # v = s_i u = s_i w rho
                        words[v] = (i,) + words[u]
                        nxt.append(v)
                        yield WeylElement(d, words[v])
        frontier = nxt


def weyl_dimension(d: RootDatum, mu: Sequence[int]) -> int:
    num, den = Fraction(1), Fraction(1)
    lr = tuple(c + 1 for c in mu)
    for a in d.positive_roots:
        aw = d.to_weight_coords(a)
        # <lam, alpha^vee> in weight coordinates uses the coroot
        co = _scale(2 / d.norm2(a), a)
        num *= d.inner(d.to_ambient(lr), co)
        den *= d.inner(d.rho, co)
        del aw
    q = num / den
    assert q.denominator == 1
    return int(q)


def minuscule_translation_key(d: RootDatum, x: Vector) -> tuple[Fraction, ...]:
    """Coordinates of x against the simple roots, a convenient hashable key."""
    return tuple(d.inner(a, x) for a in d.simple_roots)


def coroot_lattice_coords(d: RootDatum, x: Vector) -> tuple[Fraction, ...]:
    """Coordinates of x in the basis of simple coroots."""
    # <x, omega_i> = coefficient of alpha_i^vee in x
    return tuple(d.inner(x, w) for w in d.fundamental_weights)


def is_in_coroot_lattice(d: RootDatum, x: Vector) -> bool:
    return all(c.denominator == 1 for c in coroot_lattice_coords(d, x))


SIMPLE_TYPES_UP_TO_RANK = lambda n: [  # noqa: E731
    LieType(f, r)
    for f, r in product("ABCDEFG", range(1, n + 1))
    if _valid(f, r)
]


def _valid(f, r) -> bool:
    try:
        LieType(f, r)
        return True
    except LieTypeError:
        return False
