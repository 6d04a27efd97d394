"""The center Z(G) and its action on the alcove and on level-k weights.

A central element is exp(xi_gamma) with xi_gamma one of the alcove vertices
given by a minuscule coweight (or 0).  Subgroups of a product of centers
are sets of index tuples, one index per simple factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Sequence

from .cyclotomic import CycloNumber, root_of_unity
from .rootdata import (
    RootDatum,
    Vector,
    WeylElement,
    affine_reduce,
    is_in_coroot_lattice,
    level_weights,
)


@dataclass(frozen=True)
class CenterElement:
    datum: RootDatum = field(repr=False)
    index: int

    @property
    def coweight_rep(self) -> Vector:
        return self.datum.center_coweight_reps[self.index]

    def __mul__(self, other: "CenterElement") -> "CenterElement":
        return CenterElement(self.datum, center_table(self.datum)[self.index][other.index])

    def inverse(self) -> "CenterElement":
        row = center_table(self.datum)[self.index]
        return CenterElement(self.datum, row.index(0))

    @property
    def order(self) -> int:
        n, x = 1, self
        while x.index != 0:
            x = x * self
            n += 1
        return n


def center_elements(d: RootDatum) -> list[CenterElement]:
    return [CenterElement(d, i) for i in range(len(d.center_coweight_reps))]


def _rep_index(d: RootDatum, xi: Vector) -> int:
    for i, rep in enumerate(d.center_coweight_reps):
        if is_in_coroot_lattice(d, tuple(a - b for a, b in zip(xi, rep))):
            return i
    raise ArithmeticError("vector is not a central coweight")


@lru_cache(maxsize=None)
def center_table(d: RootDatum) -> tuple[tuple[int, ...], ...]:
    reps = d.center_coweight_reps
    return tuple(
        tuple(_rep_index(d, tuple(a + b for a, b in zip(x, y))) for y in reps) for x in reps
    )


def center_structure(d: RootDatum) -> tuple[int, ...]:
    """Invariant factors of Z(G), e.g. (4,) or (2, 2)."""
    els = center_elements(d)
    n = len(els)
    orders = sorted(e.order for e in els)
    if orders[-1] == n:
        return (n,) if n > 1 else ()
    if n == 4 and orders == [1, 2, 2, 2]:
        return (2, 2)
    raise ArithmeticError(f"unexpected center of order {n}")


@lru_cache(maxsize=None)
def _interior_point(d: RootDatum) -> Vector:
    # a generic interior alcove point, not fixed by any nontrivial gamma
    r = d.rank
    coeffs = [Fraction(1, 7 * (i + 2)) for i in range(r)]
    x = d.to_ambient(coeffs)
    h = d.inner(d.highest_root, x)
    return tuple(v / (2 * h) for v in x) if h >= 1 else x


@lru_cache(maxsize=None)
def _center_to_weyl(d: RootDatum, index: int) -> WeylElement:
    xi = _interior_point(d)
    rep = d.center_coweight_reps[index]
    red = affine_reduce(d, tuple(a + b for a, b in zip(xi, rep)))
    return red.w


def center_to_weyl(g: CenterElement) -> WeylElement:
    """The Weyl element w_gamma with gamma exp(A) = w_gamma(exp(A))."""
    return _center_to_weyl(g.datum, g.index)


@lru_cache(maxsize=None)
def level_action_table(d: RootDatum, k: int) -> tuple[dict, ...]:
    """For each center index, the permutation of level_weights(d, k)."""
    weights = level_weights(d, k)
    out = []
    for index in range(d.center_order):
        w_inv, shift = _alcove_isometry(d, index)
        perm = {}
        for lam in weights:
            img = w_inv.apply_weight(lam)
            perm[lam] = tuple(a + k * s for a, s in zip(img, shift))
        out.append(perm)
    return tuple(out)


@lru_cache(maxsize=None)
def _alcove_isometry(d: RootDatum, index: int):
    """gamma acts on the alcove as xi -> w^-1 (xi + xi_gamma - tau), read off once."""
    xi = _interior_point(d)
    rep = d.center_coweight_reps[index]
    red = affine_reduce(d, tuple(a + b for a, b in zip(xi, rep)))
    w_inv = red.w.inverse()
    shift = d.to_weight_coords(w_inv.apply(tuple(a - b for a, b in zip(rep, red.translation))))
    if any(c.denominator != 1 for c in shift):
        raise ArithmeticError("center translation is not integral on weights")
    return w_inv, tuple(int(c) for c in shift)


def level_action_by_reduction(d: RootDatum, index: int, lam: Sequence[int], k: int) -> tuple[int, ...]:
    """The same action computed pointwise by alcove reduction (slow oracle)."""
    return _act(d, d.center_coweight_reps[index], lam, k)


def _act(d: RootDatum, rep: Vector, lam: Sequence[int], k: int) -> tuple[int, ...]:
    if k == 0:
        return tuple(lam)
    x = d.to_ambient(lam)
    xi = tuple(v / k + r for v, r in zip(x, rep))
    red = affine_reduce(d, xi)
    coords = d.to_weight_coords(tuple(k * v for v in red.point))
    if any(c.denominator != 1 for c in coords):
        raise ArithmeticError("center action produced a non-integral weight")
    return tuple(int(c) for c in coords)


def act_on_level_weight(g: CenterElement, lam: Sequence[int], k: int) -> tuple[int, ...]:
    return level_action_table(g.datum, k)[g.index][tuple(lam)]


def pairing_exponent(d: RootDatum, index: int, lam: Sequence[int]) -> Fraction:
    """<lam, xi_gamma> modulo 1, as a fraction in [0, 1)."""
    rep = d.center_coweight_reps[index]
    v = d.inner(d.to_ambient(lam), rep)
    return v - math.floor(v)


def gamma_pairing(g: CenterElement, lam: Sequence[int]) -> CycloNumber:
    """gamma^lam = exp(2 pi i <lam, xi_gamma>) as an exact root of unity."""
    q = pairing_exponent(g.datum, g.index, lam)
    return root_of_unity(q.denominator, q.numerator)


# -- subgroups of products of centers ----------------------------------------

Elem = tuple  # tuple of per-factor center indices


@dataclass(frozen=True)
class CenterSubgroup:
    factors: tuple[RootDatum, ...]
    elements: frozenset

    def __post_init__(self):
        ident = self.identity
        if ident not in self.elements:
            raise ValueError("subgroup must contain the identity")
        for a in self.elements:
            for b in self.elements:
                if self.mul(a, b) not in self.elements:
                    raise ValueError("subset is not closed under the group law")

    @property
    def identity(self) -> Elem:
        return tuple(0 for _ in self.factors)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple(center_table(d)[x][y] for d, x, y in zip(self.factors, a, b))

    def sorted_elements(self) -> list[Elem]:
        return sorted(self.elements)

    @classmethod
    def generated_by(cls, factors: Sequence[RootDatum], gens: Iterable[Sequence[int]]) -> "CenterSubgroup":
        factors = tuple(factors)
        ident = tuple(0 for _ in factors)
        els = {ident}
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != len(factors):
                raise ValueError("generator length must match the number of factors")
            for d, x in zip(factors, g):
                if not 0 <= x < d.center_order:
                    raise ValueError(f"center index {x} out of range for {d.lie_type}")
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple(center_table(d)[x][y] for d, x, y in zip(factors, a, g))
                    if b not in els:
                        els.add(b)
                        nxt.append(b)
            frontier = nxt
        return cls(factors, frozenset(els))

    @classmethod
    def trivial(cls, factors: Sequence[RootDatum]) -> "CenterSubgroup":
        return cls.generated_by(factors, [])

    @classmethod
    def full(cls, factors: Sequence[RootDatum]) -> "CenterSubgroup":
        factors = tuple(factors)
        return cls(factors, frozenset(product(*[range(d.center_order) for d in factors])))

    def projection(self, j: int) -> "CenterSubgroup":
        d = self.factors[j]
        return CenterSubgroup((d,), frozenset((e[j],) for e in self.elements))

    def intersect(self, other: "CenterSubgroup") -> "CenterSubgroup":
        return CenterSubgroup(self.factors, self.elements & other.elements)

    def contains_subgroup(self, other: "CenterSubgroup") -> bool:
        return other.elements <= self.elements

    @cached_property
    def generators(self) -> list[Elem]:
        """A small generating set, chosen greedily in sorted order."""
        gens: list[Elem] = []
        span = {self.identity}
        for e in self.sorted_elements():
            if e not in span:
                gens.append(e)
                span = set(CenterSubgroup.generated_by(self.factors, gens).elements)
        return gens

    def act(self, g: Elem, lam: Sequence[Sequence[int]], levels: Sequence[int]) -> tuple:
        return tuple(
            level_action_table(d, k)[x][tuple(l)] for d, x, l, k in zip(self.factors, g, lam, levels)
        )

    def stabilizer(self, lam: Sequence[Sequence[int]], levels: Sequence[int]) -> "CenterSubgroup":
        lam = tuple(tuple(l) for l in lam)
        els = frozenset(g for g in self.elements if self.act(g, lam, levels) == lam)
        return CenterSubgroup(self.factors, els)

    def pairing_exponent(self, g: Elem, lam: Sequence[Sequence[int]]) -> Fraction:
        q = sum((pairing_exponent(d, x, l) for d, x, l in zip(self.factors, g, lam)), Fraction(0))
        return q - math.floor(q)

    def pairing(self, g: Elem, lam: Sequence[Sequence[int]]) -> CycloNumber:
        q = self.pairing_exponent(g, lam)
        return root_of_unity(q.denominator, q.numerator)

    def is_restricted(self, lam: Sequence[Sequence[int]]) -> bool:
        """lam is a weight of the quotient torus: gamma^lam = 1 for all gamma."""
        return all(self.pairing_exponent(g, lam) == 0 for g in self.generators)

    def __repr__(self):
        names = "x".join(str(d.lie_type) for d in self.factors)
        return f"CenterSubgroup({names}, {sorted(self.elements)})"


def stabilizer(gamma: CenterSubgroup, lam, k) -> CenterSubgroup:
    """Stabilizer of a level weight; for a simple factor lam and k may be bare."""
    if gamma.factors and isinstance(k, int):
        lam, k = (tuple(lam),), (k,)
    return gamma.stabilizer(lam, k)


def all_subgroups(factors: Sequence[RootDatum]) -> list[CenterSubgroup]:
    """Every subgroup of the product of centers (generated by at most 2 elements)."""
    full = CenterSubgroup.full(factors)
    els = full.sorted_elements()
    found = {}
    for a in els:
        for b in els:
            s = CenterSubgroup.generated_by(factors, [a, b])
            found[s.elements] = s
    # subgroups of small abelian groups here need at most rank(Z) generators
    rank_bound = sum(len(center_structure(d)) for d in factors)
    if rank_bound > 2:
        for gens in product(els, repeat=rank_bound):
            s = CenterSubgroup.generated_by(factors, gens)
            found[s.elements] = s
    return sorted(found.values(), key=lambda s: (s.order, sorted(s.elements)))


# -- characters of Gamma ---------------------------------------------------


@dataclass(frozen=True)
class CenterCharacter:
    """A character of Gamma^{2h}: one exponent map Gamma -> Q/Z per slot."""

    gamma: CenterSubgroup
    slots: tuple  # tuple of dict-like tuples ((elem, Fraction), ...)

    @staticmethod
    def _slot_from_gen_exponents(gamma: CenterSubgroup, exps: Sequence[int]) -> tuple:
        gens = gamma.generators
        if len(exps) != len(gens):
            raise ValueError(f"expected {len(gens)} exponents (one per generator {gens}), got {len(exps)}")
        val = {gamma.identity: Fraction(0)}
        frontier = [gamma.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g, e in zip(gens, exps):
                    order = _elem_order(gamma, g)
                    b = gamma.mul(a, g)
                    q = val[a] + Fraction(e, order)
                    q -= math.floor(q)
                    if b in val:
                        if val[b] != q:
                            raise ValueError("character exponents are not consistent with the group relations")
                    else:
                        val[b] = q
                        nxt.append(b)
            frontier = nxt
        return tuple(sorted(val.items()))

    @classmethod
    def from_generator_exponents(cls, gamma: CenterSubgroup, slots: Sequence[Sequence[int]], h: int) -> "CenterCharacter":
        if len(slots) > 2 * h:
            raise ValueError(f"at most 2h = {2 * h} slots")
        built = [cls._slot_from_gen_exponents(gamma, s) for s in slots]
        trivial = cls._slot_from_gen_exponents(gamma, [0] * len(gamma.generators))
        built += [trivial] * (2 * h - len(built))
        return cls(gamma, tuple(built))

    @classmethod
    def trivial(cls, gamma: CenterSubgroup, h: int) -> "CenterCharacter":
        return cls.from_generator_exponents(gamma, [], h)

    @classmethod
    def from_weight(cls, gamma: CenterSubgroup, nu: Sequence[Sequence[int]], slot: int, h: int) -> "CenterCharacter":
        """Slot ``slot`` carries gamma -> gamma^nu, the others are trivial."""
        tri = cls._slot_from_gen_exponents(gamma, [0] * len(gamma.generators))
        s = tuple(sorted((g, gamma.pairing_exponent(g, nu)) for g in gamma.elements))
        slots = [tri] * (2 * h)
        slots[slot] = s
        return cls(gamma, tuple(slots))

    def value(self, slot: int, g: Elem) -> CycloNumber:
        q = dict(self.slots[slot])[g]
        return root_of_unity(q.denominator, q.numerator)

    @property
    def kernel(self) -> frozenset:
        """Elements on which every slot character is trivial."""
        els = set(self.gamma.elements)
        for s in self.slots:
            els &= {g for g, q in s if q == 0}
        return frozenset(els)

    def is_trivial(self) -> bool:
        return self.kernel == self.gamma.elements


def _elem_order(gamma: CenterSubgroup, g: Elem) -> int:
    n, x = 1, g
    while x != gamma.identity:
        x = gamma.mul(x, g)
        n += 1
    return n


def epsilon(phi: CenterCharacter, gamma_lam: CenterSubgroup) -> int:
    """1 if phi is trivial on gamma_lam in every slot, else 0."""
    return int(gamma_lam.elements <= phi.kernel)


def generating_characters(gamma: CenterSubgroup, h: int) -> list[CenterCharacter]:
    """Trivial phi plus, for every slot, each generator of the dual of Gamma."""
    out = [CenterCharacter.trivial(gamma, h)]
    gens = gamma.generators
    for slot in range(2 * h):
        for gi, g in enumerate(gens):
            exps = [0] * len(gens)
            exps[gi] = 1
            slots = [[0] * len(gens)] * (2 * h)
            slots = [list(s) for s in slots]
            slots[slot] = exps
            try:
                out.append(CenterCharacter.from_generator_exponents(gamma, slots, h))
            except ValueError:
                continue
    return out


def restricted_level_weights(d: RootDatum, gamma: CenterSubgroup, k: int) -> list[tuple[int, ...]]:
    out = [lam for lam in level_weights(d, k) if gamma.is_restricted((lam,))]
    for lam in out:
        for g in gamma.elements:
            assert gamma.is_restricted(gamma.act(g, (lam,), (k,)))
    return out


def orbit_representatives(d: RootDatum, gamma: CenterSubgroup, k: int, weights=None) -> list[tuple[tuple[int, ...], int]]:
    """(representative, orbit size) per Gamma-orbit, smallest weight first."""
    weights = level_weights(d, k) if weights is None else weights
    seen = set()
    out = []
    for lam in weights:
        if lam in seen:
            continue
        orbit = {gamma.act(g, (lam,), (k,))[0] for g in gamma.elements}
        seen |= orbit
        out.append((lam, len(orbit)))
    return out
