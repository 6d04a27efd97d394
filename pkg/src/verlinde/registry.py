"""Named groups: strings like "SU(3)", "SO(3)", "E6'" or "A1xB2" to (factors, Gamma).

Sp(n) is the compact symplectic group of rank n (type C_n).  A trailing
prime (' or ′) on a Lie type or named group means the adjoint quotient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .center import CenterSubgroup, pairing_exponent
from .rootdata import LieType, LieTypeError, RootDatum, build_root_datum


class GroupSpecError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    name: str
    factors: tuple[RootDatum, ...]
    gamma: CenterSubgroup

    @property
    def simply_connected(self) -> bool:
        return self.gamma.order == 1

    @property
    def rank(self) -> int:
        return sum(d.rank for d in self.factors)


_NAMED = re.compile(r"^(SU|PSU|SO|Spin|Sp|PSp)\((\d+)\)$", re.IGNORECASE)
_PRODUCT = re.compile(r"\s*(?:×|\*|(?<=[)\d'′])\s*x\s*(?=[A-Za-z]))\s*")


def _vector_kernel(d: RootDatum) -> list[int]:
    """Center indices acting trivially on the first fundamental representation."""
    omega1 = tuple(1 if i == 0 else 0 for i in range(d.rank))
    return [i for i in range(d.center_order) if pairing_exponent(d, i, omega1) == 0]


def _factor(text: str) -> tuple[RootDatum, list[int]]:
    """One simple factor: its datum and the center indices generating Gamma."""
    t = text.strip()
    adjoint = t.endswith("'") or t.endswith("′")
    if adjoint:
        t = t[:-1].strip()
    m = _NAMED.match(t)
    if m is None:
        try:
            d = build_root_datum(LieType.parse(t))
        except LieTypeError as exc:
            raise GroupSpecError(f"unknown group {text!r}") from exc
        return d, list(range(d.center_order)) if adjoint else []
    kind, n = m.group(1).upper(), int(m.group(2))
    if kind in ("SU", "PSU"):
        if n < 2:
            raise GroupSpecError("SU(n) needs n >= 2")
        d = build_root_datum(LieType("A", n - 1))
        full = kind == "PSU"
    elif kind in ("SP", "PSP"):
        if n < 1:
            raise GroupSpecError("Sp(n) needs n >= 1")
        d = build_root_datum(LieType("A", 1) if n == 1 else LieType("C", n))
        full = kind == "PSP"
    else:
        if n in (1, 2, 4):
            raise GroupSpecError(f"{kind.title()}({n}) is not simple")
        if n == 3:
            d = build_root_datum(LieType("A", 1))
        elif n == 5:
            d = build_root_datum(LieType("B", 2))
        elif n % 2:
            d = build_root_datum(LieType("B", (n - 1) // 2))
        else:
            d = build_root_datum(LieType("D", n // 2))
        if kind == "SPIN":
            full = False
        elif n % 2:
            full = True
        else:
            gens = [i for i in _vector_kernel(d) if i]
            if adjoint:
                gens = list(range(d.center_order))
            return d, gens
    if adjoint:
        full = True
    return d, list(range(d.center_order)) if full else []


def parse_group(text: str, center: str | None = None) -> GroupSpec:
    """Resolve a group name, optionally overriding Gamma by explicit generators.

    ``center`` lists generators separated by ';', each a comma-separated
    tuple of center indices, one per factor.
    """
    parts = [p for p in _PRODUCT.split(text.strip()) if p]
    if not parts:
        raise GroupSpecError("empty group name")
    factors, per_factor = [], []
    for p in parts:
        d, gens = _factor(p)
        factors.append(d)
        per_factor.append(gens)
    factors = tuple(factors)
    if center is not None:
        gens = []
        for chunk in center.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                g = tuple(int(x) for x in chunk.split(","))
            except ValueError as exc:
                raise GroupSpecError(f"bad center generator {chunk!r}") from exc
            gens.append(g)
    else:
        gens = []
        for j, idx in enumerate(per_factor):
            for i in idx:
                gens.append(tuple(i if m == j else 0 for m in range(len(factors))))
    try:
        gamma = CenterSubgroup.generated_by(factors, gens)
    except ValueError as exc:
        raise GroupSpecError(str(exc)) from exc
    return GroupSpec(text.strip(), factors, gamma)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r"[,\s;]+", text.strip()) if x]
    except ValueError as exc:
        raise GroupSpecError(f"expected integers, got {text!r}") from exc


def parse_markings(text: str | None, spec: GroupSpec) -> list[tuple[tuple[int, ...], ...]]:
    """Markings as one flat integer list cut into chunks of the total rank.

    Each marking is returned as a tuple of per-factor weights.
    """
    if not text:
        return []
    flat = parse_int_list(text)
    r = spec.rank
    if len(flat) % r:
        raise GroupSpecError(f"marking coordinates must come in groups of {r}")
    out = []
    for s in range(0, len(flat), r):
        chunk = flat[s : s + r]
        weights, pos = [], 0
        for d in spec.factors:
            weights.append(tuple(chunk[pos : pos + d.rank]))
            pos += d.rank
        out.append(tuple(weights))
    return out


def parse_phi(text: str | None) -> list[list[int]]:
    """Character exponents: slots separated by '/', generator exponents by ','."""
    if not text:
        return []
    return [parse_int_list(slot) if slot.strip() else [] for slot in text.split("/")]


def describe(spec: GroupSpec) -> str:
    types = " x ".join(str(d.lie_type) for d in spec.factors)
    return f"{spec.name}: {types}, Gamma of order {spec.gamma.order}"


def levels_for(spec: GroupSpec, levels: Sequence[int]) -> tuple[int, ...]:
    if len(levels) == 1 and len(spec.factors) > 1:
        levels = list(levels) * len(spec.factors)
    if len(levels) != len(spec.factors):
        raise GroupSpecError(f"expected {len(spec.factors)} levels, got {len(levels)}")
    if any(k < 0 for k in levels):
        raise GroupSpecError("levels must be nonnegative")
    return tuple(levels)
