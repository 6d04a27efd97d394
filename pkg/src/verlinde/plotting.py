"""Plots for sweep results (matplotlib, headless Agg backend)."""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _log10(v: Fraction) -> float:
    # exact integers can exceed the float range, so take the log of num and den
    if v <= 0:
        return math.nan
    return math.log10(v.numerator) - math.log10(v.denominator)


def plot_sweep(rows: Iterable[dict], path: str, title: str = "") -> str:
    """log10(index) against level, one line per genus.  Returns the path."""
    series = defaultdict(list)
    for r in rows:
        series[r["genus"]].append((r["level"], _log10(Fraction(r["value"]))))
    fig, ax = plt.subplots(figsize=(6, 4))
    for h in sorted(series):
        pts = sorted(series[h])
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=f"h = {h}")
    ax.set_xlabel("level k")
    ax.set_ylabel("log10 index")
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    if series:
        ax.legend()
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path
