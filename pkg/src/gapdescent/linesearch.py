"""Step-size selection along a descent segment.

The duality gap restricted to the segment (1-eps)*z + eps*d is a convex
piecewise-linear function of eps, built from one line per pure strategy.
This module evaluates that function cheaply, minimizes it exactly by walking
its breakpoints, and approximately by ternary search.
"""

from __future__ import annotations

import numpy as np

from .game import PayoffMatrix, StrategyProfile

__all__ = ["LineGap", "exact_line_minimum", "ternary_line_search"]

TERNARY_WIDTH = 1e-3


class LineGap:
    """Duality gap along eps -> V((1-eps)*z + eps*d), evaluated in O(m+n)."""

    def __init__(self, R: PayoffMatrix, z: StrategyProfile, d: StrategyProfile):
        self.ry = R.entries @ z.col.probs
        self.ry_d = R.entries @ d.col.probs
        self.xr = z.row.probs @ R.entries
        self.xr_d = d.row.probs @ R.entries

    def __call__(self, eps: float) -> float:
        top = (1.0 - eps) * self.ry + eps * self.ry_d
        bot = (1.0 - eps) * self.xr + eps * self.xr_d
        return float(top.max() - bot.min())


def _walk_breakpoints(a, b):
    """Candidate eps values: breakpoints of max_i(a_i + b_i * eps) on [0, 1].

    Walks the upper envelope from eps = 0, following the line with the
    largest slope among the current leaders.
    """
    candidates = []
    eps = 0.0
    leaders = np.flatnonzero(a >= a.max() - 1e-15)
    cur = leaders[np.argmax(b[leaders])]
    for _ in range(len(a) + 1):
        steeper = b > b[cur] + 1e-15
        if not steeper.any():
            break
        cross = (a[cur] - a[steeper]) / (b[steeper] - b[cur])
        cross = cross[(cross > eps + 1e-15) & (cross < 1.0)]
        if cross.size == 0:
            break
        eps = cross.min()
        candidates.append(eps)
        vals = a + b * eps
        leaders = np.flatnonzero(vals >= vals.max() - 1e-12)
        nxt = leaders[np.argmax(b[leaders])]
        if nxt == cur:
            break
        cur = nxt
    return candidates


def exact_line_minimum(R: PayoffMatrix, z: StrategyProfile, d: StrategyProfile):
    """Global minimizer of the gap over eps in [0, 1], by breakpoint enumeration.

    Returns (eps, gap value).  Used as the oracle for ternary search and as
    the ExactLineMin policy.
    """
    gap = LineGap(R, z, d)
    candidates = [0.0, 1.0]
    candidates += _walk_breakpoints(gap.ry, gap.ry_d - gap.ry)
    candidates += _walk_breakpoints(-gap.xr, -(gap.xr_d - gap.xr))
    best_eps, best_val = 0.0, np.inf
    for eps in candidates:
        val = gap(eps)
        if val < best_val - 1e-15:
            best_eps, best_val = eps, val
    return best_eps, best_val


def ternary_line_search(gap, width: float = TERNARY_WIDTH) -> float:
    """Ternary search for the minimum of a convex function on [0, 1]."""
    lo, hi = 0.0, 1.0
    while hi - lo > width:
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if gap(m1) <= gap(m2):
            hi = m2
        else:
            lo = m1
    return 0.5 * (lo + hi)
