"""Projected Optimistic Gradient Descent/Ascent baseline.

The optimistic update extrapolates from the previous gradient; each iterate
is then Euclidean-projected back onto its probability simplex.  Used purely
for convergence comparisons against the descent solvers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator

from .game import GameInputError, MixedStrategy, PayoffMatrix, StrategyProfile, duality_gap
from .trace import CONVERGED, ITERATION_CAP, IterationRecord, SolveTrace

__all__ = ["OgdaState", "OgdaSolver", "ogda_step", "project_simplex", "project_simplex_array"]


def project_simplex_array(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (threshold method)."""
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise GameInputError("cannot project a non-finite vector")
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, v.size + 1)
    cond = u - css / ind > 0
    k = ind[cond][-1]
    tau = css[k - 1] / k
    return np.maximum(v - tau, 0.0)


def project_simplex(v) -> MixedStrategy:
    return MixedStrategy(project_simplex_array(v))


@dataclass(frozen=True)
class OgdaState:
    x: np.ndarray
    y: np.ndarray
    grad_x_prev: np.ndarray  # R @ y at the previous iterate
    grad_y_prev: np.ndarray  # R.T @ x at the previous iterate
    alpha: float

    @staticmethod
    def initial(R: PayoffMatrix, profile: StrategyProfile, alpha: float) -> "OgdaState":
        x, y = profile.row.probs, profile.col.probs
        # First-step convention: previous gradient = current gradient,
        # which makes the first update a plain GDA step.
        return OgdaState(x, y, R.entries @ y, R.entries.T @ x, alpha)


def ogda_step(R: PayoffMatrix, state: OgdaState) -> OgdaState:
    """One optimistic step plus projection.

    The row player maximizes x R y and the column player minimizes it, so x
    ascends its gradient R y while y descends R' x.
    """
    gx = R.entries @ state.y
    gy = R.entries.T @ state.x
    a = state.alpha
    x_new = project_simplex_array(state.x + 2.0 * a * gx - a * state.grad_x_prev)
    y_new = project_simplex_array(state.y - 2.0 * a * gy + a * state.grad_y_prev)
    return OgdaState(x_new, y_new, gx, gy, state.alpha)


class OgdaSolver(BaseEstimator):
    """OGDA run until the duality gap drops below ``delta`` or the cap trips.

    ``schedule`` is "constant" or "sqrt-decay" (alpha / sqrt(t), the remedy
    for games where the constant step stalls).
    """

    def __init__(self, delta=0.01, alpha=0.01, max_iterations=100_000,
                 init="uniform", schedule="constant"):
        self.delta = delta
        self.alpha = alpha
        self.max_iterations = max_iterations
        self.init = init
        self.schedule = schedule

    def _initial_profile(self, m, n) -> StrategyProfile:
        if isinstance(self.init, StrategyProfile):
            return self.init
        if self.init == "pure":
            return StrategyProfile.pure_first(m, n)
        if self.init == "uniform":
            return StrategyProfile.uniform(m, n)
        raise GameInputError(f"unknown initialization {self.init!r}")

    def fit(self, R, y=None):
        if not isinstance(R, PayoffMatrix):
            R = PayoffMatrix(np.asarray(R, dtype=float))
        if self.alpha <= 0:
            raise GameInputError(f"alpha must be positive, got {self.alpha}")
        if self.schedule not in ("constant", "sqrt-decay"):
            raise GameInputError(f"unknown schedule {self.schedule!r}")

        profile = self._initial_profile(R.rows, R.cols)
        state = OgdaState.initial(R, profile, self.alpha)
        trace = SolveTrace(metadata={"variant": "ogda", "alpha": self.alpha,
                                     "schedule": self.schedule})
        v = duality_gap(R, profile)
        t = 0
        while v > self.delta:
            if t >= self.max_iterations:
                trace.outcome = ITERATION_CAP
                break
            alpha_t = self.alpha if self.schedule == "constant" else (
                self.alpha / math.sqrt(t + 1.0)
            )
            state = ogda_step(R, OgdaState(state.x, state.y, state.grad_x_prev,
                                           state.grad_y_prev, alpha_t))
            v_new = float((R.entries @ state.y).max() - (state.x @ R.entries).min())
            trace.records.append(
                IterationRecord(t=t, epoch=0, delta_i=self.delta, rho_i=math.nan,
                                epsilon=alpha_t, v_before=v, v_after=v_new,
                                gamma=math.nan, row_set=0, col_set=0)
            )
            v = v_new
            t += 1
        else:
            trace.outcome = CONVERGED

        self.profile_ = StrategyProfile(MixedStrategy(state.x), MixedStrategy(state.y))
        self.trace_ = trace
        self.gap_ = duality_gap(R, self.profile_)
        self.outcome_ = trace.outcome
        return self

    def solve(self, R):
        self.fit(R)
        return self.profile_, self.trace_
