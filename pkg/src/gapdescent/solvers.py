"""Descent solvers for the duality gap.

Four variants share one loop: pick the direction minimizing the (approximate)
directional derivative, then move a step eps toward it.

* plain           -- fixed delta and rho
* decay-delta     -- epochs with delta_i = delta_{i-1} / 2, fixed rho
* decay-delta-rho -- additionally rho_i = sqrt(delta_i)
* fixed-support   -- response sets replaced by each player's top-k responses

Solvers follow the scikit-learn estimator convention: hyperparameters in
``__init__``, results as trailing-underscore attributes after ``fit``.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator

from .direction import DEFAULT_LP_TOLERANCE, direction_for_sets, find_direction_decomposed
from .game import (
    GameInputError,
    MixedStrategy,
    PayoffMatrix,
    StrategyProfile,
    col_response_indices,
    duality_gap,
    row_response_indices,
)
from .linesearch import LineGap, exact_line_minimum, ternary_line_search
from .trace import CONVERGED, ITERATION_CAP, IterationRecord, SolveTrace

__all__ = [
    "DualityGapSolver",
    "InvariantViolation",
    "descent_step",
    "choose_epsilon",
    "combine_profiles",
]

VARIANTS = ("plain", "decay-delta", "decay-delta-rho", "fixed-support")
POLICIES = ("half-rho", "constant", "ternary-decay", "exact-line-min")

# Ternary search while the gap is large; below this, a decaying step size.
TERNARY_GAP_THRESHOLD = 0.1
DECAY_START = 0.2
DECAY_FACTOR = 0.9
DECAY_FLOOR = 1e-6

STALL_WINDOW = 50
STALL_REL_TOL = 1e-6
NO_PROGRESS_LIMIT = 15


class InvariantViolation(AssertionError):
    """A per-iteration theoretical guarantee failed (validate=True only)."""


def combine_profiles(z: StrategyProfile, d: StrategyProfile, eps: float) -> StrategyProfile:
    """(1 - eps) * z + eps * d, componentwise on both simplices."""
    return StrategyProfile(
        MixedStrategy((1.0 - eps) * z.row.probs + eps * d.row.probs),
        MixedStrategy((1.0 - eps) * z.col.probs + eps * d.col.probs),
    )


def choose_epsilon(R, z, direction, policy, state) -> float:
    """Step size under the given policy.

    ``state`` is a dict carried across iterations; it holds ``rho``,
    ``epsilon`` (for the constant policy) and the decay value for
    ternary-decay.
    """
    if policy == "half-rho":
        return state["rho"] / 2.0
    if policy == "constant":
        return state["epsilon"]
    if policy == "exact-line-min":
        eps, _ = exact_line_minimum(R, z, direction)
        return eps
    if policy == "ternary-decay":
        gap = LineGap(R, z, direction)
        if gap(0.0) > TERNARY_GAP_THRESHOLD:
            return ternary_line_search(gap)
        prev = state.get("decay_epsilon")
        eps = DECAY_START if prev is None else max(prev * DECAY_FACTOR, DECAY_FLOOR)
        state["decay_epsilon"] = eps
        return eps
    raise GameInputError(f"unknown epsilon policy {policy!r}")


def descent_step(R, z, rho, epsilon, lp_tolerance=DEFAULT_LP_TOLERANCE):
    """One raw descent step: find the direction for ``rho``, move ``epsilon``.

    Returns the new profile and a record dict (v_before, v_after, gamma and
    the response-set sizes).
    """
    if not 0.0 <= epsilon <= 1.0:
        raise GameInputError(f"epsilon must lie in [0, 1], got {epsilon}")
    result = find_direction_decomposed(R, z, rho, lp_tolerance)
    new_z = combine_profiles(z, result.direction, epsilon)
    record = {
        "v_before": duality_gap(R, z),
        "v_after": duality_gap(R, new_z),
        "gamma": result.gamma,
        "row_set": result.row_set_size,
        "col_set": result.col_set_size,
        "epsilon": epsilon,
    }
    return new_z, record


def _theory_cap(variant, delta, rho) -> int:
    """Ten times the instantiated iteration bound of the matching theorem."""
    if variant == "plain":
        bound = math.ceil(4.0 / (rho * delta) * math.log(2.0 / delta)) + 1
    elif variant == "decay-delta":
        bound = math.ceil(4.0 / rho + 1) * math.ceil(math.log2(2.0 / delta))
    elif variant == "decay-delta-rho":
        bound = math.ceil(14.0 / math.sqrt(delta) + math.log2(2.0 / delta) + 1)
    else:
        return 100_000
    return 10 * bound


class DualityGapSolver(BaseEstimator):
    """Steepest-descent solver on the duality gap of a zero-sum game.

    Parameters
    ----------
    delta : target accuracy; the loop stops once the duality gap is <= delta.
    rho : best-response slack controlling the direction-LP size (ignored by
        the fixed-support variant).
    variant : one of "plain", "decay-delta", "decay-delta-rho",
        "fixed-support".
    epsilon_policy : "half-rho", "constant", "ternary-decay",
        "exact-line-min", or None for the variant default (half-rho for the
        theory-backed variants, ternary-decay for fixed-support).
    epsilon : step size for the constant policy.
    k : support size of the fixed-support variant (top-k responses per
        player, clamped to the matrix dimensions).
    lp_tolerance : absolute objective tolerance of the direction LPs.
    max_iterations : safety cap; None picks 10x the theoretical bound for
        theory-backed variants and 100000 otherwise.
    init : "pure" for (e_1, e_1), "uniform", or a StrategyProfile.
    rho_scale : multiplier on sqrt(delta_i) for decay-delta-rho (1.0 follows
        the analysis; 0.01 is the practical setting).
    validate : when True, check the per-iteration descent guarantees and
        raise InvariantViolation on failure.

    After ``fit``: ``profile_``, ``trace_``, ``gap_``, ``outcome_``.
    """

    def __init__(
        self,
        delta=0.01,
        rho=0.1,
        variant="plain",
        epsilon_policy=None,
        epsilon=0.2,
        k=100,
        lp_tolerance=DEFAULT_LP_TOLERANCE,
        max_iterations=None,
        init="pure",
        rho_scale=1.0,
        validate=False,
    ):
        self.delta = delta
        self.rho = rho
        self.variant = variant
        self.epsilon_policy = epsilon_policy
        self.epsilon = epsilon
        self.k = k
        self.lp_tolerance = lp_tolerance
        self.max_iterations = max_iterations
        self.init = init
        self.rho_scale = rho_scale
        self.validate = validate

    # -- configuration helpers -------------------------------------------

    def _check_params(self):
        if self.variant not in VARIANTS:
            raise GameInputError(f"unknown variant {self.variant!r}")
        if not 0.0 < self.delta <= 1.0:
            raise GameInputError(f"delta must lie in (0, 1], got {self.delta}")
        if self.variant != "fixed-support" and not 0.0 < self.rho <= 1.0:
            raise GameInputError(f"rho must lie in (0, 1], got {self.rho}")
        if self.variant == "fixed-support" and self.k < 1:
            raise GameInputError(f"k must be >= 1, got {self.k}")
        policy = self._policy()
        if policy not in POLICIES:
            raise GameInputError(f"unknown epsilon policy {policy!r}")
        if self.variant in ("decay-delta", "decay-delta-rho") and policy != "half-rho":
            raise GameInputError(f"variant {self.variant} requires the half-rho policy")

    def _policy(self):
        if self.epsilon_policy is not None:
            return self.epsilon_policy
        return "ternary-decay" if self.variant == "fixed-support" else "half-rho"

    def _initial_profile(self, m, n) -> StrategyProfile:
        if isinstance(self.init, StrategyProfile):
            return self.init
        if self.init == "pure":
            return StrategyProfile.pure_first(m, n)
        if self.init == "uniform":
            return StrategyProfile.uniform(m, n)
        raise GameInputError(f"unknown initialization {self.init!r}")

    def _epochs(self):
        """Yield (epoch index, delta_i, rho_i); rho_i is NaN for fixed support."""
        if self.variant == "plain":
            yield 0, self.delta, self.rho
        elif self.variant == "fixed-support":
            yield 0, self.delta, math.nan
        else:
            i, delta_i = 0, 1.0
            while True:
                i += 1
                delta_i /= 2.0
                if self.variant == "decay-delta-rho":
                    rho_i = min(1.0, self.rho_scale * math.sqrt(delta_i))
                else:
                    rho_i = self.rho
                yield i, delta_i, rho_i
                if delta_i <= self.delta:
                    return

    def _response_sets(self, R, z, rho_i, k=None):
        ry = R.entries @ z.col.probs
        xr = z.row.probs @ R.entries
        if self.variant == "fixed-support":
            k = self.k if k is None else k
            k_row = min(k, R.rows)
            k_col = min(k, R.cols)
            # Stable sort: ties broken by ascending index.
            row_set = np.sort(np.argsort(-ry, kind="stable")[:k_row])
            col_set = np.sort(np.argsort(xr, kind="stable")[:k_col])
        else:
            row_set = row_response_indices(ry, rho_i)
            col_set = col_response_indices(xr, rho_i)
        return row_set, col_set

    # -- solving ----------------------------------------------------------

    def fit(self, R, y=None):
        R = as_payoff_matrix(R)
        self._check_params()
        profile, trace = self._solve(R)
        self.profile_ = profile
        self.trace_ = trace
        self.gap_ = duality_gap(R, profile)
        self.outcome_ = trace.outcome
        return self

    def solve(self, R):
        """fit + return (profile, trace)."""
        self.fit(R)
        return self.profile_, self.trace_

    def _solve(self, R: PayoffMatrix):
        policy = self._policy()
        cap = self.max_iterations
        if cap is None:
            cap = _theory_cap(self.variant if policy == "half-rho" else "heuristic",
                              self.delta, self.rho)
        heuristic = policy in ("constant", "ternary-decay")
        stall_check = heuristic or policy == "exact-line-min"
        state = {"rho": math.nan, "epsilon": self.epsilon}

        z = self._initial_profile(R.rows, R.cols)
        v = duality_gap(R, z)
        trace = SolveTrace(metadata={"variant": self.variant, "policy": policy})
        t = 0
        recent = []
        k_eff = self.k
        no_progress = 0

        for epoch, delta_i, rho_i in self._epochs():
            state["rho"] = rho_i
            while v > delta_i:
                if t >= cap:
                    trace.outcome = ITERATION_CAP
                    return z, trace
                row_set, col_set = self._response_sets(R, z, rho_i, k_eff)
                result = direction_for_sets(R, row_set, col_set, self.lp_tolerance)
                eps = choose_epsilon(R, z, result.direction, policy, state)
                gap_line = LineGap(R, z, result.direction)
                v_new = gap_line(eps)
                if heuristic:
                    # A heuristic step that would increase V is rejected and
                    # retried with a halved step.
                    while v_new > v + 1e-12 and eps > 1e-12:
                        eps /= 2.0
                        v_new = gap_line(eps)
                    if v_new > v:
                        eps, v_new = 0.0, v
                    slow = v - v_new < 1e-4 * (v - delta_i)
                    no_progress = no_progress + 1 if slow else 0
                    if (no_progress >= NO_PROGRESS_LIMIT
                            and self.variant == "fixed-support"
                            and k_eff < max(R.rows, R.cols)):
                        # No usable step along this direction: more strategies
                        # tie at the envelope than the support controls.
                        # Widen the support and restart the decay schedule.
                        k_eff = min(2 * k_eff, max(R.rows, R.cols))
                        state.pop("decay_epsilon", None)
                        recent.clear()
                        no_progress = 0
                        continue
                new_z = combine_profiles(z, result.direction, eps)
                v_new = duality_gap(R, new_z)
                if self.validate:
                    self._check_invariants(
                        R, z, new_z, v, v_new, eps, delta_i, rho_i, result,
                        row_set, col_set,
                    )
                trace.records.append(
                    IterationRecord(
                        t=t, epoch=epoch, delta_i=delta_i, rho_i=rho_i,
                        epsilon=eps, v_before=v, v_after=v_new,
                        gamma=result.gamma,
                        row_set=result.row_set_size, col_set=result.col_set_size,
                    )
                )
                z, v = new_z, v_new
                t += 1
                if stall_check:
                    recent.append(v)
                    if len(recent) > STALL_WINDOW:
                        recent.pop(0)
                        base = recent[0]
                        if base > 0 and (base - v) / base < STALL_REL_TOL:
                            if (self.variant == "fixed-support"
                                    and k_eff < max(R.rows, R.cols)):
                                # Progress dies once more strategies tie at the
                                # envelope than the support can control; widen
                                # the support and restart the decay schedule.
                                k_eff = min(2 * k_eff, max(R.rows, R.cols))
                                state.pop("decay_epsilon", None)
                                recent.clear()
                                continue
                            trace.outcome = ITERATION_CAP
                            trace.stalled = True
                            return z, trace
        trace.outcome = CONVERGED
        return z, trace

    def _check_invariants(
        self, R, z, new_z, v, v_new, eps, delta_i, rho_i, result, row_set, col_set
    ):
        rho_based = self.variant != "fixed-support"
        if rho_based and self.lp_tolerance <= 1e-6:
            if not result.gamma - v < -delta_i + 1e-9:
                raise InvariantViolation(
                    f"descent certificate failed: gamma-V = {result.gamma - v}, "
                    f"delta_i = {delta_i}"
                )
        if rho_based and eps <= rho_i / 2.0 + 1e-12:
            if v_new > v - eps * delta_i + 1e-9:
                raise InvariantViolation(
                    f"additive decrease failed: {v} -> {v_new} with eps*delta = {eps * delta_i}"
                )
            if abs(eps - rho_i / 2.0) <= 1e-12 and v_new > (1 - rho_i * delta_i / 4.0) * v + 1e-9:
                raise InvariantViolation("geometric contraction failed")
            ry_new = R.entries @ new_z.col.probs
            xr_new = new_z.row.probs @ R.entries
            if ry_new[row_set].max() < ry_new.max() - 1e-9:
                raise InvariantViolation("row active set drifted outside the rho-set")
            if xr_new[col_set].min() > xr_new.min() + 1e-9:
                raise InvariantViolation("col active set drifted outside the rho-set")


def as_payoff_matrix(R) -> PayoffMatrix:
    return R if isinstance(R, PayoffMatrix) else PayoffMatrix(np.asarray(R, dtype=float))
