"""FindDirection: the LPs that pick the steepest-descent direction.

Given the rho-best-response sets of the two players, the direction (x', y')
minimizing the rho-directional derivative solves

    min gamma   s.t.  gamma >= e_i R y' - x' R e_j   for i, j in the sets,

with x', y' on their simplices.  The joint program decouples into two smaller
ones (one per player); the decomposed form rewrites each as a positive matrix
game in standard form (slack basis feasible, so no phase-one work) and is the
production path, while the joint form exists for the equivalence check.  With rho = 1 the sets are full and
the programs reduce to the classic primal/dual LPs of the matrix game, so the
returned direction is an exact equilibrium.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import (
    GameInputError,
    MixedStrategy,
    PayoffMatrix,
    StrategyProfile,
    best_responses,
)
from .lp import LinearProgram, LpError, solve_lp

__all__ = [
    "DirectionResult",
    "find_direction",
    "find_direction_decomposed",
    "full_game_lp",
    "direction_for_sets",
    "joint_direction_lp",
    "row_direction_lp",
    "col_direction_lp",
]

DEFAULT_LP_TOLERANCE = 1e-8


@dataclass(frozen=True)
class DirectionResult:
    direction: StrategyProfile
    gamma: float
    row_set_size: int
    col_set_size: int


def joint_direction_lp(R: PayoffMatrix, row_set, col_set) -> LinearProgram:
    """Variables [x' (m), y' (n), gamma]; one row per (i, j) pair."""
    m, n = R.shape
    row_set, col_set = list(row_set), list(col_set)
    nv = m + n + 1
    a_ub = np.zeros((len(row_set) * len(col_set), nv))
    r = 0
    for i in row_set:
        for j in col_set:
            a_ub[r, :m] = -R.entries[:, j]
            a_ub[r, m : m + n] = R.entries[i, :]
            a_ub[r, -1] = -1.0
            r += 1
    a_eq = np.zeros((2, nv))
    a_eq[0, :m] = 1.0
    a_eq[1, m : m + n] = 1.0
    c = np.zeros(nv)
    c[-1] = 1.0
    # gamma is free: leaving it unshifted keeps the inequality rhs at zero,
    # so the slack basis is feasible and phase one touches only the two
    # simplex equalities.
    bounds = [(0.0, None)] * (m + n) + [(None, None)]
    return LinearProgram(c, a_ub, np.zeros(len(a_ub)), a_eq, np.ones(2), bounds)


def row_direction_lp(R: PayoffMatrix, row_set) -> LinearProgram:
    """Positivized form of  min_{y' in simplex} max_{i in set} e_i R y'.

    Shifting payoffs to (R + 1) makes the restricted game value positive, so
    the program becomes  max 1'q  s.t. (R+1)[set] q <= 1, q >= 0  (one row
    per retained pure strategy, no equality constraint, slack basis start).
    The minimizing y' is q normalized; the value is 1 / sum(q) - 1.
    """
    row_set = list(row_set)
    a_ub = R.entries[row_set, :] + 1.0
    return LinearProgram(-np.ones(R.cols), a_ub, np.ones(len(row_set)))


def col_direction_lp(R: PayoffMatrix, col_set) -> LinearProgram:
    """Positivized form of  max_{x' in simplex} min_{j in set} x' R e_j.

    Via x'(2-R) e_j = 2 - x' R e_j the problem becomes a min-max over the
    positive matrix (2 - R)[:, set] transposed:  max 1'q  s.t.
    (2-R)[:, set]' q <= 1, q >= 0.  The maximizing x' is q normalized; the
    attained minimum payoff is 2 - 1 / sum(q).
    """
    col_set = list(col_set)
    a_ub = (2.0 - R.entries[:, col_set]).T
    return LinearProgram(-np.ones(R.rows), a_ub, np.ones(len(col_set)))


def _solved(lp: LinearProgram, tolerance: float):
    sol = solve_lp(lp, tolerance)
    if not sol.ok:
        raise LpError(
            f"direction LP unexpectedly {sol.status.value}; "
            "this signals an implementation bug"
        )
    return sol


def _strategy(values: np.ndarray) -> MixedStrategy:
    v = np.clip(values, 0.0, None)
    total = v.sum()
    if total <= 0.0:
        raise LpError("direction LP returned a zero vector")
    return MixedStrategy(v / total)


def direction_for_sets(
    R: PayoffMatrix, row_set, col_set, tolerance: float = DEFAULT_LP_TOLERANCE
) -> DirectionResult:
    """Decomposed two-LP solve for explicitly given index sets."""
    row_set, col_set = list(row_set), list(col_set)
    # The shifted-game values lie in [1, 2], so sum(q) lies in [1/2, 1] and
    # a tolerance of t/4 on the LP objective bounds the value error by t.
    lp_tol = tolerance / 4.0
    sol_y = _solved(row_direction_lp(R, row_set), lp_tol)
    sol_x = _solved(col_direction_lp(R, col_set), lp_tol)
    y = _strategy(sol_y.values)
    x = _strategy(sol_x.values)
    # Evaluate gamma at the returned direction rather than trusting the LP
    # objective, so gamma matches the directional derivative exactly.
    gamma1 = float((R.entries[row_set, :] @ y.probs).max())
    gamma2 = -float((x.probs @ R.entries[:, col_set]).min())
    return DirectionResult(
        StrategyProfile(x, y), gamma1 + gamma2, len(row_set), len(col_set)
    )


def _response_sets(R: PayoffMatrix, z: StrategyProfile, rho: float):
    if not 0.0 < rho <= 1.0:
        raise GameInputError(f"rho must lie in (0, 1], got {rho}")
    row_set = best_responses(R, "row", z.col, rho).indices
    col_set = best_responses(R, "col", z.row, rho).indices
    return row_set, col_set


def find_direction_decomposed(
    R: PayoffMatrix,
    z: StrategyProfile,
    rho: float,
    tolerance: float = DEFAULT_LP_TOLERANCE,
) -> DirectionResult:
    row_set, col_set = _response_sets(R, z, rho)
    return direction_for_sets(R, row_set, col_set, tolerance)


def find_direction(
    R: PayoffMatrix,
    z: StrategyProfile,
    rho: float,
    tolerance: float = DEFAULT_LP_TOLERANCE,
) -> DirectionResult:
    """Single joint-LP form of FindDirection (the decomposed form is faster)."""
    row_set, col_set = _response_sets(R, z, rho)
    sol = _solved(joint_direction_lp(R, row_set, col_set), tolerance)
    m = R.rows
    direction = StrategyProfile(
        _strategy(sol.values[:m]), _strategy(sol.values[m : m + R.cols])
    )
    return DirectionResult(direction, float(sol.objective_value), len(row_set), len(col_set))


def full_game_lp(R: PayoffMatrix, tolerance: float = DEFAULT_LP_TOLERANCE) -> StrategyProfile:
    """Exact Nash equilibrium via the full primal/dual pair (the test oracle)."""
    result = direction_for_sets(R, range(R.rows), range(R.cols), tolerance)
    return result.direction
