"""Closed-form directional derivative of the duality gap.

Along the segment (1-eps)*z + eps*z', the duality gap is piecewise linear;
its one-sided derivative at eps=0 has a combinatorial form over the exact
best-response sets.  Enlarging those sets to rho-best responses gives an
upper bound on the derivative, which is what the direction-finding LP
minimizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .game import (
    BestResponseSet,
    GameInputError,
    PayoffMatrix,
    StrategyProfile,
    best_responses,
    duality_gap,
)

__all__ = ["DirectionalDerivativeResult", "directional_derivative", "rho_directional_derivative"]


@dataclass(frozen=True)
class DirectionalDerivativeResult:
    value: float
    row_active_set: BestResponseSet
    col_active_set: BestResponseSet


def _derivative_over_sets(
    R: PayoffMatrix,
    z: StrategyProfile,
    direction: StrategyProfile,
    row_set: BestResponseSet,
    col_set: BestResponseSet,
) -> DirectionalDerivativeResult:
    if len(direction.row) != R.rows or len(direction.col) != R.cols:
        raise GameInputError("direction dimensions do not match the matrix")
    ry_dir = R.entries @ direction.col.probs
    xr_dir = direction.row.probs @ R.entries
    row_idx = list(row_set.indices)
    col_idx = list(col_set.indices)
    value = float(ry_dir[row_idx].max() - xr_dir[col_idx].min() - duality_gap(R, z))
    return DirectionalDerivativeResult(value, row_set, col_set)


def directional_derivative(
    R: PayoffMatrix, z: StrategyProfile, direction: StrategyProfile
) -> DirectionalDerivativeResult:
    """One-sided derivative of the gap at z toward ``direction``."""
    row_set = best_responses(R, "row", z.col, 0.0)
    col_set = best_responses(R, "col", z.row, 0.0)
    return _derivative_over_sets(R, z, direction, row_set, col_set)


def rho_directional_derivative(
    R: PayoffMatrix, z: StrategyProfile, direction: StrategyProfile, rho: float
) -> DirectionalDerivativeResult:
    """Same combinatorial form with rho-best-response sets.

    Always an upper bound on :func:`directional_derivative` (the active sets
    only grow with rho).
    """
    if not 0.0 < rho <= 1.0:
        raise GameInputError(f"rho must lie in (0, 1], got {rho}")
    row_set = best_responses(R, "row", z.col, rho)
    col_set = best_responses(R, "col", z.row, rho)
    return _derivative_over_sets(R, z, direction, row_set, col_set)
