"""Zero-sum matrix games: payoff matrices, simplex strategies, regrets and the
duality gap.

The row player's payoffs live in a dense matrix ``R`` with entries in [0, 1];
the column player's payoffs are ``-R``.  Everything downstream (directional
derivatives, the descent solvers, the baselines) is expressed in terms of the
vocabulary defined here.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GameInputError",
    "PayoffMatrix",
    "MixedStrategy",
    "StrategyProfile",
    "BestResponseSet",
    "normalize_payoffs",
    "duality_gap",
    "regret_row",
    "regret_col",
    "best_responses",
    "is_delta_ne",
    "load_matrix_csv",
    "save_matrix_csv",
    "load_matrix_json",
    "save_matrix_json",
]

# Absolute slack used when comparing payoffs for best-response membership.
MEMBERSHIP_SLACK = 1e-12

# Simplex sums deviating by at most this much are silently renormalized.
SUM_TOL = 1e-6


class GameInputError(ValueError):
    """Raised for malformed matrices, strategies or profiles."""


def _as_float_array(values, ndim, what):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != ndim:
        raise GameInputError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise GameInputError(f"{what} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise GameInputError(f"{what} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class PayoffMatrix:
    """Row player's payoffs, an m-by-n matrix with entries in [0, 1]."""

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_float_array(self.entries, 2, "payoff matrix")
        if arr.min() < -1e-9 or arr.max() > 1 + 1e-9:
            raise GameInputError(
                "payoff entries must lie in [0, 1]; use normalize_payoffs to rescale"
            )
        arr = np.clip(arr, 0.0, 1.0)
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape


@dataclass(frozen=True)
class MixedStrategy:
    """A probability distribution over pure strategies."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _as_float_array(self.probs, 1, "mixed strategy").copy()
        if arr.min() < -1e-9:
            raise GameInputError("mixed strategy has a negative component")
        arr[arr < 0] = 0.0
        total = arr.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise GameInputError(f"mixed strategy sums to {total}, not 1")
        if total != 1.0:
            arr = arr / total
        arr.flags.writeable = False
        object.__setattr__(self, "probs", arr)

    def __len__(self) -> int:
        return self.probs.shape[0]

    @staticmethod
    def uniform(n: int) -> "MixedStrategy":
        return MixedStrategy(np.full(n, 1.0 / n))

    @staticmethod
    def pure(n: int, index: int) -> "MixedStrategy":
        probs = np.zeros(n)
        probs[index] = 1.0
        return MixedStrategy(probs)


@dataclass(frozen=True)
class StrategyProfile:
    """A pair of mixed strategies (row, col); also used as a descent direction."""

    row: MixedStrategy
    col: MixedStrategy

    @staticmethod
    def from_arrays(x, y) -> "StrategyProfile":
        return StrategyProfile(MixedStrategy(x), MixedStrategy(y))

    @staticmethod
    def uniform(m: int, n: int) -> "StrategyProfile":
        return StrategyProfile(MixedStrategy.uniform(m), MixedStrategy.uniform(n))

    @staticmethod
    def pure_first(m: int, n: int) -> "StrategyProfile":
        return StrategyProfile(MixedStrategy.pure(m, 0), MixedStrategy.pure(n, 0))


@dataclass(frozen=True)
class BestResponseSet:
    """Indices of pure strategies within ``rho`` of the best response."""

    player: str  # "row" or "col"
    rho: float
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.player not in ("row", "col"):
            raise GameInputError(f"player must be 'row' or 'col', got {self.player!r}")
        if not self.indices:
            raise GameInputError("best-response set cannot be empty")
        object.__setattr__(self, "indices", tuple(sorted(int(i) for i in self.indices)))

    def __contains__(self, index) -> bool:
        return int(index) in set(self.indices)

    def __len__(self) -> int:
        return len(self.indices)


def normalize_payoffs(raw) -> PayoffMatrix:
    """Affinely rescale an arbitrary finite matrix onto [0, 1].

    A constant matrix maps to all-0.5 (every profile of that game is then an
    exact equilibrium).
    """
    arr = _as_float_array(raw, 2, "payoff matrix")
    lo, hi = arr.min(), arr.max()
    if hi > lo:
        scaled = (arr - lo) / (hi - lo)
    else:
        scaled = np.full_like(arr, 0.5)
    return PayoffMatrix(scaled)


def _check_dims(R: PayoffMatrix, z: StrategyProfile):
    if len(z.row) != R.rows or len(z.col) != R.cols:
        raise GameInputError(
            f"profile of shape ({len(z.row)}, {len(z.col)}) does not match "
            f"matrix of shape {R.shape}"
        )


def payoff_vectors(R: PayoffMatrix, z: StrategyProfile):
    """Return (R @ y, x @ R): pure-strategy payoffs against the opponent."""
    _check_dims(R, z)
    return R.entries @ z.col.probs, z.row.probs @ R.entries


def duality_gap(R: PayoffMatrix, z: StrategyProfile) -> float:
    """max_i (Ry)_i - min_j (x'R)_j, the sum of the two players' regrets."""
    ry, xr = payoff_vectors(R, z)
    return float(ry.max() - xr.min())


def regret_row(R: PayoffMatrix, z: StrategyProfile) -> float:
    ry, _ = payoff_vectors(R, z)
    return float(ry.max() - z.row.probs @ ry)


def regret_col(R: PayoffMatrix, z: StrategyProfile) -> float:
    ry, xr = payoff_vectors(R, z)
    return float(z.row.probs @ ry - xr.min())


def row_response_indices(payoffs: np.ndarray, rho: float) -> np.ndarray:
    """Indices within rho of the maximum payoff (membership slack applied)."""
    return np.flatnonzero(payoffs >= payoffs.max() - rho - MEMBERSHIP_SLACK)


def col_response_indices(payoffs: np.ndarray, rho: float) -> np.ndarray:
    """Indices within rho of the minimum payoff (membership slack applied)."""
    return np.flatnonzero(payoffs <= payoffs.min() + rho + MEMBERSHIP_SLACK)


def best_responses(
    R: PayoffMatrix, player: str, opponent: MixedStrategy, rho: float
) -> BestResponseSet:
    """The rho-best-response pure strategies of ``player`` against ``opponent``."""
    if not 0.0 <= rho <= 1.0:
        raise GameInputError(f"rho must lie in [0, 1], got {rho}")
    if player == "row":
        if len(opponent) != R.cols:
            raise GameInputError("opponent strategy length does not match matrix columns")
        idx = row_response_indices(R.entries @ opponent.probs, rho)
    elif player == "col":
        if len(opponent) != R.rows:
            raise GameInputError("opponent strategy length does not match matrix rows")
        idx = col_response_indices(opponent.probs @ R.entries, rho)
    else:
        raise GameInputError(f"player must be 'row' or 'col', got {player!r}")
    return BestResponseSet(player, rho, tuple(idx))


def is_delta_ne(R: PayoffMatrix, z: StrategyProfile, delta: float) -> bool:
    """True iff neither player gains more than delta by a pure deviation."""
    if not 0.0 <= delta <= 1.0:
        raise GameInputError(f"delta must lie in [0, 1], got {delta}")
    slack = delta + MEMBERSHIP_SLACK
    return regret_row(R, z) <= slack and regret_col(R, z) <= slack


# ---------------------------------------------------------------------------
# Matrix I/O: dense row-major CSV, and JSON {"m":…, "n":…, "entries":[[…]]}.


def save_matrix_csv(R: PayoffMatrix, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in R.entries:
            writer.writerow([repr(float(v)) for v in row])


def load_matrix_csv(path) -> PayoffMatrix:
    rows = []
    with open(path, newline="") as fh:
        for line in csv.reader(fh):
            if not line:
                continue
            try:
                rows.append([float(v) for v in line])
            except ValueError as exc:
                raise GameInputError(f"bad CSV entry: {exc}") from exc
    if not rows:
        raise GameInputError("empty matrix file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise GameInputError("ragged rows in matrix CSV")
    return PayoffMatrix(np.array(rows))


def save_matrix_json(R: PayoffMatrix, path):
    payload = {"m": R.rows, "n": R.cols, "entries": R.entries.tolist()}
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_matrix_json(path) -> PayoffMatrix:
    with open(path) as fh:
        payload = json.load(fh)
    try:
        m, n, entries = payload["m"], payload["n"], payload["entries"]
    except (KeyError, TypeError) as exc:
        raise GameInputError(f"matrix JSON missing field: {exc}") from exc
    if len(entries) != m or any(len(row) != n for row in entries):
        raise GameInputError("matrix JSON dimensions do not match entries")
    return PayoffMatrix(np.array(entries, dtype=float))
