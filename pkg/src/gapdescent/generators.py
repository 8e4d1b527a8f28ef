"""Seeded random game generators for the three benchmark families."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .game import GameInputError, PayoffMatrix, normalize_payoffs

__all__ = ["GameSpec", "generate", "PRNG_NAME"]

# Build constant recorded in benchmark metadata; the stream for a spec is
# seeded with [family code, rows, cols, rank, seed] so matrices are
# reproducible across platforms.
PRNG_NAME = "numpy-pcg64"

_FAMILY_CODES = {"uniform": 1, "gaussian": 2, "lowrank": 3}


@dataclass(frozen=True)
class GameSpec:
    family: str
    rows: int
    cols: int
    seed: int = 0
    rank: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILY_CODES:
            raise GameInputError(f"unknown game family {self.family!r}")
        if self.rows < 1 or self.cols < 1:
            raise GameInputError("game dimensions must be positive")
        if self.seed < 0:
            raise GameInputError("seed must be nonnegative")
        if self.family == "lowrank":
            if self.rank is None or self.rank < 1:
                raise GameInputError("lowrank games need a positive rank")
            if self.rank > min(self.rows, self.cols):
                raise GameInputError(
                    f"rank {self.rank} exceeds min dimension {min(self.rows, self.cols)}"
                )
        elif self.rank is not None:
            raise GameInputError(f"family {self.family!r} does not take a rank")

    def to_json(self) -> dict:
        out = {"family": self.family, "rows": self.rows, "cols": self.cols,
               "seed": self.seed}
        if self.rank is not None:
            out["rank"] = self.rank
        return out

    @staticmethod
    def from_json(payload: dict) -> "GameSpec":
        try:
            return GameSpec(
                family=payload["family"],
                rows=int(payload["rows"]),
                cols=int(payload["cols"]),
                seed=int(payload.get("seed", 0)),
                rank=payload.get("rank"),
            )
        except KeyError as exc:
            raise GameInputError(f"game spec missing field {exc}") from exc

    def with_seed(self, seed: int) -> "GameSpec":
        return GameSpec(self.family, self.rows, self.cols, seed, self.rank)


def _rng(spec: GameSpec) -> np.random.Generator:
    return np.random.default_rng(
        [_FAMILY_CODES[spec.family], spec.rows, spec.cols, spec.rank or 0, spec.seed]
    )


def generate(spec: GameSpec) -> PayoffMatrix:
    """Deterministic matrix for the spec; entries always end up in [0, 1]."""
    rng = _rng(spec)
    if spec.family == "uniform":
        return PayoffMatrix(rng.random((spec.rows, spec.cols)))
    if spec.family == "gaussian":
        return normalize_payoffs(rng.standard_normal((spec.rows, spec.cols)))
    # lowrank: R = U V^T has rank <= r; the affine rescale can add one.
    u = rng.random((spec.rows, spec.rank))
    v = rng.random((spec.cols, spec.rank))
    return normalize_payoffs(u @ v.T)
