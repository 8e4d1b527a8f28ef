"""Per-iteration solve traces, serializable to CSV and JSON."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, asdict

__all__ = ["IterationRecord", "SolveTrace", "CONVERGED", "ITERATION_CAP", "TRACE_FIELDS"]

CONVERGED = "converged"
ITERATION_CAP = "iteration-cap-reached"

# Column order of the trace CSV; field order is part of the format.
TRACE_FIELDS = (
    "t",
    "epoch",
    "delta_i",
    "rho_i",
    "epsilon",
    "V_before",
    "V_after",
    "gamma",
    "row_set",
    "col_set",
)


@dataclass(frozen=True)
class IterationRecord:
    t: int
    epoch: int
    delta_i: float
    rho_i: float
    epsilon: float
    v_before: float
    v_after: float
    gamma: float
    row_set: int
    col_set: int

    def as_row(self):
        return (
            self.t,
            self.epoch,
            repr(float(self.delta_i)),
            repr(float(self.rho_i)),
            repr(float(self.epsilon)),
            repr(float(self.v_before)),
            repr(float(self.v_after)),
            repr(float(self.gamma)),
            self.row_set,
            self.col_set,
        )


@dataclass
class SolveTrace:
    records: list[IterationRecord] = field(default_factory=list)
    outcome: str = CONVERGED
    stalled: bool = False
    metadata: dict = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        return len(self.records)

    @property
    def converged(self) -> bool:
        return self.outcome == CONVERGED

    def gaps(self):
        """Sequence of V values: V before the first step, then V after each."""
        if not self.records:
            return []
        return [self.records[0].v_before] + [r.v_after for r in self.records]

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(TRACE_FIELDS)
            for rec in self.records:
                writer.writerow(rec.as_row())

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "stalled": self.stalled,
            "metadata": self.metadata,
            "iterations": [
                dict(zip(TRACE_FIELDS, _jsonable(rec))) for rec in self.records
            ],
        }

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)


def _jsonable(rec: IterationRecord):
    vals = (
        rec.t,
        rec.epoch,
        rec.delta_i,
        rec.rho_i,
        rec.epsilon,
        rec.v_before,
        rec.v_after,
        rec.gamma,
        rec.row_set,
        rec.col_set,
    )
    return [None if isinstance(v, float) and math.isnan(v) else v for v in vals]
