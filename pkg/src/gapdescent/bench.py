"""Benchmark harness: grids of (game, solver) cells with traces and a summary.

A bench run is deterministic given its config: game seeds live in the specs,
solvers are deterministic, and the summary is written in config order (never
completion order), so reruns produce byte-identical CSV output.
"""

from __future__ import annotations

import csv
import json
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .baselines import OgdaSolver
from .game import GameInputError
from .generators import GameSpec, generate
from .solvers import DualityGapSolver

__all__ = ["BenchConfig", "CellResult", "SummaryRow", "SUMMARY_FIELDS", "run_bench"]

SUMMARY_FIELDS = (
    "family",
    "size",
    "variant",
    "repetitions",
    "mean_iterations",
    "median_iterations",
    "convergence_rate",
    "mean_final_gap",
)


@dataclass(frozen=True)
class BenchConfig:
    """Grid of game specs x solver configs, plus output layout.

    ``solvers`` is a list of dicts; ``{"variant": "ogda", ...}`` selects the
    baseline, anything else constructs a DualityGapSolver.  ``repetitions``
    reruns each cell with the game seed shifted by the repetition index.
    """

    specs: tuple
    solvers: tuple
    repetitions: int = 1
    verbosity: str = "summary"

    def __post_init__(self):
        if not self.specs or not self.solvers:
            raise GameInputError("bench config needs at least one spec and one solver")
        if self.repetitions < 1:
            raise GameInputError("repetitions must be >= 1")
        if self.verbosity not in ("summary", "full"):
            raise GameInputError(f"unknown verbosity {self.verbosity!r}")

    @classmethod
    def from_json(cls, data: dict) -> "BenchConfig":
        try:
            specs = tuple(GameSpec.from_json(s) for s in data["specs"])
            solvers = tuple(dict(s) for s in data["solvers"])
        except (KeyError, TypeError) as exc:
            raise GameInputError(f"malformed bench config: {exc}") from exc
        return cls(
            specs=specs,
            solvers=solvers,
            repetitions=int(data.get("repetitions", 1)),
            verbosity=data.get("verbosity", "summary"),
        )


@dataclass
class CellResult:
    spec: GameSpec
    solver_name: str
    iterations: int = 0
    final_gap: float = float("nan")
    outcome: str = ""
    error: str = ""
    trace: object = None


@dataclass(frozen=True)
class SummaryRow:
    family: str
    size: str
    variant: str
    repetitions: int
    mean_iterations: float
    median_iterations: float
    convergence_rate: float
    mean_final_gap: float

    def as_row(self):
        return (
            self.family,
            self.size,
            self.variant,
            self.repetitions,
            repr(float(self.mean_iterations)),
            repr(float(self.median_iterations)),
            repr(float(self.convergence_rate)),
            repr(float(self.mean_final_gap)),
        )


def _make_solver(config: dict):
    config = dict(config)
    variant = config.pop("variant", "plain")
    name = config.pop("name", variant)
    if variant == "ogda":
        return name, OgdaSolver(**config)
    return name, DualityGapSolver(variant=variant, **config)


def _run_cell(spec: GameSpec, solver_config: dict) -> CellResult:
    name, solver = _make_solver(solver_config)
    result = CellResult(spec=spec, solver_name=name)
    try:
        solver.fit(generate(spec))
    except Exception as exc:  # noqa: BLE001 - a failed cell must not abort the grid
        result.error = f"{type(exc).__name__}: {exc}"
        return result
    result.iterations = solver.trace_.iterations
    result.final_gap = solver.gap_
    result.outcome = solver.outcome_
    result.trace = solver.trace_
    return result


def _cells(config: BenchConfig):
    for spec in config.specs:
        for solver_config in config.solvers:
            for rep in range(config.repetitions):
                yield spec.with_seed(spec.seed + rep), solver_config


def _summarize(config: BenchConfig, results) -> list[SummaryRow]:
    rows = []
    index = 0
    for spec in config.specs:
        for solver_config in config.solvers:
            cell = results[index : index + config.repetitions]
            index += config.repetitions
            ok = [c for c in cell if not c.error]
            converged = [c for c in ok if c.outcome == "converged"]
            rows.append(
                SummaryRow(
                    family=spec.family,
                    size=f"{spec.rows}x{spec.cols}",
                    variant=solver_config.get("name", solver_config.get("variant", "plain")),
                    repetitions=len(cell),
                    mean_iterations=(
                        statistics.mean(c.iterations for c in ok) if ok else float("nan")
                    ),
                    median_iterations=(
                        statistics.median(c.iterations for c in ok) if ok else float("nan")
                    ),
                    convergence_rate=len(converged) / len(cell),
                    mean_final_gap=(
                        statistics.mean(c.final_gap for c in ok) if ok else float("nan")
                    ),
                )
            )
    return rows


def write_summary_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_FIELDS)
        for row in rows:
            writer.writerow(row.as_row())


def run_bench(config: BenchConfig, out_dir=None, jobs: int = 1):
    """Run the full grid; returns (summary rows, cell results).

    With ``out_dir`` set, writes one trace file per cell at full verbosity
    plus summary.csv.  Cells that raise are counted in the summary denominator
    but excluded from the iteration statistics.
    """
    cells = list(_cells(config))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell, *zip(*cells)))
    else:
        results = [_run_cell(spec, cfg) for spec, cfg in cells]

    rows = _summarize(config, results)
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        if config.verbosity == "full":
            for i, res in enumerate(results):
                if res.trace is not None:
                    name = f"trace_{i:04d}_{res.spec.family}_{res.solver_name}.csv"
                    res.trace.write_csv(os.path.join(out_dir, name))
        write_summary_csv(rows, os.path.join(out_dir, "summary.csv"))
        report = [
            {
                "spec": res.spec.to_json(),
                "solver": res.solver_name,
                "outcome": res.outcome,
                "error": res.error,
            }
            for res in results
        ]
        with open(os.path.join(out_dir, "cells.json"), "w") as fh:
            json.dump(report, fh, indent=2)
    return rows, results
