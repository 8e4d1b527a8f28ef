"""Command-line front end: generate games, solve them, bench grids, verify.

Exit codes: 0 success, 1 invalid input (including a failed `verify`),
2 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .baselines import OgdaSolver
from .bench import BenchConfig, run_bench
from .game import (
    GameInputError,
    MixedStrategy,
    StrategyProfile,
    duality_gap,
    is_delta_ne,
    load_matrix_csv,
    load_matrix_json,
    save_matrix_csv,
    save_matrix_json,
)
from .generators import GameSpec, generate
from .solvers import DualityGapSolver

__all__ = ["main"]

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2


def _load_matrix(path: str):
    if path.endswith(".json"):
        return load_matrix_json(path)
    return load_matrix_csv(path)


def _save_matrix(R, path: str):
    if path.endswith(".json"):
        save_matrix_json(R, path)
    else:
        save_matrix_csv(R, path)


def _load_profile(path: str) -> StrategyProfile:
    with open(path) as fh:
        data = json.load(fh)
    try:
        return StrategyProfile(MixedStrategy(data["row"]), MixedStrategy(data["col"]))
    except (KeyError, TypeError) as exc:
        raise GameInputError(f"malformed profile file {path}: {exc}") from exc


def _save_profile(z: StrategyProfile, extra: dict, path: str):
    payload = {"row": list(z.row.probs), "col": list(z.col.probs), **extra}
    with open(path, "w") as fh:
        json.dump(payload, fh)


def _cmd_generate(args) -> int:
    spec = GameSpec(args.family, args.rows, args.cols, args.seed, args.rank)
    _save_matrix(generate(spec), args.out)
    return EXIT_OK


def _build_solver(args):
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
    else:
        config = {}
    for key, flag in (
        ("variant", args.variant),
        ("delta", args.delta),
        ("rho", args.rho),
        ("k", args.k),
        ("init", args.init),
        ("lp_tolerance", args.lp_tolerance),
        ("max_iterations", args.max_iters),
    ):
        if flag is not None:
            config[key] = flag
    variant = config.pop("variant", "plain")
    if variant == "ogda":
        config.pop("lp_tolerance", None)
        config.pop("k", None)
        return OgdaSolver(**config)
    return DualityGapSolver(variant=variant, **config)


def _cmd_solve(args) -> int:
    R = _load_matrix(args.matrix)
    try:
        solver = _build_solver(args)
    except TypeError as exc:
        raise GameInputError(f"bad solver config: {exc}") from exc
    solver.fit(R)
    extra = {"gap": solver.gap_, "outcome": solver.outcome_}
    if args.out:
        _save_profile(solver.profile_, extra, args.out)
    else:
        z = solver.profile_
        payload = {"row": list(z.row.probs), "col": list(z.col.probs), **extra}
        print(json.dumps(payload))
    if args.trace:
        if args.trace.endswith(".json"):
            solver.trace_.write_json(args.trace)
        else:
            solver.trace_.write_csv(args.trace)
    print(f"{solver.outcome_} gap={solver.gap_:.6g} iterations={solver.trace_.iterations}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    with open(args.config) as fh:
        config = BenchConfig.from_json(json.load(fh))
    rows, _ = run_bench(config, out_dir=args.out, jobs=args.jobs)
    for row in rows:
        print(
            f"{row.family} {row.size} {row.variant}: "
            f"rate={row.convergence_rate:.2f} mean_iters={row.mean_iterations:.1f}"
        )
    return EXIT_OK


def _cmd_verify(args) -> int:
    R = _load_matrix(args.matrix)
    z = _load_profile(args.profile)
    gap = duality_gap(R, z)
    verdict = is_delta_ne(R, z, args.delta)
    print(f"{'true' if verdict else 'false'} gap={gap:.6g} delta={args.delta:.6g}")
    return EXIT_OK if verdict else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapdescent",
        description="Approximate Nash equilibria of zero-sum games by duality-gap descent.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a seeded random game")
    p.add_argument("--family", choices=("uniform", "gaussian", "lowrank"), required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--rank", type=int, default=None, help="rank for the lowrank family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="matrix file (.csv or .json)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve", help="solve a game to a target duality gap")
    p.add_argument("matrix", help="payoff matrix file (.csv or .json)")
    p.add_argument("--config", help="JSON solver config (flags override it)")
    p.add_argument("--variant",
                   choices=("plain", "decay-delta", "decay-delta-rho",
                            "fixed-support", "ogda"))
    p.add_argument("--delta", type=float)
    p.add_argument("--rho", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--init", choices=("pure", "uniform"))
    p.add_argument("--lp-tolerance", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--out", help="output profile JSON (stdout if omitted)")
    p.add_argument("--trace", help="optional trace file (.csv or .json)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="run a grid of games x solvers")
    p.add_argument("--config", required=True, help="BenchConfig JSON")
    p.add_argument("--out", help="output directory for traces and summary.csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("verify", help="check that a profile is a delta-equilibrium")
    p.add_argument("matrix")
    p.add_argument("profile")
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract wants 1.
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (GameInputError, ValueError, TypeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
