"""Approximate Nash equilibria of bilinear zero-sum games by duality-gap descent.

The duality gap V(x, y) of a profile is the sum of both players' regrets; it
is convex, zero exactly at equilibria, and V <= delta certifies a delta-Nash
equilibrium.  The solvers here walk the profile along directions chosen by a
small LP over the players' approximate-best-response sets, shrinking V until
it drops below the target.
"""

from .baselines import OgdaSolver, project_simplex, project_simplex_array
from .bench import BenchConfig, SummaryRow, run_bench
from .direction import (
    DirectionResult,
    direction_for_sets,
    find_direction,
    find_direction_decomposed,
    full_game_lp,
)
from .directional import (
    DirectionalDerivativeResult,
    directional_derivative,
    rho_directional_derivative,
)
from .game import (
    BestResponseSet,
    GameInputError,
    MixedStrategy,
    PayoffMatrix,
    StrategyProfile,
    best_responses,
    duality_gap,
    is_delta_ne,
    load_matrix_csv,
    load_matrix_json,
    normalize_payoffs,
    regret_col,
    regret_row,
    save_matrix_csv,
    save_matrix_json,
)
from .generators import GameSpec, generate
from .linesearch import LineGap, exact_line_minimum, ternary_line_search
from .lp import LinearProgram, LpError, LpSolution, LpStatus, solve_lp
from .solvers import DualityGapSolver, InvariantViolation
from .trace import CONVERGED, ITERATION_CAP, IterationRecord, SolveTrace

__version__ = "0.1.0"

__all__ = [
    "BestResponseSet",
    "BenchConfig",
    "CONVERGED",
    "DirectionResult",
    "DirectionalDerivativeResult",
    "DualityGapSolver",
    "GameInputError",
    "GameSpec",
    "ITERATION_CAP",
    "InvariantViolation",
    "IterationRecord",
    "LineGap",
    "LinearProgram",
    "LpError",
    "LpSolution",
    "LpStatus",
    "MixedStrategy",
    "OgdaSolver",
    "PayoffMatrix",
    "SolveTrace",
    "StrategyProfile",
    "SummaryRow",
    "best_responses",
    "direction_for_sets",
    "directional_derivative",
    "duality_gap",
    "exact_line_minimum",
    "find_direction",
    "find_direction_decomposed",
    "full_game_lp",
    "generate",
    "is_delta_ne",
    "load_matrix_csv",
    "load_matrix_json",
    "normalize_payoffs",
    "project_simplex",
    "project_simplex_array",
    "regret_col",
    "regret_row",
    "rho_directional_derivative",
    "run_bench",
    "save_matrix_csv",
    "save_matrix_json",
    "solve_lp",
    "ternary_line_search",
]
