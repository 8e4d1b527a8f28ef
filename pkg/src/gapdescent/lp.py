"""Self-contained dense-tableau primal simplex solver.

Small by design: the direction-finding subproblems it serves have at most a
few hundred constraints, and determinism plus correctness matter more than
per-pivot speed.  Pivoting uses Dantzig's rule with a switch to Bland's rule
after a run of degenerate pivots, which guarantees termination.

An optional absolute-objective tolerance allows early termination: the gap to
the optimum is certified from the reduced costs and per-variable upper bounds
(declared bounds, plus bounds implied by all-nonnegative rows).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = ["LinearProgram", "LpSolution", "LpStatus", "LpError", "solve_lp"]

FEAS_TOL = 1e-9
COST_TOL = 1e-10
PIVOT_TOL = 1e-8


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    TOLERANCE_REACHED = "tolerance_reached"


class LpError(RuntimeError):
    """Unexpected solver failure (pivot limit, inconsistent input, ...)."""


@dataclass
class LinearProgram:
    """min c @ v  s.t.  a_ub @ v <= b_ub,  a_eq @ v == b_eq,  lo <= v <= hi.

    ``bounds`` holds one (lo, hi) pair per variable; ``None`` means unbounded
    on that side.  The default bound is (0, None).
    """

    c: np.ndarray
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    bounds: list | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=float)
        if self.c.ndim != 1:
            raise LpError("objective must be a vector")
        n = self.c.shape[0]
        for name in ("a_ub", "a_eq"):
            mat = getattr(self, name)
            if mat is not None:
                mat = np.asarray(mat, dtype=float).reshape(-1, n)
                setattr(self, name, mat)
        for aname, bname in (("a_ub", "b_ub"), ("a_eq", "b_eq")):
            mat, vec = getattr(self, aname), getattr(self, bname)
            if (mat is None) != (vec is None):
                raise LpError(f"{aname} and {bname} must be given together")
            if vec is not None:
                vec = np.asarray(vec, dtype=float).ravel()
                if vec.shape[0] != mat.shape[0]:
                    raise LpError(f"{bname} length does not match {aname}")
                setattr(self, bname, vec)
        if self.bounds is None:
            self.bounds = [(0.0, None)] * n
        if len(self.bounds) != n:
            raise LpError("bounds length does not match objective")
        for arr in (self.c, self.a_ub, self.b_ub, self.a_eq, self.b_eq):
            if arr is not None and not np.all(np.isfinite(arr)):
                raise LpError("non-finite coefficient in linear program")

    @property
    def num_vars(self) -> int:
        return self.c.shape[0]

    @property
    def num_ub(self) -> int:
        return 0 if self.a_ub is None else self.a_ub.shape[0]

    @property
    def num_eq(self) -> int:
        return 0 if self.a_eq is None else self.a_eq.shape[0]


@dataclass
class LpSolution:
    status: LpStatus
    values: np.ndarray | None
    objective_value: float

    @property
    def ok(self) -> bool:
        return self.status in (LpStatus.OPTIMAL, LpStatus.TOLERANCE_REACHED)


def _pivot(T, cost, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    nz = np.flatnonzero(np.abs(col) > 0)
    if nz.size:
        T[nz] -= np.outer(col[nz], T[r])
    T[:, j] = 0.0
    T[r, j] = 1.0
    if cost[j] != 0.0:
        cost -= cost[j] * T[r]
    cost[j] = 0.0


def _lex_min_row(T, tied, j):
    """Lexicographic tie-break on the ratio test; curbs degenerate cycling."""
    # Drop near-zero pivot elements first: dividing a row by a tiny pivot is
    # what turns a tie-break into a numerical blowup.
    strong = tied[T[tied, j] >= 0.01 * T[tied, j].max()]
    if strong.size:
        tied = strong
    rows = T[tied] / T[tied, j, None]
    alive = np.arange(tied.size)
    for col in range(T.shape[1]):
        vals = rows[alive, col]
        alive = alive[vals <= vals.min() + 1e-12]
        if alive.size == 1:
            break
    return tied[alive[0]]


def _run_simplex(T, basis, cost, allowed, max_pivots, gap_fn=None, tolerance=0.0):
    """Iterate pivots until optimal/unbounded/tolerance; returns a status string."""
    stall = 0
    bland = False
    last = cost[-1]
    for _ in range(max_pivots):
        red = cost[:-1]
        if gap_fn is not None and gap_fn(red) <= tolerance:
            return "tolerance"
        candidates = np.flatnonzero(allowed & (red < -COST_TOL))
        if candidates.size == 0:
            return "optimal"
        j = candidates[0] if bland else candidates[np.argmin(red[candidates])]
        col = T[:, j]
        # Every meaningfully positive entry joins the ratio test; excluding
        # small ones lets their rows drift negative under large pivot ratios.
        pos = np.flatnonzero(col > 1e-11)
        if pos.size == 0:
            return "unbounded"
        ratios = T[pos, -1] / col[pos]
        rmin = ratios.min()
        tied = pos[ratios <= rmin + 1e-12]
        if tied.size == 1:
            r = tied[0]
        elif bland:
            r = tied[np.argmin(basis[tied])]
        else:
            r = _lex_min_row(T, tied, j)
        _pivot(T, cost, r, j)
        basis[r] = j
        if cost[-1] > last + 1e-12:
            stall, bland, last = 0, False, cost[-1]
        else:
            stall += 1
            if stall > 100:
                bland = True
    raise LpError("simplex pivot limit exceeded")


def _price_out(T, basis, cost):
    for r in range(len(basis)):
        if cost[basis[r]] != 0.0:
            cost -= cost[basis[r]] * T[r]
    cost[basis] = 0.0


def solve_lp(lp: LinearProgram, tolerance: float = 0.0) -> LpSolution:
    """Two-phase simplex.  ``tolerance`` is an absolute objective gap; with a
    positive value the solve may stop early with status TOLERANCE_REACHED."""
    if tolerance < 0:
        raise LpError("tolerance must be nonnegative")
    n = lp.num_vars

    # Transform variables to x = shift + sum(sign * t), t >= 0.
    shift = np.zeros(n)
    col_of = []  # per std column: (orig var, sign)
    upper_rows = []  # (var, bound) rows enforcing finite upper bounds
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None and hi is not None and hi < lo:
            raise LpError(f"variable {j} has empty bound interval")
        if lo is not None:
            shift[j] = lo
            col_of.append((j, 1.0))
        else:
            col_of.append((j, 1.0))
            col_of.append((j, -1.0))
        if hi is not None:
            upper_rows.append((j, hi))
    nstd = len(col_of)

    def transform_rows(mat):
        out = np.zeros((mat.shape[0], nstd))
        for k, (j, sign) in enumerate(col_of):
            out[:, k] = sign * mat[:, j]
        return out

    ub_blocks, ub_rhs = [], []
    if lp.a_ub is not None:
        ub_blocks.append(transform_rows(lp.a_ub))
        ub_rhs.append(lp.b_ub - lp.a_ub @ shift)
    if upper_rows:
        extra = np.zeros((len(upper_rows), lp.num_vars))
        rhs = np.zeros(len(upper_rows))
        for r, (j, hi) in enumerate(upper_rows):
            extra[r, j] = 1.0
            rhs[r] = hi
        ub_blocks.append(transform_rows(extra))
        ub_rhs.append(rhs - extra @ shift)
    A_ub = np.vstack(ub_blocks) if ub_blocks else np.zeros((0, nstd))
    b_ub = np.concatenate(ub_rhs) if ub_rhs else np.zeros(0)
    if lp.a_eq is not None:
        A_eq = transform_rows(lp.a_eq)
        b_eq = lp.b_eq - lp.a_eq @ shift
    else:
        A_eq, b_eq = np.zeros((0, nstd)), np.zeros(0)

    c_std = np.zeros(nstd)
    for k, (j, sign) in enumerate(col_of):
        c_std[k] += sign * lp.c[j]

    # Upper bounds on standard columns, for the early-termination certificate.
    U = np.full(nstd, np.inf)
    for k, (j, sign) in enumerate(col_of):
        lo, hi = lp.bounds[j]
        if sign > 0 and lo is not None and hi is not None:
            U[k] = hi - lo
    for A, b in ((A_ub, b_ub), (A_eq, b_eq)):
        for r in range(A.shape[0]):
            row = A[r]
            if b[r] >= 0 and row.min() >= 0:
                pos = row > PIVOT_TOL
                U[pos] = np.minimum(U[pos], b[r] / row[pos])

    n_ub, n_eq = A_ub.shape[0], A_eq.shape[0]
    nrows = n_ub + n_eq
    # Slack bounds: s_r = b_r - a_r @ t  <=  b_r - sum_{a<0} a * U.
    U_slack = np.empty(n_ub)
    for r in range(n_ub):
        neg = A_ub[r] < 0
        U_slack[r] = b_ub[r] - A_ub[r, neg] @ U[neg] if neg.any() else b_ub[r]

    A = np.zeros((nrows, nstd + n_ub))
    A[:n_ub, :nstd] = A_ub
    A[n_ub:, :nstd] = A_eq
    A[:n_ub, nstd:] = np.eye(n_ub)
    b = np.concatenate([b_ub, b_eq])
    U_all = np.concatenate([U, U_slack])

    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # Initial basis: slack where available, artificial otherwise.
    basis = np.empty(nrows, dtype=int)
    art_rows = []
    for r in range(nrows):
        if r < n_ub and not flip[r]:
            basis[r] = nstd + r
        else:
            art_rows.append(r)
    ncols = nstd + n_ub + len(art_rows)
    T = np.zeros((nrows, ncols + 1))
    T[:, : nstd + n_ub] = A
    T[:, -1] = b
    for k, r in enumerate(art_rows):
        T[r, nstd + n_ub + k] = 1.0
        basis[r] = nstd + n_ub + k

    allowed = np.ones(ncols, dtype=bool)
    allowed[nstd + n_ub :] = False  # artificials never re-enter
    max_pivots = 20000 + 20 * nrows

    if art_rows:
        cost1 = np.zeros(ncols + 1)
        cost1[nstd + n_ub :ncols] = 1.0
        _price_out(T, basis, cost1)
        status = _run_simplex(T, basis, cost1, allowed, max_pivots)
        if status != "optimal":
            raise LpError(f"phase 1 ended with status {status}")
        if -cost1[-1] > 1e-7:
            return LpSolution(LpStatus.INFEASIBLE, None, np.nan)
        # Drive any remaining basic artificials out; drop redundant rows.
        drop = []
        for r in range(nrows):
            if basis[r] >= nstd + n_ub:
                row = T[r, : nstd + n_ub]
                j = int(np.argmax(np.abs(row)))
                if abs(row[j]) > 1e-9:
                    # The artificial sits at a numerically zero value; clear
                    # the residual so the pivot cannot smear it into the rhs.
                    T[r, -1] = 0.0
                    _pivot(T, cost1, r, j)
                    basis[r] = j
                else:
                    drop.append(r)
        if drop:
            T = np.delete(T, drop, axis=0)
            basis = np.delete(basis, drop)
            nrows = len(basis)
    T = np.hstack([T[:, : nstd + n_ub], T[:, -1:]])
    allowed = allowed[: nstd + n_ub]

    cost = np.concatenate([c_std, np.zeros(n_ub + 1)])
    _price_out(T, basis, cost)

    gap_fn = None
    if tolerance > 0:
        def gap_fn(red):
            neg = red < -COST_TOL
            if not neg.any():
                return 0.0
            bounds = U_all[neg]
            if not np.all(np.isfinite(bounds)):
                return np.inf
            return float(-(red[neg] @ bounds))

    status = _run_simplex(T, basis, cost, allowed, max_pivots, gap_fn, tolerance)
    if status == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, None, np.nan)

    t_vals = np.zeros(nstd + n_ub)
    t_vals[basis] = T[:, -1]
    x = shift.copy()
    for k, (j, sign) in enumerate(col_of):
        x[j] += sign * t_vals[k]

    _check_feasible(lp, x)
    objective = float(lp.c @ x)
    final = LpStatus.OPTIMAL if status == "optimal" else LpStatus.TOLERANCE_REACHED
    return LpSolution(final, x, objective)


def _check_feasible(lp, x, tol=1e-7):
    if lp.a_ub is not None and (lp.a_ub @ x - lp.b_ub).max(initial=-np.inf) > tol:
        raise LpError("simplex returned an infeasible point (inequality violated)")
    if lp.a_eq is not None and np.abs(lp.a_eq @ x - lp.b_eq).max(initial=0.0) > tol:
        raise LpError("simplex returned an infeasible point (equality violated)")
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None and x[j] < lo - tol:
            raise LpError("simplex returned an infeasible point (lower bound)")
        if hi is not None and x[j] > hi + tol:
            raise LpError("simplex returned an infeasible point (upper bound)")
