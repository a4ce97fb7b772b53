"""Self-contained dense-tableau linear programming and LP decoding.

The solver maximizes a linear objective over { x >= 0 : rows }, rows being
sparse equality or <= constraints.  It runs the textbook two-phase simplex on
a dense numpy tableau: phase one drives artificial variables out, phase two
optimizes the real objective.  Entering columns follow the largest-reduced-
cost rule until the iteration stalls on degenerate pivots, after which the
solver switches permanently to Bland's rule, which guarantees termination.

LP decoding maximizes trace(C^T X) with C = y s^T over the code polytope
(Birkhoff rows plus the constraint system).  An integral optimum is the
maximum-likelihood codeword; a fractional optimum is a decoding failure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .codebook import Code
from .constraints import ConstraintSystem, Relation, satisfies
from .perm import PermutationMatrix, var_index

_EPS = 1e-9


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPProblem:
    """Maximize objective . x subject to sparse rows and x >= 0."""

    num_vars: int
    objective: np.ndarray
    rows: tuple[tuple[tuple[tuple[int, float], ...], Relation, float], ...]

    @classmethod
    def make(cls, num_vars, objective, rows) -> "LPProblem":
        packed = []
        for coeffs, rel, rhs in rows:
            items = coeffs.items() if hasattr(coeffs, "items") else coeffs
            pairs = tuple(sorted((int(p), float(c)) for p, c in items))
            if any(not 1 <= p <= num_vars for p, _ in pairs):
                raise ValueError("row references a variable outside [1, num_vars]")
            packed.append((pairs, rel, float(rhs)))
        obj = np.asarray(objective, dtype=float)
        if obj.shape != (num_vars,):
            raise ValueError("objective length does not match num_vars")
        return cls(num_vars, obj, tuple(packed))


@dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    x: Optional[np.ndarray]
    objective_value: float


def _pivot(tableau: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    basis[row] = col


def _choose_leaving(tableau: np.ndarray, basis: np.ndarray, col: int, m: int):
    """Minimum-ratio row; ties broken towards the smallest basis variable."""
    column = tableau[:m, col]
    rhs = tableau[:m, -1]
    best_row, best_ratio = -1, np.inf
    for r in range(m):
        if column[r] > _EPS:
            ratio = rhs[r] / column[r]
            if ratio < best_ratio - _EPS or (
                abs(ratio - best_ratio) <= _EPS
                and (best_row < 0 or basis[r] < basis[best_row])
            ):
                best_row, best_ratio = r, ratio
    return best_row, best_ratio


def _run_simplex(tableau: np.ndarray, basis: np.ndarray, ncols: int, m: int) -> LPStatus:
    """Optimize the tableau in place.  Returns OPTIMAL or UNBOUNDED."""
    stall_budget = 5 * (m + ncols)
    stalled = 0
    blands = False
    max_iters = 200 * (m + ncols) + 2000
    for _ in range(max_iters):
        reduced = tableau[-1, :ncols]
        if blands:
            candidates = np.flatnonzero(reduced > _EPS)
            if candidates.size == 0:
                return LPStatus.OPTIMAL
            col = int(candidates[0])
        else:
            col = int(np.argmax(reduced))
            if reduced[col] <= _EPS:
                return LPStatus.OPTIMAL
        row, ratio = _choose_leaving(tableau, basis, col, m)
        if row < 0:
            return LPStatus.UNBOUNDED
        _pivot(tableau, basis, row, col)
        if ratio <= _EPS:
            stalled += 1
            if not blands and stalled > stall_budget:
                blands = True
        else:
            stalled = 0
    raise RuntimeError("simplex failed to terminate within the iteration cap")


def solve(problem: LPProblem) -> LPSolution:
    """Two-phase simplex.  The optimal x is a vertex of the feasible region."""
    m = len(problem.rows)
    nv = problem.num_vars

    # Assemble dense rows with rhs >= 0; flipped <= rows become >= rows.
    dense = np.zeros((m, nv), dtype=float)
    rhs = np.zeros(m, dtype=float)
    kinds = []  # "le", "ge", or "eq" after normalization
    for r, (coeffs, rel, b) in enumerate(problem.rows):
        for p, c in coeffs:
            dense[r, p - 1] = c
        rhs[r] = b
        kind = "le" if rel is Relation.LE else "eq"
        if b < 0:
            dense[r] = -dense[r]
            rhs[r] = -b
            kind = "ge" if kind == "le" else "eq"
        kinds.append(kind)

    n_slack = sum(k != "eq" for k in kinds)
    n_art = sum(k != "le" for k in kinds)
    ncols = nv + n_slack + n_art
    tableau = np.zeros((m + 1, ncols + 1), dtype=float)
    tableau[:m, :nv] = dense
    tableau[:m, -1] = rhs
    basis = np.full(m, -1, dtype=int)
    slack_at = nv
    art_at = nv + n_slack
    art_cols = []
    for r, kind in enumerate(kinds):
        if kind == "le":
            tableau[r, slack_at] = 1.0
            basis[r] = slack_at
            slack_at += 1
        elif kind == "ge":
            tableau[r, slack_at] = -1.0
            slack_at += 1
            tableau[r, art_at] = 1.0
            basis[r] = art_at
            art_cols.append(art_at)
            art_at += 1
        else:
            tableau[r, art_at] = 1.0
            basis[r] = art_at
            art_cols.append(art_at)
            art_at += 1

    keep = np.ones(m, dtype=bool)
    if art_cols:
        # Phase one: maximize -(sum of artificials).
        tableau[-1, :] = 0.0
        for c in art_cols:
            tableau[-1, c] = -1.0
        for r in range(m):
            if basis[r] >= nv + n_slack:
                tableau[-1] += tableau[r]
        status = _run_simplex(tableau, basis, ncols, m)
        if status is not LPStatus.OPTIMAL:  # pragma: no cover - bounded by construction
            raise RuntimeError("phase one cannot be unbounded")
        if tableau[-1, -1] > 1e-7:
            return LPSolution(LPStatus.INFEASIBLE, None, float("nan"))
        # Pivot lingering artificials out; a row with no real coefficient is
        # redundant and dropped.
        for r in range(m):
            if basis[r] >= nv + n_slack:
                real = np.flatnonzero(np.abs(tableau[r, : nv + n_slack]) > 1e-7)
                if real.size:
                    _pivot(tableau, basis, r, int(real[0]))
                else:
                    keep[r] = False

    if not np.all(keep):
        rows_keep = np.append(keep, True)
        tableau = tableau[rows_keep]
        basis = basis[keep]
        m = int(keep.sum())

    # Phase two on the real objective, artificial columns frozen out.
    tableau[:, nv + n_slack : -1] = 0.0
    tableau[-1, :] = 0.0
    tableau[-1, :nv] = problem.objective
    for r in range(m):
        if tableau[-1, basis[r]] != 0.0:
            tableau[-1] -= tableau[-1, basis[r]] * tableau[r]
    status = _run_simplex(tableau, basis, nv + n_slack, m)
    if status is LPStatus.UNBOUNDED:
        return LPSolution(LPStatus.UNBOUNDED, None, float("nan"))

    x = np.zeros(nv, dtype=float)
    for r in range(m):
        if basis[r] < nv:
            x[basis[r]] = tableau[r, -1]
    value = float(problem.objective @ x)

    # Cheap internal revalidation against drift.
    for coeffs, rel, b in problem.rows:
        lhs = sum(c * x[p - 1] for p, c in coeffs)
        bad = abs(lhs - b) > 1e-6 if rel is Relation.EQ else lhs - b > 1e-6
        if bad:  # pragma: no cover - defensive
            raise RuntimeError("simplex returned an infeasible point")
    return LPSolution(LPStatus.OPTIMAL, x, value)


# ---------------------------------------------------------------------------
# LP decoding
# ---------------------------------------------------------------------------


def birkhoff_rows(n: int):
    """Row-sum and column-sum equalities defining doubly stochastic matrices."""
    rows = []
    for i in range(1, n + 1):
        rows.append(({var_index(i, j, n): 1.0 for j in range(1, n + 1)}, Relation.EQ, 1.0))
    for j in range(1, n + 1):
        rows.append(({var_index(i, j, n): 1.0 for i in range(1, n + 1)}, Relation.EQ, 1.0))
    return rows


def build_decoding_lp(cs: ConstraintSystem, s: Sequence[float], y: Sequence[float]) -> LPProblem:
    """Maximize trace(C^T X) = y . (X s) with C = y s^T over the code polytope."""
    n = cs.n
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    if s.shape != (n,) or y.shape != (n,):
        raise ValueError("initial vector and received vector must have length n")
    objective = np.outer(y, s).reshape(n * n)
    rows = birkhoff_rows(n)
    for row in cs.rows:
        rows.append((dict(row.coeffs), row.relation, float(row.rhs)))
    return LPProblem.make(n * n, objective, rows)


class InfeasibleCodeError(ValueError):
    """The code polytope is empty: no doubly stochastic matrix fits the rows."""


@dataclass(frozen=True)
class DecodeResult:
    """LP decoding outcome: a codeword, or a declared failure."""

    matrix: Optional[PermutationMatrix]
    word: Optional[np.ndarray]
    fractional: Optional[np.ndarray]
    objective_value: float

    @property
    def is_codeword(self) -> bool:
        return self.matrix is not None


# An LP optimum is treated as integral when every entry sits within this
# distance of 0 or 1; the rounded matrix is then validated exactly.
INTEGRALITY_TOL = 1e-6


def lp_decode(
    cs: ConstraintSystem,
    s: Sequence[float],
    y: Sequence[float],
    tol: float = INTEGRALITY_TOL,
) -> DecodeResult:
    """LP decoding of y against the code (cs, s)."""
    problem = build_decoding_lp(cs, s, y)
    sol = solve(problem)
    if sol.status is LPStatus.INFEASIBLE:
        raise InfeasibleCodeError("empty code polytope")
    if sol.status is not LPStatus.OPTIMAL:  # pragma: no cover - polytope is bounded
        raise RuntimeError(f"unexpected LP status {sol.status}")
    n = cs.n
    frac = sol.x.reshape(n, n)
    rounded = np.rint(frac)
    if np.max(np.abs(frac - rounded)) <= tol:
        try:
            x = PermutationMatrix.from_dense(rounded.astype(np.int8))
        except ValueError:
            x = None
        if x is not None and satisfies(cs, x):
            return DecodeResult(
                matrix=x,
                word=x.apply(s),
                fractional=None,
                objective_value=sol.objective_value,
            )
    return DecodeResult(
        matrix=None, word=None, fractional=frac, objective_value=sol.objective_value
    )


def ml_decode_detail(code: Code, y: Sequence[float]) -> tuple[int, np.ndarray, bool]:
    """Exhaustive ML decoding: (1-based index, codeword, tie flag).

    Ties on squared Euclidean distance resolve to the lowest codeword index.
    """
    if len(code) == 0:
        raise ValueError("empty code")
    y = np.asarray(y, dtype=float)
    if y.shape != (code.n,):
        raise ValueError("received vector length does not match the code degree")
    d2 = np.sum((code.codewords - y) ** 2, axis=1)
    k = int(np.argmin(d2))
    tie = bool(np.any(np.delete(d2, k) <= d2[k] + 1e-12))
    return k + 1, code.codewords[k].copy(), tie


def ml_decode(code: Code, y: Sequence[float]) -> np.ndarray:
    """Maximum-likelihood codeword for y under AWGN (argmin Euclidean distance)."""
    _, word, _ = ml_decode_detail(code, y)
    return word
