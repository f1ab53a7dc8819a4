"""Dense two-phase simplex with Bland's rule.

Problems are posed as::

    maximize    c @ x
    subject to  A @ x == b
                x[j] >= 0   (or free, per ``free``)

and the solver returns the optimal vertex together with the dual vector
``y`` of the equality rows (``A.T @ y >= c`` on nonnegative columns, equality
on free columns, ``b @ y == c @ x`` at optimum).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

Status = Literal["optimal", "infeasible", "unbounded"]

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-9


class LpNumericalError(RuntimeError):
    """The solver lost accuracy or exceeded its pivot budget.

    Kept separate from infeasibility so callers never confuse the two.
    """


@dataclass
class LinearProgram:
    objective: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    free: np.ndarray = field(default=None)  # boolean mask of free variables

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=float).ravel()
        n = self.objective.size
        self.a_eq = np.asarray(self.a_eq, dtype=float).reshape(-1, n)
        self.b_eq = np.asarray(self.b_eq, dtype=float).ravel()
        if self.free is None:
            self.free = np.zeros(n, dtype=bool)
        self.free = np.asarray(self.free, dtype=bool).ravel()
        if self.b_eq.size != self.a_eq.shape[0] or self.free.size != n:
            raise ValueError("inconsistent LP dimensions")
        for name in ("objective", "a_eq", "b_eq"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ValueError(f"LP {name} has non-finite entries")

    @property
    def shape(self) -> tuple[int, int]:
        return self.a_eq.shape


@dataclass
class LpSolution:
    status: Status
    value: float = float("nan")
    primal: np.ndarray | None = None
    dual: np.ndarray | None = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def residuals(lp: LinearProgram, sol: LpSolution) -> dict[str, float]:
    """Primal/dual feasibility, complementary slackness and duality gap."""
    x, y = sol.primal, sol.dual
    a, b, c = lp.a_eq, lp.b_eq, lp.objective
    reduced = a.T @ y - c
    nonneg = ~lp.free
    return {
        "primal": float(max(np.max(np.abs(a @ x - b), initial=0.0),
                            np.max(-x[nonneg], initial=0.0))),
        "dual": float(max(np.max(-reduced[nonneg], initial=0.0),
                          np.max(np.abs(reduced[lp.free]), initial=0.0))),
        "slackness": float(np.max(np.abs(reduced[nonneg] * x[nonneg]), initial=0.0)),
        "gap": float(abs(c @ x - b @ y)),
    }


class _Tableau:
    """Rows hold ``B^-1 [A | b]`` for the current basis ``B``."""

    def __init__(self, a: np.ndarray, b: np.ndarray, basis: list[int]):
        self.t = np.hstack([a, b[:, None]])
        self.basis = basis

    def pivot(self, row: int, col: int) -> None:
        t = self.t
        t[row] /= t[row, col]
        col_vals = t[:, col].copy()
        col_vals[row] = 0.0
        t -= np.outer(col_vals, t[row])
        self.basis[row] = col


def _bland(tab: _Tableau, cost: np.ndarray, allowed: np.ndarray, max_iter: int) -> tuple[str, int]:
    """Maximize ``cost @ x`` over the current tableau. Returns (status, iterations)."""
    t = tab.t
    for it in range(max_iter):
        cb = cost[tab.basis]
        reduced = cost - cb @ t[:, :-1]
        scale = max(1.0, float(np.max(np.abs(cost), initial=0.0)))
        cand = np.flatnonzero((reduced > PIVOT_TOL * scale) & allowed)
        if cand.size == 0:
            return "optimal", it
        col = int(cand[0])
        column = t[:, col]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return "unbounded", it
        ratios = t[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        # Bland: among tied rows leave the lowest-index basic variable
        row = int(min(ties, key=lambda i: tab.basis[i]))
        tab.pivot(row, col)
    raise LpNumericalError(f"simplex exceeded {max_iter} pivots")


def solve(lp: LinearProgram, max_iter: int | None = None) -> LpSolution:
    """Solve `lp` by the two-phase simplex method with Bland's rule.

    Free variables are split into positive and negative parts. Redundant
    equality rows are detected after phase one and dropped (their duals are
    zero). Raises LpNumericalError if the final residuals exceed ``1e-9``
    relative to the data scale.
    """
    m, n = lp.shape
    c = lp.objective
    # split free columns: x = x_plus - x_minus
    free_idx = np.flatnonzero(lp.free)
    a = np.hstack([lp.a_eq, -lp.a_eq[:, free_idx]])
    cost = np.concatenate([c, -c[free_idx]])
    b = lp.b_eq.copy()
    flip = b < 0
    a[flip] *= -1
    b[flip] *= -1
    nv = a.shape[1]
    if max_iter is None:
        max_iter = 50 * (m + nv) + 1000

    if m == 0:
        if np.any(cost > 0):
            return LpSolution("unbounded")
        return LpSolution("optimal", 0.0, np.zeros(n), np.zeros(0))

    # phase one: artificial basis, maximize -sum(artificials)
    tab = _Tableau(np.hstack([a, np.eye(m)]), b, list(range(nv, nv + m)))
    phase1 = np.concatenate([np.zeros(nv), -np.ones(m)])
    allowed = np.ones(nv + m, dtype=bool)
    status, it1 = _bland(tab, phase1, allowed, max_iter)
    if status != "optimal":
        raise LpNumericalError("phase one reported unbounded")
    infeas = float(np.sum(tab.t[:, -1][np.array(tab.basis) >= nv]))
    if infeas > FEAS_TOL * max(1.0, float(np.max(np.abs(b), initial=0.0))):
        return LpSolution("infeasible", iterations=it1)

    # drive remaining artificials out of the basis or drop their rows
    keep_rows = []
    for i in range(m):
        if tab.basis[i] >= nv:
            row = tab.t[i, :nv]
            nz = np.flatnonzero(np.abs(row) > PIVOT_TOL)
            if nz.size:
                tab.pivot(i, int(nz[0]))
                keep_rows.append(i)
        else:
            keep_rows.append(i)
    keep_rows = np.array(sorted(keep_rows), dtype=int)
    tab.t = tab.t[keep_rows]
    tab.basis = [tab.basis[i] for i in keep_rows]

    cost_full = np.concatenate([cost, np.zeros(m)])
    allowed = np.concatenate([np.ones(nv, dtype=bool), np.zeros(m, dtype=bool)])
    status, it2 = _bland(tab, cost_full, allowed, max_iter)
    iterations = it1 + it2
    if status == "unbounded":
        return LpSolution("unbounded", iterations=iterations)

    xs = np.zeros(nv + m)
    xs[tab.basis] = tab.t[:, -1]
    xs = xs[:nv]
    x = xs[:n].copy()
    x[free_idx] -= xs[n:]

    # duals from B^T y = c_B on the kept (sign-flipped) rows
    basis = np.array(tab.basis, dtype=int)
    if np.any(basis >= nv):
        raise LpNumericalError("artificial variable left in final basis")
    bmat = a[np.ix_(keep_rows, basis)]
    try:
        y_kept = np.linalg.solve(bmat.T, cost[basis]) if basis.size else np.zeros(0)
    except np.linalg.LinAlgError as exc:
        raise LpNumericalError(f"singular final basis: {exc}") from exc
    y = np.zeros(m)
    y[keep_rows] = y_kept
    y[flip] *= -1

    sol = LpSolution("optimal", float(c @ x), x, y, iterations)
    res = residuals(lp, sol)
    scale = max(1.0, float(np.max(np.abs(lp.a_eq), initial=0.0)),
                float(np.max(np.abs(lp.b_eq), initial=0.0)),
                float(np.max(np.abs(c), initial=0.0)))
    worst = max(res.values())
    if worst > 1e-9 * scale:
        raise LpNumericalError(f"residuals too large after solve: {res}")
    return sol

