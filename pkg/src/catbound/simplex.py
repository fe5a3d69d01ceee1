"""Dense two-phase tableau simplex for small maximization LPs.

Solves   maximize c.x   subject to   A x <= b,  x >= 0
and reports the optimum, a primal point, and the dual prices of the rows.
Pivoting is deterministic: largest-reduced-cost entering column with
lowest-index tie-breaks, switching to Bland's rule (lowest eligible index)
whenever the objective stalls, which guarantees termination on degenerate
bases.  Identical inputs produce identical outputs.

The entropy bound programs built elsewhere in this package always have
b >= 0, so phase 1 is usually skipped; it exists so the solver is usable
as a general small-LP engine (and so the solver can be cross-checked
against brute-force vertex enumeration on random inputs).

Arithmetic is float64 throughout; if the fixed tolerances ever bite on an
ill-conditioned input, the hardening path is exact rational pivoting,
which this module deliberately does not attempt.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["DenseLP", "SolveResult", "solve"]

TOL = 1e-9          # pivot / reduced-cost threshold
STALL_LIMIT = 40    # degenerate pivots before switching to Bland's rule
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass
class DenseLP:
    """maximize objective . x  s.t.  rows . x <= rhs,  x >= 0."""

    objective: np.ndarray
    rows: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        self.objective = np.asarray(self.objective, dtype=np.float64)
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=np.float64))
        self.rhs = np.asarray(self.rhs, dtype=np.float64)
        m, n = self.rows.shape
        if self.objective.shape != (n,):
            raise ValueError("objective length does not match row width")
        if self.rhs.shape != (m,):
            raise ValueError("rhs length does not match row count")
        if m < 1:
            raise ValueError("need at least one constraint row")
        if not (np.isfinite(self.rows).all() and np.isfinite(self.rhs).all()
                and np.isfinite(self.objective).all()):
            raise ValueError("LP entries must be finite")


@dataclass
class SolveResult:
    status: str
    optimum: float
    primal: np.ndarray
    dual: np.ndarray


class _Tableau:
    """Equality-form tableau with an explicit basis.

    Columns: n structural | m slacks | k artificials | rhs.
    Rows with negative b are negated so the rhs column stays nonnegative.
    """

    def __init__(self, lp: DenseLP):
        m, n = lp.rows.shape
        self.m, self.n = m, n
        sign = np.where(lp.rhs < 0, -1.0, 1.0)
        self.art_rows = np.nonzero(sign < 0)[0]
        k = len(self.art_rows)
        width = n + m + k + 1
        T = np.zeros((m, width))
        T[:, :n] = lp.rows * sign[:, None]
        T[np.arange(m), n + np.arange(m)] = sign
        for slot, i in enumerate(self.art_rows):
            T[i, n + m + slot] = 1.0
        T[:, -1] = lp.rhs * sign
        self.T = T
        self.n_art = k
        self.art_start = n + m
        self.basis = np.empty(m, dtype=np.int64)
        self.basis[:] = n + np.arange(m)
        for slot, i in enumerate(self.art_rows):
            self.basis[i] = n + m + slot
        self.active = np.ones(m, dtype=bool)  # rows dropped when redundant

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] = T[row] / T[row, col]
        factors = T[:, col].copy()
        factors[row] = 0.0
        T -= factors[:, None] * T[row]
        self.basis[row] = col

    def _entering(self, z: np.ndarray, banned_from: int, bland: bool) -> int | None:
        width = self.T.shape[1] - 1
        limit = min(banned_from, width)
        r = z[:limit]
        eligible = np.nonzero(r > TOL)[0]
        if eligible.size == 0:
            return None
        if bland:
            return int(eligible[0])
        best = eligible[np.argmax(r[eligible])]
        # argmax already returns the first (lowest-index) maximum
        return int(best)

    def _leaving(self, col: int) -> int | None:
        T = self.T
        piv = T[:, col]
        ok = self.active & (piv > TOL)
        if not ok.any():
            return None
        ratios = np.full(self.m, np.inf)
        ratios[ok] = T[ok, -1] / piv[ok]
        best = ratios.min()
        ties = np.nonzero(ok & (ratios <= best + TOL * (1.0 + abs(best))))[0]
        # lowest basis-variable index among the ties (Bland-compatible)
        return int(ties[np.argmin(self.basis[ties])])

    def run(self, z: np.ndarray, z_rhs: float, banned_from: int) -> tuple[str, np.ndarray, float]:
        """Iterate pivots until optimal/unbounded; returns final z row."""
        bland = False
        stall = 0
        max_iters = 5000 + 200 * (self.m + self.n)
        for _ in range(max_iters):
            col = self._entering(z, banned_from, bland)
            if col is None:
                return OPTIMAL, z, z_rhs
            row = self._leaving(col)
            if row is None:
                return UNBOUNDED, z, z_rhs
            gain = z[col] * self.T[row, -1] / self.T[row, col]
            self.pivot(row, col)
            z_rhs += gain
            z = z - z[col] * self.T[row]
            z[col] = 0.0
            if gain <= TOL * (1.0 + abs(z_rhs)):
                stall += 1
                if stall >= STALL_LIMIT:
                    bland = True
            else:
                stall = 0
                bland = False
        raise RuntimeError("simplex failed to terminate within the iteration cap")


def solve(lp: DenseLP) -> SolveResult:
    """Solve the LP; see module docstring for the contract.

    Tall LPs (many rows, few coordinates) are pivoted through their dual,
    whose tableau is transposed and much smaller; both primal point and
    dual prices come back through strong duality either way.
    """
    m, n = lp.rows.shape
    if m >= 3 * n and m >= 40:
        return _solve_via_dual(lp)
    return _solve_primal(lp)


def _solve_via_dual(lp: DenseLP) -> SolveResult:
    m, n = lp.rows.shape
    dual_lp = DenseLP(objective=-lp.rhs, rows=-lp.rows.T, rhs=-lp.objective)
    res = _solve_primal(dual_lp)
    if res.status == OPTIMAL:
        # dual of the dual: res.primal are the row prices, res.dual the point
        return SolveResult(OPTIMAL, -res.optimum, res.dual, res.primal)
    if res.status == UNBOUNDED:
        return SolveResult(INFEASIBLE, np.nan, np.full(n, np.nan),
                           np.full(m, np.nan))
    # dual infeasible: primal is unbounded if feasible at all
    if (lp.rhs >= 0).all():
        return SolveResult(UNBOUNDED, np.inf, np.full(n, np.nan),
                           np.full(m, np.nan))
    return _solve_primal(lp)


def _solve_primal(lp: DenseLP) -> SolveResult:
    tab = _Tableau(lp)
    m, n = tab.m, tab.n
    nan = np.full(n, np.nan)

    if tab.n_art:
        # phase 1: maximize -(sum of artificials); artificials may only leave
        z = np.zeros(tab.T.shape[1])
        z[tab.art_start:-1] = -1.0
        z_rhs = 0.0
        for i in range(m):
            if tab.basis[i] >= tab.art_start:
                z = z + tab.T[i]
                z[tab.basis[i]] = 0.0
                z_rhs -= tab.T[i, -1]
        status, z, z_rhs = tab.run(z, z_rhs, banned_from=tab.art_start)
        if status != OPTIMAL or z_rhs < -1e-7:
            return SolveResult(INFEASIBLE, np.nan, nan, np.full(m, np.nan))
        # drive remaining artificials out of the basis
        for i in range(m):
            if tab.basis[i] >= tab.art_start:
                row = tab.T[i, :tab.art_start]
                cand = np.nonzero(np.abs(row) > TOL)[0]
                if cand.size:
                    tab.pivot(i, int(cand[0]))
                else:
                    tab.active[i] = False  # redundant constraint row

    # phase 2: the real objective, artificial columns banned
    z = np.zeros(tab.T.shape[1])
    z[:n] = lp.objective
    z_rhs = 0.0
    for i in range(m):
        b = tab.basis[i]
        if b < n and z[b] != 0.0:
            coeff = z[b]
            z = z - coeff * tab.T[i]
            z[b] = 0.0
            z_rhs += coeff * tab.T[i, -1]
    status, z, z_rhs = tab.run(z, z_rhs, banned_from=tab.art_start)
    if status == UNBOUNDED:
        return SolveResult(UNBOUNDED, np.inf, nan, np.full(m, np.nan))

    primal = np.zeros(n)
    for i in range(m):
        if tab.active[i] and tab.basis[i] < n:
            primal[tab.basis[i]] = tab.T[i, -1]
    dual = -z[n:n + m]
    dual[dual < 0] = 0.0  # numerical dust; reduced costs are <= 0 at optimum
    return SolveResult(OPTIMAL, float(z_rhs), primal, dual)
