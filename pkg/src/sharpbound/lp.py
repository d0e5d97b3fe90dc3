"""Dense two-phase revised simplex with Bland's rule.

The searches pose problems of the form

    maximize  obj . x   subject to  A x <= b,  x free,

with a handful of variables and many rows.  :func:`solve_max_ub` solves the
dual ``min b . y  s.t.  A^T y = obj, y >= 0`` in standard form, which has only
as many equality rows as there are primal variables, and reads ``x`` off the
simplex multipliers.  Every iteration re-solves the small basis system from the
original data, so rounding error does not accumulate across pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InfeasibleLPError, UnboundedLPError

LP_TOL = 1e-9
MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class StandardSolution:
    y: np.ndarray
    value: float
    basis: np.ndarray
    multipliers: np.ndarray
    pivots: int


@dataclass(frozen=True)
class LPSolution:
    x: np.ndarray
    value: float
    # indices of rows of A that are basic in the dual, i.e. binding at x
    binding: np.ndarray
    pivots: int


def _iterate(M, cost, b, basis, rank, allowed, tol, pivots, phase_one=False):
    """Bland-rule revised simplex on columns of M; returns (status, pivots).

    status is "optimal" or "unbounded".
    """
    barred = np.zeros(M.shape[1], dtype=bool)
    while True:
        if pivots >= MAX_PIVOTS:
            raise RuntimeError(f"simplex pivot cap {MAX_PIVOTS} reached")
        B = M[:, basis]
        lam = np.linalg.solve(B.T, cost[basis])
        reduced = cost - lam @ M
        scale = 1.0 + np.abs(lam) @ np.abs(M)
        eligible = np.nonzero(allowed & ~barred & (reduced < -tol * scale))[0]
        if eligible.size == 0:
            return "optimal", pivots
        col = eligible[np.argmin(rank[eligible])]
        d = np.linalg.solve(B, M[:, col])
        xb = np.linalg.solve(B, b)
        pos = np.nonzero(d > tol * max(1.0, float(np.max(np.abs(d)))))[0]
        if pos.size == 0:
            if phase_one:
                # the phase-1 objective is bounded below by 0; this reduced cost is rounding noise
                barred[col] = True
                continue
            return "unbounded", pivots
        ratios = np.maximum(xb[pos], 0.0) / d[pos]
        best = ratios.min()
        ties = pos[ratios <= best + tol * max(1.0, abs(best))]
        row = ties[np.argmin(rank[basis[ties]])]
        basis[row] = col
        barred[:] = False
        pivots += 1


def simplex_standard(c, A, b, order: Optional[np.ndarray] = None,
                     tol: float = LP_TOL) -> StandardSolution:
    """Minimize ``c . y`` subject to ``A y = b``, ``y >= 0``.

    ``order`` ranks the columns for Bland's rule (lower rank is preferred);
    the default is the natural column order.  ``multipliers`` solve
    ``B^T lambda = c_B`` for the final basis, expressed for the original rows.
    """
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    k, m = A.shape
    sign = np.where(b < 0, -1.0, 1.0)
    A *= sign[:, None]
    b *= sign

    M = np.hstack([A, np.eye(k)])
    basis = np.arange(m, m + k)
    rank = np.empty(m + k)
    if order is None:
        rank[:m] = np.arange(m)
        rank[m:] = m + np.arange(k)
    else:
        rank[:m] = np.asarray(order, dtype=float)
        rank[m:] = float(np.max(order, initial=0.0)) + 1.0 + np.arange(k)

    phase1_cost = np.concatenate([np.zeros(m), np.ones(k)])
    allowed = np.ones(m + k, dtype=bool)
    _, pivots = _iterate(M, phase1_cost, b, basis, rank, allowed, tol, 0, phase_one=True)
    xb = np.linalg.solve(M[:, basis], b)
    infeasibility = float(np.sum(xb[basis >= m]))
    if infeasibility > 10 * tol * max(1.0, float(np.abs(b).max(initial=0.0))):
        raise InfeasibleLPError("equality system A y = b has no nonnegative solution")
    # drive zero-level artificials out of the basis where a real column can replace them
    for row in range(k):
        if basis[row] >= m:
            Binv_row = np.linalg.solve(M[:, basis].T, np.eye(k)[row])
            entries = Binv_row @ A
            candidates = np.nonzero((np.abs(entries) > tol) & ~np.isin(np.arange(m), basis))[0]
            if candidates.size:
                basis[row] = candidates[np.argmin(rank[candidates])]
                pivots += 1

    allowed[m:] = False
    cost = np.concatenate([c, np.zeros(k)])
    status, pivots = _iterate(M, cost, b, basis, rank, allowed, tol, pivots)
    if status == "unbounded":
        raise UnboundedLPError("objective is unbounded below")
    B = M[:, basis]
    xb = np.maximum(np.linalg.solve(B, b), 0.0)
    y = np.zeros(m + k)
    y[basis] = xb
    lam = np.linalg.solve(B.T, cost[basis]) * sign
    return StandardSolution(y[:m], float(c @ y[:m]), basis.copy(), lam, pivots)


def solve_max_ub(obj, A_ub, b_ub, order: Optional[np.ndarray] = None,
                 tol: float = LP_TOL) -> LPSolution:
    """Maximize ``obj . x`` subject to ``A_ub x <= b_ub`` with ``x`` free.

    Solved through the dual.  An infeasible dual means the primal is unbounded
    (the primal is assumed feasible, e.g. ``b_ub >= 0``) and raises
    :class:`UnboundedLPError`.
    """
    A_ub = np.asarray(A_ub, dtype=float)
    b_ub = np.asarray(b_ub, dtype=float)
    try:
        sol = simplex_standard(b_ub, A_ub.T, obj, order=order, tol=tol)
    except InfeasibleLPError as exc:
        raise UnboundedLPError("primal LP is unbounded (its dual is infeasible)") from exc
    except UnboundedLPError as exc:
        raise InfeasibleLPError("primal LP is infeasible (its dual is unbounded)") from exc
    x = sol.multipliers
    binding = np.sort(sol.basis[sol.basis < A_ub.shape[0]])
    return LPSolution(x, float(np.asarray(obj, dtype=float) @ x), binding, sol.pivots)
