"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

The public entry point :func:`lp_solve` handles inequality-form problems with
free variables,

    maximize (or minimize)  c @ z   subject to   A @ z <= b,

by running the simplex method on the standard-form dual

    minimize  b @ u   subject to   A.T @ u = c,  u >= 0.

The dual has one row per primal variable, which keeps the tableau small for
our typical shapes (a handful of variables, thousands of constraints).  The
primal optimum is read off the simplex multipliers of the final basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NumericalError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPSolution:
    status: str
    objective: float
    primal: np.ndarray
    iterations: int

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


@dataclass
class _StdResult:
    status: str
    basis: list
    rows: np.ndarray
    iterations: int


REFACTOR_EVERY = 50
STALL_LIMIT = 30
COND_LIMIT = 1e12
PERTURB = 1e-8


class _Breakdown(Exception):
    """The basis lost numerical rank."""


def _pivot(T, row, col):
    T[row] /= T[row, col]
    column = T[:, col].copy()
    column[row] = 0.0
    T -= np.outer(column, T[row])


def _tableau(A, b, cost, basis):
    """Simplex tableau for ``basis`` rebuilt from the original data."""
    m, N = A.shape
    B = A[:, basis]
    if np.linalg.cond(B) > COND_LIMIT:
        raise _Breakdown
    try:
        body = np.linalg.solve(B, A)
        rhs = np.linalg.solve(B, b)
    except np.linalg.LinAlgError:
        raise _Breakdown from None
    cb = cost[basis]
    T = np.empty((m + 1, N + 1))
    T[:m, :N] = body
    T[:m, -1] = rhs
    T[m, :N] = cost - cb @ body
    T[m, -1] = -cb @ rhs
    return T


def _run(A, b, cost, basis, tol, max_iter, iters):
    """Primal simplex on ``min cost @ u, A u = b, u >= 0`` from a feasible basis.

    Pricing uses the most negative reduced cost, switching to Bland's rule
    (lowest index) while the objective stalls, which rules out cycling.  The
    tableau is refactored from ``A`` periodically and before any verdict.
    Returns ``(status, tableau, iterations)``.
    """
    m = A.shape[0]
    N = A.shape[1]
    T = _tableau(A, b, cost, basis)
    since_refactor, stall, last_obj = 0, 0, T[m, -1]
    fresh = True
    while True:
        if iters >= max_iter:
            raise RuntimeError("simplex iteration cap reached")
        reduced = T[m, :N]
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            if fresh:
                return OPTIMAL, T, iters
            T, fresh, since_refactor = _tableau(A, b, cost, basis), True, 0
            continue
        if stall >= STALL_LIMIT:
            col = int(candidates[0])
        else:
            col = int(candidates[np.argmin(reduced[candidates])])
        column = T[:m, col]
        positive = np.flatnonzero(column > tol)
        if positive.size == 0:
            if fresh:
                return UNBOUNDED, T, iters
            T, fresh, since_refactor = _tableau(A, b, cost, basis), True, 0
            continue
        rhs = np.maximum(T[positive, -1], 0.0)
        ratios = rhs / column[positive]
        best = ratios.min()
        tied = positive[ratios <= best + tol * max(1.0, abs(best))]
        if stall >= STALL_LIMIT:
            row = int(min(tied, key=lambda i: basis[i]))
        else:
            # among ties prefer the largest pivot element for stability
            row = int(tied[np.argmax(T[tied, col])])
        _pivot(T, row, col)
        basis[row] = col
        iters += 1
        since_refactor += 1
        fresh = False
        obj = T[m, -1]
        if obj > last_obj + tol:
            stall, last_obj = 0, obj
        else:
            stall += 1
        if since_refactor >= REFACTOR_EVERY:
            T, fresh, since_refactor = _tableau(A, b, cost, basis), True, 0


def _solve_standard(A, b, c, tol, max_iter) -> _StdResult:
    """minimize c @ u  s.t.  A @ u = b, u >= 0  (A is m x N)."""
    m, N = A.shape
    A = A.astype(float).copy()
    b = b.astype(float).copy()
    flip = b < 0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # phase 1 on [A | I] with unit costs on the artificials
    A1 = np.hstack([A, np.eye(m)])
    cost1 = np.concatenate([np.zeros(N), np.ones(m)])
    basis = list(range(N, N + m))
    status, T, iters = _run(A1, b, cost1, basis, tol, max_iter, 0)
    scale = max(1.0, float(np.abs(b).max(initial=0.0)))
    if -T[m, -1] > tol * scale * 10:
        return _StdResult(INFEASIBLE, basis, np.arange(m), iters)

    # drive remaining artificial variables out of the basis; rows where that
    # is impossible are redundant and dropped
    keep = []
    for i in range(m):
        if basis[i] < N:
            keep.append(i)
            continue
        entries = np.flatnonzero(np.abs(T[i, :N]) > tol)
        if entries.size:
            j = int(entries[np.argmax(np.abs(T[i, entries]))])
            _pivot(T, i, j)
            basis[i] = j
            iters += 1
            keep.append(i)
    rows = np.array(keep, dtype=int)
    basis2 = [basis[i] for i in rows]

    status, T2, iters = _run(A[rows], b[rows], c, basis2, tol, max_iter, iters)
    return _StdResult(status, basis2, rows, iters)


def lp_solve(A, b, c, sense: str = "max", tol: float = 1e-9,
             max_iter: int = 200000) -> LPSolution:
    """Optimize ``c @ z`` over ``{z : A @ z <= b}`` with ``z`` free.

    Infeasible and unbounded problems are reported through ``status``; the
    solver is deterministic (fixed pivot rule, no randomness).
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    m, n = A.shape
    if b.size != m or c.size != n:
        raise ValueError(f"shape mismatch: A {A.shape}, b {b.size}, c {c.size}")
    if not (np.isfinite(A).all() and np.isfinite(b).all() and np.isfinite(c).all()):
        raise ValueError("LP data must be finite")

    sign = 1.0 if sense == "max" else -1.0
    cc = sign * c
    # row scaling of the primal constraints keeps pivots in a uniform range
    norms = np.abs(A).max(axis=1)
    norms[norms == 0] = 1.0
    As = A / norms[:, None]
    bs = b / norms

    try:
        res = _solve_standard(As.T, cc, bs, tol, max_iter)
    except _Breakdown:
        # long runs of degenerate pivots can drift into a singular basis; a
        # small deterministic shift of the dual right-hand side puts the
        # vertices in general position.  It leaves the primal feasible set
        # unchanged and perturbs only the optimal objective, by O(PERTURB).
        shift = PERTURB * max(1.0, float(np.abs(cc).max())) * (1 + np.arange(n) / n)
        try:
            res = _solve_standard(As.T, cc + shift, bs, tol, max_iter)
        except _Breakdown:
            raise NumericalError("simplex basis became numerically singular") from None
    if res.status == OPTIMAL:
        B = As.T[res.rows][:, res.basis]
        y = np.zeros(n)
        y[res.rows] = np.linalg.solve(B.T, bs[res.basis])
        return LPSolution(OPTIMAL, float(c @ y), y, res.iterations)
    if res.status == UNBOUNDED:
        return LPSolution(INFEASIBLE, float("nan"), np.full(n, np.nan), res.iterations)
    # dual infeasible: the primal is unbounded if it is feasible at all
    try:
        feas = _solve_standard(As.T, np.zeros(n), bs, tol, max_iter)
    except _Breakdown:
        raise NumericalError("simplex basis became numerically singular") from None
    iters = res.iterations + feas.iterations
    if feas.status == UNBOUNDED:
        return LPSolution(INFEASIBLE, float("nan"), np.full(n, np.nan), iters)
    return LPSolution(UNBOUNDED, sign * float("inf"), np.full(n, np.nan), iters)
