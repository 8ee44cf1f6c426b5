"""Brute-force extremal polynomial problems as finite linear programs.

Each oracle replaces ``||p||_K <= 1`` by ``|p(g)| <= 1`` on a finite grid and
optimizes over the monomial coefficient vector.  Fewer constraints can only
enlarge the feasible set, so the values are upper estimates that decrease to
the true constants as the grid is refined.
"""

from __future__ import annotations

import math

import numpy as np

from ..bodies import ConvexBody, as_vector
from ..config import resolve
from ..errors import DomainError, NumericalError
from ..geometry import golden_max
from .grid import GridSpec, make_grid
from .lp import lp_solve
from .poly import MultiPoly, eval_matrix, gradient_matrix, monomial_exponents


def _grid(K, grid, cfg, extra=None):
    if grid is None:
        return make_grid(K, config=cfg, extra=extra)
    if grid.body is not K and grid.body.dim != K.dim:
        raise DomainError("grid was built for a different body")
    return grid


def _box_rows(Phi):
    return np.vstack([Phi, -Phi]), np.ones(2 * Phi.shape[0])


def _solve(A, b, cost, cfg, what):
    sol = lp_solve(A, b, cost, tol=cfg.lp_tol, max_iter=cfg.lp_max_iter)
    if sol.status == "unbounded":
        raise NumericalError(
            f"{what}: LP unbounded -- the grid does not determine degree-n "
            "polynomials; increase grid_resolution or lower the degree")
    if not sol.ok:
        raise NumericalError(f"{what}: LP ended with status {sol.status}")
    return sol


def _check_degree(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError("degree must be a non-negative integer")
    return int(n)


def chebyshev_oracle(K: ConvexBody, x, n: int, grid: GridSpec | None = None, config=None):
    """``max p(x)`` over degree-``n`` ``p`` with ``|p| <= 1`` on the grid.

    Returns ``(value, MultiPoly)``.
    """
    cfg = resolve(config)
    n = _check_degree(n)
    x = as_vector(x, K.dim)
    g = _grid(K, grid, cfg)
    A, b = _box_rows(eval_matrix(g.points, n))
    cost = eval_matrix(x[None, :], n)[0]
    sol = _solve(A, b, cost, cfg, "chebyshev_oracle")
    return sol.objective, MultiPoly(K.dim, n, sol.primal)


def leading_growth_oracle(K: ConvexBody, v, n: int, grid: GridSpec | None = None,
                          config=None) -> float:
    """``max p_n(v)`` (top homogeneous part) subject to the grid sup-norm."""
    cfg = resolve(config)
    n = _check_degree(n)
    if n < 1:
        raise DomainError("leading growth needs n >= 1")
    v = as_vector(v, K.dim, name="direction")
    if not np.any(v):
        raise DomainError("zero direction")
    g = _grid(K, grid, cfg)
    A, b = _box_rows(eval_matrix(g.points, n))
    top = monomial_exponents(K.dim, n).sum(axis=1) == n
    cost = np.where(top, eval_matrix(v[None, :], n)[0], 0.0)
    return _solve(A, b, cost, cfg, "leading_growth_oracle").objective


def local_patch(K: ConvexBody, x, config=None) -> np.ndarray:
    """Extra constraint points: a fine lattice disc of radius ``local_radius``
    around ``x`` with ``local_steps`` steps per radius.

    Near ``|p(x)| -> 1`` the coarse grid leaves room for ``p`` to overshoot 1
    between nodes close to ``x``, which inflates the estimate; the patch
    removes that slack where it matters.
    """
    cfg = resolve(config)
    R, k = cfg.local_radius, cfg.local_steps
    offs = np.linspace(-R, R, 2 * k + 1)
    mesh = np.stack(np.meshgrid(*[offs] * K.dim, indexing="ij"), -1).reshape(-1, K.dim)
    mesh = mesh[np.linalg.norm(mesh, axis=1) <= R * (1 + 1e-12)]
    pts = np.asarray(x, dtype=float) + mesh
    return pts[[K.contains(p, 1e-12) for p in pts]]


def bernstein_oracle(K: ConvexBody, x, y, n: int, grid: GridSpec | None = None,
                     c_sweep: int | None = None, config=None) -> float:
    """Estimate of ``n * B_n(K, x, y)``.

    For each ``c`` of the sweep the LP ``max <grad p(x), y>`` subject to
    ``|p| <= 1`` on the grid and ``p(x) = c`` is solved; the estimate is the
    largest ``value / sqrt(1 - c^2)``.  The sweep is ``c = sin(theta)`` for
    equally spaced ``theta`` (so it crowds towards ``c = +-(1 - delta)``),
    followed by a golden-section refinement around the best sweep cell.
    """
    cfg = resolve(config)
    n = _check_degree(n)
    if n < 1:
        raise DomainError("Bernstein factors need n >= 1")
    count = cfg.c_sweep if c_sweep is None else int(c_sweep)
    if count < 9:
        raise DomainError("c_sweep must be at least 9")
    x = as_vector(x, K.dim)
    y = as_vector(y, K.dim, name="direction")
    if K.margin(x) <= cfg.contain_tol:
        raise DomainError("bernstein_oracle needs an interior point")
    if grid is None:
        grid = make_grid(K, config=cfg, extra=np.vstack([x[None, :], local_patch(K, x, cfg)]))
    g = _grid(K, grid, cfg)
    Abox, bbox = _box_rows(eval_matrix(g.points, n))
    phi_x = eval_matrix(x[None, :], n)[0]
    cost = gradient_matrix(x, n).T @ y
    A = np.vstack([Abox, phi_x, -phi_x])

    def ratio(theta):
        c = math.sin(theta)
        b = np.concatenate([bbox, [c, -c]])
        sol = _solve(A, b, cost, cfg, "bernstein_oracle")
        return sol.objective / math.sqrt(1 - c * c)

    top = math.asin(1 - cfg.sweep_delta)
    thetas = np.linspace(-top, top, count)
    vals = np.array([ratio(t) for t in thetas])
    k = int(np.argmax(vals))
    lo, hi = thetas[max(k - 1, 0)], thetas[min(k + 1, count - 1)]
    _, refined = golden_max(ratio, lo, hi, tol=cfg.c_refine_tol)
    return float(max(vals[k], refined))
