"""Support, width, maximal chord, gauge, and the generalized Minkowski functional.

The functional ``alpha(K, x)`` is the largest value of the normalized layer
coordinate ``t(K, v, x)`` over unit directions ``v``.  It is available by three
routes, which the test-suite cross-checks against each other:

* ``closed_form`` -- the planar standard simplex (interior points) and bodies
  with a known centre of symmetry;
* ``sphere_opt`` -- direct maximization of ``t`` over the unit sphere;
* ``gamma_route`` -- maximization of the chord asymmetry
  ``|rho+ - rho-| / (rho+ + rho-)`` over lines through ``x``.

In the plane and for polygons both ``t`` and the chord asymmetry are ratios of
linear functions of the direction between consecutive breakpoints, so they are
monotone there and their maxima sit at breakpoints: edge normals of ``C(K)``
for ``t``, directions towards vertices for the chord asymmetry.  These
candidates are always evaluated alongside the generic angle sweep.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .bodies import (Ball, Box, ConvexBody, StandardSimplex, as_vector,
                     central_symmetrization, ray_chord)
from .config import resolve
from .errors import DomainError, NumericalError

GOLDEN = (math.sqrt(5) - 1) / 2


def unit_direction(v, dim, tol=1e-12) -> np.ndarray:
    v = as_vector(v, dim, name="direction")
    n = float(np.linalg.norm(v))
    if n == 0:
        raise DomainError("zero direction")
    if abs(n - 1.0) > tol:
        raise DomainError(f"direction must be a Euclidean unit vector (norm {n:.15g})")
    return v


def nonzero_direction(v, dim) -> np.ndarray:
    v = as_vector(v, dim, name="direction")
    if not np.any(v):
        raise DomainError("zero direction")
    return v


def angles_to_dirs(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    return np.column_stack([np.cos(theta), np.sin(theta)])


# ---------------------------------------------------------------------------
# one-dimensional searches shared by several modules


def golden_max(f, a, b, tol=1e-13, max_iter=200):
    """Golden-section search for a maximum of a unimodal ``f`` on ``[a, b]``."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def angle_maximize(f_many, period, candidates=(), config=None):
    """Maximize ``f`` over angles in ``[0, period)``.

    ``f_many`` maps an array of angles to values (``nan`` entries are ignored).
    A uniform coarse sweep is refined by golden-section search in the best
    few cells; explicit ``candidates`` (breakpoints) are evaluated exactly.
    Returns ``(theta, value)``.
    """
    cfg = resolve(config)
    cells = cfg.angle_cells
    grid = period * np.arange(cells) / cells
    vals = np.asarray(f_many(grid), dtype=float)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    best_t, best_v = float(grid[int(np.argmax(vals))]), float(vals.max())
    h = period / cells

    def scalar(t):
        v = float(np.asarray(f_many(np.array([t])))[0])
        return -np.inf if math.isnan(v) else v

    order = np.argsort(-vals, kind="stable")[: cfg.refine_cells]
    for k in order:
        t, v = golden_max(scalar, grid[k] - h, grid[k] + h, cfg.angle_tol)
        if v > best_v:
            best_t, best_v = t, v
    cand = np.asarray(list(candidates), dtype=float)
    if cand.size:
        cv = np.asarray(f_many(cand), dtype=float)
        cv = np.where(np.isnan(cv), -np.inf, cv)
        k = int(np.argmax(cv))
        if cv[k] >= best_v:
            best_t, best_v = float(cand[k]), float(cv[k])
    return best_t % period, best_v


def sphere_starts(dim, config=None, structured=()):
    """Deterministic start directions: structured ones, then seeded random."""
    cfg = resolve(config)
    rng = np.random.default_rng(cfg.seed)
    R = rng.standard_normal((cfg.n_starts, dim))
    R /= np.linalg.norm(R, axis=1)[:, None]
    parts = [np.vstack([np.eye(dim), -np.eye(dim)])]
    S = np.asarray(list(structured), dtype=float).reshape(-1, dim)
    if S.size:
        S = S[np.linalg.norm(S, axis=1) > 0]
        parts.append(S / np.linalg.norm(S, axis=1)[:, None])
    parts.append(R)
    return np.vstack(parts)


def _pattern_polish(f, v, fv, radius=1e-2, floor=1e-11, max_evals=20000):
    """Compass search in the tangent plane; handles maxima sitting on kinks.

    Axis and diagonal tangent moves are tried so that ridges not aligned with
    the basis can still be climbed.  Returns ``(v, fv, finished)``.
    """
    d = v.size
    evals = 0
    while radius > floor:
        Q, _ = np.linalg.qr(np.column_stack([v, np.eye(d)]))
        T = Q[:, 1:d].T
        moves = [T]
        if d > 2:
            pairs = [(T[i] + s * T[j]) / math.sqrt(2)
                     for i in range(d - 1) for j in range(i + 1, d - 1) for s in (1, -1)]
            moves.append(np.array(pairs))
        M = np.vstack(moves)
        improved = False
        for m in np.vstack([M, -M]):
            w = v + radius * m
            w /= np.linalg.norm(w)
            fw = f(w)
            evals += 1
            if fw > fv + 1e-16:
                v, fv, improved = w, fw, True
        if evals > max_evals:
            return v, fv, False
        if not improved:
            radius /= 2
    return v, fv, True


def sphere_ascent(f, grad, starts, config=None, keep=8):
    """Projected (sub)gradient ascent on the unit sphere with backtracking,
    followed by a compass-search polish.

    Every start is scored; the best ``keep`` are refined.  The gradient phase
    is capped at ``ascent_max_iter`` steps; ``converged`` reports whether the
    polish of the run that produced the returned maximum finished within its
    evaluation budget.  Returns ``(v, value, converged)``.
    """
    cfg = resolve(config)
    scores = np.array([f(s) for s in starts])
    scores = np.where(np.isnan(scores), -np.inf, scores)
    order = np.argsort(-scores, kind="stable")[:keep]
    best_v, best_f, best_conv = starts[order[0]].copy(), float(scores[order[0]]), False
    for k in order:
        v, fv = starts[k].copy(), float(scores[k])
        step = 0.5
        for _ in range(cfg.ascent_max_iter):
            g = grad(v)
            g = g - (g @ v) * v
            gn = float(np.linalg.norm(g))
            if gn < 1e-14:
                break
            moved = False
            while step > 1e-12:
                w = v + step * g / gn
                w /= np.linalg.norm(w)
                fw = f(w)
                if fw > fv + 1e-15:
                    v, fv, moved = w, fw, True
                    step = min(1.0, 2 * step)
                    break
                step /= 2
            if not moved:
                break
        v, fv, finished = _pattern_polish(f, v, fv)
        if fv > best_f or (fv == best_f and finished and not best_conv):
            best_v, best_f, best_conv = v, fv, finished
    return best_v, best_f, best_conv


# ---------------------------------------------------------------------------
# support, width, chord, gauge


def support(K: ConvexBody, v) -> float:
    """``h(K, v)``: the maximum of ``<v, .>`` over ``K`` (``v`` need not be unit)."""
    v = nonzero_direction(v, K.dim)
    return float(K.support_point(v)[0])


def width_dir(K: ConvexBody, v, config=None) -> float:
    cfg = resolve(config)
    v = unit_direction(v, K.dim, cfg.unit_tol)
    return float(K.support_point(v)[0] + K.support_point(-v)[0])


def _width_normals_2d(K: ConvexBody) -> np.ndarray | None:
    """Edge normals of ``C(K)`` -- the breakpoints of ``v -> h(K, v)`` in 2-D."""
    if K.dim != 2 or isinstance(K, Ball):
        return None
    C = central_symmetrization(K)
    verts = C.vertex_array()
    if verts is None:
        return None
    nxt = np.roll(verts, -1, axis=0)
    e = nxt - verts
    N = np.column_stack([e[:, 1], -e[:, 0]])
    return N / np.linalg.norm(N, axis=1)[:, None]


def minimal_width(K: ConvexBody, config=None) -> float:
    """``inf`` over unit ``v`` of the width; exact in the plane."""
    cfg = resolve(config)
    if isinstance(K, Ball):
        return 2 * K.radius
    if isinstance(K, Box):
        return float((K.upper - K.lower).min())
    if K.dim == 1:
        lo, hi = K.bounding_box()
        return float(hi[0] - lo[0])
    if K.dim == 2:
        N = _width_normals_2d(K)
        if N is not None:
            return float((K.support_many(N) + K.support_many(-N)).min())

    def neg_width(v):
        return -(K.support_point(v)[0] + K.support_point(-v)[0])

    def grad(v):
        _, p = K.support_point(v)
        _, q = K.support_point(-v)
        return -(p - q)

    structured = []
    rep = K.h_rep()
    if rep is not None:
        structured = rep[0]
    starts = sphere_starts(K.dim, cfg, structured)
    _, val, _ = sphere_ascent(neg_width, grad, starts, cfg)
    return float(-val)


def maximal_chord(K: ConvexBody, v) -> float:
    """``tau(K, v) = sup{lam : lam*v in K - K}``; not normalized, so
    ``tau(K, c*v) = tau(K, v) / |c|``.
    """
    v = nonzero_direction(v, K.dim)
    norm = float(np.linalg.norm(v))
    if isinstance(K, Ball):
        return 2 * K.radius / norm
    if isinstance(K, Box):
        a = np.abs(v)
        nz = a > 0
        return float(((K.upper - K.lower)[nz] / a[nz]).min())
    if isinstance(K, StandardSimplex):
        return 2.0 / (float(np.abs(v).sum()) + abs(float(v.sum())))
    C = central_symmetrization(K)
    u = v / norm
    return 2.0 * C.exit_distance(np.zeros(K.dim), u) / norm


def gauge(K: ConvexBody, x, config=None) -> float:
    """Minkowski functional of ``K`` (origin must be interior)."""
    cfg = resolve(config)
    x = as_vector(x, K.dim)
    origin = np.zeros(K.dim)
    if K.margin(origin) <= cfg.contain_tol:
        raise DomainError("gauge requires the origin in the interior of the body")
    nx = float(np.linalg.norm(x))
    if nx == 0:
        return 0.0
    if isinstance(K, Ball) and not np.any(K.center):
        return nx / K.radius
    return nx / K.exit_distance(origin, x / nx)


def t_functional(K: ConvexBody, v, x, config=None) -> float:
    """Affine layer coordinate: ``-1`` and ``+1`` on the two supporting hyperplanes."""
    cfg = resolve(config)
    v = unit_direction(v, K.dim, cfg.unit_tol)
    x = as_vector(x, K.dim)
    hp = K.support_point(v)[0]
    hm = K.support_point(-v)[0]
    return float((2 * (v @ x) - hp + hm) / (hp + hm))


def _t_many(K, V, x):
    hp = K.support_many(V)
    hm = K.support_many(-V)
    return (2 * (V @ x) - hp + hm) / (hp + hm)


# ---------------------------------------------------------------------------
# alpha


@dataclass(frozen=True)
class AlphaResult:
    alpha: float
    witness: np.ndarray
    method: str
    converged: bool = True


def _alpha_closed_form(K, x):
    if isinstance(K, StandardSimplex) and K.dim == 2:
        slack = np.array([x[0], x[1], 1 - x[0] - x[1]])
        if (slack > 0).all():
            k = int(np.argmin(slack))
            w = [np.array([-1.0, 0.0]), np.array([0.0, -1.0]),
                 np.array([1.0, 1.0]) / math.sqrt(2)][k]
            return AlphaResult(float(1 - 2 * slack[k]), w, "closed_form")
        return None
    if isinstance(K, Ball):
        r = x - K.center
        nr = float(np.linalg.norm(r))
        w = r / nr if nr > 0 else np.eye(K.dim)[0]
        return AlphaResult(nr / K.radius, w, "closed_form")
    if isinstance(K, Box):
        c = K.symmetric_center
        half = (K.upper - K.lower) / 2
        q = (x - c) / half
        k = int(np.argmax(np.abs(q)))
        w = np.zeros(K.dim)
        w[k] = 1.0 if q[k] >= 0 else -1.0
        return AlphaResult(float(abs(q[k])), w, "closed_form")
    return None


def _alpha_sphere(K, x, cfg):
    d = K.dim
    if d == 1:
        V = np.array([[1.0], [-1.0]])
        t = _t_many(K, V, x)
        k = int(np.argmax(t))
        return AlphaResult(float(t[k]), V[k], "sphere_opt")
    if d == 2:
        cand = []
        N = _width_normals_2d(K)
        if N is not None:
            cand = np.arctan2(N[:, 1], N[:, 0]) % (2 * np.pi)
        theta, val = angle_maximize(lambda th: _t_many(K, angles_to_dirs(th), x),
                                    2 * np.pi, cand, cfg)
        return AlphaResult(float(val), angles_to_dirs([theta])[0], "sphere_opt")

    def f(v):
        return float(_t_many(K, v[None, :], x)[0])

    def grad(v):
        hp, p = K.support_point(v)
        hm, q = K.support_point(-v)
        N = 2 * (v @ x) - hp + hm
        W = hp + hm
        return ((2 * x - p - q) * W - N * (p - q)) / (W * W)

    rep = K.h_rep()
    structured = [] if rep is None else np.vstack([rep[0], -rep[0]])
    starts = sphere_starts(d, cfg, structured)
    v, val, conv = sphere_ascent(f, grad, starts, cfg)
    return AlphaResult(float(val), v, "sphere_opt", conv)


def _chord_asym_many(K, x, U):
    out = np.empty(U.shape[0])
    for i, u in enumerate(U):
        rp = K.exit_distance(x, u)
        rm = K.exit_distance(x, -u)
        out[i] = abs(rp - rm) / (rp + rm)
    return out


def _gamma_search(K, x, cfg):
    """Maximize chord asymmetry over lines through interior ``x``.

    Returns ``(asymmetry, u, converged)``.
    """
    d = K.dim
    if d == 1:
        u = np.array([1.0])
        return float(_chord_asym_many(K, x, u[None, :])[0]), u, True
    if d == 2:
        cand = []
        verts = K.vertex_array()
        if verts is not None and not isinstance(K, Ball):
            D = verts - x
            cand = np.arctan2(D[:, 1], D[:, 0]) % np.pi
        theta, val = angle_maximize(lambda th: _chord_asym_many(K, x, angles_to_dirs(th)),
                                    np.pi, cand, cfg)
        return float(val), angles_to_dirs([theta])[0], True

    def f(u):
        return float(_chord_asym_many(K, x, u[None, :])[0])

    def grad(u, h=1e-7):
        g = np.zeros(d)
        for j in range(d):
            e = np.zeros(d)
            e[j] = h
            g[j] = (f((u + e) / np.linalg.norm(u + e)) - f((u - e) / np.linalg.norm(u - e))) / (2 * h)
        return g

    verts = K.vertex_array()
    structured = [] if verts is None else [verts - x]
    rays = _chord_breakpoint_rays(K, x)
    if rays is not None:
        structured.append(rays)
    structured = np.vstack(structured) if structured else []
    starts = sphere_starts(d, cfg, structured)
    u, val, conv = sphere_ascent(f, grad, starts, cfg,
                                 keep=max(8, min(len(starts), 16)))
    return float(val), u, conv


def _chord_breakpoint_rays(K, x, limit=20000):
    """Extreme rays of the cones on which the chord asymmetry is a ratio of
    linear forms (H-polytopes).  On every such cone the asymmetry is
    quasi-linear, so its maximum is attained on one of these rays.
    """
    rep = K.h_rep()
    if rep is None:
        return None
    N, c = rep
    delta = c - N @ x
    d = K.dim
    planes = np.array([delta[k] * N[i] - delta[i] * N[k]
                       for i, k in itertools.combinations(range(len(c)), 2)])
    if math.comb(len(planes), d - 1) > limit:
        return None
    rays = []
    for idx in itertools.combinations(range(len(planes)), d - 1):
        P = planes[list(idx)]
        _, s, vt = np.linalg.svd(P)
        if s[-1] < 1e-12 * max(1.0, s[0]):
            continue
        r = vt[-1]
        rays += [r, -r]
    return np.array(rays) if rays else None


def alpha(K: ConvexBody, x, method: str | None = None, config=None) -> AlphaResult:
    """Generalized Minkowski functional with a maximizing direction.

    ``method=None`` picks the closed form when one applies and the sphere
    optimization otherwise.  ``gamma_route`` needs ``x`` interior; its witness
    is then recovered as the better of the two support normals at the chord
    endpoints.
    """
    cfg = resolve(config)
    x = as_vector(x, K.dim)
    if method not in (None, "closed_form", "sphere_opt", "gamma_route"):
        raise ValueError(f"unknown alpha method {method!r}")
    if method in (None, "closed_form"):
        res = _alpha_closed_form(K, x)
        if res is not None:
            return res
        if method == "closed_form":
            raise DomainError(f"no closed form for alpha on {K.kind} at this point")
    if method == "gamma_route":
        if K.margin(x) <= cfg.contain_tol:
            raise DomainError("gamma route requires an interior point")
        val, u, conv = _gamma_search(K, x, cfg)
        rp, rm = K.exit_distance(x, u), K.exit_distance(x, -u)
        w = _exit_normal(K, x, u if rp < rm else -u, cfg)
        return AlphaResult(val, w, "gamma_route", conv)
    res = _alpha_sphere(K, x, cfg)
    if not res.converged:
        raise NumericalError("alpha sphere optimization did not converge")
    return res


def _exit_normal(K, x, u, cfg):
    """Best supporting direction at the exit point of the ray ``x + s*u``."""
    if K.dim == 2:
        N = _width_normals_2d(K)
        if N is not None:
            t = _t_many(K, N, x)
            return N[int(np.argmax(t))]
    return _alpha_sphere(K, x, cfg).witness


def gamma(K: ConvexBody, x, config=None) -> float:
    """``inf`` over lines through ``x`` of ``2 sqrt(rho- rho+) / (rho- + rho+)``.

    Boundary points give 0; exterior points are rejected.
    """
    cfg = resolve(config)
    x = as_vector(x, K.dim)
    m = K.margin(x)
    if m <= cfg.contain_tol:
        if K.contains(x, cfg.contain_tol):
            return 0.0
        raise DomainError("gamma requires a point of the body")
    _, u, _ = _gamma_search(K, x, cfg)
    ch = ray_chord(K, x, u, cfg.contain_tol)
    return 2 * math.sqrt(ch.rho_minus * ch.rho_plus) / (ch.rho_minus + ch.rho_plus)


def in_Klambda(K: ConvexBody, x, lam: float, config=None) -> bool:
    """Membership in the level set ``{alpha <= lam}`` (tolerance ``alpha_tol``)."""
    cfg = resolve(config)
    if lam < 0:
        raise DomainError("lam must be non-negative")
    return alpha(K, x, config=cfg).alpha <= lam + cfg.alpha_tol
