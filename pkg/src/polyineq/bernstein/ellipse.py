"""Inscribed ellipses through a point, tangent to a direction.

An ellipse ``r(t) = cos(t) a + b sin(t) y + (x - a)`` passes through ``x`` with
velocity ``b*y`` at ``t = 0``.  Against a facet ``<n, z> <= c`` its extent is
``sup_t <n, r(t)> = <n, x - a> + sqrt(<n,a>^2 + b^2 <n,y>^2)``, so containment
in an H-polytope is a finite list of closed-form conditions.  Writing
``delta = c - <n, x> > 0`` each condition is equivalent to

    b^2 <n, y>^2 <= delta (delta + 2 <n, a>),

which is *linear* in ``(a, b^2)``.  The best constant ``E(K, x, y)`` is
therefore the square root of a linear program's optimum; the LP witness is
then polished (exact best ``b`` for that ``a``) and re-certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..bodies import Ball, ConvexBody, StandardSimplex, as_vector
from ..config import resolve
from ..errors import DomainError, NumericalError
from ..geometry import angle_maximize, angles_to_dirs, golden_max, sphere_ascent, sphere_starts, unit_direction
from ..oracle.lp import lp_solve


@dataclass(frozen=True)
class InscribedEllipse:
    x: np.ndarray
    a: np.ndarray
    y: np.ndarray
    b: float

    @property
    def center(self) -> np.ndarray:
        return self.x - self.a

    def point(self, t):
        """Points ``r(t)`` for scalar or array ``t``."""
        t = np.asarray(t, dtype=float)
        pts = (np.cos(t)[..., None] * self.a + self.b * np.sin(t)[..., None] * self.y
               + self.center)
        return pts


@dataclass(frozen=True)
class EllipseResult:
    E: float
    ellipse: InscribedEllipse
    iterations: int
    certified: bool


@lru_cache(maxsize=32)
def _disc_cuts(center: tuple, radius: float, cuts: int):
    # polygon with vertices on the circle: contained in the disc, so ellipses
    # inside it are inside the disc and E is approached from below
    th = 2 * np.pi * (np.arange(cuts) + 0.5) / cuts
    N = np.column_stack([np.cos(th), np.sin(th)])
    c = N @ np.asarray(center) + radius * math.cos(math.pi / cuts)
    N.setflags(write=False)
    c.setflags(write=False)
    return N, c


def ellipse_hrep(K: ConvexBody, config=None):
    """H-representation used for ellipse problems (discs are approximated)."""
    cfg = resolve(config)
    if isinstance(K, Ball):
        if K.dim == 1:
            return np.array([[-1.0], [1.0]]), np.array([K.radius - K.center[0],
                                                        K.radius + K.center[0]])
        if K.dim != 2:
            raise DomainError("ellipse problems on balls are supported in the plane only")
        return _disc_cuts(tuple(K.center.tolist()), K.radius, cfg.disc_cuts)
    rep = K.h_rep()
    if rep is None:
        raise DomainError(f"ellipse problems need an H-representation; {K.kind} has none")
    return rep


def ellipse_in_body(K: ConvexBody, e: InscribedEllipse, tol: float = 1e-9) -> bool:
    """Exact containment test of the whole ellipse via facet amplitudes."""
    rep = K.h_rep()
    if rep is None:
        raise DomainError(f"ellipse_in_body needs an H-representation; {K.kind} has none")
    N, c = rep
    amp = np.hypot(N @ e.a, e.b * (N @ e.y))
    return bool((N @ e.center + amp <= c + tol).all())


def _best_b(N, c, x, a, y, tol=1e-9):
    """Largest ``b`` for which the ellipse with axis ``a`` fits the facets.

    Facets (numerically) parallel to ``y`` do not limit ``b``; for them only
    the sign of ``delta + 2 <n, a>`` matters, checked to ``tol``.
    """
    delta = c - N @ x
    u = N @ a
    w = N @ y
    w = np.where(np.abs(w) < 1e-14, 0.0, w)
    cap = delta * (delta + 2 * u)
    hit = w != 0
    if (cap[~hit] < -tol * delta[~hit] ** 2).any():
        return 0.0
    if not hit.any():
        return math.inf
    return float((np.sqrt(np.maximum(cap[hit], 0.0)) / np.abs(w[hit])).min())


def best_ellipse(K: ConvexBody, x, y, config=None) -> EllipseResult:
    """``E(K, x, y)``: the largest tangent scale of an inscribed ellipse."""
    cfg = resolve(config)
    x = as_vector(x, K.dim)
    y = unit_direction(y, K.dim, cfg.unit_tol)
    N, c = ellipse_hrep(K, cfg)
    delta = c - N @ x
    if (delta <= cfg.contain_tol).any():
        raise DomainError("best_ellipse needs a strictly interior point")
    w = N @ y
    w = np.where(np.abs(w) < 1e-14, 0.0, w)
    d = K.dim
    # variables (a_1..a_d, beta):  -2 <n,a> + beta w^2 / delta <= delta
    A = np.hstack([-2 * N, (w * w / delta)[:, None]])
    cost = np.zeros(d + 1)
    cost[-1] = 1.0
    sol = lp_solve(A, delta, cost, tol=cfg.lp_tol, max_iter=cfg.lp_max_iter)
    if not sol.ok:
        raise NumericalError(f"ellipse LP ended with status {sol.status}")
    a = sol.primal[:d]
    # b(t a) is concave in t (a minimum of square roots of affine functions),
    # so a golden search along the segment [0, a] absorbs LP rounding, which
    # otherwise can zero b on facets nearly parallel to y
    b = _best_b(N, c, x, a, y, cfg.ellipse_cert_tol)
    beta = sol.primal[d]
    if math.isfinite(b) and b * b < beta * (1 - 1e-9):
        t, bt = golden_max(lambda s: _best_b(N, c, x, s * a, y, cfg.ellipse_cert_tol),
                           0.0, 1.0, tol=1e-12)
        if bt > b:
            a, b = t * a, bt
    if not math.isfinite(b):
        raise NumericalError("ellipse problem is unbounded")
    ell = InscribedEllipse(x, a, y, b)
    # certify against the representation actually used
    amp = np.hypot(N @ a, b * w)
    certified = bool((N @ ell.center + amp <= c + cfg.ellipse_cert_tol).all())
    return EllipseResult(b, ell, sol.iterations, certified)


def _simplex_interior(x, d):
    x = as_vector(x, d)
    last = 1.0 - float(x.sum())
    if (x <= 0).any() or last <= 0:
        raise DomainError("point must lie strictly inside the standard simplex")
    return x, last


def best_ellipse_simplex(x, y) -> float:
    """Closed form of ``E(simplex, x, y)``."""
    xv = as_vector(x)
    x, last = _simplex_interior(xv, xv.size)
    y = unit_direction(y, x.size)
    q = float((y * y / x).sum() + y.sum() ** 2 / last)
    return 1.0 / math.sqrt(q)


def best_ellipse_symmetric(K: ConvexBody, x, y, center=None) -> float:
    """Tangent scale ``sqrt(1 - phi(x - c)^2) / phi(y)`` of the centred ellipse
    ``c + cos(t)(x - c) + b sin(t) y`` for a body symmetric about ``c``.

    This ellipse always fits; it is the best one when ``x = c`` or ``y`` is a
    direction of maximal gauge, but in general ``E(K, x, y)`` can be larger.
    """
    c = K.symmetric_center if center is None else as_vector(center, K.dim)
    if c is None:
        raise DomainError(f"{K.kind} has no known centre of symmetry; pass center=")
    x = as_vector(x, K.dim)
    y = as_vector(y, K.dim, name="direction")
    ny = float(np.linalg.norm(y))
    if ny == 0:
        raise DomainError("zero direction")
    r = x - c
    nr = float(np.linalg.norm(r))
    phi_x = 0.0 if nr == 0 else nr / K.exit_distance(c, r / nr)
    if phi_x >= 1:
        raise DomainError("x must lie in the interior of the body")
    phi_y = ny / K.exit_distance(c, y / ny)
    return math.sqrt(1 - phi_x * phi_x) / phi_y


def worst_direction_E(K: ConvexBody, x, config=None):
    """``E(K, x) = min over unit y of E(K, x, y)``; returns ``(E, y)``."""
    cfg = resolve(config)
    x = as_vector(x, K.dim)
    d = K.dim
    if d == 1:
        y = np.array([1.0])
        return best_ellipse(K, x, y, cfg).E, y

    def E_of(V):
        return np.array([best_ellipse(K, x, v, cfg).E for v in V])

    if d == 2:
        # E(x, y) = E(x, -y): half a turn suffices
        theta, val = angle_maximize(lambda th: -E_of(angles_to_dirs(th)), np.pi, (), cfg)
        return -val, angles_to_dirs([theta])[0]

    def f(v):
        return -float(E_of(v[None, :])[0])

    def grad(v, h=1e-6):
        g = np.zeros(d)
        for j in range(d):
            e = np.zeros(d)
            e[j] = h
            vp = (v + e) / np.linalg.norm(v + e)
            vm = (v - e) / np.linalg.norm(v - e)
            g[j] = (f(vp) - f(vm)) / (2 * h)
        return g

    cfg_small = cfg.replace(n_starts=min(cfg.n_starts, 16))
    v, val, _ = sphere_ascent(f, grad, sphere_starts(d, cfg_small), cfg_small, keep=4)
    return -val, v


def milev_E(x) -> float:
    """Closed-form gradient factor on the triangle (equal to ``1/E(simplex, x)``)."""
    xv = as_vector(x, 2)
    x, last = _simplex_interior(xv, 2)
    x1, x2 = x
    s = x1 * (1 - x1) + x2 * (1 - x2)
    p = x1 * x2 * last
    D = math.sqrt(s * s - 4 * p)
    return math.sqrt((s + D) / (2 * p))
