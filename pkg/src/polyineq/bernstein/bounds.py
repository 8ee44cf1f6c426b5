"""Bernstein-type factor family and the ridge constant."""

from __future__ import annotations

import math

import numpy as np

from ..bodies import ConvexBody, StandardSimplex, as_vector
from ..config import resolve
from ..errors import DomainError
from ..geometry import (_width_normals_2d, alpha, angle_maximize, angles_to_dirs,
                        maximal_chord, minimal_width, sphere_ascent, sphere_starts,
                        unit_direction)
from .ellipse import best_ellipse, best_ellipse_simplex

BOUND_KINDS = ("ellipse", "kroo_revesz_dir", "kroo_revesz_grad", "conjecture")


def _interior_alpha(K, x, cfg):
    a = alpha(K, x, config=cfg).alpha
    if a >= 1:
        raise DomainError("Bernstein factors need an interior point (alpha < 1)")
    return a


def ellipse_constant(K: ConvexBody, x, y, config=None) -> float:
    """``E(K, x, y)``: closed form on the standard simplex, LP otherwise."""
    if isinstance(K, StandardSimplex):
        return best_ellipse_simplex(x, y)
    return best_ellipse(K, x, y, config).E


def bernstein_bound(kind: str, n: int, K: ConvexBody, x, y=None, config=None):
    """Factor multiplying ``sqrt(||p||^2 - p(x)^2)`` in a derivative bound.

    ``ellipse``          n / E(K, x, y)
    ``kroo_revesz_dir``  2n / (tau(K, y) sqrt(1 - alpha))
    ``kroo_revesz_grad`` (2n / (w sqrt(1 - alpha)), 2 sqrt(2) n / (w sqrt(1 - alpha^2)))
    ``conjecture``       2n / (w sqrt(1 - alpha^2))

    with ``w`` the minimal width.  The directional kinds need a unit ``y``.
    """
    cfg = resolve(config)
    if kind not in BOUND_KINDS:
        raise DomainError(f"unknown bound kind {kind!r}")
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError("degree must be a positive integer")
    x = as_vector(x, K.dim)
    a = _interior_alpha(K, x, cfg)
    if kind in ("ellipse", "kroo_revesz_dir"):
        if y is None:
            raise DomainError(f"{kind} bound needs a direction y")
        y = unit_direction(y, K.dim, cfg.unit_tol)
    if kind == "ellipse":
        return n / ellipse_constant(K, x, y, cfg)
    if kind == "kroo_revesz_dir":
        return 2 * n / (maximal_chord(K, y) * math.sqrt(1 - a))
    w = minimal_width(K, cfg)
    if kind == "kroo_revesz_grad":
        return (2 * n / (w * math.sqrt(1 - a)),
                2 * math.sqrt(2) * n / (w * math.sqrt(1 - a * a)))
    return 2 * n / (w * math.sqrt(1 - a * a))


def _ridge_many(K, V, x, y):
    hp = K.support_many(V)
    hm = K.support_many(-V)
    vx = V @ x
    prod = (hp - vx) * (vx + hm)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (V @ y) / np.sqrt(prod)
    return np.where(prod > 0, out, np.nan)


def ridge_constant(K: ConvexBody, x, y, config=None) -> float:
    """Ridge Bernstein constant (degree-independent).

    ``sup over unit v of <v, y> / sqrt((h(v) - <v,x>)(<v,x> + h(-v)))``, which
    equals ``2<v,y> / (w(K,v) sqrt(1 - t(K,v,x)^2))`` -- the normalized
    directional derivative of ``T_n(t(K, v, .))`` at ``x``, the same for every
    degree ``n``.
    """
    cfg = resolve(config)
    x = as_vector(x, K.dim)
    y = unit_direction(y, K.dim, cfg.unit_tol)
    if K.margin(x) <= cfg.contain_tol:
        raise DomainError("ridge_constant needs an interior point")
    d = K.dim
    if d == 1:
        return float(np.nanmax(np.abs(_ridge_many(K, np.array([[1.0]]), x, y))))
    if d == 2:
        cand = []
        N = _width_normals_2d(K)
        if N is not None:
            cand = np.arctan2(N[:, 1], N[:, 0]) % (2 * np.pi)
        _, val = angle_maximize(lambda th: _ridge_many(K, angles_to_dirs(th), x, y),
                                2 * np.pi, cand, cfg)
        return float(val)

    def f(v):
        r = float(_ridge_many(K, v[None, :], x, y)[0])
        return -math.inf if math.isnan(r) else r

    def grad(v, h=1e-7):
        g = np.zeros(d)
        for j in range(d):
            e = np.zeros(d)
            e[j] = h
            g[j] = (f((v + e) / np.linalg.norm(v + e)) - f((v - e) / np.linalg.norm(v - e))) / (2 * h)
        return np.nan_to_num(g)

    rep = K.h_rep()
    structured = [y] if rep is None else np.vstack([rep[0], -rep[0], y])
    _, val, _ = sphere_ascent(f, grad, sphere_starts(d, cfg, structured), cfg)
    return float(val)
