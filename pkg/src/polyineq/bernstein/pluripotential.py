"""Extremal function of the standard simplex and its normal derivative.

Complex points are ``(real part, imaginary part)`` vector pairs.  The simplex
extremal function is ``acosh(s)`` with ``s = sum|z_j| + |1 - sum z_j|``
(``h(t) = t + sqrt(t^2 - 1)`` composed with ``log``).  Near real points of the
simplex ``s - 1`` is tiny, so it is assembled term by term without forming
``s`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..config import resolve
from ..errors import DomainError
from .ellipse import best_ellipse_simplex


def _modulus_excess(re, im):
    """``|re + i im| - |re|`` without cancellation (elementwise)."""
    mod = np.hypot(re, im)
    den = mod + np.abs(re)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den > 0, im * im / den, 0.0)
    return out


def _excess(z_re, z_im):
    """``s - 1`` for the simplex modulus sum ``s``."""
    w_re = 1.0 - z_re.sum()
    w_im = -z_im.sum()
    real_part = 2 * np.maximum(-z_re, 0.0).sum() + 2 * max(-w_re, 0.0)
    imag_part = _modulus_excess(z_re, z_im).sum() + float(_modulus_excess(
        np.array([w_re]), np.array([w_im]))[0])
    return float(real_part + imag_part)


def baran_simplex_V(z_re, z_im) -> float:
    """Extremal function of the standard simplex at ``z = z_re + i z_im``."""
    z_re = np.asarray(z_re, dtype=float).ravel()
    z_im = np.asarray(z_im, dtype=float).ravel()
    if z_re.size == 0 or z_re.size != z_im.size:
        raise DomainError("real and imaginary parts must have the same positive length")
    if not (np.isfinite(z_re).all() and np.isfinite(z_im).all()):
        raise DomainError("complex point must be finite")
    u = _excess(z_re, z_im)
    assert u >= 0, "modulus sum below 1"
    return math.log1p(u + math.sqrt(u * (u + 2.0)))


@dataclass(frozen=True)
class NormalDerivative:
    value: float
    error: float
    monotone: bool
    eps: tuple
    quotients: tuple


def baran_normal_derivative(x, y, config=None) -> NormalDerivative:
    """``lim V(x + i eps y) / eps`` by a geometric eps-sweep and Richardson
    extrapolation in ``eps^2`` (the quotient is even in ``eps``).

    ``y`` need not be unit; the result is homogeneous of degree one in ``y``.
    ``monotone`` reports whether the sweep quotients moved in one direction.
    """
    cfg = resolve(config)
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise DomainError("dimension mismatch")
    if (x <= 0).any() or x.sum() >= 1:
        raise DomainError("point must lie strictly inside the standard simplex")
    if not np.any(y):
        raise DomainError("zero direction")
    eps = np.geomspace(cfg.eps_max, cfg.eps_min, cfg.eps_count)
    q = np.array([baran_simplex_V(x, e * y) / e for e in eps])
    e2 = eps * eps
    rich = (q[1:] * e2[:-1] - q[:-1] * e2[1:]) / (e2[:-1] - e2[1:])
    diffs = np.diff(q)
    monotone = bool((diffs >= -1e-15 * abs(q[0])).all() or (diffs <= 1e-15 * abs(q[0])).all())
    value = float(rich[-1])
    error = float(max(abs(rich[-1] - rich[-2]), abs(q[-1] - value)))
    return NormalDerivative(value, error, monotone, tuple(eps.tolist()), tuple(q.tolist()))


def hypothesis_gap(x, y, config=None) -> float:
    """``|D_y V(x) * E(simplex, x, y) - 1|`` -- zero when the pluripotential and
    inscribed-ellipse factors coincide."""
    nd = baran_normal_derivative(x, y, config)
    return abs(nd.value * best_ellipse_simplex(x, y) - 1.0)
