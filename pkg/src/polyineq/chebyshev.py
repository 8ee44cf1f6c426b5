"""Chebyshev polynomials and the closed-form growth, Markov and Schur constants.

``T_n`` is evaluated through its trigonometric representation: ``cos(n acos x)``
on ``[-1, 1]`` and ``sign(x)^n cosh(n acosh|x|)`` outside.  The outer branch
works with ``acosh`` in the form ``log1p(u + sqrt(u (u + 2)))``, ``u = |x| - 1``,
which keeps full relative precision near ``|x| = 1``.  Values beyond the
double range are reported as signed infinity; :func:`cheb_log_abs` gives the
logarithm in that regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as npcheb

from .bodies import ConvexBody, as_vector
from .config import resolve
from .errors import DomainError
from .geometry import alpha, maximal_chord, minimal_width

LOG_MAX = math.log(np.finfo(float).max)


def _check_degree(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree must be a non-negative integer, got {n!r}")
    return int(n)


def stable_acosh(x: float) -> float:
    """``acosh(x)`` for ``x >= 1`` without cancellation near 1."""
    u = x - 1.0
    return math.log1p(u + math.sqrt(u * (u + 2.0)))


def cheb_log_abs(n: int, x: float) -> float:
    """``log |T_n(x)|`` for ``|x| >= 1``, finite for every double ``x``."""
    n = _check_degree(n)
    ax = abs(float(x))
    if ax < 1:
        raise DomainError("cheb_log_abs is defined for |x| >= 1")
    L = n * stable_acosh(ax)
    # log cosh(L) = L + log1p(exp(-2L)) - log 2
    return L + math.log1p(math.exp(-2 * L)) - math.log(2.0)


def cheb_eval(n: int, x: float) -> float:
    """``T_n(x)`` by the cosine / hyperbolic-cosine representation."""
    n = _check_degree(n)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    if abs(x) <= 1.0:
        return math.cos(n * math.acos(x))
    sign = -1.0 if (x < 0 and n % 2) else 1.0
    log_val = cheb_log_abs(n, x)
    if log_val > LOG_MAX:
        return sign * math.inf
    return sign * math.cosh(n * stable_acosh(abs(x)))


def cheb_product(n: int, x: float) -> float:
    """``T_n(x) = 2^(n-1) prod_k (x - cos((2k-1) pi / 2n))`` (``n >= 1``)."""
    n = _check_degree(n)
    if n == 0:
        return 1.0
    k = np.arange(1, n + 1)
    roots = np.cos((2 * k - 1) * np.pi / (2 * n))
    return float(2.0 ** (n - 1) * np.prod(float(x) - roots))


def cheb_derivative(n: int, k: int, x: float) -> float:
    """``T_n^(k)(x)`` by differentiating the Chebyshev coefficient vector.

    Returns 0 for ``k > n``.
    """
    n = _check_degree(n)
    k = _check_degree(k)
    if k > n:
        return 0.0
    c = np.zeros(n + 1)
    c[n] = 1.0
    return float(npcheb.chebval(float(x), npcheb.chebder(c, k)))


def vmarkov_factor(n: int, k: int) -> float:
    """Sharp constant ``T_n^(k)(1)`` bounding ``|p^(k)|`` on ``[-1, 1]``."""
    n = _check_degree(n)
    k = _check_degree(k)
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n")
    return cheb_derivative(n, k, 1.0)


def endpoint_derivative_product(n: int, k: int, denominator: str = "double") -> float:
    """Closed-form product for ``T_n^(k)(1)``.

    ``prod_{j<k} (n^2 - j^2)`` divided by ``(2k-1)!!`` (``denominator="double"``,
    which equals ``T_n^(k)(1)``) or by ``(2k-1)!`` (``"single"``; this reading
    is off for ``k >= 2``, e.g. gives 12 instead of 24 for ``n=3, k=2``).
    """
    n = _check_degree(n)
    k = _check_degree(k)
    num = 1
    for j in range(k):
        num *= n * n - j * j
    if denominator == "double":
        den = math.prod(range(1, 2 * k, 2))
    elif denominator == "single":
        den = math.factorial(2 * k - 1)
    else:
        raise ValueError("denominator must be 'double' or 'single'")
    return num / den


# ---------------------------------------------------------------------------
# growth constants


def cheb_growth(K: ConvexBody, x, n: int, config=None) -> float:
    """Largest value at ``x`` of a degree-``n`` polynomial bounded by 1 on ``K``."""
    n = _check_degree(n)
    a = alpha(K, x, config=config).alpha
    if a <= 1 + 1e-12:
        return 1.0
    return cheb_eval(n, a)


@dataclass(frozen=True)
class RidgePolynomial:
    """``p(x) = T_n(t(K, v, x))`` -- a Chebyshev polynomial along one direction."""

    n: int
    v: np.ndarray
    body: ConvexBody

    def __post_init__(self):
        hp = self.body.support_point(self.v)[0]
        hm = self.body.support_point(-self.v)[0]
        object.__setattr__(self, "_hp", hp)
        object.__setattr__(self, "_hm", hm)

    def layer(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return (2 * (X @ self.v) - self._hp + self._hm) / (self._hp + self._hm)

    def __call__(self, x) -> float:
        return cheb_eval(self.n, float(self.layer(as_vector(x, self.body.dim))[0]))

    def evaluate_many(self, X) -> np.ndarray:
        c = np.zeros(self.n + 1)
        c[self.n] = 1.0
        return npcheb.chebval(self.layer(X), c)


def extremal_ridge(K: ConvexBody, x, n: int, config=None) -> RidgePolynomial:
    """The ridge polynomial attaining the growth constant at an exterior ``x``."""
    n = _check_degree(n)
    res = alpha(K, x, config=config)
    if res.alpha <= 1 + 1e-12:
        raise DomainError("extremal_ridge needs a point outside the body")
    return RidgePolynomial(n, np.asarray(res.witness, dtype=float), K)


def homogeneous_growth(K: ConvexBody, v, n: int) -> float:
    """Largest value at ``v`` of the top-degree part: ``2^(2n-1) / tau(K, v)^n``."""
    n = _check_degree(n)
    if n < 1:
        raise DomainError("homogeneous growth needs n >= 1")
    tau = maximal_chord(K, v)
    return math.ldexp(1.0, 2 * n - 1) / tau ** n


def extremal_value_real(K: ConvexBody, x, config=None) -> float:
    """Real-point value of the logarithmic extremal function:
    ``log(alpha + sqrt(alpha^2 - 1))`` outside ``K`` and 0 on ``K``.
    """
    a = alpha(K, x, config=config).alpha
    if a <= 1:
        return 0.0
    return stable_acosh(a)


# ---------------------------------------------------------------------------
# Markov-type constants


def _cot_quarter(n: int) -> float:
    # cot(pi/4n) through the half-angle form (1 + cos t)/sin t, t = pi/2n:
    # no cancellation, and exactly 1.0 at n = 1
    t = math.pi / (2 * n)
    return (1 + math.cos(t)) / math.sin(t)


def markov_bound(kind: str, n: int, *, a=None, b=None, body=None, width=None,
                 config=None) -> float:
    """Uniform gradient bound factors.

    ``interval``: ``2n^2/(b-a)``; ``symmetric``: ``2n^2/w``; ``unit_ball``:
    ``n^2``; ``general``: ``2n cot(pi/4n)/w``.  For the width-based kinds
    pass either ``body`` (its minimal width is used) or ``width`` directly.
    """
    n = _check_degree(n)
    if n < 1:
        raise DomainError("Markov factors need n >= 1")
    if kind == "interval":
        if a is None or b is None or not float(a) < float(b):
            raise DomainError("interval Markov bound needs a < b")
        return 2 * n * n / (float(b) - float(a))
    if kind == "unit_ball":
        return float(n * n)
    if kind not in ("symmetric", "general"):
        raise DomainError(f"unknown Markov kind {kind!r}")
    if (body is None) == (width is None):
        raise DomainError(f"{kind} Markov bound needs exactly one of body or width")
    w = minimal_width(body, resolve(config)) if body is not None else float(width)
    if not w > 0:
        raise DomainError("width must be positive")
    if kind == "symmetric":
        return 2 * n * n / w
    return 2 * n * _cot_quarter(n) / w


__all__ = [
    "RidgePolynomial", "cheb_derivative", "cheb_eval", "cheb_growth", "cheb_log_abs",
    "cheb_product", "endpoint_derivative_product", "extremal_ridge",
    "extremal_value_real", "homogeneous_growth", "markov_bound", "stable_acosh",
    "vmarkov_factor",
]
