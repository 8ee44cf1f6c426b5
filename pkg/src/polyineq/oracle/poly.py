"""Multivariate polynomials in the monomial basis.

Monomials of total degree ``<= n`` are ordered graded-lexicographically:
ascending total degree, and within one degree the exponent tuples in
descending lexicographic order (so ``x1^2`` precedes ``x1*x2`` precedes
``x2^2``).  In one variable this is simply ``1, x, x^2, ...``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def monomial_exponents(dim: int, degree: int) -> np.ndarray:
    """Exponent matrix of shape ``(C(degree+dim, dim), dim)``."""
    if dim < 1 or degree < 0:
        raise ValueError("need dim >= 1 and degree >= 0")

    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    rows = [e for k in range(degree + 1) for e in compositions(k, dim)]
    out = np.array(rows, dtype=int).reshape(-1, dim)
    assert out.shape[0] == comb(degree + dim, dim)
    out.setflags(write=False)
    return out


def _powers(P: np.ndarray, degree: int) -> np.ndarray:
    """``pw[k, i, j] = P[i, j]**k`` for ``k = 0..degree``."""
    pw = np.ones((degree + 1,) + P.shape)
    for k in range(1, degree + 1):
        pw[k] = pw[k - 1] * P
    return pw


def eval_matrix(points, degree: int) -> np.ndarray:
    """Row ``i`` holds every monomial evaluated at ``points[i]``."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    E = monomial_exponents(P.shape[1], degree)
    pw = _powers(P, degree)
    out = np.ones((P.shape[0], E.shape[0]))
    for j in range(P.shape[1]):
        out *= pw[E[:, j], :, j].T
    return out


def gradient_matrix(point, degree: int) -> np.ndarray:
    """``G[j, m]`` is the ``x_j``-derivative of monomial ``m`` at ``point``."""
    x = np.asarray(point, dtype=float).ravel()
    d = x.size
    E = monomial_exponents(d, degree)
    pw = _powers(x[None, :], degree)[:, 0, :]
    G = np.zeros((d, E.shape[0]))
    for j in range(d):
        col = E[:, j].astype(float)
        term = col * pw[np.maximum(E[:, j] - 1, 0), j]
        for i in range(d):
            if i != j:
                term = term * pw[E[:, i], i]
        G[j] = term
    return G


class MultiPoly:
    """A real polynomial ``sum_m coeffs[m] * x**E[m]`` of total degree ``<= degree``."""

    def __init__(self, dim: int, degree: int, coeffs):
        self.dim = int(dim)
        self.degree = int(degree)
        self.exponents = monomial_exponents(self.dim, self.degree)
        c = np.asarray(coeffs, dtype=float).ravel()
        if c.size != self.exponents.shape[0]:
            raise ValueError(
                f"expected {self.exponents.shape[0]} coefficients for dim={dim}, "
                f"degree={degree}, got {c.size}")
        self.coeffs = c
        self.coeffs.setflags(write=False)

    @classmethod
    def from_univariate(cls, coeffs) -> "MultiPoly":
        c = np.asarray(coeffs, dtype=float).ravel()
        return cls(1, c.size - 1, c)

    def __call__(self, x) -> float | np.ndarray:
        X = np.asarray(x, dtype=float)
        if X.ndim <= 1:
            return float((eval_matrix(X.reshape(1, -1), self.degree) @ self.coeffs)[0])
        return eval_matrix(X, self.degree) @ self.coeffs

    def gradient(self, x) -> np.ndarray:
        return gradient_matrix(x, self.degree) @ self.coeffs

    def homogeneous_part(self, k: int | None = None) -> "MultiPoly":
        """The degree-``k`` homogeneous component (default: top degree)."""
        k = self.degree if k is None else k
        mask = self.exponents.sum(axis=1) == k
        return MultiPoly(self.dim, self.degree, np.where(mask, self.coeffs, 0.0))

    def __repr__(self):
        return f"MultiPoly(dim={self.dim}, degree={self.degree}, coeffs={self.coeffs.tolist()})"
