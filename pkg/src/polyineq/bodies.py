"""Concrete convex bodies, membership and chord queries, symmetrization, I/O.

All bodies are immutable.  Points and directions are plain numpy vectors and
dual functionals are identified with Euclidean vectors throughout.

Exact V<->H conversion is only provided in the plane (``d == 2``); in higher
dimension polytopes answer queries through small linear programs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BodyError, DomainError, NumericalError
from .oracle.lp import lp_solve

DEFAULT_TOL = 1e-9
# vertex enumeration of H-polytopes in d >= 3 is used only below this many
# facet subsets; beyond it queries fall back to linear programming
VERTEX_ENUM_LIMIT = 5000


def as_vector(x, dim: int | None = None, name: str = "point") -> np.ndarray:
    v = np.asarray(x, dtype=float).ravel()
    if v.size == 0 or not np.isfinite(v).all():
        raise DomainError(f"{name} must be a non-empty finite vector")
    if dim is not None and v.size != dim:
        raise DomainError(f"{name} has dimension {v.size}, body has dimension {dim}")
    return v


def _lp_or_fail(sol, what):
    if not sol.ok:
        raise NumericalError(f"LP for {what} ended with status {sol.status}")
    return sol


class ConvexBody:
    """Common interface.  Subclasses implement the underscored primitives."""

    dim: int
    kind: str = "body"
    symmetric_center: np.ndarray | None = None

    # -- primitives -------------------------------------------------------
    def support_point(self, v: np.ndarray) -> tuple[float, np.ndarray]:
        raise NotImplementedError

    def support_many(self, V: np.ndarray) -> np.ndarray:
        return np.array([self.support_point(v)[0] for v in V])

    def contains(self, x: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        raise NotImplementedError

    def margin(self, x: np.ndarray) -> float:
        """Positive iff ``x`` is interior; for polytopes the facet slack."""
        raise NotImplementedError

    def exit_distance(self, x: np.ndarray, u: np.ndarray) -> float:
        """Largest ``rho`` with ``x + rho*u`` in the body (``x`` interior)."""
        raise NotImplementedError

    def to_document(self) -> dict:
        raise NotImplementedError

    # -- optional representations ----------------------------------------
    def h_rep(self) -> tuple[np.ndarray, np.ndarray] | None:
        return None

    def vertex_array(self) -> np.ndarray | None:
        return None

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        eye = np.eye(self.dim)
        hi = np.array([self.support_point(e)[0] for e in eye])
        lo = -np.array([self.support_point(-e)[0] for e in eye])
        return lo, hi

    def __repr__(self):
        return f"{type(self).__name__}({json.dumps(self.to_document())})"


def _edge_hrep(vertices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit outward normals and offsets of a counter-clockwise polygon."""
    nxt = np.roll(vertices, -1, axis=0)
    edges = nxt - vertices
    normals = np.column_stack([edges[:, 1], -edges[:, 0]])
    normals /= np.linalg.norm(normals, axis=1)[:, None]
    offsets = np.einsum("ij,ij->i", normals, vertices)
    return normals, offsets


class _PolytopeMixin:
    """Shared H-representation based queries for polytopes."""

    def _hrep_contains(self, x, tol):
        N, c = self.h_rep()
        return bool((N @ x <= c + tol).all())

    def _hrep_margin(self, x):
        N, c = self.h_rep()
        return float((c - N @ x).min())

    def _hrep_exit(self, x, u):
        N, c = self.h_rep()
        speed = N @ u
        slack = c - N @ x
        hit = speed > 1e-15
        if not hit.any():
            raise BodyError("ray does not leave the body; body is unbounded")
        return float(np.min(np.maximum(slack[hit], 0.0) / speed[hit]))


class HPolytope(_PolytopeMixin, ConvexBody):
    """Intersection of half-spaces ``normals @ x <= offsets``.

    Normals are normalized on construction (offsets rescaled accordingly).
    """

    kind = "hpolytope"

    def __init__(self, normals, offsets, validate: bool = True):
        N = np.atleast_2d(np.asarray(normals, dtype=float))
        c = np.asarray(offsets, dtype=float).ravel()
        if N.shape[0] != c.size or N.size == 0:
            raise BodyError("normals and offsets must have matching lengths")
        if not (np.isfinite(N).all() and np.isfinite(c).all()):
            raise BodyError("H-polytope data must be finite")
        lengths = np.linalg.norm(N, axis=1)
        if (lengths == 0).any():
            raise BodyError("zero normal vector")
        # rows already unit to rounding are kept as given, so that a dumped
        # polytope reloads bit for bit
        lengths = np.where(np.abs(lengths - 1) <= 4e-16, 1.0, lengths)
        self.normals = N / lengths[:, None]
        self.offsets = c / lengths
        self.normals.setflags(write=False)
        self.offsets.setflags(write=False)
        self.dim = N.shape[1]
        if validate:
            self._validate()

    def _validate(self):
        m, d = self.normals.shape
        # Chebyshev-centre LP: max s with N x + s <= c
        A = np.hstack([self.normals, np.ones((m, 1))])
        cost = np.zeros(d + 1)
        cost[-1] = 1.0
        sol = lp_solve(A, self.offsets, cost)
        if sol.status == "infeasible":
            raise BodyError("H-polytope is empty")
        if sol.status == "unbounded":
            raise BodyError("H-polytope is unbounded")
        if sol.objective <= 1e-12:
            raise BodyError("H-polytope has empty interior")
        for e in np.vstack([np.eye(d), -np.eye(d)]):
            s = lp_solve(self.normals, self.offsets, e)
            if s.status == "unbounded":
                raise BodyError("H-polytope is unbounded")
        self.inner_point = sol.primal[:d]

    def h_rep(self):
        return self.normals, self.offsets

    @cached_property
    def _vertices(self) -> np.ndarray | None:
        """Exact vertex set when it is cheap to enumerate, else ``None``."""
        N, c = self.normals, self.offsets
        m, d = N.shape
        scale = max(1.0, float(np.abs(c).max()))
        if d == 1:
            lo = max(-c[i] / -N[i, 0] for i in range(m) if N[i, 0] < 0)
            hi = min(c[i] / N[i, 0] for i in range(m) if N[i, 0] > 0)
            return np.array([[lo], [hi]])
        if d == 2:
            return self._clip_polygon(N, c, scale)
        if math.comb(m, d) > VERTEX_ENUM_LIMIT:
            return None
        pts = []
        for idx in itertools.combinations(range(m), d):
            M = N[list(idx)]
            if abs(np.linalg.det(M)) < 1e-12:
                continue
            p = np.linalg.solve(M, c[list(idx)])
            if (N @ p <= c + 1e-10 * scale).all():
                pts.append(p)
        P = np.unique(np.round(np.array(pts), 12), axis=0) + 0.0
        return P

    @staticmethod
    def _clip_polygon(N, c, scale):
        # each boundary line n_i.x = c_i, parametrized x = p_i + s*e_i, is
        # clipped against all half-planes; surviving segment ends are vertices
        E = np.column_stack([-N[:, 1], N[:, 0]])
        P = N * c[:, None]
        pts = []
        for i in range(len(c)):
            a = N @ E[i]
            b = c - N @ P[i]
            lo, hi = -np.inf, np.inf
            par = np.abs(a) < 1e-14
            if (b[par] < -1e-10 * scale).any():
                continue
            pos, neg = a > 1e-14, a < -1e-14
            if pos.any():
                hi = float((b[pos] / a[pos]).min())
            if neg.any():
                lo = float((b[neg] / a[neg]).max())
            if lo <= hi + 1e-12 * scale:
                pts += [P[i] + lo * E[i], P[i] + hi * E[i]]
        return hull2d(pts).vertices

    def vertex_array(self):
        return self._vertices

    def support_point(self, v):
        verts = self._vertices
        if verts is not None:
            vals = verts @ v
            k = int(np.argmax(vals))
            return float(vals[k]), verts[k].copy()
        sol = _lp_or_fail(lp_solve(self.normals, self.offsets, v), "support")
        return sol.objective, sol.primal

    def support_many(self, V):
        verts = self._vertices
        if verts is not None:
            return (np.asarray(V) @ verts.T).max(axis=1)
        return super().support_many(V)

    def contains(self, x, tol=DEFAULT_TOL):
        return self._hrep_contains(x, tol)

    def margin(self, x):
        return self._hrep_margin(x)

    def exit_distance(self, x, u):
        return self._hrep_exit(x, u)

    def to_document(self):
        return {"type": "hpolytope", "normals": self.normals.tolist(),
                "offsets": self.offsets.tolist()}


class VPolytope(_PolytopeMixin, ConvexBody):
    """Convex hull of a finite point set spanning the ambient space."""

    kind = "vpolytope"

    def __init__(self, vertices):
        V = np.atleast_2d(np.asarray(vertices, dtype=float))
        if V.size == 0 or not np.isfinite(V).all():
            raise BodyError("vertices must be finite")
        self.dim = V.shape[1]
        if V.shape[0] < self.dim + 1:
            raise BodyError("too few vertices to span the space")
        rank = np.linalg.matrix_rank(V[1:] - V[0], tol=1e-12 * max(1.0, np.abs(V).max()))
        if rank < self.dim:
            raise BodyError("vertices do not affinely span the space (degenerate vertex set)")
        if self.dim == 2:
            V = hull2d(V).vertices
        elif self.dim == 1:
            V = np.array([[V.min()], [V.max()]])
        self.vertices = V
        self.vertices.setflags(write=False)

    @cached_property
    def _hrep(self):
        if self.dim == 2:
            return _edge_hrep(self.vertices)
        if self.dim == 1:
            lo, hi = self.vertices[0, 0], self.vertices[1, 0]
            return np.array([[-1.0], [1.0]]), np.array([-lo, hi])
        return None

    def h_rep(self):
        return self._hrep

    def vertex_array(self):
        return self.vertices

    def support_point(self, v):
        vals = self.vertices @ v
        k = int(np.argmax(vals))
        return float(vals[k]), self.vertices[k].copy()

    def support_many(self, V):
        return (np.asarray(V) @ self.vertices.T).max(axis=1)

    # barycentric LPs for d >= 3; variables (lambda_1..lambda_k, extra)
    def _bary_constraints(self, x, extra_col):
        k = self.vertices.shape[0]
        Vt = self.vertices.T
        rows, rhs = [], []
        E = np.hstack([Vt, extra_col])
        rows += [E, -E]
        rhs += [x, -x]
        one = np.hstack([np.ones(k), 0.0])[None, :]
        rows += [one, -one]
        rhs += [[1.0], [-1.0]]
        return rows, rhs

    def contains(self, x, tol=DEFAULT_TOL):
        if self._hrep is not None:
            return self._hrep_contains(x, tol)
        k = self.vertices.shape[0]
        d = self.dim
        # min t  s.t. |V^T lam - x|_inf <= t, lam >= 0, sum lam = 1
        Vt = self.vertices.T
        A = np.vstack([
            np.hstack([Vt, -np.ones((d, 1))]),
            np.hstack([-Vt, -np.ones((d, 1))]),
            np.hstack([-np.eye(k), np.zeros((k, 1))]),
            np.hstack([np.ones((1, k)), [[0.0]]]),
            np.hstack([-np.ones((1, k)), [[0.0]]]),
        ])
        b = np.concatenate([x, -x, np.zeros(k), [1.0, -1.0]])
        cost = np.zeros(k + 1)
        cost[-1] = 1.0
        sol = _lp_or_fail(lp_solve(A, b, cost, sense="min"), "containment")
        return sol.objective <= tol

    def margin(self, x):
        if self._hrep is not None:
            return self._hrep_margin(x)
        k = self.vertices.shape[0]
        # max s  s.t. V^T lam = x, sum lam = 1, lam_i >= s
        rows, rhs = self._bary_constraints(x, np.zeros((self.dim, 1)))
        A = np.vstack(rows + [np.hstack([-np.eye(k), np.ones((k, 1))])])
        b = np.concatenate([np.concatenate(rhs[:2]), [1.0, -1.0], np.zeros(k)])
        cost = np.zeros(k + 1)
        cost[-1] = 1.0
        sol = lp_solve(A, b, cost)
        if sol.status == "infeasible":
            return -1.0
        return float(_lp_or_fail(sol, "interior margin").objective)

    def exit_distance(self, x, u):
        if self._hrep is not None:
            return self._hrep_exit(x, u)
        k = self.vertices.shape[0]
        # max rho s.t. V^T lam - rho u = x, sum lam = 1, lam >= 0
        rows, rhs = self._bary_constraints(x, -u[:, None])
        A = np.vstack(rows + [np.hstack([-np.eye(k), np.zeros((k, 1))])])
        b = np.concatenate([np.concatenate(rhs[:2]), [1.0, -1.0], np.zeros(k)])
        cost = np.zeros(k + 1)
        cost[-1] = 1.0
        return float(_lp_or_fail(lp_solve(A, b, cost), "chord").objective)

    def to_document(self):
        return {"type": "vpolytope", "vertices": self.vertices.tolist()}


class Ball(ConvexBody):
    kind = "ball"

    def __init__(self, center, radius):
        self.center = as_vector(center, name="center")
        self.center.setflags(write=False)
        self.radius = float(radius)
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise BodyError("ball radius must be positive and finite")
        self.dim = self.center.size
        self.symmetric_center = self.center

    def support_point(self, v):
        nv = float(np.linalg.norm(v))
        return float(self.center @ v + self.radius * nv), self.center + self.radius * v / nv

    def support_many(self, V):
        V = np.asarray(V)
        return V @ self.center + self.radius * np.linalg.norm(V, axis=1)

    def contains(self, x, tol=DEFAULT_TOL):
        return bool(np.linalg.norm(x - self.center) <= self.radius + tol)

    def margin(self, x):
        return self.radius - float(np.linalg.norm(x - self.center))

    def exit_distance(self, x, u):
        # |x - c + rho u|^2 = r^2, u unit
        w = x - self.center
        bu = float(w @ u)
        disc = bu * bu - (float(w @ w) - self.radius ** 2)
        return -bu + math.sqrt(max(disc, 0.0))

    def bounding_box(self):
        return self.center - self.radius, self.center + self.radius

    def to_document(self):
        return {"type": "ball", "center": self.center.tolist(), "radius": self.radius}


class Box(_PolytopeMixin, ConvexBody):
    kind = "box"

    def __init__(self, lower, upper):
        self.lower = as_vector(lower, name="lower")
        self.upper = as_vector(upper, self.lower.size, name="upper")
        if not (self.lower < self.upper).all():
            raise BodyError("box requires lower < upper componentwise")
        self.lower.setflags(write=False)
        self.upper.setflags(write=False)
        self.dim = self.lower.size
        self.symmetric_center = (self.lower + self.upper) / 2

    @cached_property
    def _hrep(self):
        eye = np.eye(self.dim)
        return np.vstack([eye, -eye]), np.concatenate([self.upper, -self.lower])

    def h_rep(self):
        return self._hrep

    def vertex_array(self):
        if self.dim == 2:
            lo, hi = self.lower, self.upper
            return np.array([[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]])
        corners = itertools.product(*zip(self.lower, self.upper))
        return np.array(list(corners))

    def support_point(self, v):
        p = np.where(v >= 0, self.upper, self.lower)
        return float(v @ p), p

    def support_many(self, V):
        V = np.asarray(V)
        return np.where(V >= 0, V * self.upper, V * self.lower).sum(axis=1)

    def contains(self, x, tol=DEFAULT_TOL):
        return bool(((x >= self.lower - tol) & (x <= self.upper + tol)).all())

    def margin(self, x):
        return float(min((x - self.lower).min(), (self.upper - x).min()))

    def exit_distance(self, x, u):
        return self._hrep_exit(x, u)

    def bounding_box(self):
        return self.lower.copy(), self.upper.copy()

    def to_document(self):
        return {"type": "box", "lower": self.lower.tolist(), "upper": self.upper.tolist()}


class StandardSimplex(_PolytopeMixin, ConvexBody):
    """``{x : x_i >= 0, sum(x) <= 1}`` in ``R^dim``."""

    kind = "simplex"

    def __init__(self, dim):
        if isinstance(dim, bool) or int(dim) != dim or dim < 1:
            raise BodyError("simplex dimension must be an integer >= 1")
        self.dim = int(dim)

    @cached_property
    def _hrep(self):
        d = self.dim
        N = np.vstack([-np.eye(d), np.ones((1, d)) / math.sqrt(d)])
        c = np.concatenate([np.zeros(d), [1.0 / math.sqrt(d)]])
        return N, c

    def h_rep(self):
        return self._hrep

    def vertex_array(self):
        return np.vstack([np.zeros(self.dim), np.eye(self.dim)])

    def support_point(self, v):
        k = int(np.argmax(v))
        if v[k] <= 0:
            return 0.0, np.zeros(self.dim)
        p = np.zeros(self.dim)
        p[k] = 1.0
        return float(v[k]), p

    def support_many(self, V):
        return np.maximum(np.asarray(V).max(axis=1), 0.0)

    def contains(self, x, tol=DEFAULT_TOL):
        return bool((x >= -tol).all() and x.sum() <= 1 + tol)

    def margin(self, x):
        return self._hrep_margin(x)

    def exit_distance(self, x, u):
        return self._hrep_exit(x, u)

    def bounding_box(self):
        return np.zeros(self.dim), np.ones(self.dim)

    def to_document(self):
        return {"type": "simplex", "dim": self.dim}


class SymmetrizedBody(ConvexBody):
    """Support-oracle form of ``(K - K)/2`` for an H-polytope ``K``.

    Used where no exact hull is available (``d >= 3``).  Every query becomes
    an LP over pairs ``(p, q)`` of points of ``K``.
    """

    kind = "symmetrized"

    def __init__(self, base: HPolytope):
        if base.h_rep() is None:
            raise BodyError("support-oracle symmetrization needs an H-representation")
        self.base = base
        self.dim = base.dim
        self.symmetric_center = np.zeros(self.dim)

    def _pair_rows(self):
        N, c = self.base.h_rep()
        m, d = N.shape
        Z = np.zeros((m, d))
        return np.vstack([np.hstack([N, Z]), np.hstack([Z, N])]), np.concatenate([c, c])

    def support_point(self, v):
        hp, p = self.base.support_point(v)
        hq, q = self.base.support_point(-v)
        return 0.5 * (hp + hq), 0.5 * (p - q)

    def contains(self, x, tol=DEFAULT_TOL):
        d = self.dim
        P, c = self._pair_rows()
        D = np.hstack([np.eye(d), -np.eye(d)])
        A = np.vstack([
            np.hstack([P, np.zeros((P.shape[0], 1))]),
            np.hstack([D, -2 * np.ones((d, 1))]),
            np.hstack([-D, -2 * np.ones((d, 1))]),
        ])
        b = np.concatenate([c, 2 * x, -2 * x])
        cost = np.zeros(2 * d + 1)
        cost[-1] = 1.0
        sol = _lp_or_fail(lp_solve(A, b, cost, sense="min"), "containment")
        return sol.objective <= tol

    def exit_distance(self, x, u):
        d = self.dim
        P, c = self._pair_rows()
        D = np.hstack([np.eye(d), -np.eye(d), -2 * u[:, None]])
        A = np.vstack([np.hstack([P, np.zeros((P.shape[0], 1))]), D, -D])
        b = np.concatenate([c, 2 * x, -2 * x])
        cost = np.zeros(2 * d + 1)
        cost[-1] = 1.0
        return float(_lp_or_fail(lp_solve(A, b, cost), "chord").objective)

    def margin(self, x):
        nx = float(np.linalg.norm(x))
        if nx == 0:
            return 1.0
        return 1.0 - nx / self.exit_distance(np.zeros(self.dim), x / nx)

    def to_document(self):
        return {"type": "symmetrized", "base": self.base.to_document()}


# ---------------------------------------------------------------------------
# operations


@dataclass(frozen=True)
class Chord:
    rho_minus: float
    rho_plus: float


def load_body(document) -> ConvexBody:
    """Build a body from a schema document (``dict`` or JSON text)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise BodyError(f"body document is not valid JSON: {exc}") from None
    if not isinstance(document, dict) or "type" not in document:
        raise BodyError("body document must be an object with a 'type' field")
    kind = document["type"]
    fields = {
        "hpolytope": ("normals", "offsets"),
        "vpolytope": ("vertices",),
        "ball": ("center", "radius"),
        "box": ("lower", "upper"),
        "simplex": ("dim",),
        "symmetrized": ("base",),
    }
    if kind not in fields:
        raise BodyError(f"unknown body type {kind!r}")
    missing = [f for f in fields[kind] if f not in document]
    extra = set(document) - set(fields[kind]) - {"type"}
    if missing:
        raise BodyError(f"{kind} document is missing fields {missing}")
    if extra:
        raise BodyError(f"{kind} document has unexpected fields {sorted(extra)}")
    try:
        if kind == "hpolytope":
            return HPolytope(document["normals"], document["offsets"])
        if kind == "vpolytope":
            return VPolytope(document["vertices"])
        if kind == "ball":
            return Ball(document["center"], document["radius"])
        if kind == "box":
            return Box(document["lower"], document["upper"])
        if kind == "simplex":
            return StandardSimplex(document["dim"])
        base = load_body(document["base"])
        if not isinstance(base, HPolytope):
            raise BodyError("symmetrized base must be an hpolytope")
        return SymmetrizedBody(base)
    except (TypeError, DomainError) as exc:
        raise BodyError(f"invalid {kind} document: {exc}") from None


def dump_body(K: ConvexBody) -> str:
    return json.dumps(K.to_document(), sort_keys=True)


def contains(K: ConvexBody, x, tol: float = DEFAULT_TOL) -> bool:
    return K.contains(as_vector(x, K.dim), tol)


def is_interior(K: ConvexBody, x, tol: float = DEFAULT_TOL) -> bool:
    return K.margin(as_vector(x, K.dim)) > tol


def _unit(u, dim, tol=1e-12):
    u = as_vector(u, dim, name="direction")
    n = float(np.linalg.norm(u))
    if abs(n - 1.0) > tol:
        raise DomainError(f"direction must be a Euclidean unit vector (norm {n})")
    return u


def ray_chord(K: ConvexBody, x, u, tol: float = DEFAULT_TOL) -> Chord:
    """Boundary-hit parameters of the line through interior ``x`` along ``u``."""
    x = as_vector(x, K.dim)
    u = _unit(u, K.dim)
    if K.margin(x) <= tol:
        raise DomainError("ray_chord needs a strictly interior point")
    return Chord(K.exit_distance(x, -u), K.exit_distance(x, u))


def hull2d(points) -> VPolytope:
    """Counter-clockwise convex hull (Andrew's monotone chain)."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2:
        raise BodyError("hull2d expects planar points")
    pts = sorted(set(map(tuple, P.tolist())))
    if len(pts) < 3:
        raise BodyError("hull needs at least three distinct points")
    scale = max(1.0, float(np.abs(P).max()))
    eps = 1e-12 * scale * scale

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= eps:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= eps:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise BodyError("points are collinear")
    poly = VPolytope.__new__(VPolytope)
    poly.dim = 2
    poly.vertices = np.array(hull)
    poly.vertices.setflags(write=False)
    return poly


def central_symmetrization(K: ConvexBody) -> ConvexBody:
    """The half difference body ``(K - K)/2``."""
    if isinstance(K, Ball):
        return Ball(np.zeros(K.dim), K.radius)
    if isinstance(K, Box):
        half = (K.upper - K.lower) / 2
        return Box(-half, half)
    verts = K.vertex_array()
    if verts is None:
        if isinstance(K, HPolytope):
            return SymmetrizedBody(K)
        raise BodyError(f"no symmetrization available for {K.kind}")
    diffs = (verts[:, None, :] - verts[None, :, :]).reshape(-1, K.dim) / 2
    if K.dim == 2:
        return hull2d(diffs)
    return VPolytope(diffs)
