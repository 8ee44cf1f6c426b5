"""Finite point sets discretizing a body for sup-norm constraints."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..bodies import Ball, ConvexBody
from ..config import resolve


@dataclass(frozen=True)
class GridSpec:
    body: ConvexBody
    resolution: int
    points: np.ndarray

    def __len__(self):
        return self.points.shape[0]


def _boundary_samples(K: ConvexBody, per_facet: int) -> np.ndarray:
    if K.dim == 1:
        return np.empty((0, 1))
    if K.dim != 2:
        return np.empty((0, K.dim))
    if isinstance(K, Ball):
        theta = 2 * np.pi * np.arange(4 * per_facet) / (4 * per_facet)
        return K.center + K.radius * np.column_stack([np.cos(theta), np.sin(theta)])
    verts = K.vertex_array()
    if verts is None:
        return np.empty((0, 2))
    s = (np.arange(1, per_facet + 1) / (per_facet + 1))[:, None]
    nxt = np.roll(verts, -1, axis=0)
    return np.vstack([(1 - s) * a + s * b for a, b in zip(verts, nxt)])


def make_grid(K: ConvexBody, resolution: int | None = None,
              boundary_samples: int | None = None, extra=None, config=None) -> GridSpec:
    """Axis lattice clipped to ``K``, plus vertices and boundary samples.

    The lattice spans the bounding box with ``resolution`` nodes per axis,
    endpoints included (default ``grid_resolution``, or ``grid_resolution_1d``
    on the line, where points are cheap).  Optional ``extra`` points inside ``K`` are appended.
    """
    cfg = resolve(config)
    if resolution is None:
        res = cfg.grid_resolution if K.dim > 1 else cfg.grid_resolution_1d
    else:
        res = int(resolution)
    per_facet = cfg.boundary_samples if boundary_samples is None else int(boundary_samples)
    if res < 2:
        raise ValueError("grid resolution must be at least 2")
    lo, hi = K.bounding_box()
    axes = [np.linspace(a, b, res) for a, b in zip(lo, hi)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, K.dim)
    keep = np.array([K.contains(p, 1e-12) for p in mesh], dtype=bool)
    parts = [mesh[keep]]
    verts = K.vertex_array()
    if verts is not None:
        parts.append(np.asarray(verts, dtype=float))
    parts.append(_boundary_samples(K, per_facet))
    if extra is not None:
        ex = np.atleast_2d(np.asarray(extra, dtype=float))
        parts.append(ex[[K.contains(p, 1e-12) for p in ex]])
    pts = np.vstack(parts)
    pts = np.unique(np.round(pts, 14), axis=0)
    return GridSpec(K, res, pts)
