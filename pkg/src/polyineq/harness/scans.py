"""Grid scans: tabulate constants, bounds and oracle estimates over a body.

Every scan walks a grid of interior points (optionally crossed with a fan of
directions), computes one or more rows per point through the public module
operations, and then applies three kinds of verdicts:

* inequality checks (must hold -- a violation is a numeric failure),
* consistency checks specific to the scan kind (also failures),
* findings: rows where an open conjecture or hypothesis looks doubtful.
  These are flagged, never asserted.

Bound columns are normalized by the degree (factor / n), so they do not
depend on ``n``; ``oracle_bern`` is the raw oracle estimate of ``n B_n`` at
degree ``metadata["degree"]``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..bernstein import (best_ellipse_simplex, ellipse_constant, hypothesis_gap, milev_E,
                         ridge_constant, worst_direction_E)
from ..bodies import ConvexBody, StandardSimplex, load_body
from ..config import Config, resolve
from ..errors import DomainError, PolyIneqError
from ..geometry import alpha, gamma, maximal_chord, minimal_width

COLUMNS = ("x1", "x2", "y1", "y2", "alpha", "gamma", "tau_y", "w_min", "E_xy", "E_x",
           "ridge", "bound_ellipse", "bound_krry", "bound_conj", "oracle_bern",
           "ratio_conj", "gap_hyp")

SCAN_KINDS = ("alpha_map", "ellipse_map", "conjecture", "squarecompare", "hypothesis",
              "oracle_compare")
SIMPLEX_ONLY = ("squarecompare", "hypothesis")

# tolerance for alpha against the gauge of a centrally symmetric body
GAUGE_TOL = 1e-8


@dataclass
class ScanReport:
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def findings(self) -> int:
        return int(self.metadata.get("findings", 0))

    @property
    def failed(self) -> bool:
        """Violated inequalities, failed checks or per-row numeric errors."""
        md = self.metadata
        bad_ineq = any(v["violations"] for v in md.get("inequalities", {}).values())
        return bool(bad_ineq or md.get("failures") or md.get("row_errors"))

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 2
        return 3 if self.findings else 0


# ---------------------------------------------------------------------------
# grids


def simplex_grid(N: int) -> np.ndarray:
    """``N^2`` interior points of the triangle: the image of the square lattice
    ``u, v = k/(N+1)`` under ``(u, v) -> (u, (1-u) v)``.

    The map collapses one side of the square onto a vertex, so the lattice
    crowds towards that vertex and towards the two sides meeting at it.
    """
    u = np.arange(1, N + 1) / (N + 1)
    U, V = np.meshgrid(u, u, indexing="ij")
    return np.column_stack([U.ravel(), ((1 - U) * V).ravel()])


def interior_grid(K: ConvexBody, N: int, config=None) -> np.ndarray:
    """Interior scan points: the collapsed square on the triangle, otherwise
    the ``N``-per-axis lattice ``lo + (hi - lo) k/(N+1)`` kept where interior."""
    cfg = resolve(config)
    if N < 1:
        raise DomainError("scan grid needs at least one point per axis")
    if isinstance(K, StandardSimplex) and K.dim == 2:
        return simplex_grid(N)
    lo, hi = K.bounding_box()
    t = np.arange(1, N + 1) / (N + 1)
    axes = [a + (b - a) * t for a, b in zip(lo, hi)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, K.dim)
    return mesh[[K.margin(p) > cfg.contain_tol for p in mesh]]


def direction_fan(dim: int, count: int) -> np.ndarray:
    """``count`` unit directions at angles ``pi j / count`` (half a turn: every
    tabulated quantity is even in ``y``)."""
    if dim == 1:
        return np.array([[1.0]])
    theta = np.pi * np.arange(count) / count
    return np.column_stack([np.cos(theta), np.sin(theta)])


# ---------------------------------------------------------------------------
# per-point row builders


def _blank(x, y=None) -> dict:
    row = dict.fromkeys(COLUMNS)
    row["x1"] = float(x[0])
    if len(x) > 1:
        row["x2"] = float(x[1])
    if y is not None:
        row["y1"] = float(y[0])
        if len(y) > 1:
            row["y2"] = float(y[1])
    return row


def _conj_factor(w, a):
    return 2 / (w * math.sqrt(1 - a * a))


def _krry_factor(tau, a):
    return 2 / (tau * math.sqrt(1 - a))


def _rows_alpha_map(K, x, ctx, cfg):
    row = _blank(x)
    row["alpha"] = alpha(K, x, config=cfg).alpha
    row["gamma"] = gamma(K, x, cfg)
    row["w_min"] = ctx["w_min"]
    return [row]


def _gradient_E(K, x, cfg):
    if isinstance(K, StandardSimplex) and K.dim == 2:
        return 1 / milev_E(x)
    return worst_direction_E(K, x, cfg)[0]


def _directional(K, x, y, a, ctx, cfg, tau):
    row = _blank(x, y)
    E = ellipse_constant(K, x, y, cfg)
    row.update(alpha=a, w_min=ctx["w_min"], tau_y=tau, E_xy=E,
               ridge=ridge_constant(K, x, y, cfg), bound_ellipse=1 / E,
               bound_krry=_krry_factor(tau, a), bound_conj=_conj_factor(ctx["w_min"], a))
    return row


def _rows_ellipse_map(K, x, ctx, cfg):
    a = alpha(K, x, config=cfg).alpha
    Ex = _gradient_E(K, x, cfg)
    rows = []
    for y, tau in zip(ctx["dirs"], ctx["taus"]):
        row = _directional(K, x, y, a, ctx, cfg, tau)
        row["E_x"] = Ex
        rows.append(row)
    return rows


def _rows_oracle(K, x, ctx, cfg):
    from ..oracle import bernstein_oracle, local_patch, make_grid

    n = ctx["degree"]
    a = alpha(K, x, config=cfg).alpha
    g = make_grid(K, resolution=cfg.conj_resolution, config=cfg,
                  extra=np.vstack([x[None, :], local_patch(K, x, cfg)]))
    rows = []
    for y, tau in zip(ctx["dirs"], ctx["taus"]):
        row = _directional(K, x, y, a, ctx, cfg, tau)
        est = bernstein_oracle(K, x, y, n, grid=g, c_sweep=cfg.conj_c_sweep, config=cfg)
        row["oracle_bern"] = est
        row["ratio_conj"] = (est / n) / row["bound_conj"]
        rows.append(row)
    return rows


def _rows_squarecompare(K, x, ctx, cfg):
    row = _blank(x)
    a = alpha(K, x, config=cfg).alpha
    m = milev_E(x)
    row.update(alpha=a, w_min=ctx["w_min"], E_x=1 / m, bound_ellipse=m,
               bound_conj=_conj_factor(ctx["w_min"], a))
    row["ratio_conj"] = row["bound_ellipse"] / row["bound_conj"]
    return [row]


def _rows_hypothesis(K, x, ctx, cfg):
    a = alpha(K, x, config=cfg).alpha
    rows = []
    for y, tau in zip(ctx["dirs"], ctx["taus"]):
        row = _directional(K, x, y, a, ctx, cfg, tau)
        row["E_xy"] = best_ellipse_simplex(x, y)
        row["bound_ellipse"] = 1 / row["E_xy"]
        row["gap_hyp"] = hypothesis_gap(x, y, cfg)
        rows.append(row)
    return rows


_BUILDERS = {
    "alpha_map": _rows_alpha_map,
    "ellipse_map": _rows_ellipse_map,
    "conjecture": _rows_oracle,
    "oracle_compare": _rows_oracle,
    "squarecompare": _rows_squarecompare,
    "hypothesis": _rows_hypothesis,
}


def _grid_size(kind, cfg):
    return {"squarecompare": cfg.square_grid, "hypothesis": cfg.hyp_grid,
            "conjecture": cfg.conj_grid, "oracle_compare": cfg.conj_grid}.get(kind, cfg.scan_grid)


def _fan_size(kind, cfg):
    if kind in ("conjecture", "oracle_compare"):
        return cfg.conj_directions
    if kind in ("ellipse_map", "hypothesis"):
        return cfg.scan_directions
    return 0


def _point_rows(K, kind, x, ctx, cfg):
    """Rows of one grid point, or a single coordinate-only row plus the error."""
    try:
        rows = _BUILDERS[kind](K, x, ctx, cfg)
        return [{k: (None if v is None else float(v)) for k, v in r.items()} for r in rows], None
    except (PolyIneqError, ArithmeticError) as exc:
        return [_blank(x)], f"{type(exc).__name__}: {exc}"


def _worker(args):
    doc, kind, x, ctx, cfg_dict = args
    return _point_rows(load_body(doc), kind, np.asarray(x), ctx, Config.from_dict(cfg_dict))


# ---------------------------------------------------------------------------
# verdicts


def _inequalities(rows, simplex, dim, slack):
    """Slack of each inequality on every row carrying its inputs."""
    checks = {"chain": lambda r: r["bound_ellipse"] - r["ridge"]}
    need = {"chain": ("bound_ellipse", "ridge")}
    if simplex:
        checks["oldright7"] = lambda r: r["bound_krry"] - r["bound_ellipse"]
        need["oldright7"] = ("bound_krry", "bound_ellipse")
        checks["converse"] = lambda r: math.sqrt(dim) * r["ridge"] - r["bound_ellipse"]
        need["converse"] = ("ridge", "bound_ellipse")
    out = {}
    for name, fn in checks.items():
        vals = [fn(r) for r in rows if all(r[k] is not None for k in need[name])]
        bad = [i for i, r in enumerate(rows)
               if all(r[k] is not None for k in need[name]) and fn(r) < -slack]
        out[name] = {"checked": len(vals), "violations": len(bad),
                     "min_slack": min(vals) if vals else None, "rows": bad}
    return out


def _gauge_deviation(K, rows):
    c = K.symmetric_center
    worst = 0.0
    for r in rows:
        if r["alpha"] is None:
            continue
        x = np.array([r["x1"], r["x2"]][:K.dim], dtype=float)
        off = x - c
        nx = float(np.linalg.norm(off))
        g = 0.0 if nx == 0 else nx / K.exit_distance(c, off / nx)
        worst = max(worst, abs(r["alpha"] - g))
    return worst


def _summarize(kind, K, rows, cfg, degree):
    summary, failures, flagged = {}, [], []

    def col_max(name):
        vals = [r[name] for r in rows if r[name] is not None]
        return max(vals) if vals else None

    if kind == "alpha_map":
        summary["max_alpha"] = col_max("alpha")
        summary["min_gamma"] = min((r["gamma"] for r in rows if r["gamma"] is not None),
                                   default=None)
        if K.symmetric_center is not None:
            dev = _gauge_deviation(K, rows)
            summary["max_alpha_gauge_deviation"] = dev
            if dev > GAUGE_TOL:
                failures.append(f"alpha differs from the gauge by {dev:.3g}")
    elif kind == "ellipse_map":
        summary["max_bound_ellipse"] = col_max("bound_ellipse")
        summary["min_E_x"] = min((r["E_x"] for r in rows if r["E_x"] is not None), default=None)
    elif kind == "squarecompare":
        best = col_max("ratio_conj")
        stat = None if best is None else 2 * best
        summary["max_statistic"] = stat
        if stat is not None:
            i = max(range(len(rows)), key=lambda j: -1 if rows[j]["ratio_conj"] is None
                    else rows[j]["ratio_conj"])
            summary["argmax"] = [rows[i]["x1"], rows[i]["x2"]]
        summary["bracket"] = [cfg.square_lo, cfg.square_hi]
        if stat is None or not cfg.square_lo <= stat <= cfg.square_hi:
            failures.append(f"squarecompare statistic {stat} outside "
                            f"[{cfg.square_lo}, {cfg.square_hi}]")
    elif kind == "hypothesis":
        summary["max_gap"] = col_max("gap_hyp")
        flagged = [i for i, r in enumerate(rows)
                   if r["gap_hyp"] is not None and r["gap_hyp"] > cfg.hyp_tol]
    elif kind == "conjecture":
        summary["max_ratio"] = col_max("ratio_conj")
        ell = [r["bound_ellipse"] / r["bound_conj"] for r in rows
               if r["bound_ellipse"] is not None and r["bound_conj"] is not None]
        summary["max_ellipse_ratio"] = max(ell) if ell else None
        flagged = [i for i, r in enumerate(rows)
                   if r["ratio_conj"] is not None and r["ratio_conj"] > 1 + cfg.conj_flag_tol]
    elif kind == "oracle_compare":
        tol = cfg.oracle_bracket_tol
        misses = []
        for i, r in enumerate(rows):
            if r["oracle_bern"] is None:
                continue
            est = r["oracle_bern"] / degree
            if not r["ridge"] * (1 - tol) <= est <= r["bound_ellipse"] * (1 + tol):
                misses.append(i)
        summary["bracket_misses"] = misses
        if misses:
            failures.append(f"{len(misses)} oracle estimates outside [ridge, 1/E] "
                            f"(tolerance {tol})")
    return summary, failures, flagged


# ---------------------------------------------------------------------------


def _check_body(kind, K):
    if kind not in SCAN_KINDS:
        raise DomainError(f"unknown scan kind {kind!r}; expected one of {SCAN_KINDS}")
    if K.dim > 2:
        raise DomainError("scans tabulate points of the line or the plane (dim <= 2)")
    if kind in SIMPLEX_ONLY and not (isinstance(K, StandardSimplex) and K.dim == 2):
        raise DomainError(f"scan kind {kind!r} is defined for the standard triangle only")


def run_scan(kind: str, body: ConvexBody, config: Config | None = None) -> ScanReport:
    """Run one scan kind over ``body`` and return the populated report."""
    cfg = resolve(config)
    K = body
    _check_body(kind, K)
    started = time.time()
    degree = cfg.scan_degree if kind in ("conjecture", "oracle_compare") else 1
    pts = interior_grid(K, _grid_size(kind, cfg), cfg)
    dirs = direction_fan(K.dim, _fan_size(kind, cfg)) if _fan_size(kind, cfg) else np.empty((0, K.dim))
    ctx = {"w_min": minimal_width(K, cfg), "dirs": dirs.tolist(),
           "taus": [maximal_chord(K, y) for y in dirs], "degree": degree}
    ctx["dirs"] = [np.asarray(y) for y in ctx["dirs"]]

    if cfg.workers > 1 and len(pts) > 1:
        doc, cd = K.to_document(), cfg.to_dict()
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_worker, [(doc, kind, p.tolist(), ctx, cd) for p in pts]))
    else:
        results = [_point_rows(K, kind, p, ctx, cfg) for p in pts]

    rows, row_errors = [], []
    for p, (point_rows, err) in zip(pts, results):
        if err is not None:
            row_errors.append({"row": len(rows), "x": [float(v) for v in p], "error": err})
        rows.extend(point_rows)

    simplex = isinstance(K, StandardSimplex)
    ineq = _inequalities(rows, simplex, K.dim, cfg.ineq_slack)
    summary, failures, flagged = _summarize(kind, K, rows, cfg, degree)
    meta = {
        "kind": kind,
        "dim": K.dim,
        "body": K.to_document(),
        "config": cfg.to_dict(),
        "config_hash": cfg.hash(),
        "seed": cfg.seed,
        "degree": degree,
        "n_points": int(len(pts)),
        "n_rows": len(rows),
        "summary": summary,
        "inequalities": ineq,
        "failures": failures,
        "findings": len(flagged),
        "flagged_rows": flagged,
        "row_errors": row_errors,
    }
    if cfg.record_timestamps:
        meta["timestamps"] = {"started": started, "finished": time.time()}
    return ScanReport(rows, meta)


DEFAULT_SCANS = (
    ("alpha_map", {"type": "simplex", "dim": 2}),
    ("alpha_map", {"type": "box", "lower": [-1, -1], "upper": [1, 1]}),
    ("ellipse_map", {"type": "simplex", "dim": 2}),
    ("ellipse_map", {"type": "box", "lower": [-1, -1], "upper": [1, 1]}),
    ("squarecompare", {"type": "simplex", "dim": 2}),
    ("hypothesis", {"type": "simplex", "dim": 2}),
    ("conjecture", {"type": "simplex", "dim": 2}),
    ("oracle_compare", {"type": "simplex", "dim": 2}),
)
"""The shipped default scans: kind and body document at the default config."""
