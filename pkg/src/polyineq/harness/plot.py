"""Self-contained SVG heat maps of a scan field over the body outline.

Points with several rows (direction fans) are drawn once with the largest
value of the field.  Values are split into ``LEVELS`` equal bands; every
marker carries ``data-value`` and ``data-level`` attributes so a plot can be
inspected programmatically.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np

from ..bodies import Ball, load_body
from ..errors import DomainError
from .scans import COLUMNS, ScanReport

LEVELS = 10
SIZE = 480
MARGIN = 30
BAR_WIDTH = 18

# a perceptually ordered dark-blue -> yellow ramp
_RAMP = np.array([
    [68, 1, 84], [59, 82, 139], [33, 145, 140], [94, 201, 98], [253, 231, 37],
], dtype=float)


def color(t: float) -> str:
    t = min(max(t, 0.0), 1.0) * (len(_RAMP) - 1)
    i = min(int(t), len(_RAMP) - 2)
    rgb = _RAMP[i] + (t - i) * (_RAMP[i + 1] - _RAMP[i])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def point_values(r: ScanReport, field: str):
    """Distinct scan points in grid order with the field's maximum over rows."""
    order, best = [], {}
    for row in r.rows:
        v = row.get(field)
        if v is None or row.get("x1") is None or row.get("x2") is None:
            continue
        key = (row["x1"], row["x2"])
        if key not in best:
            order.append(key)
            best[key] = v
        else:
            best[key] = max(best[key], v)
    return [(k, best[k]) for k in order]


def level_of(v: float, lo: float, hi: float) -> int:
    if hi <= lo:
        return 0
    return min(int((v - lo) / (hi - lo) * LEVELS), LEVELS - 1)


def _outline(body, to_px):
    if isinstance(body, Ball):
        cx, cy = to_px(body.center)
        rx = to_px(body.center + [body.radius, 0])[0] - cx
        return ET.Element("circle", cx=_fmt(cx), cy=_fmt(cy), r=_fmt(rx))
    verts = body.vertex_array()
    if verts is None:
        return None
    pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in (to_px(v) for v in verts))
    return ET.Element("polygon", points=pts)


def render_svg(r: ScanReport, field: str) -> str:
    if field not in COLUMNS or field in ("x1", "x2", "y1", "y2"):
        raise DomainError(f"unknown plot field {field!r}")
    if r.metadata.get("dim") != 2:
        raise DomainError("plots need a scan of a two-dimensional body")
    body = load_body(r.metadata["body"]) if "body" in r.metadata else None
    data = point_values(r, field)
    if not data:
        raise DomainError(f"field {field!r} has no values in this report")

    pts = np.array([k for k, _ in data])
    vals = np.array([v for _, v in data])
    lo_v, hi_v = float(vals.min()), float(vals.max())
    if body is not None:
        blo, bhi = body.bounding_box()
    else:
        blo, bhi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(bhi - blo)) or 1.0
    scale = (SIZE - 2 * MARGIN) / span

    def to_px(p):
        return (MARGIN + (p[0] - blo[0]) * scale, SIZE - MARGIN - (p[1] - blo[1]) * scale)

    width = SIZE + 4 * MARGIN + BAR_WIDTH
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(width),
                     height=str(SIZE), viewBox=f"0 0 {width} {SIZE}")
    ET.SubElement(svg, "title").text = f"{r.metadata.get('kind', 'scan')}: {field}"
    ET.SubElement(svg, "rect", x="0", y="0", width=str(width), height=str(SIZE), fill="white")

    radius = max(0.35 * (SIZE - 2 * MARGIN) / math.sqrt(len(data)), 0.6)
    cells = ET.SubElement(svg, "g", id="cells", stroke="none")
    for (p, v) in zip(pts, vals):
        px, py = to_px(p)
        lvl = level_of(float(v), lo_v, hi_v)
        t = 0.0 if hi_v <= lo_v else (float(v) - lo_v) / (hi_v - lo_v)
        ET.SubElement(cells, "circle", cx=_fmt(px), cy=_fmt(py), r=_fmt(radius), fill=color(t),
                      **{"data-value": repr(float(v)), "data-level": str(lvl)})

    if body is not None:
        shape = _outline(body, to_px)
        if shape is not None:
            shape.set("id", "outline")
            shape.set("fill", "none")
            shape.set("stroke", "black")
            shape.set("stroke-width", "1.5")
            svg.append(shape)

    bar = ET.SubElement(svg, "g", id="colorbar", **{"font-size": "10", "font-family": "sans-serif"})
    x0 = SIZE + MARGIN
    h = (SIZE - 2 * MARGIN) / LEVELS
    for k in range(LEVELS):
        y = SIZE - MARGIN - (k + 1) * h
        ET.SubElement(bar, "rect", x=_fmt(x0), y=_fmt(y), width=str(BAR_WIDTH), height=_fmt(h),
                      fill=color((k + 0.5) / LEVELS), **{"data-level": str(k)})
    for k in range(LEVELS + 1):
        y = SIZE - MARGIN - k * h
        value = lo_v + (hi_v - lo_v) * k / LEVELS
        label = ET.SubElement(bar, "text", x=_fmt(x0 + BAR_WIDTH + 4), y=_fmt(y + 3))
        label.text = f"{value:.4g}"
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def render_plot(r: ScanReport, field: str, path) -> None:
    """Write the SVG heat map of ``field`` to ``path``."""
    text = render_svg(r, field)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc.strerror or exc}") from exc
