import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from polyineq.bodies import Box, StandardSimplex
from polyineq.config import Config
from polyineq.errors import DomainError
from polyineq.harness import (COLUMNS, ScanReport, read_report, render_plot, render_svg,
                              run_scan, write_report)
from polyineq.harness.plot import LEVELS, point_values
from polyineq.harness.report import report_to_csv

SMALL = Config(scan_grid=4, scan_directions=2)


@pytest.fixture(scope="module")
def alpha_report():
    return run_scan("alpha_map", StandardSimplex(2), Config(scan_grid=12))


@pytest.fixture(scope="module")
def ellipse_report():
    return run_scan("ellipse_map", StandardSimplex(2), SMALL)


def test_empty_scan_is_header_only(tmp_path):
    p = tmp_path / "empty.csv"
    write_report(ScanReport(), "csv", p)
    assert p.read_text() == ",".join(COLUMNS) + "\n"
    assert read_report(p).rows == []


def test_json_round_trip(tmp_path, ellipse_report):
    p = tmp_path / "r.json"
    write_report(ellipse_report, "json", p)
    back = read_report(p)
    assert back.rows == ellipse_report.rows
    assert back.metadata == json.loads(json.dumps(ellipse_report.metadata))


def test_csv_round_trip(tmp_path, ellipse_report):
    p = tmp_path / "r.csv"
    write_report(ellipse_report, "csv", p)
    back = read_report(p)
    assert back.rows == ellipse_report.rows
    for key in ("kind", "dim", "degree", "config_hash", "seed", "body"):
        assert back.metadata[key] == ellipse_report.metadata[key]


def test_config_hash_in_both_formats(tmp_path, ellipse_report):
    h = SMALL.hash()
    for fmt in ("csv", "json"):
        p = tmp_path / f"r.{fmt}"
        write_report(ellipse_report, fmt, p)
        assert h in p.read_text()


def test_column_order_and_empty_cells(ellipse_report):
    lines = [l for l in report_to_csv(ellipse_report).splitlines() if not l.startswith("#")]
    assert lines[0].split(",") == list(COLUMNS)
    first = lines[1].split(",")
    assert first[COLUMNS.index("oracle_bern")] == "" and first[COLUMNS.index("gap_hyp")] == ""


def test_io_errors_carry_the_path(tmp_path, ellipse_report):
    bad = tmp_path / "missing" / "r.csv"
    with pytest.raises(OSError, match="missing"):
        write_report(ellipse_report, "csv", bad)
    with pytest.raises(OSError, match="nothing.json"):
        read_report(tmp_path / "nothing.json")
    with pytest.raises(ValueError):
        write_report(ellipse_report, "xml", tmp_path / "r.xml")


def test_bad_csv_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        read_report(p)


# -- plots -------------------------------------------------------------------------

def _circles(svg):
    root = ET.fromstring(svg.split("\n", 1)[1])
    ns = {"s": "http://www.w3.org/2000/svg"}
    return root, root.findall(".//s:g[@id='cells']/s:circle", ns)


def test_svg_is_valid_small_and_deterministic(tmp_path, alpha_report):
    p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
    render_plot(alpha_report, "alpha", p1)
    render_plot(alpha_report, "alpha", p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.stat().st_size < 5 * 2 ** 20
    root, circles = _circles(p1.read_text())
    assert root.tag.endswith("svg") and len(circles) == 144
    ns = {"s": "http://www.w3.org/2000/svg"}
    bar = root.find(".//s:g[@id='colorbar']", ns)
    assert len(bar.findall("s:rect", ns)) == LEVELS and len(bar.findall("s:text", ns)) == LEVELS + 1
    assert root.find(".//s:polygon[@id='outline']", ns) is not None


def test_alpha_levels_shrink_towards_the_centroid(alpha_report):
    _, circles = _circles(render_svg(alpha_report, "alpha"))
    pts = np.array([p for p, _ in point_values(alpha_report, "alpha")])
    levels = np.array([int(c.get("data-level")) for c in circles])
    dist = np.linalg.norm(pts - 1 / 3, axis=1)
    # sub-level sets are nested around the minimum of alpha
    reach = [dist[levels <= k].max() for k in range(LEVELS) if (levels <= k).any()]
    assert all(b >= a for a, b in zip(reach, reach[1:]))
    assert dist[levels == levels.min()].max() < 0.15
    assert pts[np.argmin([float(c.get("data-value")) for c in circles])] == pytest.approx(
        [1 / 3, 1 / 3], abs=0.05)


def test_plot_errors(alpha_report, tmp_path):
    with pytest.raises(DomainError):
        render_svg(alpha_report, "nonsense")
    with pytest.raises(DomainError):
        render_svg(alpha_report, "x1")
    with pytest.raises(DomainError):
        render_svg(alpha_report, "oracle_bern")
    line = run_scan("alpha_map", Box([-1], [1]), SMALL)
    with pytest.raises(DomainError):
        render_svg(line, "alpha")
