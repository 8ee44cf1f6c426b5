import math

import numpy as np
import pytest

from polyineq.bernstein import ellipse_constant, milev_E, ridge_constant
from polyineq.bodies import Ball, Box, StandardSimplex, load_body
from polyineq.config import Config
from polyineq.errors import DomainError
from polyineq.geometry import alpha, maximal_chord, minimal_width
from polyineq.harness import (COLUMNS, DEFAULT_SCANS, ScanReport, direction_fan, interior_grid,
                              run_scan, simplex_grid)
from polyineq.harness import scans as scans_mod
from polyineq.harness.report import report_to_csv, report_to_json

SMALL = Config(scan_grid=4, scan_directions=3)


def test_simplex_grid_is_interior():
    G = simplex_grid(20)
    assert G.shape == (400, 2)
    assert (G > 0).all() and (G.sum(axis=1) < 1).all()


def test_interior_grid_on_box_and_disc(disc):
    G = interior_grid(Box([0, 0], [2, 1]), 3)
    assert len(G) == 9
    G = interior_grid(disc, 6)
    assert all(disc.margin(p) > 0 for p in G) and len(G) < 36
    with pytest.raises(DomainError):
        interior_grid(disc, 0)


def test_direction_fan():
    F = direction_fan(2, 8)
    np.testing.assert_allclose(np.linalg.norm(F, axis=1), 1)
    assert F[0].tolist() == [1.0, 0.0]
    np.testing.assert_array_equal(direction_fan(1, 5), [[1.0]])


def test_squarecompare_statistic(simplex):
    r = run_scan("squarecompare", simplex)
    s = r.metadata["summary"]["max_statistic"]
    assert 2.25 <= s <= 2.2883
    assert r.metadata["n_points"] == 10_000 and r.exit_code == 0
    assert math.sqrt(3 + math.sqrt(5)) == pytest.approx(2.2882, abs=1e-4)


def test_hypothesis_scan(simplex):
    r = run_scan("hypothesis", simplex)
    assert r.metadata["n_points"] == 25 and r.metadata["n_rows"] == 200
    assert r.metadata["summary"]["max_gap"] <= 1e-3
    assert r.findings == 0 and r.exit_code == 0


def test_alpha_map_box_matches_gauge(square):
    r = run_scan("alpha_map", square)
    assert r.metadata["summary"]["max_alpha_gauge_deviation"] <= 1e-8
    for row in r.rows:
        assert row["alpha"] == pytest.approx(max(abs(row["x1"]), abs(row["x2"])), abs=1e-8)


def test_simplex_only_kinds_rejected(square):
    for kind in ("squarecompare", "hypothesis"):
        with pytest.raises(DomainError):
            run_scan(kind, square)
    with pytest.raises(DomainError):
        run_scan("alpha_map", StandardSimplex(3))
    with pytest.raises(DomainError):
        run_scan("nonsense", square)


def test_one_dimensional_scan():
    r = run_scan("ellipse_map", Box([-1], [1]), SMALL)
    assert r.exit_code == 0 and r.metadata["n_rows"] == 4
    assert all(row["x2"] is None and row["y2"] is None for row in r.rows)


def test_row_errors_are_recorded(monkeypatch, simplex):
    real = scans_mod._rows_alpha_map

    def flaky(K, x, ctx, cfg):
        if x[0] > 0.7:
            raise ArithmeticError("synthetic failure")
        return real(K, x, ctx, cfg)

    monkeypatch.setitem(scans_mod._BUILDERS, "alpha_map", flaky)
    r = run_scan("alpha_map", simplex, SMALL)
    assert r.metadata["n_rows"] == 16
    errs = r.metadata["row_errors"]
    assert len(errs) == 4 and all("synthetic" in e["error"] for e in errs)
    assert all(r.rows[e["row"]]["alpha"] is None for e in errs)
    assert r.exit_code == 2


def test_findings_give_exit_three(simplex):
    r = run_scan("hypothesis", simplex, Config(hyp_grid=2, scan_directions=2, hyp_tol=1e-17))
    assert r.findings > 0
    assert r.metadata["flagged_rows"]
    assert r.exit_code == 3


def test_failed_bracket_gives_exit_two(simplex):
    r = run_scan("squarecompare", simplex, Config(square_grid=10, square_lo=2.5, square_hi=3.0))
    assert r.metadata["failures"] and r.exit_code == 2


def test_exit_code_precedence():
    assert ScanReport([], {"findings": 2}).exit_code == 3
    assert ScanReport([], {"findings": 2, "failures": ["x"]}).exit_code == 2
    bad = {"inequalities": {"chain": {"violations": 1}}}
    assert ScanReport([], bad).exit_code == 2
    assert ScanReport().exit_code == 0


def test_byte_determinism(simplex):
    a = run_scan("ellipse_map", simplex, SMALL)
    b = run_scan("ellipse_map", simplex, SMALL)
    assert report_to_csv(a) == report_to_csv(b)
    assert report_to_json(a) == report_to_json(b)


def test_timestamps_opt_in(simplex):
    assert "timestamps" not in run_scan("alpha_map", simplex, SMALL).metadata
    md = run_scan("alpha_map", simplex, SMALL.replace(record_timestamps=True)).metadata
    assert md["timestamps"]["finished"] >= md["timestamps"]["started"]


def test_ratio_columns_recomputable(simplex):
    cfg = Config(conj_grid=2, conj_directions=2)
    r = run_scan("conjecture", simplex, cfg)
    n = r.metadata["degree"]
    for row in r.rows:
        a, w = row["alpha"], row["w_min"]
        assert row["bound_conj"] == pytest.approx(2 / (w * math.sqrt(1 - a * a)), rel=1e-12)
        assert row["ratio_conj"] == pytest.approx(row["oracle_bern"] / n / row["bound_conj"],
                                                  rel=1e-12)
        assert row["bound_ellipse"] == pytest.approx(1 / row["E_xy"], rel=1e-12)
        assert row["bound_krry"] == pytest.approx(2 / (row["tau_y"] * math.sqrt(1 - a)),
                                                  rel=1e-12)
    sq = run_scan("squarecompare", simplex, Config(square_grid=5))
    for row in sq.rows:
        assert row["ratio_conj"] == pytest.approx(row["bound_ellipse"] / row["bound_conj"],
                                                  rel=1e-12)


def test_rows_reproducible_from_module_ops(square):
    r = run_scan("ellipse_map", square, SMALL)
    cfg = Config.from_dict(r.metadata["config"])
    K = load_body(r.metadata["body"])
    assert r.metadata["config_hash"] == cfg.hash()
    for row in r.rows[::5]:
        x = np.array([row["x1"], row["x2"]])
        y = np.array([row["y1"], row["y2"]])
        assert row["alpha"] == alpha(K, x, config=cfg).alpha
        assert row["E_xy"] == ellipse_constant(K, x, y, cfg)
        assert row["ridge"] == ridge_constant(K, x, y, cfg)
        assert row["tau_y"] == maximal_chord(K, y)
        assert row["w_min"] == minimal_width(K, cfg)


def test_simplex_e_x_is_gradient_closed_form(simplex):
    r = run_scan("ellipse_map", simplex, SMALL)
    for row in r.rows:
        assert row["E_x"] == pytest.approx(1 / milev_E([row["x1"], row["x2"]]), rel=1e-14)
        assert row["E_x"] <= row["E_xy"] * (1 + 1e-9)


def test_workers_match_serial(simplex):
    serial = run_scan("ellipse_map", simplex, SMALL)
    para = run_scan("ellipse_map", simplex, SMALL.replace(workers=2))
    assert serial.rows == para.rows
    assert serial.metadata["inequalities"] == para.metadata["inequalities"]


def test_inequality_ledger_on_small_scans(simplex):
    r = run_scan("ellipse_map", simplex, SMALL)
    ineq = r.metadata["inequalities"]
    assert set(ineq) == {"chain", "oldright7", "converse"}
    assert all(v["violations"] == 0 and v["checked"] == 48 for v in ineq.values())
    box = run_scan("ellipse_map", Box([-1, -1], [1, 1]), SMALL).metadata["inequalities"]
    assert set(box) == {"chain"}


def test_default_scan_table():
    kinds = {k for k, _ in DEFAULT_SCANS}
    assert kinds == set(scans_mod.SCAN_KINDS)
    assert len(COLUMNS) == 17
