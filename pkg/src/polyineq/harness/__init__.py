"""Scans, reports, plots and the command line."""

from .plot import render_plot, render_svg
from .report import read_report, write_report
from .scans import (COLUMNS, DEFAULT_SCANS, SCAN_KINDS, ScanReport, direction_fan,
                    interior_grid, run_scan, simplex_grid)

__all__ = [
    "COLUMNS", "DEFAULT_SCANS", "SCAN_KINDS", "ScanReport", "direction_fan", "interior_grid",
    "read_report", "render_plot", "render_svg", "run_scan", "simplex_grid", "write_report",
]
