"""CSV / JSON serialization of scan reports.

CSV layout: a few ``# key: value`` comment lines carrying the scan kind,
config hash, seed and body document, then the fixed header :data:`COLUMNS`
and one line per row.  Floats are written in shortest round-trip form and
absent fields are left empty, so both formats re-read to identical rows.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .scans import COLUMNS, ScanReport

CSV_META_KEYS = ("kind", "dim", "degree", "config_hash", "seed", "body")


def _cell(v) -> str:
    return "" if v is None else repr(float(v))


def report_to_csv(r: ScanReport) -> str:
    buf = io.StringIO()
    for key in CSV_META_KEYS:
        if key in r.metadata:
            buf.write(f"# {key}: {json.dumps(r.metadata[key], sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in r.rows:
        w.writerow([_cell(row.get(c)) for c in COLUMNS])
    return buf.getvalue()


def report_to_json(r: ScanReport) -> str:
    doc = {"metadata": r.metadata, "columns": list(COLUMNS),
           "rows": [[row.get(c) for c in COLUMNS] for row in r.rows]}
    return json.dumps(doc, sort_keys=True, indent=1, allow_nan=False) + "\n"


def write_report(r: ScanReport, format: str, path) -> None:
    """Write ``r`` as ``csv`` or ``json`` to ``path``."""
    if format == "csv":
        text = report_to_csv(r)
    elif format == "json":
        text = report_to_json(r)
    else:
        raise ValueError(f"unknown report format {format!r}")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc.strerror or exc}") from exc


def _parse_csv(text: str) -> ScanReport:
    meta, lines = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = json.loads(value)
        else:
            lines.append(line)
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or tuple(header) != COLUMNS:
        raise ValueError("CSV header does not match the report columns")
    rows = [{c: (float(v) if v != "" else None) for c, v in zip(COLUMNS, rec)} for rec in reader]
    return ScanReport(rows, meta)


def read_report(path) -> ScanReport:
    """Load a report written by :func:`write_report` (format by content)."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read report {path}: {exc.strerror or exc}") from exc
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        cols = doc["columns"]
        rows = [dict(zip(cols, rec)) for rec in doc["rows"]]
        return ScanReport(rows, doc["metadata"])
    return _parse_csv(text)
