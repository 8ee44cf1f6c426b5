"""Command-line interface.

Single-point queries print a JSON object; ``scan`` writes a CSV or JSON
report and ``plot`` renders a report field as SVG.  Exit codes: 0 success,
1 usage error, 2 numeric failure, 3 findings (flagged conjecture or
hypothesis rows).

Vectors are given as separate numbers, e.g. ``--point 0.2 0.3`` or
``--direction -1 0``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import chebyshev
from .bernstein import best_ellipse, ellipse_constant, ridge_constant, worst_direction_E
from .bodies import StandardSimplex, load_body
from .config import Config
from .errors import NumericalError, PolyIneqError
from .geometry import alpha, maximal_chord, minimal_width, width_dir

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_FINDINGS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS defaults let the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--body", default=argparse.SUPPRESS,
                   help="body document: a JSON file, or inline JSON starting with '{'")
    g.add_argument("--config", default=argparse.SUPPRESS, help="JSON file of config overrides")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--out", default=argparse.SUPPRESS, help="output path (default: stdout)")
    g.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS,
                   help="report format for scan (default csv)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = _Parser(prog="polyineq", description=__doc__.split("\n\n")[0],
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    vec = dict(nargs="+", type=float)
    p = cmd("alpha", "generalized Minkowski functional at a point")
    p.add_argument("--point", required=True, **vec)
    p.add_argument("--method", choices=("closed_form", "sphere_opt", "gamma_route"))

    p = cmd("tau", "maximal chord length in a direction")
    p.add_argument("--direction", required=True, **vec)

    p = cmd("width", "minimal width, or the width in one direction")
    p.add_argument("--direction", **vec)

    p = cmd("growth", "Chebyshev growth constant at an exterior point")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--point", **vec)
    p.add_argument("--homogeneous", metavar="V", nargs="+", type=float,
                   help="top-degree growth in direction V instead of a point value")

    p = cmd("ellipse", "inscribed-ellipse constant E(K, x, y), or E(K, x) without --direction")
    p.add_argument("--point", required=True, **vec)
    p.add_argument("--direction", **vec)

    p = cmd("ridge", "ridge Bernstein constant")
    p.add_argument("--point", required=True, **vec)
    p.add_argument("--direction", required=True, **vec)

    p = cmd("markov", "Markov-type gradient factor")
    p.add_argument("--kind", required=True, choices=("interval", "symmetric", "unit_ball", "general"))
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"))
    p.add_argument("--width", type=float)

    p = cmd("oracle-cheb", "LP estimate of the Chebyshev growth constant")
    p.add_argument("--point", required=True, **vec)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--resolution", type=int)

    p = cmd("oracle-bern", "LP estimate of the directional Bernstein factor")
    p.add_argument("--point", required=True, **vec)
    p.add_argument("--direction", required=True, **vec)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--c-sweep", type=int)

    p = cmd("scan", "grid scan written as a report")
    p.add_argument("kind", choices=("alpha_map", "ellipse_map", "conjecture", "squarecompare",
                                    "hypothesis", "oracle_compare"))

    p = cmd("plot", "SVG heat map of one report field")
    p.add_argument("--report", required=True)
    p.add_argument("--field", required=True)
    return parser


def _load_config(args) -> Config:
    cfg = Config.load(args.config) if getattr(args, "config", None) else Config()
    if getattr(args, "seed", None) is not None:
        cfg = cfg.replace(seed=args.seed)
    return cfg


def _load_body(args):
    src = getattr(args, "body", None)
    if src is None:
        raise UsageError(f"'{args.command}' needs --body")
    if src.lstrip().startswith("{"):
        return load_body(src)
    try:
        text = Path(src).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read body file {src}: {exc.strerror or exc}") from None
    return load_body(text)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    raise TypeError(f"not serializable: {type(v).__name__}")


def _emit(args, text: str):
    out = getattr(args, "out", None)
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror or exc}") from None


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, sort_keys=True, default=_jsonable) + "\n")


def _run(args) -> int:
    cfg = _load_config(args)
    c = args.command

    if c == "plot":
        from .harness import read_report, render_svg
        if getattr(args, "out", None) is None:
            raise UsageError("plot needs --out")
        _emit(args, render_svg(read_report(args.report), args.field))
        return EXIT_OK

    if c == "markov":
        kw = {}
        if args.kind == "interval":
            if args.interval is None:
                raise UsageError("markov --kind interval needs --interval A B")
            kw = dict(a=args.interval[0], b=args.interval[1])
        elif args.kind in ("symmetric", "general"):
            kw = {"width": args.width} if args.width is not None else {"body": _load_body(args)}
        value = chebyshev.markov_bound(args.kind, args.degree, config=cfg, **kw)
        _emit_json(args, {"kind": args.kind, "degree": args.degree, "factor": value})
        return EXIT_OK

    K = _load_body(args)
    if c == "alpha":
        r = alpha(K, args.point, method=args.method, config=cfg)
        _emit_json(args, {"alpha": r.alpha, "witness": r.witness, "method": r.method,
                          "converged": r.converged})
    elif c == "tau":
        _emit_json(args, {"tau": maximal_chord(K, args.direction)})
    elif c == "width":
        if args.direction is None:
            _emit_json(args, {"minimal_width": minimal_width(K, cfg)})
        else:
            _emit_json(args, {"width": width_dir(K, args.direction, cfg)})
    elif c == "growth":
        if args.homogeneous is not None:
            value = chebyshev.homogeneous_growth(K, args.homogeneous, args.degree)
            _emit_json(args, {"homogeneous_growth": value})
        else:
            if args.point is None:
                raise UsageError("growth needs --point or --homogeneous")
            _emit_json(args, {"growth": chebyshev.cheb_growth(K, args.point, args.degree, cfg)})
    elif c == "ellipse":
        if args.direction is None:
            E, y = worst_direction_E(K, args.point, cfg)
            _emit_json(args, {"E": E, "worst_direction": y})
        elif isinstance(K, StandardSimplex):
            _emit_json(args, {"E": ellipse_constant(K, args.point, args.direction, cfg)})
        else:
            r = best_ellipse(K, args.point, args.direction, cfg)
            _emit_json(args, {"E": r.E, "axis_a": r.ellipse.a, "certified": r.certified})
    elif c == "ridge":
        _emit_json(args, {"ridge": ridge_constant(K, args.point, args.direction, cfg)})
    elif c == "oracle-cheb":
        from .oracle import chebyshev_oracle, make_grid
        grid = make_grid(K, resolution=args.resolution, config=cfg) if args.resolution else None
        value, _ = chebyshev_oracle(K, args.point, args.degree, grid=grid, config=cfg)
        _emit_json(args, {"oracle": value,
                          "closed_form": chebyshev.cheb_growth(K, args.point, args.degree, cfg)})
    elif c == "oracle-bern":
        from .oracle import bernstein_oracle
        est = bernstein_oracle(K, args.point, args.direction, args.degree,
                               c_sweep=args.c_sweep, config=cfg)
        y = np.asarray(args.direction, dtype=float)
        y = y / np.linalg.norm(y)
        _emit_json(args, {"oracle": est, "normalized": est / args.degree,
                          "ridge": ridge_constant(K, args.point, y, cfg),
                          "inverse_E": 1 / ellipse_constant(K, args.point, y, cfg)})
    elif c == "scan":
        from .harness import run_scan
        from .harness.report import report_to_csv, report_to_json
        report = run_scan(args.kind, K, cfg)
        fmt = getattr(args, "format", "csv")
        _emit(args, report_to_csv(report) if fmt == "csv" else report_to_json(report))
        md = report.metadata
        print(f"{args.kind}: {md['n_rows']} rows, findings={md['findings']}, "
              f"failures={len(md['failures'])}, row_errors={len(md['row_errors'])}, "
              f"violations={sum(v['violations'] for v in md['inequalities'].values())}",
              file=sys.stderr)
        return report.exit_code
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"polyineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"polyineq: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PolyIneqError, ValueError, OSError) as exc:
        print(f"polyineq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
