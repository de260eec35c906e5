"""Command line entry point: ``ratbif analyze ...``.

Exit codes: 0 success, 2 input error, 3 a hypothesis was refuted (outputs are
still written), 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import AnalysisOptions, ProbeConfig, Tolerances
from .errors import InconsistencyError
from .parse import ParseError, parse_rational_function
from .report import bifurcation_superset, emit_json, summary_text
from .svg import render_svg

EXIT_OK, EXIT_INPUT, EXIT_REFUTED, EXIT_INCONSISTENT = 0, 2, 3, 4


def _floats(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals or any(v <= 0 for v in vals) or list(vals) != sorted(set(vals)):
        raise argparse.ArgumentTypeError("radii must be positive and strictly increasing")
    return vals


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ratbif", description="Bifurcation-value bounds for rational functions P/Q.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="analyse f = P/Q")
    src = an.add_argument_group("input")
    src.add_argument("--f", dest="expr", help='rational function, e.g. "(x^2+y)/(x+y)"')
    src.add_argument("--num", help="numerator P")
    src.add_argument("--den", help="denominator Q (default 1)")
    an.add_argument("--vars", default="x,y", help="comma-separated variable names (default x,y)")
    an.add_argument("--json", type=Path, help="write the JSON report here")
    an.add_argument("--svg", type=Path, help="write the Newton polytope picture here (two variables only)")
    an.add_argument("--probe", action="store_true", help="sample the Milnor set at growing radii")
    an.add_argument("--radii", type=_floats, default=ProbeConfig.radii)
    an.add_argument("--starts", type=int, default=ProbeConfig.starts)
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--vanish-tol", type=float, default=Tolerances.vanish)
    an.add_argument("--margin-tol", type=float, default=Tolerances.margin)
    an.add_argument("--dedupe-tol", type=float, default=Tolerances.dedupe)
    an.add_argument("--quiet", action="store_true", help="suppress the text summary")
    return ap


def _input_text(args) -> str:
    if args.num is not None:
        return f"({args.num})/({args.den})" if args.den is not None else args.num
    return args.expr


def run_analyze(args) -> int:
    if args.expr is None and args.num is None:
        print("error: give --f or --num [--den]", file=sys.stderr)
        return EXIT_INPUT
    if args.expr is not None and args.num is not None:
        print("error: --f and --num are mutually exclusive", file=sys.stderr)
        return EXIT_INPUT
    if args.starts < 1:
        print("error: --starts must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    names = [s.strip() for s in args.vars.split(",") if s.strip()]
    try:
        f = parse_rational_function(args.expr, names, num=args.num, den=args.den)
    except (ParseError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.svg is not None and f.n != 2:
        print("error: SVG output needs two variables; use --json instead", file=sys.stderr)
        return EXIT_INPUT

    tol = Tolerances(vanish=args.vanish_tol, margin=args.margin_tol, dedupe=args.dedupe_tol)
    probe = ProbeConfig(radii=tuple(args.radii), starts=args.starts, seed=args.seed) if args.probe else None
    opts = AnalysisOptions(tol=tol, seed=args.seed, probe=probe)
    try:
        rep = bifurcation_superset(f, opts, input_text=_input_text(args))
    except InconsistencyError as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT

    if args.json is not None:
        args.json.write_text(emit_json(rep), encoding="utf-8")
    if args.svg is not None and rep.faces:
        args.svg.write_text(render_svg(rep), encoding="utf-8")
    if not args.quiet:
        sys.stdout.write(summary_text(rep))
    return rep.exit_code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return run_analyze(args)
    return EXIT_INPUT
