"""Command-line front end.

Exit codes: 0 success, 2 bad arguments, 3 domain or fit failure,
4 reproduction mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize as ser
from .conics import FitSpec, fit_ellipse, fit_hyperbola, fit_line, fit_parabola, fit_residuals
from .degeneracy import DEFAULT_TOL, LevelPair, solve_q, trace
from .errors import ArgumentError, DomainError, FitError, NotApplicableError, QPError
from .intersect import intersect_curves
from .reduction import (FIT_KINDS, BranchAssignment, Preset, design_oscillator,
                        forward_spectrum, preset, reduced_spectrum)
from .reproduce import report_dict, run_reproduction
from .svgplot import Plot

EXIT_OK, EXIT_ARGS, EXIT_DOMAIN, EXIT_MISMATCH = 0, 2, 3, 4


def _pair(text: str) -> LevelPair:
    return LevelPair.parse(text)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "svg"), default=None)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--rounding", type=int, default=None,
                        help="round numbers to this many decimals (1-12)")
    return common


def _add_relation_options(sp: argparse.ArgumentParser) -> None:
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--preset", choices=[p.value for p in Preset])
    src.add_argument("--relation", metavar="FILE", help="relation JSON written by 'fit'")
    src.add_argument("--kind", choices=FIT_KINDS, help="fit this conic through two --pair curves")
    sp.add_argument("--pair", action="append", default=[], metavar="N:K")
    sp.add_argument("--p0", type=float)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--R", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qpdegen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="energies of a reduced oscillator")
    _add_relation_options(sp)
    at = sp.add_mutually_exclusive_group(required=True)
    at.add_argument("--p", type=float, help="p-oscillator: invert the relation at this p")
    at.add_argument("--q", type=float, help="q-oscillator: read p off the relation at this q")
    sp.add_argument("--nmax", type=int, default=12)
    sp.add_argument("--threshold", type=int)
    sp.add_argument("--low", choices=("+", "-"))
    sp.add_argument("--high", choices=("+", "-"))

    sp = sub.add_parser("fit", parents=[common], help="fit a reduction relation")
    sp.add_argument("kind", choices=FIT_KINDS + ("line",))
    sp.add_argument("--pair", action="append", default=[], metavar="N:K")
    sp.add_argument("--p0", type=float)
    sp.add_argument("--q1", type=float)
    sp.add_argument("--q2", type=float)
    sp.add_argument("--p1", type=float, help="line only: anchor height at q1")
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--R", type=float, default=1.0)

    sp = sub.add_parser("solve", parents=[common], help="roots q of E_{n+k}=E_n at fixed p0")
    sp.add_argument("--pair", action="append", default=[], metavar="N:K")
    sp.add_argument("--p0", type=float, required=True)

    sp = sub.add_parser("trace", parents=[common], help="sample degeneracy curves")
    _add_relation_options(sp)
    sp.add_argument("--samples", type=int, default=512, help="p-grid size on [0.01, 1]")
    sp.add_argument("--mark-crossings", action="store_true",
                    help="mark crossings of the first two curves")

    sp = sub.add_parser("intersect", parents=[common], help="crossings of two curves")
    sp.add_argument("--pair", action="append", default=[], metavar="N:K")

    sp = sub.add_parser("reproduce", parents=[common], help="check the published numbers")
    sp.add_argument("--table", action="append", default=[],
                    help="artifact id (1-5, T1-T5, pmin, crossing, lines, fig1, ...); repeatable")
    return parser


def _emit(args, text: str) -> None:
    if args.out:
        ser.atomic_write(args.out, text)
    else:
        sys.stdout.write(text)


def _pairs(args, count: int | None = None) -> list[LevelPair]:
    pairs = [_pair(t) for t in args.pair]
    if not pairs:
        raise ArgumentError("at least one --pair N:K is required")
    if count is not None and len(pairs) != count:
        raise ArgumentError(f"exactly {count} --pair options are required, got {len(pairs)}")
    return pairs


def _tol(args) -> float:
    return DEFAULT_TOL if args.tol is None else args.tol


def _load_relation(args):
    """Relation and default branch assignment from --preset/--relation/--kind."""
    if args.preset:
        return preset(args.preset)
    if args.relation:
        with open(args.relation) as fh:
            return ser.relation_from_dict(json.load(fh)), None
    if args.kind:
        if args.p0 is None:
            raise ArgumentError("--kind needs --p0")
        design = design_oscillator(*_pairs(args, 2), args.p0, args.kind, eps=args.eps, R=args.R,
                                   tol=_tol(args))
        return design.relation, design.assignment
    return None, None


def cmd_spectrum(args) -> int:
    relation, assignment = _load_relation(args)
    if relation is None:
        raise ArgumentError("give one of --preset, --relation or --kind")
    if args.q is not None:
        table = forward_spectrum(relation, args.q, args.nmax)
    else:
        if args.threshold is not None or assignment is None:
            if relation.kind != "line" and args.threshold is None:
                raise ArgumentError("this relation needs --threshold (and optionally --low/--high)")
            assignment = BranchAssignment(args.threshold or 0, args.low or "-", args.high or "+")
        table = reduced_spectrum(relation, assignment, args.p, args.nmax)
    fmt = args.format or "csv"
    if fmt == "csv":
        _emit(args, ser.spectrum_to_csv(table, args.rounding))
    elif fmt == "json":
        _emit(args, ser.dump_json(ser.spectrum_to_dict(table, args.rounding)))
    else:
        plot = Plot(title=f"{relation.kind} reduction, p = {table.p_value:.6g}", xlabel="n",
                    ylabel="E(n)")
        pts = [(e.n, e.E) for e in table.entries]
        plot.line(pts)
        plot.scatter(pts, label="E(n)")
        _emit(args, plot.render())
    return EXIT_OK


def cmd_fit(args) -> int:
    if args.kind == "line":
        if args.q1 is None or args.p1 is None:
            raise ArgumentError("fit line needs --q1 and --p1")
        relation = fit_line(args.q1, args.p1)
        pairs = []
    else:
        if args.p0 is None:
            raise ArgumentError("fit needs --p0")
        if args.pair:
            design = design_oscillator(*_pairs(args, 2), args.p0, args.kind, eps=args.eps,
                                       R=args.R, tol=_tol(args))
            relation, pairs = design.relation, [str(p) for p in design.pairs]
        else:
            if args.q1 is None or args.q2 is None:
                raise ArgumentError("fit needs two --pair options or --q1/--q2")
            spec = FitSpec(args.q1, args.q2, args.p0)
            relation = {"parabola": fit_parabola,
                        "hyperbola": lambda s: fit_hyperbola(s, args.R),
                        "ellipse": lambda s: fit_ellipse(s, args.eps)}[args.kind](spec)
            pairs = []
    if (args.format or "json") != "json":
        raise ArgumentError("fit writes JSON only")
    doc = ser.relation_to_dict(relation, args.rounding)
    doc["diagnostics"] = {"residuals": fit_residuals(relation), "pairs": pairs}
    _emit(args, ser.dump_json(doc))
    return EXIT_OK


def cmd_solve(args) -> int:
    rows = []
    for pair in _pairs(args):
        for q in solve_q(pair, args.p0, _tol(args)):
            rows.append((str(pair), q))
    fmt = args.format or "csv"
    if fmt == "csv":
        lines = ["pair,p0,q"] + [f"{pair},{ser.fmt(args.p0)},{ser.fmt(q, args.rounding)}"
                                 for pair, q in rows]
        _emit(args, "\n".join(lines) + "\n")
    elif fmt == "json":
        _emit(args, ser.dump_json([{"pair": pair, "p0": args.p0, "q": ser.num(q, args.rounding)}
                                   for pair, q in rows]))
    else:
        raise ArgumentError("solve writes csv or json")
    return EXIT_OK


def _branches(samples):
    """Split trace samples into polylines, one per root index at each p."""
    by_p: dict[float, list[float]] = {}
    for s in samples:
        by_p.setdefault(s.p, []).append(s.q)
    lines: dict[int, list[tuple[float, float]]] = {}
    for p in sorted(by_p):
        for i, q in enumerate(sorted(by_p[p])):
            lines.setdefault(i, []).append((q, p))
    return list(lines.values())


def _relation_curve(relation, n: int = 400):
    pts = []
    for q in np.linspace(0.0, 1.0, n + 1):
        try:
            p = relation.evaluate(float(q))
        except QPError:
            continue
        if -0.05 <= p <= 1.05:
            pts.append((float(q), p))
    return pts


def cmd_trace(args) -> int:
    pairs = _pairs(args)
    if args.samples < 1:
        raise ArgumentError("--samples must be >= 1")
    grid = np.linspace(0.01, 1.0, args.samples)
    traces = [trace(pair, grid, _tol(args)) for pair in pairs]
    fmt = args.format or "csv"
    if fmt == "csv":
        _emit(args, ser.traces_to_csv(traces, args.rounding))
        return EXIT_OK
    if fmt == "json":
        _emit(args, ser.dump_json(ser.traces_to_dict(traces, args.rounding)))
        return EXIT_OK
    # relation overlay needs the first two pairs when fitted via --kind
    relation = None
    if args.kind or args.relation or args.preset:
        relation, _ = _load_relation(args)
    plot = Plot(title="degeneracy curves", xlabel="q", ylabel="p", xlim=(0, 1), ylim=(0, 1))
    for tr in traces:
        for k, line in enumerate(_branches(tr.samples)):
            plot.line(line, label=f"E{tr.pair.upper} = E{tr.pair.n}" if k == 0 else "")
    if relation is not None:
        plot.line(_relation_curve(relation), label=f"{relation.kind} p = f(q)", color="black")
        spec = relation.fit_spec
        if spec is not None:
            plot.mark(spec.q1, spec.p0, "A")
            plot.mark(spec.q2, spec.p0, "B")
        plot.mark(1.0, 1.0, "(1,1)")
    if args.mark_crossings:
        if len(pairs) < 2:
            raise ArgumentError("--mark-crossings needs two --pair options")
        for label, pt in zip("AB", intersect_curves(pairs[0], pairs[1])):
            plot.mark(pt.q, pt.p, label)
    _emit(args, plot.render())
    return EXIT_OK


def cmd_intersect(args) -> int:
    p1, p2 = _pairs(args, 2)
    points = intersect_curves(p1, p2, 1e-10 if args.tol is None else args.tol)
    fmt = args.format or "csv"
    if fmt == "csv":
        _emit(args, ser.intersections_to_csv(points, args.rounding))
    elif fmt == "json":
        _emit(args, ser.dump_json(ser.intersections_to_dict(points, args.rounding)))
    else:
        raise ArgumentError("intersect writes csv or json")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    artifacts = run_reproduction(args.table)
    fmt = args.format or "json"
    if fmt == "json":
        _emit(args, ser.dump_json(report_dict(artifacts)))
    elif fmt == "csv":
        lines = ["artifact,status,max_abs_diff,tolerance"]
        lines += [f"{a.table_id},{'pass' if a.passed else 'FAIL'},{ser.fmt(a.max_abs_diff)},"
                  f"{ser.fmt(a.tolerance)}" for a in artifacts]
        _emit(args, "\n".join(lines) + "\n")
    else:
        raise ArgumentError("reproduce writes json or csv")
    for a in artifacts:
        status = "pass" if a.passed else "FAIL"
        print(f"{status:4}  {a.table_id:10} max_abs_diff={a.max_abs_diff:.3g}", file=sys.stderr)
    return EXIT_OK if all(a.passed for a in artifacts) else EXIT_MISMATCH


COMMANDS = {
    "spectrum": cmd_spectrum,
    "fit": cmd_fit,
    "solve": cmd_solve,
    "trace": cmd_trace,
    "intersect": cmd_intersect,
    "reproduce": cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ARGS if exc.code else EXIT_OK
    try:
        ser.check_rounding(args.rounding)
        return COMMANDS[args.command](args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (DomainError, FitError, NotApplicableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
