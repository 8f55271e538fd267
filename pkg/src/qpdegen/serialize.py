"""CSV and JSON formats for relations, spectra, traces and crossings.

Floats are written in shortest round-trip form, so reading a file back
gives the same bits, unless a rounding to N decimals is requested.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from typing import Iterable

from .conics import (ConicRelation, Ellipse, FitSpec, Hyperbola, Line, Parabola, branch_symbol,
                     parse_branch)
from .degeneracy import CurveTrace, LevelPair
from .errors import ArgumentError
from .intersect import IntersectionPoint
from .qp_core import DeformationPoint
from .reduction import BranchAssignment, SpectrumEntry, SpectrumTable

RELATION_KINDS = {cls.kind: cls for cls in (Parabola, Hyperbola, Ellipse, Line)}

SPECTRUM_HEADER = ("n", "E", "q_used", "branch")
TRACE_HEADER = ("p", "q", "pair")
INTERSECTION_HEADER = ("q", "p", "pair1", "pair2", "residual1", "residual2")


def check_rounding(rounding: int | None) -> int | None:
    if rounding is not None and not (1 <= rounding <= 12):
        raise ArgumentError(f"rounding must be in [1, 12], got {rounding!r}")
    return rounding


def fmt(x: float, rounding: int | None = None) -> str:
    x = float(x)
    if rounding is not None:
        x = round(x, rounding)
    return repr(x)


def num(x: float, rounding: int | None):
    return float(x) if rounding is None else round(float(x), rounding)


def atomic_write(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temp file and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# relations

def relation_to_dict(relation: ConicRelation, rounding: int | None = None) -> dict:
    spec = relation.fit_spec
    return {
        "kind": relation.kind,
        "params": {k: num(v, rounding) for k, v in relation.params().items()},
        "fit_spec": None if spec is None else {k: num(v, rounding) for k, v in spec.as_dict().items()},
    }


def relation_from_dict(data: dict) -> ConicRelation:
    try:
        cls = RELATION_KINDS[data["kind"]]
        params = {name: float(data["params"][name]) for name in cls.param_names}
    except KeyError as exc:
        raise ArgumentError(f"malformed relation document: missing {exc}") from None
    spec = data.get("fit_spec")
    fit_spec = None if spec is None else FitSpec(float(spec["q1"]), float(spec["q2"]), float(spec["p0"]))
    return cls(**params, fit_spec=fit_spec)


def assignment_to_dict(assignment: BranchAssignment) -> dict:
    return {
        "threshold": assignment.threshold,
        "low_sign": branch_symbol(assignment.low_sign),
        "high_sign": branch_symbol(assignment.high_sign),
    }


def assignment_from_dict(data: dict) -> BranchAssignment:
    return BranchAssignment(int(data["threshold"]), data["low_sign"], data["high_sign"])


# spectra

def spectrum_to_csv(table: SpectrumTable, rounding: int | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SPECTRUM_HEADER)
    for e in table.entries:
        writer.writerow([e.n, fmt(e.E, rounding), fmt(e.q_used, rounding), branch_symbol(e.branch)])
    return buf.getvalue()


def spectrum_entries_from_csv(text: str) -> list[SpectrumEntry]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != SPECTRUM_HEADER:
        raise ArgumentError(f"unexpected spectrum header {header!r}")
    return [SpectrumEntry(int(n), float(E), float(q), parse_branch(b)) for n, E, q, b in reader]


def spectrum_to_dict(table: SpectrumTable, rounding: int | None = None) -> dict:
    return {
        "p_value": num(table.p_value, rounding),
        "relation": relation_to_dict(table.relation, rounding),
        "assignment": assignment_to_dict(table.assignment),
        "entries": [
            {"n": e.n, "E": num(e.E, rounding), "q_used": num(e.q_used, rounding),
             "branch": branch_symbol(e.branch)}
            for e in table.entries
        ],
    }


def spectrum_from_dict(data: dict) -> SpectrumTable:
    entries = tuple(SpectrumEntry(int(e["n"]), float(e["E"]), float(e["q_used"]),
                                  parse_branch(e["branch"])) for e in data["entries"])
    return SpectrumTable(float(data["p_value"]), entries, relation_from_dict(data["relation"]),
                         assignment_from_dict(data["assignment"]))


# curve traces

def traces_to_csv(traces: Iterable[CurveTrace], rounding: int | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for tr in traces:
        for s in tr.samples:
            writer.writerow([fmt(s.p, rounding), fmt(s.q, rounding), str(tr.pair)])
    return buf.getvalue()


def traces_from_csv(text: str, tolerance: float = float("nan")) -> list[CurveTrace]:
    """Group rows by pair, keeping first-appearance order."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != TRACE_HEADER:
        raise ArgumentError(f"unexpected trace header {header!r}")
    grouped: dict[str, list[DeformationPoint]] = {}
    for p, q, pair in reader:
        grouped.setdefault(pair, []).append(DeformationPoint(float(q), float(p)))
    return [CurveTrace(LevelPair.parse(k), tuple(v), tolerance) for k, v in grouped.items()]


def traces_to_dict(traces: Iterable[CurveTrace], rounding: int | None = None) -> list[dict]:
    return [
        {"pair": str(tr.pair), "tolerance": tr.tolerance,
         "samples": [[num(s.q, rounding), num(s.p, rounding)] for s in tr.samples]}
        for tr in traces
    ]


# intersections

def intersections_to_csv(points: Iterable[IntersectionPoint], rounding: int | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(INTERSECTION_HEADER)
    for pt in points:
        writer.writerow([fmt(pt.q, rounding), fmt(pt.p, rounding), str(pt.pair1), str(pt.pair2),
                         fmt(pt.residual1), fmt(pt.residual2)])
    return buf.getvalue()


def intersections_from_csv(text: str) -> list[IntersectionPoint]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != INTERSECTION_HEADER:
        raise ArgumentError(f"unexpected intersection header {header!r}")
    return [IntersectionPoint(float(q), float(p), LevelPair.parse(a), LevelPair.parse(b),
                              float(r1), float(r2)) for q, p, a, b, r1, r2 in reader]


def intersections_to_dict(points: Iterable[IntersectionPoint], rounding: int | None = None) -> list[dict]:
    return [
        {"q": num(pt.q, rounding), "p": num(pt.p, rounding), "pair1": str(pt.pair1),
         "pair2": str(pt.pair2), "residual1": pt.residual1, "residual2": pt.residual2}
        for pt in points
    ]
