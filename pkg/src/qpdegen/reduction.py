"""One-parameter oscillators obtained by restricting (q, p) to a relation.

Inverting a conic at fixed p gives two q values.  A branch assignment says
which one each level uses: levels below a threshold take one sign, the
rest take the other, so a single p can carry two engineered degeneracies
that sit on opposite branches.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from .conics import (MINUS, PLUS, ConicRelation, FitSpec, Line, fit_ellipse, fit_hyperbola,
                     fit_line, fit_parabola, parse_branch)
from .degeneracy import DEFAULT_TOL, LevelPair, solve_q
from .errors import ArgumentError, DomainError, FitInfeasibleError
from .qp_core import DeformationPoint, energy

__all__ = [
    "BranchAssignment",
    "SpectrumEntry",
    "SpectrumTable",
    "Preset",
    "Design",
    "reduced_spectrum",
    "forward_spectrum",
    "preset",
    "default_assignment",
    "design_oscillator",
    "degeneracy_report",
]


@dataclass(frozen=True)
class BranchAssignment:
    """Levels ``n < threshold`` use ``low_sign``; the others use ``high_sign``."""

    threshold: int = 0
    low_sign: int = PLUS
    high_sign: int = PLUS

    def __post_init__(self):
        if int(self.threshold) != self.threshold or self.threshold < 0:
            raise ArgumentError(f"threshold must be a non-negative integer, got {self.threshold!r}")
        object.__setattr__(self, "threshold", int(self.threshold))
        object.__setattr__(self, "low_sign", parse_branch(self.low_sign))
        object.__setattr__(self, "high_sign", parse_branch(self.high_sign))

    def sign(self, n: int) -> int:
        return self.low_sign if n < self.threshold else self.high_sign


TRIVIAL = BranchAssignment()


class SpectrumEntry(NamedTuple):
    n: int
    E: float
    q_used: float
    branch: int


@dataclass(frozen=True)
class SpectrumTable:
    p_value: float
    entries: tuple[SpectrumEntry, ...]
    relation: ConicRelation
    assignment: BranchAssignment

    def energies(self) -> list[float]:
        return [e.E for e in self.entries]


def _entry(n: int, q: float, p: float, branch: int) -> SpectrumEntry:
    try:
        point = DeformationPoint(q, p)
    except DomainError as exc:
        raise DomainError(f"level {n}: relation gives (q, p) = ({q!r}, {p!r}); {exc}") from None
    return SpectrumEntry(n, energy(n, point), q, branch)


def reduced_spectrum(relation: ConicRelation, assignment: BranchAssignment, p: float,
                     n_max: int) -> SpectrumTable:
    """Energies ``E_p(n)``, ``n = 0..n_max``, of the p-oscillator at height p.

    Each level solves the relation for q on its assigned branch.  Domain
    errors from the inversion propagate unchanged.
    """
    if n_max < 0:
        raise ArgumentError(f"n_max must be >= 0, got {n_max!r}")
    entries = []
    for n in range(int(n_max) + 1):
        sign = assignment.sign(n)
        q = relation.invert(p, sign)
        entries.append(_entry(n, q, p, sign))
    return SpectrumTable(float(p), tuple(entries), relation, assignment)


def forward_spectrum(relation: ConicRelation, q: float, n_max: int) -> SpectrumTable:
    """Energies of the q-oscillator: p is read off the relation at q.

    This is the only way to use constant relations such as ``p = 1``.
    """
    if n_max < 0:
        raise ArgumentError(f"n_max must be >= 0, got {n_max!r}")
    p = relation.evaluate(q)
    entries = tuple(_entry(n, q, p, PLUS) for n in range(int(n_max) + 1))
    return SpectrumTable(float(p), entries, relation, TRIVIAL)


class Preset(enum.Enum):
    TD = "td"
    AK = "ak"
    LINEAR_A = "linear-a"
    LINEAR_B = "linear-b"


# rounded crossing of E_10 = E_0 with E_3 = E_2; refined before use
CROSSING_PAIRS = (LevelPair(0, 10), LevelPair(2, 1))
CROSSING_A = (0.567239, 0.823554)


@lru_cache(maxsize=None)
def crossing_point() -> tuple[float, float]:
    """Crossing A (q < p) of ``E_10 = E_0`` with ``E_3 = E_2``, full precision."""
    from .intersect import refine_intersection

    return refine_intersection(*CROSSING_PAIRS, *CROSSING_A)


def preset(name) -> tuple[Line, BranchAssignment]:
    """Named one-parameter reductions.

    ``td`` is the diagonal ``p = q`` and ``ak`` the constant ``p = 1``.
    ``linear-a``/``linear-b`` are the lines through (1, 1) and one of the two
    mirror-image crossings of ``E_10 = E_0`` with ``E_3 = E_2``, the crossing
    re-solved to full precision first.
    """
    name = Preset(name.lower().replace("_", "-") if isinstance(name, str) else name)
    if name is Preset.TD:
        return Line(1.0, 0.0), TRIVIAL
    if name is Preset.AK:
        return Line(0.0, 1.0), TRIVIAL
    q, p = crossing_point()
    if name is Preset.LINEAR_B:
        q, p = p, q
    return fit_line(q, p), TRIVIAL


def default_assignment(pair_1: LevelPair, q_1: float, pair_2: LevelPair,
                       q_2: float) -> BranchAssignment:
    """Branch rule for two degeneracies fitted at ``q_1`` and ``q_2``.

    The pair with the lower top level owns the levels up to its top; the
    threshold is the next level.  That pair keeps the sign of its own root
    and the other pair gets the opposite sign.
    """
    if (pair_2.upper, pair_2.n) < (pair_1.upper, pair_1.n):
        pair_1, q_1, pair_2, q_2 = pair_2, q_2, pair_1, q_1
    low = MINUS if q_1 < q_2 else PLUS
    return BranchAssignment(pair_1.upper + 1, low, -low)


FIT_KINDS = ("parabola", "hyperbola", "ellipse")


class Design(NamedTuple):
    relation: ConicRelation
    assignment: BranchAssignment
    pairs: tuple[LevelPair, LevelPair]
    roots: tuple[float, float]


def resolve_root(pair: LevelPair, p0: float, tol: float = DEFAULT_TOL) -> float:
    roots = solve_q(pair, p0, tol)
    if len(roots) != 1:
        raise FitInfeasibleError(
            f"curve E_{pair.upper} = E_{pair.n} has {len(roots)} roots at p0={p0!r}; need exactly one")
    return roots[0]


def design_oscillator(pair_1: LevelPair, pair_2: LevelPair, p0: float, kind: str = "parabola",
                      *, eps: float = 0.1, R: float = 1.0, tol: float = DEFAULT_TOL) -> Design:
    """Full pipeline: solve both curves at p0, fit the conic, pick branches."""
    if kind not in FIT_KINDS:
        raise ArgumentError(f"kind must be one of {FIT_KINDS}, got {kind!r}")
    q_1 = resolve_root(pair_1, p0, tol)
    q_2 = resolve_root(pair_2, p0, tol)
    if q_1 == q_2:
        raise FitInfeasibleError(f"both curves cross p0={p0!r} at the same q")
    spec = FitSpec(min(q_1, q_2), max(q_1, q_2), p0)
    if kind == "parabola":
        relation = fit_parabola(spec)
    elif kind == "hyperbola":
        relation = fit_hyperbola(spec, R)
    else:
        relation = fit_ellipse(spec, eps)
    return Design(relation, default_assignment(pair_1, q_1, pair_2, q_2), (pair_1, pair_2),
                  (q_1, q_2))


def degeneracy_report(table: SpectrumTable, tol: float) -> list[tuple[int, int]]:
    """Every level pair ``(i, j)``, ``i < j``, with ``|E_i - E_j| < tol``."""
    return [(a.n, b.n) for a, b in combinations(table.entries, 2) if abs(a.E - b.E) < tol]
