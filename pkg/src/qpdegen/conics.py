"""Reduction relations ``p = f(q)`` passing through (1, 1).

Four shapes are supported: an upward parabola, the upper sheet of a
vertical hyperbola, the lower arc of an axis-aligned ellipse and a line.
The three conics are fitted through two points at equal height ``p0`` plus
the classical point (1, 1); because the two fit points share ``p0``, each
conic's axis sits at their midpoint.

Branches are plain signs: ``-1`` picks the smaller-q root of the inverted
relation and ``+1`` the larger one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

from .errors import (ArgumentError, DegenerateFitError, DomainError, FitInfeasibleError,
                     NotApplicableError)
from .rootfind import safeguarded_newton

__all__ = [
    "PLUS",
    "MINUS",
    "parse_branch",
    "branch_symbol",
    "FitSpec",
    "ConicRelation",
    "Parabola",
    "Hyperbola",
    "Ellipse",
    "Line",
    "fit_parabola",
    "fit_hyperbola",
    "fit_ellipse",
    "fit_line",
    "invert",
    "p_min",
    "fit_residuals",
]

PLUS = 1
MINUS = -1

# slack for square-root arguments that went slightly negative through rounding
_DISC_SLACK = 1e-14


def parse_branch(value) -> int:
    if value in (1, "+", "+1", "plus"):
        return PLUS
    if value in (-1, "-", "-1", "minus"):
        return MINUS
    raise ArgumentError(f"branch must be '+' or '-', got {value!r}")


def branch_symbol(sign: int) -> str:
    return "+" if sign > 0 else "-"


def _sqrt_disc(value: float, what: str) -> float:
    if value < 0.0:
        if value < -_DISC_SLACK:
            raise DomainError(what)
        return 0.0
    return math.sqrt(value)


@dataclass(frozen=True)
class FitSpec:
    """Two fit points ``(q1, p0)``, ``(q2, p0)`` with ``0 < q1 < q2 < 1``."""

    q1: float
    q2: float
    p0: float

    def __post_init__(self):
        q1, q2, p0 = self.q1, self.q2, self.p0
        if not (0.0 < q1 < q2 <= 1.0):
            raise ArgumentError(f"need 0 < q1 < q2 < 1, got q1={q1!r}, q2={q2!r}")
        if not (0.0 < p0 <= 1.0):
            raise ArgumentError(f"need 0 < p0 < 1, got {p0!r}")
        if q2 == 1.0:
            raise DegenerateFitError("fit point at q=1 coincides with the classical point")
        if p0 == 1.0:
            raise DegenerateFitError("p0=1 puts both fit points level with (1,1)")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.q1 + self.q2)

    @property
    def half_gap(self) -> float:
        return 0.5 * (self.q2 - self.q1)

    def as_dict(self) -> dict:
        return {"q1": self.q1, "q2": self.q2, "p0": self.p0}


class ConicRelation:
    """Common interface of the reduction relations."""

    kind: ClassVar[str]
    param_names: ClassVar[tuple[str, ...]]
    fit_spec: FitSpec | None

    def params(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.param_names}

    def equation_residual(self, q: float, p: float) -> float:
        """Left minus right side of the defining equation at ``(q, p)``."""
        raise NotImplementedError

    def evaluate(self, q: float) -> float:
        """p on the branch of the curve that passes through (1, 1)."""
        raise NotImplementedError

    def invert(self, p: float, branch: int = PLUS) -> float:
        raise NotImplementedError

    def p_min(self) -> float:
        raise NotApplicableError(f"{self.kind} has no p_min")


@dataclass(frozen=True)
class Parabola(ConicRelation):
    """``p = alpha (q - beta)^2 + gamma``."""

    alpha: float
    beta: float
    gamma: float
    fit_spec: FitSpec | None = None

    kind: ClassVar[str] = "parabola"
    param_names: ClassVar[tuple[str, ...]] = ("alpha", "beta", "gamma")

    def equation_residual(self, q, p):
        return self.alpha * (q - self.beta) ** 2 + self.gamma - p

    def evaluate(self, q):
        return self.alpha * (q - self.beta) ** 2 + self.gamma

    def invert(self, p, branch=PLUS):
        branch = parse_branch(branch)
        if self.alpha == 0.0:
            raise DomainError("flat parabola cannot be inverted")
        root = _sqrt_disc((p - self.gamma) / self.alpha,
                          f"p={p!r} below the admissible range [p_min={self.gamma:.6f}, 1]")
        return self.beta + branch * root

    def p_min(self):
        return self.gamma


@dataclass(frozen=True)
class Hyperbola(ConicRelation):
    """``(p - a_t)^2 - b_t (q - c_t)^2 = R^2``, upper sheet."""

    a_t: float
    b_t: float
    c_t: float
    R: float = 1.0
    fit_spec: FitSpec | None = None

    kind: ClassVar[str] = "hyperbola"
    param_names: ClassVar[tuple[str, ...]] = ("a_t", "b_t", "c_t", "R")

    def equation_residual(self, q, p):
        return (p - self.a_t) ** 2 - self.b_t * (q - self.c_t) ** 2 - self.R**2

    def evaluate(self, q):
        return self.a_t + math.sqrt(self.R**2 + self.b_t * (q - self.c_t) ** 2)

    def invert(self, p, branch=PLUS):
        branch = parse_branch(branch)
        lowest = self.p_min()
        if p < lowest - _DISC_SLACK:
            raise DomainError(f"p={p!r} below the admissible range [p_min={lowest:.6f}, 1]")
        root = _sqrt_disc(((p - self.a_t) ** 2 - self.R**2) / self.b_t,
                          f"p={p!r} below the admissible range [p_min={lowest:.6f}, 1]")
        return self.c_t + branch * root

    def p_min(self):
        # lowest p of the upper sheet, taken at the fit midpoint Q (= c_t for fitted curves)
        mid = self.fit_spec.midpoint if self.fit_spec is not None else self.c_t
        return self.a_t + math.sqrt(self.R**2 + self.b_t * (mid - self.c_t) ** 2)


@dataclass(frozen=True)
class Ellipse(ConicRelation):
    """``(q - mu)^2 + eps (p - nu)^2 = rho^2``, lower arc (p <= nu)."""

    mu: float
    nu: float
    rho: float
    eps: float
    fit_spec: FitSpec | None = None

    kind: ClassVar[str] = "ellipse"
    param_names: ClassVar[tuple[str, ...]] = ("mu", "nu", "rho", "eps")

    def equation_residual(self, q, p):
        return (q - self.mu) ** 2 + self.eps * (p - self.nu) ** 2 - self.rho**2

    def evaluate(self, q):
        inner = _sqrt_disc((self.rho**2 - (q - self.mu) ** 2) / self.eps,
                           f"q={q!r} outside the ellipse's q-extent")
        return self.nu - inner

    def invert(self, p, branch=PLUS):
        branch = parse_branch(branch)
        lo, _ = self.p_extremes()
        if p > self.nu:
            raise DomainError(f"p={p!r} above the lower arc (nu={self.nu:.6f})")
        root = _sqrt_disc(self.rho**2 - self.eps * (p - self.nu) ** 2,
                          f"p={p!r} below the ellipse's lowest point {lo:.6f}")
        return self.mu + branch * root

    def p_extremes(self) -> tuple[float, float]:
        """Lowest and highest p on the full ellipse (diagnostic only)."""
        half = self.rho / math.sqrt(self.eps)
        return self.nu - half, self.nu + half

    def p_min(self):
        lo, hi = self.p_extremes()
        raise NotApplicableError(
            f"ellipse admissible range is bounded on both sides (p extremes {lo:.6f}, {hi:.6f})")


@dataclass(frozen=True)
class Line(ConicRelation):
    """``p = alpha q + beta``."""

    alpha: float
    beta: float
    fit_spec: FitSpec | None = None

    kind: ClassVar[str] = "line"
    param_names: ClassVar[tuple[str, ...]] = ("alpha", "beta")

    def equation_residual(self, q, p):
        return self.alpha * q + self.beta - p

    def evaluate(self, q):
        return self.alpha * q + self.beta

    def invert(self, p, branch=PLUS):
        # lines have a single inverse; branch is accepted and ignored
        if self.alpha == 0.0:
            raise DomainError(f"constant relation p={self.beta!r} cannot be solved for q")
        return (p - self.beta) / self.alpha

    def p_min(self):
        if self.alpha < 0.0:
            raise NotApplicableError("decreasing line leaves p <= 1 only at q >= 1")
        if self.alpha == 0.0:
            return self.beta
        return max(self.beta, 0.0)


def fit_parabola(spec: FitSpec) -> Parabola:
    """Parabola through ``(q1, p0)``, ``(q2, p0)`` and ``(1, 1)`` in closed form."""
    q1, q2, p0 = spec.q1, spec.q2, spec.p0
    alpha = (1.0 - p0) / ((1.0 - q1) * (1.0 - q2))
    beta = spec.midpoint
    gamma = 1.0 - alpha * (1.0 - beta) ** 2
    return Parabola(alpha, beta, gamma, fit_spec=spec)


def _hyperbola_center(spec: FitSpec, R: float) -> float:
    """Solve for a_t once c_t is pinned at the midpoint.

    With ``b_t`` eliminated the two remaining equations collapse to
    ``g(a) = (1 - a)^2 - R^2 - r ((p0 - a)^2 - R^2) = 0``,
    ``r = (1 - c_t)^2 / half_gap^2 > 1``.  Only roots with ``a < p0 - R``
    put the fit points on the upper sheet with ``b_t > 0``; there is exactly
    one, since ``g(p0 - R) > 0`` and ``g -> -inf`` as ``a -> -inf``.
    """
    p0 = spec.p0
    r = ((1.0 - spec.midpoint) / spec.half_gap) ** 2

    def g(a):
        return (1.0 - a) ** 2 - R**2 - r * ((p0 - a) ** 2 - R**2)

    def dg(a):
        return -2.0 * (1.0 - a) + 2.0 * r * (p0 - a)

    hi = p0 - R
    lo = hi - 1.0
    for _ in range(200):
        if g(lo) < 0.0:
            break
        lo = hi - 2.0 * (hi - lo)
    else:
        raise FitInfeasibleError("no hyperbola centre with b_t > 0")
    return safeguarded_newton(g, dg, lo, hi, x0=0.0)


def fit_hyperbola(spec: FitSpec, R: float = 1.0) -> Hyperbola:
    """Upper-sheet hyperbola through both fit points and (1, 1)."""
    if not R > 0:
        raise ArgumentError(f"R must be positive, got {R!r}")
    a_t = _hyperbola_center(spec, R)
    b_t = ((spec.p0 - a_t) ** 2 - R**2) / spec.half_gap**2
    if not b_t > 0:
        raise FitInfeasibleError(f"hyperbola fit gives b_t={b_t!r} <= 0")
    return Hyperbola(a_t, b_t, spec.midpoint, R, fit_spec=spec)


def fit_ellipse(spec: FitSpec, eps: float = 0.1) -> Ellipse:
    """Axis-aligned ellipse whose lower arc holds both fit points and (1, 1).

    Subtracting the two point equations leaves a linear equation in nu, so
    the centre height is unique; it must sit above p = 1 for the points to
    share the lower arc.
    """
    if not eps > 0:
        raise ArgumentError(f"eps must be positive, got {eps!r}")
    p0 = spec.p0
    d_fit = spec.half_gap**2
    d_top = (1.0 - spec.midpoint) ** 2
    nu = 0.5 * (p0 + 1.0 - (d_top - d_fit) / (eps * (p0 - 1.0)))
    if not nu > 1.0:
        raise FitInfeasibleError(
            f"ellipse centre nu={nu:.6f} is not above p=1; the points are not on one lower arc")
    rho = math.sqrt(d_top + eps * (1.0 - nu) ** 2)
    return Ellipse(spec.midpoint, nu, rho, eps, fit_spec=spec)


def fit_line(q1: float, p1: float) -> Line:
    """Line through ``(q1, p1)`` and (1, 1)."""
    if q1 == 1.0:
        raise DegenerateFitError("anchor point at q=1 does not fix a line through (1,1)")
    if not (0.0 < q1 < 1.0):
        raise ArgumentError(f"need 0 < q1 < 1, got {q1!r}")
    alpha = (p1 - 1.0) / (q1 - 1.0)
    return Line(alpha, 1.0 - alpha)


def invert(relation: ConicRelation, p: float, branch: int = PLUS) -> float:
    """q on the requested branch of ``relation`` at height ``p``."""
    return relation.invert(p, branch)


def p_min(relation: ConicRelation) -> float:
    """Smallest p for which the inverted relation is real."""
    return relation.p_min()


def fit_residuals(relation: ConicRelation) -> dict[str, float]:
    """Defining-equation residuals at the fit points and at (1, 1)."""
    out = {"classical": relation.equation_residual(1.0, 1.0)}
    spec = relation.fit_spec
    if spec is not None:
        out["point_1"] = relation.equation_residual(spec.q1, spec.p0)
        out["point_2"] = relation.equation_residual(spec.q2, spec.p0)
    return out
