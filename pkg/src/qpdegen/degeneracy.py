"""Degeneracy curves ``E_{n+k}(q, p) = E_n(q, p)`` in the unit square."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, DomainError, ExcludedPairError, NotApplicableError
from .qp_core import DeformationPoint, energy
from .rootfind import bisect, horner, newton_polish, scan_sign_changes

__all__ = [
    "Family",
    "LevelPair",
    "CurveTrace",
    "classify",
    "residual",
    "residual_coeffs",
    "solve_q",
    "axis_endpoint",
    "trace",
    "DEFAULT_TOL",
    "SCAN_EPS",
    "SCAN_STEPS",
]

DEFAULT_TOL = 1e-12
SCAN_EPS = 1e-6
SCAN_STEPS = 2048


class Family(enum.Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True, order=True)
class LevelPair:
    """Degeneracy request ``E_{n+k} = E_n``.

    ``n != 0`` gives a first-family curve, ``n == 0, k >= 2`` a
    second-family one.  ``(0, 1)`` is rejected outright.
    """

    n: int
    k: int
    family: Family = field(init=False, compare=False)

    def __post_init__(self):
        n, k = self.n, self.k
        if int(n) != n or int(k) != k:
            raise ArgumentError(f"level indices must be integers, got ({n!r}, {k!r})")
        if n < 0 or k < 1:
            raise ArgumentError(f"need n >= 0 and k >= 1, got ({n}, {k})")
        if n == 0 and k == 1:
            raise ExcludedPairError("E_0 = E_1 can never hold (E_1 - E_0 = (q+p)/2 > 0)")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "family", Family.SECOND if n == 0 else Family.FIRST)

    @property
    def upper(self) -> int:
        return self.n + self.k

    @classmethod
    def parse(cls, text: str) -> LevelPair:
        """Build from ``"n:k"``."""
        try:
            n, k = (int(part) for part in text.split(":"))
        except ValueError:
            raise ArgumentError(f"level pair must look like 'n:k', got {text!r}") from None
        return cls(n, k)

    def __str__(self) -> str:
        return f"{self.n}:{self.k}"


def classify(n: int, k: int) -> LevelPair:
    return LevelPair(n, k)


@dataclass(frozen=True)
class CurveTrace:
    pair: LevelPair
    samples: tuple[DeformationPoint, ...]
    tolerance: float


def residual(pair: LevelPair, point: DeformationPoint) -> float:
    """``E_{n+k} - E_n`` at ``point``; symmetric under q<->p."""
    return energy(pair.upper, point) - energy(pair.n, point)


def _energy_coeffs(m: int, p: float) -> list[float]:
    # coefficient of q^r in E_m is (p^(m-r) + p^(m-1-r)) / 2, last term only for r < m
    out = []
    for r in range(m, -1, -1):
        c = p ** (m - r)
        if r < m:
            c += p ** (m - 1 - r)
        out.append(0.5 * c)
    return out


@lru_cache(maxsize=4096)
def residual_coeffs(pair: LevelPair, p: float) -> tuple[float, ...]:
    """Coefficients in q (highest first) of ``E_{n+k} - E_n`` at fixed p.

    These are the power-sum terms of the energies regrouped by powers of q,
    so evaluating them is the same sum of nonnegative monomials.
    """
    hi = _energy_coeffs(pair.upper, p)
    lo = _energy_coeffs(pair.n, p)
    offset = len(hi) - len(lo)
    for i, c in enumerate(lo):
        hi[offset + i] -= c
    return tuple(hi)


def _derivative(coeffs: Sequence[float]) -> list[float]:
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def _roots_at(pair: LevelPair, p: float, tol: float, steps: int = SCAN_STEPS,
              eps: float = SCAN_EPS) -> list[float]:
    """Roots in q of the residual at fixed p; p is not range-checked here."""
    coeffs = residual_coeffs(pair, float(p))
    dcoeffs = _derivative(coeffs)
    grid = np.linspace(eps, 1.0 - eps, steps + 1)
    values = np.polyval(coeffs, grid)

    def f(x):
        return horner(coeffs, x)

    def df(x):
        return horner(dcoeffs, x)

    zeros, flips = scan_sign_changes(values)
    roots = [float(grid[i]) for i in zeros]
    for i in flips:
        a, b = float(grid[i]), float(grid[i + 1])
        x = bisect(f, a, b, tol, fa=float(values[i]))
        roots.append(newton_polish(f, df, x, a, b))
    roots.sort()
    return roots


def solve_q(pair: LevelPair, p0: float, tol: float = DEFAULT_TOL) -> list[float]:
    """All q in ``(0, 1)`` with ``E_{n+k}(q, p0) = E_n(q, p0)``, ascending.

    A uniform sign-change scan over ``q in (1e-6, 1 - 1e-6)`` with 2048
    cells locates brackets; each is bisected to ``tol`` and given one
    Newton polish.  An empty list means the curve does not reach ``p0``.
    """
    if not tol > 0:
        raise ArgumentError(f"tol must be positive, got {tol!r}")
    if not (0.0 < p0 <= 1.0):
        raise DomainError(f"p0={p0!r} outside (0, 1]")
    return _roots_at(pair, p0, tol)


def axis_endpoint(pair: LevelPair) -> float | None:
    """Where a second-family curve meets the q axis (p = 0).

    For ``k = 2`` this is the golden-ratio conjugate ``(sqrt(5) - 1) / 2``.
    """
    if pair.family is not Family.SECOND:
        raise NotApplicableError(
            f"pair {pair} is first-family; those curves end at the corners (1,0) and (0,1)")
    roots = _roots_at(pair, 0.0, 1e-15)
    return roots[0] if roots else None


def default_p_grid() -> np.ndarray:
    return np.linspace(0.01, 1.0, 512)


def trace(pair: LevelPair, p_grid: Iterable[float] | None = None,
          tol: float = DEFAULT_TOL) -> CurveTrace:
    """Sample the curve at each grid value of p, keeping every root."""
    grid = default_p_grid() if p_grid is None else np.asarray(list(p_grid), dtype=float)
    if grid.size == 0:
        raise ArgumentError("p grid is empty")
    samples = []
    for p in sorted(grid):
        for q in solve_q(pair, float(p), tol):
            samples.append(DeformationPoint(q, float(p)))
    return CurveTrace(pair=pair, samples=tuple(samples), tolerance=10.0 * tol)
