"""Crossings of two degeneracy curves inside the open unit square."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .degeneracy import LevelPair, _derivative, _roots_at, residual, residual_coeffs
from .errors import ArgumentError
from .qp_core import DeformationPoint
from .rootfind import horner, newton_2d

__all__ = ["IntersectionPoint", "intersect_curves", "refine_intersection", "SWEEP_STEPS"]

SWEEP_STEPS = 4096
SWEEP_RANGE = (0.02, 0.999)
# roots of curve 1 farther apart than this between sweep samples are different branches
_BRANCH_JUMP = 0.05
_SWEEP_TOL = 1e-13


@dataclass(frozen=True)
class IntersectionPoint:
    q: float
    p: float
    pair1: LevelPair
    pair2: LevelPair
    residual1: float
    residual2: float


def _res(pair, q, p):
    return horner(residual_coeffs(pair, p), q)


def _dres_dq(pair, q, p):
    return horner(_derivative(residual_coeffs(pair, p)), q)


def refine_intersection(pair1: LevelPair, pair2: LevelPair, q: float, p: float,
                        tol: float = 1e-15) -> tuple[float, float]:
    """Polish an approximate crossing with damped 2-D Newton.

    The p-derivative comes from q<->p symmetry: d/dp r(q, p) = d/dq r(p, q).
    """
    def F(x):
        return np.array([_res(pair1, x[0], x[1]), _res(pair2, x[0], x[1])])

    def J(x):
        qq, pp = x
        return np.array([
            [_dres_dq(pair1, qq, pp), _dres_dq(pair1, pp, qq)],
            [_dres_dq(pair2, qq, pp), _dres_dq(pair2, pp, qq)],
        ])

    x, _ = newton_2d(F, J, (q, p), tol=tol)
    return float(x[0]), float(x[1])


def _nearest(roots, target):
    if not roots:
        return None
    best = min(roots, key=lambda r: abs(r - target))
    return best if abs(best - target) <= _BRANCH_JUMP else None


def _bisect_in_p(pair1, pair2, p_lo, q_lo, g_lo, p_hi, q_hi, max_iter=60):
    """Bisect g(p) = residual2(q1(p), p) along one branch of curve 1."""
    for _ in range(max_iter):
        if p_hi - p_lo <= 1e-15:
            break
        p_mid = 0.5 * (p_lo + p_hi)
        guess = q_lo + (q_hi - q_lo) * (p_mid - p_lo) / (p_hi - p_lo)
        q_mid = _nearest(_roots_at(pair1, p_mid, _SWEEP_TOL), guess)
        if q_mid is None:
            break
        g_mid = _res(pair2, q_mid, p_mid)
        if g_mid == 0.0:
            return q_mid, p_mid
        if (g_mid < 0.0) == (g_lo < 0.0):
            p_lo, q_lo, g_lo = p_mid, q_mid, g_mid
        else:
            p_hi, q_hi = p_mid, q_mid
    return 0.5 * (q_lo + q_hi), 0.5 * (p_lo + p_hi)


def intersect_curves(pair1: LevelPair, pair2: LevelPair, tol: float = 1e-10,
                     steps: int = SWEEP_STEPS) -> list[IntersectionPoint]:
    """All interior points where both degeneracy conditions hold.

    Curve 1 is followed through a sweep in p (each root branch separately)
    and curve 2's residual is watched for sign changes along it.  Crossings
    are bisected in p, polished with 2-D Newton and kept if both residuals,
    re-evaluated from the energies, fall below ``tol``.  The q<->p mirror of
    every crossing is added when it is a different point.  An empty result
    means nothing was found at this sweep resolution.
    """
    if pair1 == pair2:
        raise ArgumentError("the two level pairs must differ")
    if not tol > 0:
        raise ArgumentError(f"tol must be positive, got {tol!r}")
    grid = np.linspace(*SWEEP_RANGE, steps)
    prev = None  # (p, roots, g-values)
    candidates = []
    for p in grid:
        p = float(p)
        roots = _roots_at(pair1, p, _SWEEP_TOL)
        gvals = [_res(pair2, q, p) for q in roots]
        if prev is not None:
            p0, roots0, g0 = prev
            for q_a, g_a in zip(roots0, g0):
                q_b = _nearest(roots, q_a)
                if q_b is None:
                    continue
                g_b = gvals[roots.index(q_b)]
                if g_a == 0.0:
                    candidates.append((q_a, p0))
                elif g_a * g_b < 0.0:
                    candidates.append(_bisect_in_p(pair1, pair2, p0, q_a, g_a, p, q_b))
        prev = (p, roots, gvals)

    found: list[tuple[float, float]] = []

    def add(q, p):
        if not all(abs(q - fq) > 1e-8 or abs(p - fp) > 1e-8 for fq, fp in found):
            return
        if not (0.0 < q < 1.0 and 0.0 < p < 1.0):
            return
        point = DeformationPoint(q, p)
        if abs(residual(pair1, point)) < tol and abs(residual(pair2, point)) < tol:
            found.append((q, p))

    for q, p in candidates:
        add(*refine_intersection(pair1, pair2, q, p))
    for q, p in list(found):
        add(p, q)

    found.sort()
    out = []
    for q, p in found:
        point = DeformationPoint(q, p)
        out.append(IntersectionPoint(q, p, pair1, pair2, residual(pair1, point),
                                     residual(pair2, point)))
    return out
