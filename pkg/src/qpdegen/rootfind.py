"""Small root-finding kit: sign-change scan, bisection, safeguarded Newton.

Everything here is scalar and deterministic.  The degeneracy residuals are
low-degree polynomials, so plain bracketing plus a Newton polish is enough.
"""
from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

Func = Callable[[float], float]


def horner(coeffs: Sequence[float], x: float) -> float:
    """Polynomial value, coefficients ordered highest power first."""
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def scan_sign_changes(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Indices of exact zeros, and of intervals ``[i, i+1]`` with a sign flip."""
    s = np.sign(values)
    zeros = np.flatnonzero(s == 0)
    flips = np.flatnonzero(s[:-1] * s[1:] < 0)
    return zeros, flips


def bisect(f: Func, a: float, b: float, tol: float, fa: float | None = None,
           max_iter: int = 200) -> float:
    """Shrink the sign-change bracket ``[a, b]`` to width ``tol``."""
    if fa is None:
        fa = f(a)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def newton_polish(f: Func, df: Func, x: float, lo: float, hi: float) -> float:
    """One Newton step, kept only if it stays in ``[lo, hi]`` and helps."""
    fx = f(x)
    d = df(x)
    if fx == 0.0 or d == 0.0 or not np.isfinite(d):
        return x
    x1 = x - fx / d
    if lo <= x1 <= hi and abs(f(x1)) <= abs(fx):
        return x1
    return x


def safeguarded_newton(f: Func, df: Func, lo: float, hi: float, x0: float,
                       tol: float = 1e-15, max_iter: int = 100) -> float:
    """Newton iteration confined to the sign-change bracket ``[lo, hi]``.

    A Newton step that leaves the current bracket, or does not at least
    halve the residual, is replaced by a bisection step.  ``x0`` outside
    the bracket is moved to its midpoint.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise ValueError("bracket does not straddle a sign change")
    x = x0 if lo < x0 < hi else 0.5 * (lo + hi)
    fx = f(x)
    for _ in range(max_iter):
        if fx == 0.0:
            return x
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi = x
        d = df(x)
        step_ok = d != 0.0
        if step_ok:
            xn = x - fx / d
            step_ok = lo < xn < hi
        if step_ok:
            fn = f(xn)
            step_ok = abs(fn) <= 0.5 * abs(fx)
        if not step_ok:
            xn = 0.5 * (lo + hi)
            fn = f(xn)
        if abs(xn - x) <= tol * max(1.0, abs(x)) or hi - lo <= tol:
            return xn
        x, fx = xn, fn
    return x


def newton_2d(F: Callable[[np.ndarray], np.ndarray],
              J: Callable[[np.ndarray], np.ndarray],
              x0: Sequence[float], tol: float = 1e-14,
              max_iter: int = 50) -> tuple[np.ndarray, float]:
    """Damped Newton for two equations in two unknowns.

    The full step is halved until the max-norm residual decreases; the
    iteration stops once it drops below ``tol`` or no step helps.
    Returns the final point and its residual norm.
    """
    x = np.asarray(x0, dtype=float)
    fx = F(x)
    norm = float(np.max(np.abs(fx)))
    for _ in range(max_iter):
        if norm <= tol:
            break
        try:
            step = np.linalg.solve(J(x), -fx)
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        improved = False
        while lam > 1e-6:
            trial = x + lam * step
            ft = F(trial)
            nt = float(np.max(np.abs(ft)))
            if nt < norm:
                x, fx, norm = trial, ft, nt
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    return x, norm
