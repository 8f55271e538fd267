"""Brackets, energies and truncated Fock matrices of the q,p-deformed oscillator.

The algebra is ``a a+ - q a+ a = p^N``, ``a a+ - p a+ a = q^N`` with
``[N, a] = -a`` and ``[N, a+] = a+``.  Both deformation parameters are real
and live in ``(0, 1]``; ``hbar * omega`` is set to one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DomainError

__all__ = [
    "EPS_EQ",
    "DeformationPoint",
    "FockRep",
    "qp_bracket",
    "energy",
    "build_fock_rep",
    "verify_algebra",
]

# relative |q - p| below which the quotient form is replaced by its limit
EPS_EQ = 1e-9


@dataclass(frozen=True)
class DeformationPoint:
    """A pair of real deformation parameters, both in ``(0, 1]``."""

    q: float
    p: float

    def __post_init__(self):
        for name in ("q", "p"):
            value = getattr(self, name)
            # written so that NaN fails too
            if not (0.0 < value <= 1.0):
                raise DomainError(f"{name}={value!r} outside (0, 1]")

    def swapped(self) -> DeformationPoint:
        return DeformationPoint(self.p, self.q)


def _power_sum(m: int, q: float, p: float) -> float:
    """[[m]] as sum_{r<m} q^r p^(m-1-r), paired so that q<->p is exact."""
    total = 0.0
    last = m - 1
    for r in range(m // 2):
        total += q**r * p ** (last - r) + q ** (last - r) * p**r
    if m % 2:
        mid = last // 2
        total += q**mid * p**mid
    return total


def qp_bracket(x: float, point: DeformationPoint) -> float:
    """Evaluate the q,p-bracket ``[[x]] = (q^x - p^x) / (q - p)``.

    Integer ``x`` always goes through the cancellation-free power sum.  For
    non-integer ``x`` the quotient is used unless ``|q - p|`` is below
    ``EPS_EQ`` relative to ``max(q, p)``, where the limit ``x * q^(x-1)`` is
    taken instead (evaluated at the mean of q and p to stay symmetric).
    """
    if not isinstance(point, DeformationPoint):
        raise DomainError(f"expected a DeformationPoint, got {point!r}")
    x = float(x)
    if not x >= 0.0:
        raise ArgumentError(f"bracket argument must be >= 0, got {x!r}")
    q, p = point.q, point.p
    if x.is_integer():
        return _power_sum(int(x), q, p)
    if abs(q - p) <= EPS_EQ * max(q, p):
        mean = 0.5 * (q + p)
        return x * mean ** (x - 1.0)
    return (q**x - p**x) / (q - p)


def energy(n: float, point: DeformationPoint) -> float:
    """Level energy ``E_n = ([[n+1]] + [[n]]) / 2``.

    Real ``n`` is accepted for drawing continuous curves; only integer
    levels are physical.
    """
    n = float(n)
    if not n >= 0.0:
        raise ArgumentError(f"level index must be >= 0, got {n!r}")
    return 0.5 * (qp_bracket(n + 1.0, point) + qp_bracket(n, point))


@dataclass(frozen=True, eq=False)
class FockRep:
    """Ladder operators truncated to the first ``dim`` basis states."""

    dim: int
    a: np.ndarray
    a_dag: np.ndarray
    n_op: np.ndarray
    point: DeformationPoint


def build_fock_rep(point: DeformationPoint, dim: int) -> FockRep:
    """Matrices of ``a``, ``a+`` and ``N`` on ``|0>, ..., |dim-1>``.

    ``a|n> = sqrt([[n]]) |n-1>``, so ``a[n-1, n] = sqrt([[n]])`` and
    ``a+`` is the transpose.
    """
    if int(dim) != dim or dim < 2:
        raise ArgumentError(f"dim must be an integer >= 2, got {dim!r}")
    dim = int(dim)
    ladder = np.array([math.sqrt(qp_bracket(n, point)) for n in range(1, dim)])
    a = np.diag(ladder, k=1)
    n_op = np.diag(np.arange(dim, dtype=float))
    return FockRep(dim=dim, a=a, a_dag=a.T.copy(), n_op=n_op, point=point)


def verify_algebra(rep: FockRep) -> dict[str, float]:
    """Max-norm residual of each defining relation on ``rep``.

    The last basis vector is dropped from every comparison because
    ``a a+`` is incomplete there after truncation.  Corrupted matrices are
    reported through large residuals, never through an exception.
    """
    q, p = rep.point.q, rep.point.p
    a, ad, num = rep.a, rep.a_dag, rep.n_op
    levels = range(rep.dim)
    ad_a = ad @ a
    a_ad = a @ ad
    p_pow_n = np.diag([p**n for n in levels])
    q_pow_n = np.diag([q**n for n in levels])
    bracket_n = np.diag([qp_bracket(n, rep.point) for n in levels])
    bracket_n1 = np.diag([qp_bracket(n + 1, rep.point) for n in levels])
    relations = {
        "aa+ - q a+a - p^N": a_ad - q * ad_a - p_pow_n,
        "aa+ - p a+a - q^N": a_ad - p * ad_a - q_pow_n,
        "[N,a] + a": num @ a - a @ num + a,
        "[N,a+] - a+": num @ ad - ad @ num - ad,
        "a+a - [[N]]": ad_a - bracket_n,
        "aa+ - [[N+1]]": a_ad - bracket_n1,
    }
    inner = slice(0, rep.dim - 1)
    return {name: float(np.max(np.abs(m[inner, inner]))) for name, m in relations.items()}
