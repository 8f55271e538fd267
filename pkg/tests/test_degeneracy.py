import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpdegen.degeneracy import (Family, LevelPair, axis_endpoint, classify, residual,
                                residual_coeffs, solve_q, trace)
from qpdegen.errors import ArgumentError, DomainError, ExcludedPairError, NotApplicableError
from qpdegen.qp_core import DeformationPoint

unit = st.floats(min_value=1e-3, max_value=1.0)
pairs = st.builds(LevelPair, st.integers(1, 8), st.integers(1, 6)) | st.builds(
    LevelPair, st.just(0), st.integers(2, 12))


def quadratic_root(b, c):
    """Positive root of q^2 + b q + c = 0."""
    return (-b + math.sqrt(b * b - 4 * c)) / 2


def test_classify():
    assert classify(1, 1).family is Family.FIRST
    assert classify(0, 2).family is Family.SECOND
    with pytest.raises(ExcludedPairError):
        classify(0, 1)
    for n, k in [(-1, 2), (2, 0), (1.5, 1)]:
        with pytest.raises(ArgumentError):
            classify(n, k)


def test_parse_and_str():
    pair = LevelPair.parse("3:1")
    assert (pair.n, pair.k, pair.upper, str(pair)) == (3, 1, 4, "3:1")
    with pytest.raises(ArgumentError):
        LevelPair.parse("3-1")


def test_residual_examples():
    assert residual(LevelPair(1, 1), DeformationPoint(0.554400, 0.6)) == pytest.approx(0, abs=1e-6)
    assert residual(LevelPair(1, 1), DeformationPoint(1.0, 1.0)) == 1.0
    for q in np.linspace(0.05, 1.0, 20):
        hand = 0.5 * (q * q + 0.6 * q - 0.64)
        assert residual(LevelPair(1, 1), DeformationPoint(q, 0.6)) == pytest.approx(hand, abs=1e-15)


@settings(max_examples=200)
@given(pair=pairs, q=unit, p=unit)
def test_residual_symmetry_and_coeff_form(pair, q, p):
    r = residual(pair, DeformationPoint(q, p))
    assert abs(r - residual(pair, DeformationPoint(p, q))) < 1e-12
    assert np.polyval(residual_coeffs(pair, p), q) == pytest.approx(r, abs=1e-12)


@pytest.mark.parametrize("n, k", [(1, 1), (3, 1), (0, 2), (0, 10), (2, 5)])
def test_classical_residual_is_gap(n, k):
    assert residual(LevelPair(n, k), DeformationPoint(1.0, 1.0)) == k


@pytest.mark.parametrize("n, k, p0, q", [
    (1, 1, 0.6, 0.554400),
    (3, 1, 0.6, 0.900317),
    (0, 2, 0.4, 0.264365),
    (0, 5, 0.4, 0.721012),
    (0, 4, 0.4, 0.640778),
    # Table 5 lists this root first, but it belongs to E_4 = E_0
    (2, 1, 0.4, 0.916515),
])
def test_solve_q_table_values(n, k, p0, q):
    roots = solve_q(LevelPair(n, k), p0)
    assert len(roots) == 1
    assert roots[0] == pytest.approx(q, abs=1e-6)


def test_solve_q_quadratic_oracle_example():
    assert solve_q(LevelPair(1, 1), 0.6)[0] == pytest.approx(quadratic_root(0.6, -0.64), abs=1e-12)


@settings(max_examples=100)
@given(p0=st.floats(min_value=0.01, max_value=0.99))
def test_solve_q_oracles(p0):
    # E_2 - E_1 = (q^2 + p q + p^2 - 1)/2 ; E_2 - E_0 = (q^2 + (p+1) q + p^2 + p - 1)/2
    (r11,) = solve_q(LevelPair(1, 1), p0)
    assert abs(r11 - quadratic_root(p0, p0 * p0 - 1)) < 1e-10
    roots = solve_q(LevelPair(0, 2), p0)
    c = p0 * p0 + p0 - 1
    if c < 0:
        assert abs(roots[0] - quadratic_root(p0 + 1, c)) < 1e-10
    else:
        assert roots == []


def test_solve_q_errors_and_empty():
    with pytest.raises(ArgumentError):
        solve_q(LevelPair(1, 1), 0.5, tol=0)
    with pytest.raises(DomainError):
        solve_q(LevelPair(1, 1), 1.5)
    # E_2 = E_0 only reaches p < 0.618...
    assert solve_q(LevelPair(0, 2), 0.9) == []


@settings(max_examples=100, deadline=None)
@given(pair=pairs, p0=st.floats(min_value=0.02, max_value=0.99))
def test_roots_verify_and_nothing_missed(pair, p0):
    tol = 1e-12
    roots = solve_q(pair, p0, tol)
    for q in roots:
        assert abs(residual(pair, DeformationPoint(q, p0))) < 10 * tol
    grid = np.linspace(1e-6, 1 - 1e-6, 10_001)
    values = np.polyval(residual_coeffs(pair, p0), grid)
    flips = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) < 0)
    for i in flips:
        assert any(grid[i] - 1e-4 <= q <= grid[i + 1] + 1e-4 for q in roots)


def test_axis_endpoint():
    assert axis_endpoint(LevelPair(0, 2)) == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-12)
    ends = [axis_endpoint(LevelPair(0, k)) for k in range(2, 13)]
    assert all(b > a for a, b in zip(ends, ends[1:]))
    assert ends[-1] < 1
    with pytest.raises(NotApplicableError):
        axis_endpoint(LevelPair(1, 1))


def test_trace_examples():
    tr = trace(LevelPair(1, 1), [0.6])
    assert tr.samples[0].q == pytest.approx(0.554400, abs=1e-6)
    # p is the 6-decimal value; |dq/dp| is about 3 here, so allow 3x the rounding
    tr = trace(LevelPair(0, 10), [0.823554])
    assert tr.samples[0].q == pytest.approx(0.567239, abs=2e-6)
    # the first-family curve runs into the corner (0, 1)
    near_top = trace(LevelPair(1, 1), [0.999]).samples[0]
    assert near_top.q < 0.01
    assert trace(LevelPair(1, 1), [1.0]).samples == ()
    with pytest.raises(ArgumentError):
        trace(LevelPair(1, 1), [])


def test_trace_default_grid_invariants():
    tr = trace(LevelPair(3, 1))
    assert len(tr.samples) > 400
    ps = [s.p for s in tr.samples]
    assert ps == sorted(ps)
    assert all(abs(residual(tr.pair, s)) < tr.tolerance for s in tr.samples)
