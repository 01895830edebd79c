import math

import numpy as np
import pytest

from dimertunnel.errors import (AccuracyError, BracketError, ConvergenceError, DivergenceError,
                                EvaluationError, InvalidInputError, NoPeakError)
from dimertunnel.numerics import (TimeSeries, TridiagonalSymmetric, dominant_frequency,
                                  eigh_tridiagonal, find_root, integrate_ode, quad_adaptive)


def test_two_by_two():
    r = eigh_tridiagonal(TridiagonalSymmetric([0.0, 0.0], [-1.0]))
    assert np.allclose(r.eigenvalues, [-1, 1], atol=1e-15)


def test_diagonal_matrix():
    r = eigh_tridiagonal(TridiagonalSymmetric([2.5] * 3, [0.0, 0.0]))
    assert np.allclose(r.eigenvalues, 2.5)
    assert np.allclose(np.abs(r.eigenvectors), np.eye(3))


def test_dimer_n2_matches_cubic():
    s2 = math.sqrt(2)
    r = eigh_tridiagonal(TridiagonalSymmetric([1.0, 0.0, 1.0], [-s2, -s2]))
    # characteristic polynomial l^3 - 2 l^2 - 3 l + 4
    roots = np.sort(np.roots([1, -2, -3, 4]).real)
    assert np.allclose(r.eigenvalues, roots, rtol=1e-13)


@pytest.mark.parametrize("n", [1, 5, 60, 200])
def test_random_invariants(n):
    rng = np.random.default_rng(n)
    m = TridiagonalSymmetric(rng.normal(size=n), rng.normal(size=n - 1) * 3)
    r = eigh_tridiagonal(m)
    assert np.all(np.diff(r.eigenvalues) >= 0)
    assert abs(r.eigenvalues.sum() - m.diag.sum()) <= 1e-9 * max(1, abs(m.diag).sum())
    assert np.max(np.abs(r.eigenvectors.T @ r.eigenvectors - np.eye(n))) <= 1e-10
    resid = m.matvec(r.eigenvectors) - r.eigenvectors * r.eigenvalues
    assert np.max(np.linalg.norm(resid, axis=0)) <= 1e-9 * m.norm()


def test_eigenvalues_only_agree():
    rng = np.random.default_rng(3)
    m = TridiagonalSymmetric(rng.normal(size=40), rng.normal(size=39))
    a = eigh_tridiagonal(m).eigenvalues
    b = eigh_tridiagonal(m, eigenvectors=False)
    assert b.eigenvectors is None
    assert np.allclose(a, b.eigenvalues, atol=1e-13)


def test_malformed_inputs():
    with pytest.raises(InvalidInputError):
        TridiagonalSymmetric([1.0, np.nan], [0.0])
    with pytest.raises(InvalidInputError):
        TridiagonalSymmetric([1.0, 2.0], [0.0, 1.0])


def test_convergence_error_names_index():
    m = TridiagonalSymmetric(np.arange(6.0), np.ones(5))
    with pytest.raises(ConvergenceError) as exc:
        eigh_tridiagonal(m, max_iter=0)
    assert exc.value.index == 0


def test_find_root_examples():
    assert find_root(lambda x: x * x - 2, 1, 2, xtol=1e-12) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert find_root(math.cos, 1, 2) == pytest.approx(math.pi / 2, abs=1e-12)
    r = find_root(lambda x: x ** 3, -1, 2, xtol=1e-12)
    assert abs(r) <= 1e-12 and -1 <= r <= 2


def test_find_root_relative_tolerance_for_tiny_roots():
    r = find_root(lambda x: x - 3e-30, 0.0, 1.0, xtol=1e-300)
    assert r == pytest.approx(3e-30, rel=1e-12)


def test_find_root_errors():
    with pytest.raises(BracketError):
        find_root(lambda x: x * x + 1, -1, 1)
    with pytest.raises(EvaluationError):
        find_root(lambda x: math.nan if x > 0.3 else x - 1, 0, 1)


def test_find_root_deterministic():
    f = lambda x: math.exp(x) - 3
    assert find_root(f, 0, 3) == find_root(f, 0, 3)


def test_quad_examples():
    assert quad_adaptive(lambda x: x, 0, 1) == pytest.approx(0.5, rel=1e-12)
    assert quad_adaptive(lambda x: 1 / math.sqrt(1 - x * x), 0, 1) == pytest.approx(math.pi / 2, rel=1e-10)


def test_quad_elliptic_integral_against_agm():
    from conftest import agm_K
    zm, zp = 0.3, 0.9
    k = math.sqrt(1 - (zm / zp) ** 2)
    val = quad_adaptive(lambda z: 1 / math.sqrt((zp * zp - z * z) * (z * z - zm * zm)), zm, zp,
                        rtol=1e-12)
    assert val == pytest.approx(agm_K(k) / zp, rel=1e-10)


@pytest.mark.parametrize("deg", range(6))
def test_quad_polynomials(deg):
    val = quad_adaptive(lambda x: 3 * x ** deg - x, -0.5, 2.0, rtol=1e-12)
    exact = 3 * (2.0 ** (deg + 1) - (-0.5) ** (deg + 1)) / (deg + 1) - (4 - 0.25) / 2
    assert val == pytest.approx(exact, rel=1e-12)


def test_quad_depth_exhaustion():
    with pytest.raises(AccuracyError) as exc:
        quad_adaptive(lambda x: math.sin(1 / x) / x, 1e-6, 1.0, rtol=1e-14, max_depth=3)
    assert exc.value.estimate is not None


def test_rk4_exponential_and_order():
    def err(dt):
        ts = integrate_ode(lambda t, y: -y, np.array([1.0]), 1.0, dt)
        return abs(ts.samples[-1, 0] - math.exp(-1))
    e1, e2 = err(0.1), err(0.05)
    assert e1 < 1e-6
    assert 12 < e1 / e2 < 20  # ~2^4


def test_rk4_rotation_norm():
    w = 2.0
    ts = integrate_ode(lambda t, y: np.array([-w * y[1], w * y[0]]), np.array([1.0, 0.0]), 1.0, 0.01)
    norms = np.linalg.norm(ts.samples, axis=1)
    assert np.max(np.abs(np.diff(norms))) < (0.02) ** 4 * 10
    assert ts.times[-1] >= 1.0 - 1e-12 and ts.times[-1] < 1.0 + 0.01


def test_rk4_divergence():
    with pytest.raises(DivergenceError) as exc:
        integrate_ode(lambda t, y: y * y, np.array([1.0]), 5.0, 0.05)
    assert exc.value.time is not None and exc.value.time < 5.0


def test_timeseries_invariants():
    with pytest.raises(InvalidInputError):
        TimeSeries(0.0, 0.0, np.zeros(10))
    with pytest.raises(InvalidInputError):
        TimeSeries(0.0, 0.1, np.zeros(3))


def test_dominant_frequency():
    t = np.arange(1000) * 0.01
    f = dominant_frequency(TimeSeries(0.0, 0.01, np.sin(2 * np.pi * 3 * t)))
    assert f == pytest.approx(3.0, abs=0.1)
    with pytest.raises(NoPeakError):
        dominant_frequency(TimeSeries(0.0, 0.1, np.full(64, 2.0)))
