"""Numerical kernel: tridiagonal eigensolver, Brent root finding, adaptive
quadrature, fixed-step RK4 and dominant-frequency extraction.

Everything here is a pure function of its arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (AccuracyError, BracketError, ConvergenceError, DivergenceError,
                     EvaluationError, InvalidInputError, NoPeakError)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class TridiagonalSymmetric:
    """Real symmetric tridiagonal matrix given by its diagonal and first off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float).ravel()
        e = np.asarray(self.offdiag, dtype=float).ravel()
        if d.size == 0:
            raise InvalidInputError("empty matrix")
        if e.size != d.size - 1:
            raise InvalidInputError(
                f"offdiag must have length {d.size - 1}, got {e.size}")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise InvalidInputError("non-finite matrix entries")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def size(self) -> int:
        return self.diag.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Product T @ v for a vector or a matrix of column vectors."""
        v = np.asarray(v)
        out = self.diag.reshape((-1,) + (1,) * (v.ndim - 1)) * v
        e = self.offdiag.reshape((-1,) + (1,) * (v.ndim - 1))
        out[:-1] += e * v[1:]
        out[1:] += e * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def norm(self) -> float:
        """Max-row-sum norm (an upper bound on the spectral radius)."""
        r = np.abs(self.diag).copy()
        r[:-1] += np.abs(self.offdiag)
        r[1:] += np.abs(self.offdiag)
        return float(r.max())


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None  # columns


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled series; ``samples[i]`` is taken at ``t0 + i*dt``."""

    t0: float
    dt: float
    samples: np.ndarray

    def __post_init__(self):
        if not self.dt > 0:
            raise InvalidInputError("dt must be positive")
        s = np.asarray(self.samples)
        if s.shape[0] < 4:
            raise InvalidInputError("a TimeSeries needs at least 4 samples")
        object.__setattr__(self, "samples", s)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.shape[0])

    def __len__(self):
        return self.samples.shape[0]


# ---------------------------------------------------------------------------
# eigensolver

def eigh_tridiagonal(m: TridiagonalSymmetric, eigenvectors: bool = True,
                     max_iter: int = 60) -> EigenDecomposition:
    """Full spectrum of a symmetric tridiagonal matrix by implicit-shift QL.

    Eigenvalues are returned ascending; eigenvectors (if requested) are the
    columns of an orthonormal matrix. Rotations are applied to rows of the
    transposed eigenvector matrix so each update touches contiguous memory.
    """
    if not isinstance(m, TridiagonalSymmetric):
        m = TridiagonalSymmetric(*m)
    n = m.size
    d = m.diag.tolist()
    e = m.offdiag.tolist() + [0.0]
    zt = np.eye(n) if eigenvectors else None

    for l in range(n):
        it = 0
        while True:
            mm = l
            while mm < n - 1:
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= _EPS * dd:
                    break
                mm += 1
            if mm == l:
                break
            if it == max_iter:
                raise ConvergenceError(f"QL iteration did not converge for eigenvalue {l}", index=l)
            it += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[mm] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(mm - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[mm] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if zt is not None:
                    zi, zi1 = zt[i], zt[i + 1]
                    tmp = zi1.copy()
                    zi1 *= c
                    zi1 += s * zi
                    zi *= c
                    zi -= s * tmp
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[mm] = 0.0

    w = np.array(d)
    order = np.argsort(w, kind="stable")
    vecs = zt[order].T.copy() if zt is not None else None
    return EigenDecomposition(w[order], vecs)


# ---------------------------------------------------------------------------
# root finding

def find_root(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12,
              rtol: float = 4 * _EPS, maxiter: int = 200) -> float:
    """Brent's method on a sign-changing bracket [lo, hi].

    Converges when the bracket is narrower than ``xtol + rtol*|x|``; the
    result always lies inside the initial bracket.
    """
    if not lo < hi:
        raise BracketError("need lo < hi")
    if not xtol > 0:
        raise InvalidInputError("xtol must be positive")

    def ev(x):
        v = float(f(x))
        if math.isnan(v):
            raise EvaluationError(f"function returned NaN at x={x!r}")
        return v

    a, b = float(lo), float(hi)
    fa, fb = ev(a), ev(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={fa:.3g}, {fb:.3g}")
    c, fc = a, fa
    d = e = b - a
    for _ in range(maxiter):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * (xtol + rtol * abs(b))
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = xm
        else:
            d = e = xm
        a, fa = b, fb
        b += d if abs(d) > tol1 else math.copysign(tol1, xm)
        fb = ev(b)
    raise ConvergenceError("find_root exceeded maxiter")


# ---------------------------------------------------------------------------
# quadrature

_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


def quad_adaptive(f: Callable[[float], float], a: float, b: float, rtol: float = 1e-10,
                  max_depth: int = 40, max_panels: int = 20000) -> float:
    """Adaptive Gauss-Legendre quadrature tolerant of endpoint singularities.

    The substitution x = (a+b)/2 - (b-a)/2 cos(theta) turns inverse-square-root
    endpoint singularities into smooth integrands; nodes never touch the
    endpoints. Each panel is compared against its two halves and bisected
    until the difference meets the tolerance. AccuracyError is raised when
    a panel hits ``max_depth`` or more than ``max_panels`` panels are refined.
    """
    if not a < b:
        raise InvalidInputError("need a < b")
    mid, half = 0.5 * (a + b), 0.5 * (b - a)

    def g(theta: np.ndarray) -> np.ndarray:
        x = mid - half * np.cos(theta)
        vals = np.array([f(float(xi)) for xi in x], dtype=float)
        return vals * half * np.sin(theta)

    def panel(lo, hi):
        c, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
        return h * float(np.dot(_GL_W, g(c + h * _GL_X)))

    total_width = math.pi
    whole = panel(0.0, math.pi)
    stack = [(0.0, math.pi, whole, 0)]
    result = 0.0
    abs_tol = None
    failed = False
    refined_count = 0
    while stack:
        lo, hi, est, depth = stack.pop()
        refined_count += 1
        if refined_count > max_panels:
            raise AccuracyError("quad_adaptive: panel budget exhausted", estimate=result + est)
        m = 0.5 * (lo + hi)
        left, right = panel(lo, m), panel(m, hi)
        refined = left + right
        if abs_tol is None:
            abs_tol = max(rtol * abs(refined), 1e-300)
        if not math.isfinite(refined):
            raise EvaluationError("non-finite integrand value")
        if abs(refined - est) <= abs_tol * (hi - lo) / total_width:
            result += refined
        elif depth >= max_depth:
            failed = True
            result += refined
        else:
            stack.append((lo, m, left, depth + 1))
            stack.append((m, hi, right, depth + 1))
    if failed:
        raise AccuracyError("quad_adaptive: recursion depth exhausted", estimate=result)
    return result


# ---------------------------------------------------------------------------
# ODE integration

def integrate_ode(rhs: Callable[[float, np.ndarray], np.ndarray], y0, t_end: float, dt: float,
                  observe: Callable[[np.ndarray], object] | None = None,
                  t0: float = 0.0) -> TimeSeries:
    """Classical fixed-step RK4 from t0 to (at least) t_end.

    ``observe`` maps each state to the recorded sample (default: the state
    itself); use it to avoid storing large states.
    """
    if not dt > 0 or not t_end > t0:
        raise InvalidInputError("need dt > 0 and t_end > t0")
    n_steps = max(3, int(math.ceil((t_end - t0) / dt - 1e-9)))
    obs = observe if observe is not None else (lambda y: np.array(y, copy=True))
    y = np.array(y0, dtype=np.result_type(np.asarray(y0), float), copy=True)
    out = [obs(y)]
    t = t0
    h2 = 0.5 * dt
    for i in range(n_steps):
        with np.errstate(over="ignore", invalid="ignore"):
            k1 = rhs(t, y)
            k2 = rhs(t + h2, y + h2 * k1)
            k3 = rhs(t + h2, y + h2 * k2)
            k4 = rhs(t + dt, y + dt * k3)
            y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (i + 1) * dt
        if not np.all(np.isfinite(y)):
            raise DivergenceError(f"non-finite state at t={t:.6g}", time=t)
        out.append(obs(y))
    return TimeSeries(t0, dt, np.asarray(out))


# ---------------------------------------------------------------------------
# spectra

def dominant_frequency(series: TimeSeries) -> float:
    """Frequency (cycles per unit time) of the strongest nonzero spectral peak.

    Uses the DFT of the mean-subtracted series; the peak bin is refined by a
    parabola through the log-power of its neighbours.
    """
    x = np.asarray(series.samples, dtype=float).ravel()
    n = x.size
    if n < 16:
        raise InvalidInputError("dominant_frequency needs at least 16 samples")
    x = x - x.mean()
    scale = np.max(np.abs(x))
    if scale == 0 or scale <= 1e-13 * max(1.0, np.max(np.abs(series.samples))):
        raise NoPeakError("series is constant")
    power = np.abs(np.fft.rfft(x)) ** 2
    power[0] = 0.0
    i = int(np.argmax(power))
    if i == 0 or power[i] == 0:
        raise NoPeakError("no nonzero-frequency peak")
    shift = 0.0
    if 0 < i < power.size - 1 and power[i - 1] > 0 and power[i + 1] > 0:
        lm, l0, lp = np.log(power[i - 1]), np.log(power[i]), np.log(power[i + 1])
        den = lm - 2 * l0 + lp
        if den < 0:
            shift = float(np.clip(0.5 * (lm - lp) / den, -0.5, 0.5))
    return (i + shift) / (n * series.dt)
