"""Exact two-mode Bose-Hubbard layer in the Fock basis |n1, N - n1>.

    H = -J (a1^+ a2 + a2^+ a1) + (U/2) [n1 (n1 - 1) + n2 (n2 - 1)]

is tridiagonal in n1. Coherent states follow

    c_n = sqrt(C(N, n)) ((1+z)/2)^(n/2) ((1-z)/2)^((N-n)/2) exp(i phi (N - n)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError, ShapeError
from .meanfield import DimerParams, PhaseSpacePoint
from .numerics import (EigenDecomposition, TimeSeries, TridiagonalSymmetric, dominant_frequency,
                       eigh_tridiagonal, find_root)


@dataclass(frozen=True)
class QuantumState:
    N: int
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).ravel()
        if a.size != self.N + 1:
            raise ShapeError(f"expected {self.N + 1} amplitudes, got {a.size}")
        object.__setattr__(self, "amplitudes", a)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def mean_n1(self) -> float:
        return float(np.dot(np.abs(self.amplitudes) ** 2, np.arange(self.N + 1)))


@dataclass(frozen=True)
class Spectrum:
    params: DimerParams
    energies: np.ndarray
    states: np.ndarray  # columns, real orthonormal


@dataclass(frozen=True)
class HusimiGrid:
    z_axis: np.ndarray
    phi_axis: np.ndarray
    Q: np.ndarray  # shape (len(z_axis), len(phi_axis))

    def argmax(self) -> tuple[float, float]:
        i, j = np.unravel_index(int(np.argmax(self.Q)), self.Q.shape)
        return float(self.z_axis[i]), float(self.phi_axis[j])


def build_hamiltonian(params: DimerParams) -> TridiagonalSymmetric:
    N = params.N
    n = np.arange(N + 1, dtype=float)
    diag = 0.5 * params.U * (n * (n - 1) + (N - n) * (N - n - 1))
    off = -params.J * np.sqrt((n[:-1] + 1) * (N - n[:-1]))
    return TridiagonalSymmetric(diag, off)


def spectrum(params: DimerParams) -> Spectrum:
    dec = eigh_tridiagonal(build_hamiltonian(params))
    return Spectrum(params, dec.eigenvalues, dec.eigenvectors)


# ---------------------------------------------------------------------------
# exact splitting of the highest doublet

def _top_component_at_start(d: np.ndarray, e: np.ndarray, mu: float, vec: np.ndarray) -> float:
    """|v_0| of the top eigenvector of a tridiagonal block, accurate when tiny.

    The ratios r_i = v_i / v_{i+1} follow r_i = -e_i / (d_i - mu + e_{i-1} r_{i-1});
    for mu above every leading-submatrix eigenvalue the denominators stay
    negative, so the recursion is stable. It is carried up to the component
    of largest magnitude, which the eigensolver gets to full relative accuracy.
    """
    p = int(np.argmax(np.abs(vec)))
    if p == 0:
        return abs(float(vec[0]))
    log_prod = 0.0
    r_prev = 0.0
    for i in range(p):
        den = d[i] - mu + (e[i - 1] * r_prev if i > 0 else 0.0)
        r = -e[i] / den
        log_prod += math.log(abs(r)) if r != 0 else -math.inf
        r_prev = r
    return abs(float(vec[p])) * math.exp(log_prod)


def _secular_terms(mu: np.ndarray, v2: np.ndarray, t: int):
    others = np.delete(np.arange(mu.size), t)
    return mu[others] - mu[t], v2[others]


def exact_splitting(params: DimerParams) -> float:
    """E_N - E_{N-1}: gap between the two highest Bose-Hubbard eigenvalues.

    The reflection n1 -> N - n1 splits H into symmetric and antisymmetric
    blocks that differ only by a rank-one coupling at the centre. The gap is
    obtained from the secular equation of that perturbation around the top
    eigenvalue mu_t of the common outer block, so exponentially small
    splittings keep full relative accuracy instead of being lost in the
    difference of two nearly equal eigenvalues.
    """
    N = params.N
    if N < 1:
        raise DomainError("N must be >= 1")
    m = build_hamiltonian(params)
    d_full, e_full = m.diag, m.offdiag
    if N == 1:
        return 2.0 * abs(e_full[0])
    c = N // 2
    # outer block: n1 = c+1 .. N (odd N: (N+1)/2 .. N), index 0 next to the centre
    start = c + 1 if N % 2 == 0 else (N + 1) // 2
    d = d_full[start:].copy()
    e = e_full[start:].copy()
    dec = eigh_tridiagonal(TridiagonalSymmetric(d, e))
    mu = dec.eigenvalues
    t = mu.size - 1
    v0 = dec.eigenvectors[0, :] ** 2  # squared first components
    v0[t] = _top_component_at_start(d, e, mu[t], dec.eigenvectors[:, t]) ** 2
    gaps, w = _secular_terms(mu, v0, t)  # gaps < 0
    scale = max(1.0, float(np.max(np.abs(mu))))
    xtol = 1e-300

    if N % 2 == 1:
        tc = float(e_full[start - 1])  # coupling across the centre

        def top_shift(sigma):
            # root delta of  sigma v_t^2 - delta (1 + sigma sum w/(gap - delta)) = 0
            def g(delta):
                return sigma * v0[t] - delta * (1.0 + sigma * np.sum(w / (gaps - delta)))
            if v0[t] == 0.0:
                return 0.0
            if sigma > 0:
                lo, hi = 0.0, sigma
            else:
                lo, hi = sigma, 0.0
                if gaps.size and gaps.max() > sigma:
                    pole = gaps.max()
                    lo = pole + 1e-13 * max(abs(pole), scale * 1e-3)
            if g(lo) == 0.0:
                return lo
            if g(hi) == 0.0:
                return hi
            return find_root(g, lo, hi, xtol=xtol)

        return abs(top_shift(-tc) - top_shift(tc))

    # even N: antisymmetric block is the outer block itself; the symmetric one
    # is bordered by the centre state with coupling sqrt(2) * e_centre
    b2 = 2.0 * float(e_full[c]) ** 2
    dc = float(d_full[c]) - mu[t]
    if v0[t] == 0.0:
        return 0.0

    def g(delta):
        return delta * (dc - delta - b2 * np.sum(w / (gaps - delta))) + b2 * v0[t]

    hi = abs(dc) + math.sqrt(b2) + 1.0
    while g(hi) > 0:
        hi *= 2.0
    return find_root(g, 0.0, hi, xtol=xtol)


# ---------------------------------------------------------------------------
# coherent states, Husimi function, evolution

def _log_binom(N: int) -> np.ndarray:
    n = np.arange(N + 1)
    return (math.lgamma(N + 1) - np.array([math.lgamma(k + 1) for k in n])
            - np.array([math.lgamma(N - k + 1) for k in n]))


def _coherent_moduli(N: int, z: np.ndarray, lb: np.ndarray | None = None) -> np.ndarray:
    """|c_n| for each z (rows) computed in log space."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if lb is None:
        lb = _log_binom(N)
    n = np.arange(N + 1)
    # 0 * log 0 must count as 0 (z = +-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        lp = np.log((1.0 + z) / 2.0)[:, None]
        lm = np.log((1.0 - z) / 2.0)[:, None]
        t1 = np.where(n[None, :] == 0, 0.0, 0.5 * n[None, :] * lp)
        t2 = np.where((N - n)[None, :] == 0, 0.0, 0.5 * (N - n)[None, :] * lm)
    return np.exp(0.5 * lb[None, :] + t1 + t2)


def coherent_state(params: DimerParams | int, p: PhaseSpacePoint) -> QuantumState:
    N = params.N if isinstance(params, DimerParams) else int(params)
    mod = _coherent_moduli(N, np.array([p.z]))[0]
    amps = mod * np.exp(1j * p.phi * (N - np.arange(N + 1)))
    amps /= np.linalg.norm(amps)
    return QuantumState(N, amps)


def husimi(state: QuantumState, z_axis, phi_axis) -> HusimiGrid:
    """Q(z, phi) = |<z, phi|psi>|^2 on the product grid."""
    z_axis = np.asarray(z_axis, dtype=float)
    phi_axis = np.asarray(phi_axis, dtype=float)
    N = state.N
    mod = _coherent_moduli(N, z_axis)  # (nz, N+1)
    phases = np.exp(-1j * np.outer(N - np.arange(N + 1), phi_axis))  # conj of coherent phase
    amp = (mod * state.amplitudes[None, :]) @ phases
    Q = np.clip(np.abs(amp) ** 2, 0.0, 1.0)
    return HusimiGrid(z_axis, phi_axis, Q)


def evolve(state: QuantumState, spec: Spectrum, t: float) -> QuantumState:
    """Spectral propagation psi(t) = sum_j exp(-i E_j t) <E_j|psi> |E_j>."""
    if spec.states.shape[0] != state.amplitudes.size:
        raise ShapeError("state and spectrum dimensions differ")
    coef = spec.states.T @ state.amplitudes
    return QuantumState(state.N, spec.states @ (np.exp(-1j * spec.energies * t) * coef))


def population_series(params: DimerParams, p0: PhaseSpacePoint, t_end: float,
                      dt: float, spec: Spectrum | None = None) -> TimeSeries:
    """<n1>(t) sampled every dt for a coherent initial state."""
    spec = spec or spectrum(params)
    psi0 = coherent_state(params, p0)
    coef = spec.states.T @ psi0.amplitudes
    n_steps = max(16, int(math.ceil(t_end / dt)))
    out = np.empty(n_steps + 1)
    n1 = np.arange(params.N + 1, dtype=float)
    # chunked matrix products keep memory bounded
    chunk = 512
    for s in range(0, n_steps + 1, chunk):
        k = np.arange(s, min(s + chunk, n_steps + 1))
        amps = (np.exp(-1j * np.outer(k * dt, spec.energies)) * coef[None, :]) @ spec.states.T
        out[k] = (np.abs(amps) ** 2) @ n1
    return TimeSeries(0.0, dt, out)


def tunneling_frequency_spectral(params: DimerParams, p0: PhaseSpacePoint, t_end: float,
                                 dt: float) -> float:
    """Dominant physical frequency (cycles per second) of <n1>(t)."""
    return dominant_frequency(population_series(params, p0, t_end, dt))


def overlap_weights(params: DimerParams, p: PhaseSpacePoint,
                    spec: Spectrum | None = None) -> np.ndarray:
    """|<E_j|z, phi>|^2 for all eigenstates, in eigenvalue order."""
    spec = spec or spectrum(params)
    return np.abs(spec.states.T @ coherent_state(params, p).amplitudes) ** 2


def top_weights(params: DimerParams, p: PhaseSpacePoint, n_states: int,
                spec: Spectrum | None = None) -> float:
    """Sum of the n_states largest eigenstate weights of a coherent state."""
    if not 1 <= n_states <= params.N + 1:
        raise InvalidInputError(f"n_states must be in [1, {params.N + 1}]")
    w = np.sort(overlap_weights(params, p, spec))[::-1]
    return float(min(np.sum(w[:n_states]), 1.0))


def self_trapping_point(params: DimerParams, sign: int = 1) -> PhaseSpacePoint:
    """Mean-field self-trapping centre (z0, pi) for Lambda = U N / (2 J) > 1."""
    L = params.Lambda
    if L <= 1:
        raise DomainError("no self-trapping fixed point for Lambda <= 1")
    return PhaseSpacePoint(sign * math.sqrt(1.0 - 1.0 / L ** 2), math.pi)
