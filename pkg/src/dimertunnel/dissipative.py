"""Single-well atom loss: effective non-Hermitian two-level model versus the
N-particle block of the Lindblad master equation.

Loss acts on one well (``leak_well``, default 2, opposite to the initially
populated well 1). Within the N-atom sector the jump term only feeds the
N-1 sector, so

    d rho_N / dt = -i [H, rho_N] - (gamma/2) {n_leak, rho_N}

and tr rho_N(t) is exactly the probability that all N atoms remain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IntegratorToleranceError, InvalidInputError
from .meanfield import DimerParams, PhaseSpacePoint
from .numerics import TimeSeries, integrate_ode
from .quantum import build_hamiltonian, coherent_state, exact_splitting, spectrum

SOURCES = ("exact", "semiclassical", "closed-form", "zero")


@dataclass(frozen=True)
class TwoLevelEffective:
    """H_eff = [[Ebar - i G1/2, dE/2], [dE/2, Ebar - i G2/2]] in the localized basis.

    |1> = (|E_S> + |E_A>)/sqrt(2) lives in the non-leaking well and carries
    the initial population; the rates are stored as nonnegative magnitudes.
    """

    Ebar: float
    deltaE: float
    Gamma1: float
    Gamma2: float

    def __post_init__(self):
        if self.Gamma1 < 0 or self.Gamma2 < 0:
            raise InvalidInputError("decay rates must be >= 0")
        if self.deltaE < 0:
            raise InvalidInputError("deltaE must be >= 0")

    def hamiltonian(self) -> np.ndarray:
        return np.array([[self.Ebar - 0.5j * self.Gamma1, 0.5 * self.deltaE],
                         [0.5 * self.deltaE, self.Ebar - 0.5j * self.Gamma2]])


@dataclass(frozen=True)
class SectorDensityMatrix:
    N: int
    rho: np.ndarray

    def check(self, tol: float = 1e-8) -> None:
        r = self.rho
        if np.max(np.abs(r - r.conj().T)) > 1e-10:
            raise IntegratorToleranceError("density matrix lost Hermiticity")
        tr = float(np.trace(r).real)
        if tr > 1.0 + tol or tr < -tol:
            raise IntegratorToleranceError(f"trace {tr!r} outside [0, 1]")
        if np.linalg.eigvalsh(0.5 * (r + r.conj().T)).min() < -1e-10:
            raise IntegratorToleranceError("density matrix is not positive semidefinite")


def localized_pair(params: DimerParams, leak_well: int = 2):
    """Top-pair energies and the localized combinations (|1> in the non-leaking well)."""
    spec = spectrum(params)
    vs, va = spec.states[:, -1], spec.states[:, -2]
    a, b = (vs + va) / math.sqrt(2.0), (vs - va) / math.sqrt(2.0)
    n1 = np.arange(params.N + 1)
    keep = a if (np.dot(a * a, n1) > np.dot(b * b, n1)) == (leak_well == 2) else b
    other = b if keep is a else a
    return spec.energies[-1], spec.energies[-2], keep, other


def effective_two_level(params: DimerParams, gamma: float, splitting_source: str = "exact",
                        leak_well: int = 2) -> TwoLevelEffective:
    """Gamma_i = gamma <i|n_leak|i> from the exact top pair; dE from ``splitting_source``."""
    from . import semiclassical as sc
    if gamma < 0:
        raise InvalidInputError("gamma must be >= 0")
    if leak_well not in (1, 2):
        raise InvalidInputError("leak_well must be 1 or 2")
    e_top, e_next, v1, v2 = localized_pair(params, leak_well)
    n_leak = np.arange(params.N + 1, dtype=float)
    if leak_well == 2:
        n_leak = params.N - n_leak
    g1 = gamma * float(np.dot(v1 * v1, n_leak))
    g2 = gamma * float(np.dot(v2 * v2, n_leak))
    Ebar = float(0.5 * (e_top + e_next))
    if splitting_source == "exact":
        dE = exact_splitting(params)
    elif splitting_source == "semiclassical":
        res = sc.splitting_semiclassical(params)
        dE = res.deltaE
    elif splitting_source == "closed-form":
        dE = sc.approx_splitting_closed_form(params)
    elif splitting_source == "zero":
        dE = 0.0
    else:
        raise InvalidInputError(f"unknown splitting source {splitting_source!r}")
    return TwoLevelEffective(Ebar, dE, g1, g2)


def survival_two_level(h: TwoLevelEffective, t) -> np.ndarray | float:
    """||exp(-i H_eff t) (1, 0)^T||^2 via the closed-form 2x2 exponential."""
    t_arr = np.asarray(t, dtype=float)
    # drop Ebar (global phase); M = -i H' = [[a, c], [c, b]]
    a = -0.5 * h.Gamma1
    b = -0.5 * h.Gamma2
    c = -0.5j * h.deltaE
    m = 0.5 * (a + b)
    s = np.sqrt(complex((0.5 * (a - b)) ** 2 + c * c))
    st = s * t_arr
    cosh = np.cosh(st)
    with np.errstate(invalid="ignore", divide="ignore"):
        sinhc = np.where(np.abs(st) < 1e-8, t_arr * (1 + st ** 2 / 6), np.sinh(st) / s)
    pref = np.exp(m * t_arr)
    psi1 = pref * (cosh + 0.5 * (a - b) * sinhc)
    psi2 = pref * c * sinhc
    out = np.abs(psi1) ** 2 + np.abs(psi2) ** 2
    return float(out) if out.ndim == 0 else out


def default_dt(params: DimerParams, gamma: float) -> float:
    """min(0.01/gamma, 0.01/||H||), ||H|| taken as the spectral spread (the commutator norm)."""
    H = build_hamiltonian(params)
    spread = float(np.ptp(spectrum(params).energies))
    spread = spread if spread > 0 else H.norm()
    cands = [0.01 / spread] if spread > 0 else []
    if gamma > 0:
        cands.append(0.01 / gamma)
    return min(cands) if cands else 0.01


def survival_master_equation(params: DimerParams, gamma: float, p0: PhaseSpacePoint,
                             t_end: float, dt: float | None = None, leak_well: int = 2,
                             check_every: int = 100) -> TimeSeries:
    """tr rho_N(t) for a coherent initial state, by RK4 on the N-sector block."""
    if gamma < 0:
        raise InvalidInputError("gamma must be >= 0")
    if leak_well not in (1, 2):
        raise InvalidInputError("leak_well must be 1 or 2")
    dt = dt if dt is not None else default_dt(params, gamma)
    N = params.N
    Hd = build_hamiltonian(params).to_dense()
    Hd = Hd - np.trace(Hd) / (N + 1) * np.eye(N + 1)  # commutator unaffected
    n_leak = np.arange(N + 1, dtype=float)
    if leak_well == 2:
        n_leak = N - n_leak
    # -i[H, rho] - (gamma/2){D, rho} = A rho + rho A^+ with A = -iH - (gamma/2)D
    A = -1j * Hd - 0.5 * gamma * np.diag(n_leak)
    Ah = A.conj().T

    def rhs(t, rho):
        return A @ rho + rho @ Ah

    psi = coherent_state(params, p0).amplitudes
    rho0 = np.outer(psi, psi.conj())
    counter = [0]

    def observe(rho):
        counter[0] += 1
        if counter[0] % check_every == 0:
            SectorDensityMatrix(N, rho).check()
        tr = float(np.trace(rho).real)
        if tr > 1.0 + 1e-8 or tr < -1e-8:
            raise IntegratorToleranceError(f"trace {tr!r} outside [0, 1]")
        return tr

    return integrate_ode(rhs, rho0, t_end, dt, observe=observe)
