"""Semiclassical (Bohr-Sommerfeld with tunneling) splitting of the highest
Bose-Hubbard doublet.

Functions of ``(E, Lam, N)`` work on the classical Hamiltonian
``Lam z^2/2 - sqrt(1-z^2) cos phi`` directly. Functions taking a
:class:`DimerParams` use ``Lam = U (N+1) / (2 J)`` (Langer-shifted spin length
(N+1)/2), for which the energy scale of the classical Hamiltonian is J (N+1).

Conventions
-----------
* ``half_area(E, Lam)`` is half the phase-space area enclosed by the
  self-trapped orbit (in units where the total sphere area is 4 pi); the
  orbit quantization of the highest state reads ``half_area = pi/(N+1)``.
* ``S_w = (N+1) half_area / (4 pi)`` in units of h, so ``S_w = 1/4`` for the
  highest state (its orbit encloses h/2) and the quantization phase is
  ``2 S_w`` (in hbar units) ``= 4 pi S_w``.
* ``S_eps <= 0`` is the Euclidean action across the barrier strip |z| < z-.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError, ValidityError
from .meanfield import DimerParams, e_max, one_minus_zplus2, turning_points
from .numerics import find_root
from .specfun import arg_gamma_half_plus_i, dSphi_dSeps, elliptic_E, elliptic_K, elliptic_Pi


class RotationRegimeWarning(UserWarning):
    """The approximate highest-state orbit is a rotation, outside the closed form's regime."""


@dataclass(frozen=True)
class ActionBundle:
    S_w: float
    S_eps: float
    S_phi: float
    kappa: float


@dataclass(frozen=True)
class SplittingResult:
    E: float  # dimensionless classical energy of the doublet
    e: float  # scaled energy
    deltaE: float  # splitting, angular frequency units
    omega: float  # dimensionless orbit frequency (tau = 2 J t)
    Ebar: float  # doublet centre, angular frequency units
    S_w: float
    S_eps: float
    Lambda: float

    @property
    def frequency(self) -> float:
        """Physical tunneling frequency deltaE / (2 pi)."""
        return self.deltaE / (2.0 * math.pi)


@dataclass(frozen=True)
class FullQuantization:
    E_minus: float  # upper level (root x- of the phase condition)
    E_plus: float  # lower level (root x+)
    deltaE_direct: float
    E_centre: float
    linearized: bool  # True if the pair was too close to resolve by root finding


def _lam_N(arg, N):
    """Resolve (params) or (Lambda, N) call styles to (Lam, N, J)."""
    if isinstance(arg, DimerParams):
        return arg.Lambda_semiclassical, arg.N, arg.J
    if N is None:
        raise InvalidInputError("N is required when a bare Lambda is given")
    return float(arg), int(N), 1.0


# ---------------------------------------------------------------------------
# classical areas and actions

def separatrix_half_area(Lam: float) -> float:
    """half_area on the separatrix E = 1: 2 arctan sqrt(Lam-1) - 2 sqrt(Lam-1)/Lam."""
    if not Lam > 1:
        raise DomainError("Lambda must exceed 1")
    s = math.sqrt(Lam - 1.0)
    return 2.0 * math.atan(s) - 2.0 * s / Lam


def _half_area_closed(E: float, Lam: float) -> float:
    g = turning_points(E, Lam)
    if g.kind == "degenerate":
        return 0.0
    if g.z_minus == 0.0:
        return separatrix_half_area(Lam)
    zp = g.z_plus
    c = (Lam - 2.0 * E) / Lam
    kE = elliptic_E(g.k, kprime=g.k_prime)
    kK = elliptic_K(g.k, kprime=g.k_prime)
    kPi = elliptic_Pi(g.alpha2, g.k, kprime=g.k_prime)
    val = -zp * kE + c / zp * (kK - kPi / one_minus_zplus2(E, Lam))
    if c > 0:  # rotation: the orbit encircles the pole z = 1
        val += math.pi
    return val


def half_area(E: float, Lam: float) -> float:
    """Half the phase-space area of the self-trapped orbit of energy E.

    For librations this is int_{z-}^{z+} (pi - phi(z)) dz; rotations add the
    polar cap pi (1 - z+). The elliptic closed form of the integral
    itself omits pi z+ for rotations, so the total closed form is
    -z+ E(k) + (1 - 2E/Lam)/z+ (K(k) - Pi(alpha2, k)/(1 - z+^2)) + pi 1[rotation].
    """
    g = turning_points(E, Lam)
    if g.z_minus == 0.0:
        return separatrix_half_area(Lam)
    if abs(Lam - 2.0 * E) < 1e-12 * Lam and g.kind != "degenerate":
        # E = Lam/2 exactly is removable; average the two sides
        h = 1e-9 * (e_max(Lam) - 1.0)
        lo, hi = max(E - h, 1.0), min(E + h, e_max(Lam))
        return 0.5 * (_half_area_closed(lo, Lam) + _half_area_closed(hi, Lam))
    return _half_area_closed(E, Lam)


def action_orbit(E: float, Lam: float, N: int) -> float:
    """S_w in units of h; equals 1/4 on the highest quantized orbit."""
    return (N + 1) * half_area(E, Lam) / (4.0 * math.pi)


def tunneling_integral(E: float, Lam: float) -> float:
    """-pi S_eps/(N+1) = -(1 - 2E/Lam)/z+ Pi(1/z+^2, k') + z+ (K(k') - E(k')).

    Pi is the principal value (1/z+^2 >= 1), evaluated as
    K(k') - Pi(k'^2 z+^2, k'), which stays finite as z+ -> 1. On the degenerate orbit the limit
    ln(Lam + sqrt(Lam^2-1)) - sqrt(Lam^2-1)/Lam is returned.
    """
    g = turning_points(E, Lam)
    if g.z_minus == 0.0:
        return 0.0
    if g.kind == "degenerate" or g.k == 0.0:
        w = math.sqrt(Lam * Lam - 1.0)
        return math.log(Lam + w) - w / Lam
    zp = g.z_plus
    kp, k = g.k_prime, g.k  # modulus k' = z-/z+, complement k
    c = (Lam - 2.0 * E) / Lam
    Kp = elliptic_K(kp, kprime=k)
    pi_pv = Kp - elliptic_Pi(kp * kp * zp * zp, kp, kprime=k)
    return -c / zp * pi_pv + zp * (Kp - elliptic_E(kp, kprime=k))


def action_tunneling(E: float, Lam: float, N: int) -> float:
    """S_eps = -((N+1)/pi) int_0^{z-} arccosh((2E - Lam z^2)/(2 sqrt(1-z^2))) dz."""
    return -(N + 1) / math.pi * tunneling_integral(E, Lam)


def phase_correction(S_eps: float) -> float:
    """S_phi = arg Gamma(1/2 + i S_eps) - S_eps ln|S_eps| + S_eps (0 at S_eps = 0)."""
    if S_eps == 0.0:
        return 0.0
    return arg_gamma_half_plus_i(S_eps) - S_eps * math.log(abs(S_eps)) + S_eps


def actions(E: float, Lam: float, N: int) -> ActionBundle:
    S_w = action_orbit(E, Lam, N)
    S_eps = action_tunneling(E, Lam, N)
    return ActionBundle(S_w, S_eps, phase_correction(S_eps), math.exp(-math.pi * S_eps))


def orbit_frequency(E: float, Lam: float) -> float:
    """Dimensionless angular frequency pi Lam z+ / (2 K(k)) of the orbit."""
    g = turning_points(E, Lam)
    if g.kind == "degenerate":
        return math.sqrt(Lam * Lam - 1.0)
    return math.pi * Lam * g.z_plus / (2.0 * elliptic_K(g.k, kprime=g.k_prime))


def dhalf_area_dE(E: float, Lam: float) -> float:
    """d half_area / dE = -2 K(k) / (Lam z+) (minus half the period in tau)."""
    return -math.pi / orbit_frequency(E, Lam)


def dS_eps_dE(E: float, Lam: float, N: int) -> float:
    """d S_eps / dE = -(2 (N+1) / (pi Lam z+)) K(k')."""
    g = turning_points(E, Lam)
    if g.z_minus == 0.0:
        return -(N + 1) / (Lam * g.z_plus)  # K(0) = pi/2
    return -2.0 * (N + 1) / (math.pi * Lam * g.z_plus) * elliptic_K(g.k_prime, kprime=g.k)


# ---------------------------------------------------------------------------
# scaled energy

def scaled_energy(E: float, Lam: float) -> float:
    """e = (E_max - E) 2 Lam / (Lam - 1)^2: 0 at the fixed point, 1 on the separatrix."""
    if not Lam > 1:
        raise DomainError("Lambda must exceed 1")
    return (e_max(Lam) - E) * 2.0 * Lam / (Lam - 1.0) ** 2


def unscale(e: float, Lam: float) -> float:
    if not Lam > 1:
        raise DomainError("Lambda must exceed 1")
    return e_max(Lam) - e * (Lam - 1.0) ** 2 / (2.0 * Lam)


# ---------------------------------------------------------------------------
# quantization

N_PANELS = 64


def _bracket_scan(f, lo, hi, n=N_PANELS):
    xs = np.linspace(lo, hi, n + 1)
    fs = [f(x) for x in xs]
    for i in range(n):
        if fs[i] == 0.0:
            return xs[i], xs[i]
        if (fs[i] > 0) != (fs[i + 1] > 0):
            return xs[i], xs[i + 1]
    return None


def _window(Lam):
    em = e_max(Lam)
    d = 1e-9 * (em - 1.0)
    return 1.0 + d, em - d


def solve_quantization_highest(arg, N: int | None = None) -> float:
    """Energy E of the highest state: half_area(E) = pi/(N+1).

    Accepts a DimerParams (uses Lambda_semiclassical) or a bare Lambda with N.
    """
    Lam, N, _ = _lam_N(arg, N)
    if not Lam > 1:
        raise ValidityError(f"no self-trapping for Lambda={Lam}")
    target = math.pi / (N + 1)
    if separatrix_half_area(Lam) < target:
        raise ValidityError(
            f"self-trapped region smaller than h/2 for Lambda={Lam:.6g}, N={N}")

    def r(E):
        return half_area(E, Lam) - target

    lo, hi = _window(Lam)
    br = _bracket_scan(r, lo, hi)
    if br is None:
        raise ValidityError(f"no quantized orbit in the self-trapped window (Lambda={Lam}, N={N})")
    if br[0] == br[1]:
        return br[0]
    return find_root(r, br[0], br[1], xtol=1e-15)


def validity_boundary(N: int) -> float:
    """Smallest classical Lambda whose self-trapped region holds area h/2.

    Solves separatrix_half_area(Lam) = pi/(N+1). For a Bose-Hubbard dimer the
    corresponding U N/(2 J) is ``Lam * N / (N+1)``.
    """
    if N < 2:
        raise InvalidInputError("N must be >= 2")
    target = math.pi / (N + 1)
    hi = 2.0
    while separatrix_half_area(hi) < target:
        hi *= 2.0
    return find_root(lambda L: separatrix_half_area(L) - target, 1.0 + 1e-15, hi, xtol=1e-14)


def quantization_phase(E: float, Lam: float, N: int) -> float:
    """x(E) = 2 S_w - S_phi in radians, i.e. (N+1) half_area - S_phi(S_eps)."""
    return (N + 1) * half_area(E, Lam) - phase_correction(action_tunneling(E, Lam, N))


def quantization_phase_derivative(E: float, Lam: float, N: int) -> float:
    S = action_tunneling(E, Lam, N)
    dphi = dSphi_dSeps(abs(S)) if S != 0 else 0.0
    return (N + 1) * dhalf_area_dE(E, Lam) - dphi * dS_eps_dE(E, Lam, N)


def phase_derivative_ratio(arg, N: int | None = None) -> float:
    """|S_phi' dS_eps/dE| / |2 dS_w/dE| at the highest-state root."""
    Lam, N, _ = _lam_N(arg, N)
    E = solve_quantization_highest(Lam, N)
    S = action_tunneling(E, Lam, N)
    num = abs(dSphi_dSeps(abs(S)) * dS_eps_dE(E, Lam, N))
    return num / abs((N + 1) * dhalf_area_dE(E, Lam))


def solve_full_quantization(arg, N: int | None = None, doublet: int = 0) -> FullQuantization:
    """Doublet energies from cos(2 S_w - S_phi) = -1/sqrt(1 + exp(2 pi S_eps)).

    The two roots sit at x = (2n+1) pi -+ arctan(exp(pi S_eps)); the x+ root
    (x above (2n+1) pi) is the LOWER energy because x decreases with E.
    ``doublet`` = n selects higher doublets (experimental, untested).
    deltaE_direct is |E- - E+| converted with the energy scale J (N+1);
    with a bare Lambda, J = 1.
    """
    Lam, N, J = _lam_N(arg, N)
    if not Lam > 1:
        raise ValidityError(f"no self-trapping for Lambda={Lam}")
    target = (2 * doublet + 1) * math.pi

    def x(E):
        return quantization_phase(E, Lam, N) - target

    lo, hi = _window(Lam)
    br = _bracket_scan(x, lo, hi)
    if br is None:
        raise ValidityError(f"doublet {doublet} not bracketed (Lambda={Lam}, N={N})")
    Ec = br[0] if br[0] == br[1] else find_root(x, br[0], br[1], xtol=1e-15)
    xp = quantization_phase_derivative(Ec, Lam, N)
    half_gap = math.atan(math.exp(math.pi * action_tunneling(Ec, Lam, N)))
    etas = []
    linearized = True
    for sign in (+1, -1):  # x+ then x-
        eta0 = sign * half_gap / xp
        if abs(eta0) > 1e-7 * abs(Ec):
            linearized = False

            def F(E, sign=sign):
                return x(E) - sign * math.atan(math.exp(math.pi * action_tunneling(E, Lam, N)))

            a, b = Ec, Ec + 3.0 * eta0
            a, b = min(a, b), max(a, b)
            a, b = max(a, lo), min(b, hi)
            if (F(a) > 0) == (F(b) > 0):
                raise ValidityError("doublet roots not bracketed")
            etas.append(find_root(F, a, b, xtol=1e-15) - Ec)
        else:
            etas.append(eta0)
    E_plus, E_minus = Ec + etas[0], Ec + etas[1]
    dE = J * (N + 1) * abs(etas[1] - etas[0])
    return FullQuantization(E_minus, E_plus, dE, Ec, linearized)


def splitting_semiclassical(params: DimerParams) -> SplittingResult:
    """dE = 2 J (omega/pi) exp(pi S_eps) at the highest quantized orbit."""
    Lam, N, J = _lam_N(params, None)
    E = solve_quantization_highest(Lam, N)
    S_eps = action_tunneling(E, Lam, N)
    om = orbit_frequency(E, Lam)
    dE = 2.0 * J * om / math.pi * math.exp(math.pi * S_eps)
    Ebar = J * (N + 1) * E + params.U * N * (N - 2) / 4.0
    return SplittingResult(E, scaled_energy(E, Lam), dE, om, Ebar,
                           action_orbit(E, Lam, N), S_eps, Lam)


# ---------------------------------------------------------------------------
# closed-form large-N approximations

def approx_highest_energy(arg, N: int | None = None) -> float:
    """e ~ 2 Lam sqrt(Lam^2 - 1) / ((Lam - 1)^2 (N + 1)).

    Warns (RotationRegimeWarning) when e exceeds (Lam-1)^-2, where the
    highest orbit is a rotation.
    """
    Lam, N, _ = _lam_N(arg, N)
    if not Lam > 1:
        raise DomainError("Lambda must exceed 1")
    e = 2.0 * Lam * math.sqrt(Lam * Lam - 1.0) / ((Lam - 1.0) ** 2 * (N + 1))
    if e > (Lam - 1.0) ** -2:
        warnings.warn(f"approximate orbit is a rotation (e={e:.3g} > (Lambda-1)^-2)",
                      RotationRegimeWarning, stacklevel=2)
    return e


def approx_splitting_closed_form(arg, N: int | None = None, use_e_correction: bool = True,
                                 e_source: str = "approx") -> float:
    """dE ~ 2 J (w/pi) (exp(z0) / (Lam + w))^((N+1)(1-e)), w = sqrt(Lam^2-1), z0 = sqrt(1-1/Lam^2).

    ``use_e_correction=False`` sets e = 0. ``e_source`` chooses e from the
    closed form ("approx") or from the numerical quantization root ("root").
    """
    Lam, N, J = _lam_N(arg, N)
    if not Lam > 1:
        raise DomainError("Lambda must exceed 1")
    w = math.sqrt(Lam * Lam - 1.0)
    z0 = math.sqrt(1.0 - 1.0 / Lam ** 2)
    if not use_e_correction:
        e = 0.0
    elif e_source == "approx":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RotationRegimeWarning)
            e = approx_highest_energy(Lam, N)
    elif e_source == "root":
        e = scaled_energy(solve_quantization_highest(Lam, N), Lam)
    else:
        raise InvalidInputError(f"unknown e_source {e_source!r}")
    log_base = z0 - math.log(Lam + w)
    return 2.0 * J * w / math.pi * math.exp((N + 1) * (1.0 - e) * log_base)


def entanglement_times(params: DimerParams, source: str = "exact") -> tuple[float, float]:
    """(T/4, 3T/4) with T = 2 pi / dE from the chosen splitting source."""
    from .quantum import exact_splitting  # local import: quantum does not need this module
    if source == "exact":
        dE = exact_splitting(params)
    elif source == "semiclassical":
        dE = splitting_semiclassical(params).deltaE
    elif source == "closed-form":
        dE = approx_splitting_closed_form(params)
    else:
        raise InvalidInputError(f"unknown splitting source {source!r}")
    T = 2.0 * math.pi / dE
    return T / 4.0, 3.0 * T / 4.0
