"""Classical (mean-field) Bosonic Josephson junction.

Phase space is (z, phi) with z = (N1 - N2)/N in [-1, 1] and the dimensionless
Hamiltonian

    H(z, phi) = Lambda z^2 / 2 - sqrt(1 - z^2) cos(phi),

whose time variable is tau = 2 J t (hbar = 1). For Lambda > 1 the point
(0, pi) is a saddle and self-trapped orbits with 1 < E < E_max surround the
centres z = +-sqrt(1 - 1/Lambda^2), phi = pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, InvalidInputError, PoleError
from .numerics import TimeSeries, integrate_ode
from .specfun import elliptic_K

DEGENERATE_K = 1e-8


@dataclass(frozen=True)
class DimerParams:
    """Bose-Hubbard dimer parameters.

    J and U are angular frequencies (hbar = 1), so an energy splitting dE
    corresponds to a physical frequency dE / (2 pi).
    """

    J: float
    U: float
    N: int

    def __post_init__(self):
        if not (math.isfinite(self.J) and self.J > 0):
            raise InvalidInputError(f"J must be > 0, got {self.J}")
        if not (math.isfinite(self.U) and self.U >= 0):
            raise InvalidInputError(f"U must be >= 0, got {self.U}")
        if int(self.N) != self.N or self.N < 1:
            raise InvalidInputError(f"N must be a positive integer, got {self.N}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def Lambda(self) -> float:
        """Mean-field nonlinearity U N / (2 J)."""
        return self.U * self.N / (2.0 * self.J)

    @property
    def Lambda_semiclassical(self) -> float:
        """Nonlinearity U (N+1) / (2 J) of the Langer-shifted classical Hamiltonian.

        With spin length j + 1/2 = (N+1)/2 the Bose-Hubbard operator maps to
        J (N+1) [Lambda_sc z^2 / 2 - sqrt(1 - z^2) cos phi] + U N (N-2)/4,
        which is the classical function the semiclassical layer quantizes.
        """
        return self.U * (self.N + 1) / (2.0 * self.J)

    @classmethod
    def from_lambda(cls, N: int, Lambda: float, J: float | None = None,
                    U: float | None = None) -> "DimerParams":
        """Build from (N, Lambda) plus exactly one of J or U."""
        if (J is None) == (U is None):
            raise InvalidInputError("give exactly one of J or U together with Lambda")
        if not Lambda > 0:
            raise InvalidInputError("Lambda must be > 0 when used to derive J or U")
        if J is not None:
            return cls(J=float(J), U=2.0 * J * Lambda / N, N=N)
        return cls(J=U * N / (2.0 * Lambda), U=float(U), N=N)


@dataclass(frozen=True)
class PhaseSpacePoint:
    z: float
    phi: float

    def __post_init__(self):
        if not abs(self.z) <= 1.0:
            raise InvalidInputError(f"|z| must be <= 1, got {self.z}")


@dataclass(frozen=True)
class OrbitGeometry:
    E: float
    Lambda: float
    z_minus: float
    z_plus: float
    k: float
    k_prime: float
    alpha2: float
    kind: str  # "libration" | "rotation" | "degenerate"


def bjj_energy(p: PhaseSpacePoint, Lambda: float) -> float:
    return Lambda * p.z ** 2 / 2.0 - math.sqrt(1.0 - p.z ** 2) * math.cos(p.phi)


def e_max(Lambda: float) -> float:
    """Energy of the self-trapping fixed points."""
    return Lambda / 2.0 + 1.0 / (2.0 * Lambda)


def fixed_points(Lambda: float) -> list[tuple[PhaseSpacePoint, str]]:
    if not Lambda > 0:
        raise DomainError("Lambda must be > 0")
    pts = [(PhaseSpacePoint(0.0, 0.0), "center")]
    if Lambda <= 1.0:
        pts.append((PhaseSpacePoint(0.0, math.pi), "center"))
        return pts
    z0 = math.sqrt(1.0 - 1.0 / Lambda ** 2)
    pts += [(PhaseSpacePoint(0.0, math.pi), "saddle"),
            (PhaseSpacePoint(z0, math.pi), "center"),
            (PhaseSpacePoint(-z0, math.pi), "center")]
    return pts


def orbit_phi(z: float, E: float, Lambda: float) -> complex | float:
    """phi on the orbit of energy E at imbalance z, taken in [0, pi].

    At the turning points sin(phi) = 0: phi = pi on the side facing the
    self-trapping centre, phi = 0 at z+ of a rotation orbit.

    Where |(Lambda z^2 - 2E) / (2 sqrt(1-z^2))| > 1 the point is classically
    forbidden; there the complex value pi - i arccosh(|arg|) (or
    i arccosh(arg) when arg > 1) is returned, so callers can test
    ``isinstance(result, complex)``.
    """
    if abs(z) >= 1.0:
        raise PoleError("orbit_phi: |z| = 1 is a pole of the orbit equation")
    arg = (Lambda * z * z - 2.0 * E) / (2.0 * math.sqrt(1.0 - z * z))
    if abs(abs(arg) - 1.0) <= 1e-12:  # turning point up to roundoff
        arg = math.copysign(1.0, arg)
    if arg < -1.0:
        return complex(math.pi, -math.acosh(-arg))
    if arg > 1.0:
        return complex(0.0, math.acosh(arg))
    return math.acos(arg)


def _check_window(E: float, Lambda: float):
    if not Lambda > 1.0:
        raise DomainError(f"self-trapping needs Lambda > 1, got {Lambda}")
    em = e_max(Lambda)
    if not (1.0 <= E <= em * (1 + 4e-16)):
        raise DomainError(f"E={E!r} outside the self-trapped window [1, {em!r}]")


def one_minus_zplus2(E: float, Lambda: float) -> float:
    """1 - z+^2 = ((Lambda - 2E) / (1 + sqrt(1 - 2 E Lambda + Lambda^2)))^2, free of cancellation."""
    root = math.sqrt(max(1.0 - 2.0 * E * Lambda + Lambda * Lambda, 0.0))
    return ((Lambda - 2.0 * E) / (1.0 + root)) ** 2


def turning_points(E: float, Lambda: float) -> OrbitGeometry:
    """Turning points z-, z+ and elliptic moduli of a self-trapped orbit."""
    _check_window(E, Lambda)
    disc = max(1.0 - 2.0 * E * Lambda + Lambda * Lambda, 0.0)
    root = math.sqrt(disc)
    zp2 = (root + Lambda * E - 1.0) * 2.0 / Lambda ** 2
    # z+^2 z-^2 = 4 (E^2 - 1) / Lambda^2 avoids cancellation near E = 1
    zm2 = 4.0 * (E * E - 1.0) / (Lambda ** 2 * zp2)
    zm2 = min(max(zm2, 0.0), zp2)
    zp, zm = math.sqrt(zp2), math.sqrt(zm2)
    k2 = min(4.0 * root / (Lambda ** 2 * zp2), 1.0)  # (z+^2 - z-^2)/z+^2
    k = math.sqrt(k2)
    kp = zm / zp
    omz = one_minus_zplus2(E, Lambda)
    alpha2 = -(zp2 - zm2) / omz if omz > 0 else -math.inf
    if k < DEGENERATE_K:
        kind = "degenerate"
    elif 1.0 - 2.0 * E / Lambda > 0:
        kind = "rotation"
    else:
        kind = "libration"
    return OrbitGeometry(E, Lambda, zm, zp, k, kp, alpha2, kind)


def orbit_period_dimensionless(E: float, Lambda: float) -> float:
    """Period in tau = 2 J t units: 4 K(k) / (Lambda z+)."""
    g = turning_points(E, Lambda)
    if g.kind == "degenerate":
        return 2.0 * math.pi / math.sqrt(Lambda ** 2 - 1.0)
    if g.k_prime == 0.0:
        raise DivergenceError("orbit period diverges on the separatrix (k = 1)")
    return 4.0 * elliptic_K(g.k, kprime=g.k_prime) / (Lambda * g.z_plus)


def orbit_period(E: float, Lambda: float, J: float) -> float:
    """Period in seconds for hopping rate J (angular): 2 K(k) / (J Lambda z+)."""
    return orbit_period_dimensionless(E, Lambda) / (2.0 * J)


def bjj_rhs(Lambda: float):
    """Right-hand side of the equations of motion in tau."""
    def rhs(t, y):
        z, phi = y
        s = 1.0 - z * z
        if s <= 0:
            raise PoleError("trajectory reached |z| = 1")
        r = math.sqrt(s)
        return np.array([-r * math.sin(phi), Lambda * z + z * math.cos(phi) / r])
    return rhs


def bjj_trajectory(p0: PhaseSpacePoint, Lambda: float, t_end: float, dt: float) -> TimeSeries:
    """RK4 trajectory in dimensionless time; samples are rows (z, phi)."""
    if abs(p0.z) >= 1.0:
        raise PoleError("initial |z| must be < 1")
    return integrate_ode(bjj_rhs(Lambda), np.array([p0.z, p0.phi]), t_end, dt)
