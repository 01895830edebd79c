"""Special functions: Carlson symmetric integrals, complete Legendre elliptic
integrals, and the complex log-gamma / digamma pieces of the phase correction.

All Legendre integrals take the MODULUS k, not the parameter m = k**2:

    K(k)     = int_0^{pi/2} dt / sqrt(1 - k^2 sin^2 t)
    E(k)     = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt
    Pi(n, k) = int_0^{pi/2} dt / ((1 - n sin^2 t) sqrt(1 - k^2 sin^2 t))

For n > 1 the integral of Pi is taken as a Cauchy principal value.
"""
from __future__ import annotations

import cmath
import math

from .errors import DivergenceError, DomainError, PoleError

_R_TOL = 1e-16  # Carlson's r parameter; the truncation error is O(r)


def _check_args(*args):
    for a in args:
        if not math.isfinite(a) or a < 0:
            raise DomainError(f"Carlson arguments must be finite and >= 0, got {args}")


def carlson_rc(x: float, y: float) -> float:
    """Degenerate integral R_C(x, y) = R_F(x, y, y) for x >= 0, y > 0."""
    if x < 0 or y <= 0:
        raise DomainError("carlson_rc needs x >= 0, y > 0")
    if x == y:
        return 1.0 / math.sqrt(x)
    d = (y - x) / y
    if abs(d) < 1e-4:  # asin(sqrt(d))/sqrt(d) expanded about d = 0
        return (1 + d / 6 + 3 * d * d / 40 + 5 * d ** 3 / 112 + 35 * d ** 4 / 1152) / math.sqrt(y)
    if x < y:
        return math.atan(math.sqrt((y - x) / x)) / math.sqrt(y - x) if x > 0 else \
            0.5 * math.pi / math.sqrt(y)
    return math.atanh(math.sqrt((x - y) / x)) / math.sqrt(x - y)


def carlson_rf(x: float, y: float, z: float) -> float:
    """R_F(x, y, z) by Carlson's duplication algorithm."""
    _check_args(x, y, z)
    if (x == 0) + (y == 0) + (z == 0) >= 2:
        raise DomainError("carlson_rf: at most one argument may be zero")
    a0 = a = (x + y + z) / 3.0
    q = (3.0 * _R_TOL) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    x0, y0 = x, y
    f = 1.0
    while q * f >= abs(a):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x, y, z, a = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4, (a + lam) / 4
        f *= 0.25
    X = (a0 - x0) * f / a
    Y = (a0 - y0) * f / a
    Z = -X - Y
    e2 = X * Y - Z * Z
    e3 = X * Y * Z
    return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / math.sqrt(a)


def carlson_rd(x: float, y: float, z: float) -> float:
    """R_D(x, y, z) = R_J(x, y, z, z); needs z > 0 and at most one of x, y zero."""
    _check_args(x, y, z)
    if z == 0 or (x == 0 and y == 0):
        raise DomainError("carlson_rd: z must be > 0 and x + y > 0")
    a0 = a = (x + y + 3.0 * z) / 5.0
    q = (_R_TOL / 4.0) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    x0, y0 = x, y
    f = 1.0
    acc = 0.0
    while q * f >= abs(a):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        acc += f / (sz * (z + lam))
        x, y, z, a = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4, (a + lam) / 4
        f *= 0.25
    X = (a0 - x0) * f / a
    Y = (a0 - y0) * f / a
    Z = -(X + Y) / 3
    xy = X * Y
    e2 = xy - 6 * Z * Z
    e3 = (3 * xy - 8 * Z * Z) * Z
    e4 = 3 * (xy - Z * Z) * Z * Z
    e5 = xy * Z ** 3
    series = (1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22
              - 9 * e2 * e3 / 52 + 3 * e5 / 26)
    return f * a ** -1.5 * series + 3.0 * acc


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """R_J(x, y, z, p) for p > 0 and at most one of x, y, z zero."""
    _check_args(x, y, z, p)
    if p == 0:
        raise DomainError("carlson_rj: the real case needs p > 0")
    if (x == 0) + (y == 0) + (z == 0) >= 2:
        raise DomainError("carlson_rj: at most one of x, y, z may be zero")
    a0 = a = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    q = (_R_TOL / 4.0) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    x0, y0, z0 = x, y, z
    f = 1.0
    acc = 0.0
    while q * f >= abs(a):
        sx, sy, sz, sp = math.sqrt(x), math.sqrt(y), math.sqrt(z), math.sqrt(p)
        lam = sx * sy + sy * sz + sz * sx
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = f ** 3 * delta / (d * d)
        acc += f / d * carlson_rc(1.0, 1.0 + e)
        x, y, z, p, a = ((x + lam) / 4, (y + lam) / 4, (z + lam) / 4, (p + lam) / 4,
                         (a + lam) / 4)
        f *= 0.25
    X = (a0 - x0) * f / a
    Y = (a0 - y0) * f / a
    Z = (a0 - z0) * f / a
    P = (-X - Y - Z) / 2
    e2 = X * Y + X * Z + Y * Z - 3 * P * P
    e3 = X * Y * Z + 2 * e2 * P + 4 * P ** 3
    e4 = (2 * X * Y * Z + e2 * P + 3 * P ** 3) * P
    e5 = X * Y * Z * P * P
    series = (1 - 3 * e2 / 14 + e3 / 6 + 9 * e2 * e2 / 88 - 3 * e4 / 22
              - 9 * e2 * e3 / 52 + 3 * e5 / 26)
    return f * a ** -1.5 * series + 6.0 * acc


# ---------------------------------------------------------------------------
# Legendre complete integrals (modulus convention)

def _kc2(k: float, kprime: float | None) -> float:
    if kprime is not None:
        return float(kprime) ** 2
    return (1.0 - k) * (1.0 + k)


def elliptic_K(k: float, kprime: float | None = None) -> float:
    """Complete elliptic integral of the first kind, modulus k in [0, 1).

    ``kprime`` may supply sqrt(1 - k^2) directly when it is known more
    accurately than k itself (k close to 1).
    """
    k = abs(float(k))
    if k >= 1.0 and kprime is None or kprime == 0:
        raise DivergenceError("K(k) diverges at k = 1")
    if k > 1.0:
        raise DomainError("modulus must satisfy k < 1")
    return carlson_rf(0.0, _kc2(k, kprime), 1.0)


def elliptic_E(k: float, kprime: float | None = None) -> float:
    """Complete elliptic integral of the second kind, modulus k in [0, 1]."""
    k = abs(float(k))
    if k > 1.0:
        raise DomainError("modulus must satisfy k <= 1")
    kc2 = _kc2(k, kprime)
    if kc2 == 0.0:
        return 1.0
    return carlson_rf(0.0, kc2, 1.0) - k * k / 3.0 * carlson_rd(0.0, kc2, 1.0)


def elliptic_Pi(alpha2: float, k: float, kprime: float | None = None) -> float:
    """Complete elliptic integral of the third kind Pi(alpha2, k).

    The characteristic ``alpha2`` may take any real value except 1; for
    alpha2 > 1 the Cauchy principal value is returned, using
    Pi(n, k) = K(k) - Pi(k^2/n, k). Large negative alpha2 goes through the
    companion relation to Pi(k^2/alpha2, k) to keep full relative accuracy.
    """
    k = abs(float(k))
    alpha2 = float(alpha2)
    kc2 = _kc2(k, kprime)
    if kc2 <= 0.0:
        raise DivergenceError("Pi(n, k) diverges at k = 1")
    if alpha2 == 1.0:
        raise PoleError("Pi(n, k) has a pole at n = 1")
    if alpha2 > 1.0:
        return carlson_rf(0.0, kc2, 1.0) - elliptic_Pi(k * k / alpha2, k, kprime)
    if alpha2 < -1.0:
        # Pi(n) + Pi(k^2/n) = K + (pi/2) sqrt(n / ((1-n)(n-k^2))); written so that
        # nothing cancels when Pi(n) is small (n -> -inf)
        m = k * k / alpha2
        head = 0.5 * math.pi / math.sqrt((1.0 - alpha2) * (1.0 - m))
        return head - m / 3.0 * carlson_rj(0.0, kc2, 1.0, 1.0 - m)
    rf = carlson_rf(0.0, kc2, 1.0)
    if alpha2 == 0.0:
        return rf
    return rf + alpha2 / 3.0 * carlson_rj(0.0, kc2, 1.0, 1.0 - alpha2)


# ---------------------------------------------------------------------------
# gamma / digamma for complex argument

# Bernoulli numbers B_2j for the Stirling series
_B2 = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510)
_SHIFT = 16.0


def loggamma_complex(z: complex) -> complex:
    """log Gamma(z) for Re z > 0 on the branch continuous from the real axis.

    Recurrence up to |z| >= 16 followed by the Stirling series; each shift
    term uses the principal log of a right-half-plane number, so the
    imaginary part is the continuously accumulated argument.
    """
    z = complex(z)
    if z.real <= 0:
        raise DomainError("loggamma_complex needs Re z > 0")
    shift = 0j
    while abs(z) < _SHIFT:
        shift += cmath.log(z)
        z += 1
    w = 1.0 / z
    w2 = w * w
    s = 0j
    p = w
    for j, b in enumerate(_B2, start=1):
        s += b / (2 * j * (2 * j - 1)) * p
        p *= w2
    return (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi) + s - shift


def digamma_complex(z: complex) -> complex:
    """psi(z) for Re z > 0 (recurrence plus asymptotic series)."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("digamma_complex needs Re z > 0")
    shift = 0j
    while abs(z) < _SHIFT:
        shift += 1.0 / z
        z += 1
    w2 = 1.0 / (z * z)
    s = 0j
    p = w2
    for j, b in enumerate(_B2, start=1):
        s += b / (2 * j) * p
        p *= w2
    return cmath.log(z) - 0.5 / z - s - shift


def digamma_asymptotic(t: complex) -> complex:
    """Three-term expansion psi(t) ~ ln t - 1/(2t) - 1/(12 t^2)."""
    t = complex(t)
    return cmath.log(t) - 0.5 / t - 1.0 / (12.0 * t * t)


def arg_gamma_half_plus_i(xi: float) -> float:
    """Continuous argument of Gamma(1/2 + i xi), zero at xi = 0."""
    xi = float(xi)
    if xi == 0.0:
        return 0.0
    return loggamma_complex(complex(0.5, xi)).imag


DSPHI_SWITCH = 20.0


def dSphi_dSeps(xi: float, switch: float = DSPHI_SWITCH) -> float:
    """d S_phi / d S_eps = -ln xi + Re psi(1/2 + i xi) for xi > 0.

    Uses the complex digamma for xi <= ``switch`` and the three-term
    asymptotic digamma beyond, where the closed form is
    (1/2) ln(1 + 1/(4 xi^2)) - (4/3)(1 + 2 xi^2)/(1 + 4 xi^2)^2.
    The expansion's O(t^-4) error is ~0.2/xi^2 *relative* to this small
    difference, so the switch sits at xi = 20 to keep the jump below 1e-3.
    """
    xi = float(xi)
    if not xi > 0:
        raise DomainError("dSphi_dSeps needs xi > 0")
    if xi <= switch:
        return -math.log(xi) + digamma_complex(complex(0.5, xi)).real
    q = 1.0 + 4.0 * xi * xi
    return 0.5 * math.log1p(1.0 / (4.0 * xi * xi)) - (4.0 / 3.0) * (1.0 + 2.0 * xi * xi) / (q * q)
