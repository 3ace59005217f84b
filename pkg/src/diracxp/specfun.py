"""Complex special functions built from scratch.

Provides the principal-branch log-Gamma, Kummer's confluent hypergeometric
M(a, b; u), the Whittaker-type radial solution W_{k,m}(u), and the
Riemann-Siegel theta function.  Everything operates on plain Python complex
numbers, targets ~1e-12 relative accuracy on the desk-scale window
|z| <= 100 used by the spectral pipeline, and is free of shared mutable
state, so all functions are safe to call concurrently.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

_LOG_2PI = math.log(2.0 * math.pi)

# Stirling-series coefficients B_{2n} / (2n (2n-1)) for n = 1..10.  With the
# argument shifted to |z| >= _STIRLING_RADIUS the truncation error sits well
# below 1e-15 even on the imaginary axis.
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)
_STIRLING_RADIUS = 16.0

KUMMER_SERIES_MAX_TERMS = 10_000   # power-series iteration budget
KUMMER_SERIES_TARGET = 1e-15       # relative term size at which the series stops
KUMMER_SWITCH = 40.0               # u above which the large-u expansion is used
_ASYMPTOTIC_MAX_TERMS = 40
_KUMMER_U_MAX = 700.0              # e^u overflows double precision beyond this


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _require_finite(value: complex, what: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConvergenceError(f"{what} evaluated to a non-finite value")
    return value


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z), continuous on C minus (-inf, 0].

    Uses the upward recurrence log Gamma(z) = log Gamma(z+1) - Log z (which
    preserves the principal branch on the cut plane) to push the argument
    into |z| >= 16, Re z >= 1/2, then a Stirling series with Bernoulli terms
    through B20.  exp(log_gamma(z)) matches Gamma(z) to better than 1e-12
    relative for |z| <= 100.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"log_gamma: non-finite argument {z!r}")
    if _is_nonpositive_integer(z):
        raise DomainError(
            f"log_gamma: pole at z = {z.real:g} (Gamma has poles at 0, -1, -2, ...)"
        )
    shift = 0j
    while z.real < 0.5 or abs(z) < _STIRLING_RADIUS:
        shift += cmath.log(z)
        z += 1.0
    w = 1.0 / (z * z)
    s = _STIRLING_COEFFS[-1]
    for c in _STIRLING_COEFFS[-2::-1]:
        s = s * w + c
    value = (z - 0.5) * cmath.log(z) - z + 0.5 * _LOG_2PI + s / z - shift
    return _require_finite(value, "log_gamma")


def _kummer_series(a: complex, b: complex, u: float) -> complex:
    term = 1.0 + 0j
    total = 1.0 + 0j
    small = 0
    for n in range(KUMMER_SERIES_MAX_TERMS):
        term = term * (a + n) / (b + n) * (u / (n + 1))
        total += term
        if abs(term) <= KUMMER_SERIES_TARGET * abs(total):
            small += 1
            # two consecutive negligible terms past the series peak n ~ u
            if small >= 2 and n > u:
                return total
        else:
            small = 0
    raise ConvergenceError(
        f"Kummer series did not converge within {KUMMER_SERIES_MAX_TERMS} terms "
        f"(a={a}, b={b}, u={u:g})",
        residual=abs(term) / max(abs(total), 1.0),
    )


def _poly_2f0(alpha: complex, beta: complex, w: complex) -> complex:
    # 2F0(alpha, beta; w) summed to its smallest term (optimal truncation).
    term = 1.0 + 0j
    total = 1.0 + 0j
    previous = abs(term)
    for s in range(_ASYMPTOTIC_MAX_TERMS):
        term = term * (alpha + s) * (beta + s) * w / (s + 1)
        size = abs(term)
        if size > previous:
            break
        total += term
        previous = size
        if size <= KUMMER_SERIES_TARGET * abs(total):
            break
    return total


def _kummer_asymptotic(a: complex, b: complex, u: float) -> complex:
    # DLMF 13.7.1/13.7.2 with both the dominant e^u branch and the recessive
    # algebraic branch; valid for u >> |a|^2, |b|^2.
    lg_b = log_gamma(b)
    value = 0j
    if not _is_nonpositive_integer(a):
        value += cmath.exp(lg_b - log_gamma(a) + u + (a - b) * math.log(u)) * _poly_2f0(
            b - a, 1.0 - a, 1.0 / u
        )
    if not _is_nonpositive_integer(b - a):
        value += cmath.exp(
            lg_b - log_gamma(b - a) + 1j * math.pi * a - a * math.log(u)
        ) * _poly_2f0(a, a - b + 1.0, -1.0 / u)
    return value


def kummer_m(a: complex, b: complex, u: float) -> complex:
    """Kummer's confluent hypergeometric M(a, b; u) for real u >= 0.

    The power series is used for u below ``KUMMER_SWITCH`` and the two-branch
    large-u expansion above it; the branches agree to ~1e-10 on the overlap
    window around the switch point for moderate parameters.
    """
    a = complex(a)
    b = complex(b)
    u = float(u)
    if _is_nonpositive_integer(b):
        raise DomainError(
            f"kummer_m: b = {b} is a non-positive integer (pole of the series)"
        )
    if u < 0.0:
        raise DomainError(f"kummer_m: u must be >= 0, got {u:g}")
    if u > _KUMMER_U_MAX:
        raise DomainError(f"kummer_m: u = {u:g} overflows double precision (e^u)")
    if u < KUMMER_SWITCH:
        value = _kummer_series(a, b, u)
    else:
        value = _kummer_asymptotic(a, b, u)
    return _require_finite(value, "kummer_m")


@dataclass(frozen=True)
class WhittakerParams:
    """Arguments of the radial solution W_{k,m}(u): indices k, m and u > 0."""

    k: complex
    m: complex
    u: float

    def __post_init__(self):
        if not self.u > 0.0:
            raise DomainError(f"WhittakerParams: u must be > 0, got {self.u!r}")
        if _is_nonpositive_integer(1.0 + 2.0 * complex(self.m)):
            raise DomainError(
                f"WhittakerParams: 1 + 2m = {1 + 2 * complex(self.m)} is a "
                "non-positive integer (pole of the Kummer series)"
            )

    def value(self) -> complex:
        return whittaker_km(self.k, self.m, self.u)


def whittaker_km(k: complex, m: complex, u: float) -> complex:
    """Radial solution W_{k,m}(u) = e^{-u/2} u^{m+1/2} M(m-k+1/2, 1+2m; u).

    Note on naming: in the physics convention followed here, "W" denotes this
    combination, which coincides with the *standard Whittaker M function*
    M_{k,m}(u) (DLMF 13.14.2), not the standard W_{k,m}.  The power u^{m+1/2}
    is taken on the principal branch, i.e. exp((m+1/2) ln u) with the real
    logarithm of u > 0.
    """
    params = WhittakerParams(complex(k), complex(m), float(u))
    prefactor = cmath.exp(-0.5 * params.u + (params.m + 0.5) * math.log(params.u))
    value = prefactor * kummer_m(params.m - params.k + 0.5, 1.0 + 2.0 * params.m, params.u)
    return _require_finite(value, "whittaker_km")


def riemann_siegel_theta(energy: float) -> float:
    """Riemann-Siegel theta: Im log Gamma(1/4 + iE/2) - (E/2) ln pi.

    Smooth odd function of E; the continuous principal branch of log-Gamma
    makes it free of mod-2pi wrapping.
    """
    energy = float(energy)
    return log_gamma(0.25 + 0.5j * energy).imag - 0.5 * energy * math.log(math.pi)
