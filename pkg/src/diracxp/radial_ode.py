"""Independent verification by direct integration of the radial equation.

The second-order equation

    phi'' + [ -1/4 + 1/(2u) + (E^2 + 1/4)/u^2 ] phi = 0

is integrated as a first-order system with an adaptive high-order one-step
method, starting exactly at the cutoff u0 > 0 (never below it; the
short-distance oscillation u^{1/2 +- iE} makes u = 0 an essential boundary).
Eigenvalues are found by shooting: at an eigenvalue the exponentially growing
e^{+u/2} branch is absent at large u.  The boundary data are phi(u0) = 0 with
the slope normalized to phi'(u0) = 1; any nonzero slope gives the same
eigenvalues, the choice just makes runs deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from . import specfun
from .errors import BracketingError, ConsistencyError, DomainError, IntegrationError

_FD_RELATIVE_STEP = 1e-4  # balances truncation vs roundoff at double precision


def ode_coefficient(u: float, energy: float) -> float:
    """The bracket q(u) in phi'' + q(u) phi = 0."""
    return -0.25 + 0.5 / u + (energy * energy + 0.25) / (u * u)


@dataclass(frozen=True)
class RadialSolution:
    """Samples of one integrated radial solution on the adaptive grid.

    ``phi``/``dphi`` are stored complex per the shared scalar convention;
    with the real slope normalization used here their imaginary parts are 0.
    """

    u_grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    energy: float
    _dense: object = field(repr=False, compare=False)

    def evaluate(self, u: float) -> tuple[complex, complex]:
        """Interpolate (phi, phi') anywhere inside the integrated interval."""
        phi, dphi = self._dense(u)
        return complex(phi), complex(dphi)


def integrate_whittaker(
    energy: float,
    u0: float,
    u_max: float,
    rel_tol: float = 1e-10,
) -> RadialSolution:
    """Integrate the radial equation from (phi, phi')(u0) = (0, 1) to u_max.

    Adaptive 8th-order Dormand-Prince stepping with local error controlled to
    ``rel_tol``; returns samples on the solver's adaptive grid plus a dense
    interpolant for off-grid evaluation.
    """
    if not 0.0 < u0 < u_max:
        raise DomainError(f"need 0 < u0 < u_max, got u0={u0!r}, u_max={u_max!r}")
    if not rel_tol > 0.0:
        raise DomainError(f"rel_tol must be > 0, got {rel_tol!r}")

    def rhs(u, y):
        return (y[1], -ode_coefficient(u, energy) * y[0])

    solution = solve_ivp(
        rhs,
        (u0, u_max),
        (0.0, 1.0),
        method="DOP853",
        rtol=rel_tol,
        atol=rel_tol * 1e-3,
        dense_output=True,
    )
    if not solution.success:
        raise IntegrationError(
            f"integration failed at E={energy:g}, u0={u0:g}: {solution.message}"
        )
    return RadialSolution(
        u_grid=solution.t,
        phi=solution.y[0].astype(complex),
        dphi=solution.y[1].astype(complex),
        energy=float(energy),
        _dense=solution.sol,
    )


def _endpoint_value(energy: float, u0: float, u_max: float, rel_tol: float) -> float:
    def rhs(u, y):
        return (y[1], -ode_coefficient(u, energy) * y[0])

    solution = solve_ivp(
        rhs, (u0, u_max), (0.0, 1.0), method="DOP853", rtol=rel_tol, atol=rel_tol * 1e-3
    )
    if not solution.success:
        raise IntegrationError(
            f"integration failed at E={energy:g}, u0={u0:g}: {solution.message}"
        )
    return float(solution.y[0][-1])


def shooting_functional(energy: float, u0: float, u_max: float, rel_tol: float = 1e-12) -> float:
    """Signed log-magnitude of the endpoint against the decaying envelope:
    sign(phi(u_max)) * (ln|phi(u_max)| + u_max/2).

    The solution is real (real boundary data, real coefficients), so the
    coefficient of the dominant e^{+u/2} branch changes sign exactly at the
    eigenvalues; the sign of phi(u_max) tracks it.
    """
    value = _endpoint_value(energy, u0, u_max, rel_tol)
    if value == 0.0:
        return 0.0
    return math.copysign(math.log(abs(value)) + 0.5 * u_max, value)


def shoot_eigenvalue(
    e_lo: float,
    e_hi: float,
    u0: float,
    u_max: float,
    rel_tol: float = 1e-12,
    tol: float = 1e-9,
) -> float:
    """Bisect the shooting functional on [e_lo, e_hi] down to ``tol`` in E.

    Requires a sign change of the functional on the bracket (one eigenvalue
    inside); degenerate or sign-less brackets raise :class:`BracketingError`.
    """
    if not e_lo < e_hi:
        raise BracketingError(f"empty bracket [{e_lo!r}, {e_hi!r}]")
    s_lo = shooting_functional(e_lo, u0, u_max, rel_tol)
    s_hi = shooting_functional(e_hi, u0, u_max, rel_tol)
    if s_lo == 0.0:
        return e_lo
    if s_hi == 0.0:
        return e_hi
    if math.copysign(1.0, s_lo) == math.copysign(1.0, s_hi):
        raise BracketingError(
            f"shooting functional does not change sign on [{e_lo:g}, {e_hi:g}] "
            f"(s_lo={s_lo:g}, s_hi={s_hi:g})"
        )
    lo, hi = e_lo, e_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        s_mid = shooting_functional(mid, u0, u_max, rel_tol)
        if s_mid == 0.0:
            return mid
        if math.copysign(1.0, s_mid) == math.copysign(1.0, s_lo):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def closed_form_solution(energy: float, u0: float, u: float) -> complex:
    """The closed-form solution obeying phi(u0) = 0:

    phi(u) = W_{1/2,-iE}(u0) W_{1/2,+iE}(u) - W_{1/2,+iE}(u0) W_{1/2,-iE}(u)

    (overall normalization A = 1).  For real E and u the two terms are
    complex conjugates, so phi is purely imaginary up to the normalization.
    """
    w_plus_0 = specfun.whittaker_km(0.5, 1j * energy, u0)
    w_minus_0 = specfun.whittaker_km(0.5, -1j * energy, u0)
    return w_minus_0 * specfun.whittaker_km(0.5, 1j * energy, u) - w_plus_0 * specfun.whittaker_km(
        0.5, -1j * energy, u
    )


def residual_closed_form(energy: float, u0: float, u_samples) -> float:
    """Max normalized ODE residual of the closed-form solution over the samples.

    The second derivative is taken by central differences with relative step
    h = 1e-4 u; the residual phi'' + q phi is normalized by the size of the
    dominant balance it came from, max over samples of |q phi| (the relative
    residual of the equation; a plain max|phi| normalization would be
    finite-difference-limited whenever E sits near an eigenvalue and the
    growing branch is suppressed).  Also confirms phi(u0) = 0 (it vanishes
    exactly in structure; numerically to 1e-12 of the term size).
    """
    u_samples = [float(u) for u in u_samples]
    if not u_samples:
        raise DomainError("residual_closed_form: no sample points given")
    if u0 <= 0.0 or any(u <= 0.0 for u in u_samples):
        raise DomainError("residual_closed_form: u0 and all samples must be > 0")

    term_size = abs(
        specfun.whittaker_km(0.5, 1j * energy, u0)
        * specfun.whittaker_km(0.5, -1j * energy, u0)
    )
    boundary = abs(closed_form_solution(energy, u0, u0))
    if boundary > 1e-12 * max(term_size, 1.0):
        raise ConsistencyError(
            f"closed form violates phi(u0) = 0: |phi(u0)| = {boundary:g} "
            f"against term size {term_size:g}"
        )

    values = [closed_form_solution(energy, u0, u) for u in u_samples]
    scale = max(abs(ode_coefficient(u, energy) * v) for u, v in zip(u_samples, values))
    worst = 0.0
    for u, value in zip(u_samples, values):
        h = _FD_RELATIVE_STEP * u
        second = (
            closed_form_solution(energy, u0, u - h)
            - 2.0 * value
            + closed_form_solution(energy, u0, u + h)
        ) / (h * h)
        worst = max(worst, abs(second + ode_coefficient(u, energy) * value))
    return worst / scale
