"""Cross-validation suite behind the ``verify`` command.

Runs the Gamma identity sweeps, the Kummer branch-overlap check, the two
algebraic restatements of the spectral condition, the closed-form ODE
residual, and the phase-vs-shooting eigenvalue comparison.  Every check
reports a numeric residual next to its tolerance; pass/fail is derived, never
stored as the only output.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import radial_ode, spectrum
from .specfun import kummer_m, log_gamma, riemann_siegel_theta
from .specfun import _kummer_asymptotic, _kummer_series  # branch-level access

_IDENTITY_SAMPLES = 100
_IDENTITY_SEED = 20120531
_CONDITION_ENERGIES = (5.0, 14.1, 33.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _identity_points() -> list[complex]:
    rng = np.random.default_rng(_IDENTITY_SEED)
    points = []
    while len(points) < _IDENTITY_SAMPLES:
        z = complex(rng.uniform(-20.0, 20.0), rng.uniform(-20.0, 20.0))
        if abs(z) > 20.0 or abs(z.imag) < 0.05:
            continue  # stay off the real-integer lattice and inside |z| <= 20
        points.append(z)
    return points


def gamma_reflection_residual() -> float:
    """Max relative error of Gamma(z) Gamma(1-z) sin(pi z) / pi = 1."""
    worst = 0.0
    for z in _identity_points():
        value = cmath.exp(log_gamma(z) + log_gamma(1.0 - z)) * cmath.sin(cmath.pi * z) / cmath.pi
        worst = max(worst, abs(value - 1.0))
    return worst


def gamma_duplication_residual() -> float:
    """Max relative error of Gamma(z) Gamma(z+1/2) = 2^{1-2z} sqrt(pi) Gamma(2z)."""
    worst = 0.0
    log_root_pi = 0.5 * math.log(math.pi)
    for z in _identity_points():
        lhs = log_gamma(z) + log_gamma(z + 0.5)
        rhs = (1.0 - 2.0 * z) * math.log(2.0) + log_root_pi + log_gamma(2.0 * z)
        worst = max(worst, abs(cmath.exp(lhs - rhs) - 1.0))
    return worst


def kummer_overlap_residual(switch: float = 40.0) -> float:
    """Series vs large-u branches of M on the window [0.8, 1.2] * switch."""
    cases = ((0.25 + 3j, 1.0 + 6j), (2j, 1.0 + 4j), (0.75 + 0.5j, 1.5 + 1j))
    worst = 0.0
    for a, b in cases:
        for u in np.linspace(0.8 * switch, 1.2 * switch, 9):
            series = _kummer_series(a, b, float(u))
            asym = _kummer_asymptotic(a, b, float(u))
            worst = max(worst, abs(series - asym) / abs(series))
    return worst


def _gamma_quartet(energy: float) -> complex:
    # G(E) = Gamma(1/4+iE/2) Gamma(3/4+iE/2) / [Gamma(1/4-iE/2) Gamma(3/4-iE/2)]
    return cmath.exp(
        log_gamma(0.25 + 0.5j * energy)
        + log_gamma(0.75 + 0.5j * energy)
        - log_gamma(0.25 - 0.5j * energy)
        - log_gamma(0.75 - 0.5j * energy)
    )


def duplication_chain_residual() -> float:
    """The exact condition's Gamma ratio reduces to -8^{-2iE}/G(E).

    This is the Legendre-duplication + recurrence chain that carries the
    cutoff condition from its Whittaker form to its Gamma/cutoff phase form.
    """
    worst = 0.0
    for energy in _CONDITION_ENERGIES:
        ratio = cmath.exp(
            log_gamma(1.0 - 2j * energy)
            - log_gamma(1.0 + 2j * energy)
            + log_gamma(1j * energy)
            - log_gamma(-1j * energy)
        )
        chain = -cmath.exp(-2j * energy * math.log(8.0)) / _gamma_quartet(energy)
        worst = max(worst, abs(ratio - chain))
    return worst


def condition_restatement_residual(u0: float = 1e-3) -> float:
    """The two printed forms of the spectral condition are the same condition.

    Checks the identity  e^{2i theta(E) + iE ln pi} * Gamma(3/4+iE/2)/Gamma(3/4-iE/2)
    = G(E)  and, equivalently, that the residual functions of the two forms
    differ only by the unimodular Gamma(3/4-iE/2)/Gamma(3/4+iE/2) factor.
    """
    worst = 0.0
    for energy in _CONDITION_ENERGIES:
        theta = riemann_siegel_theta(energy)
        ratio34 = cmath.exp(
            log_gamma(0.75 + 0.5j * energy) - log_gamma(0.75 - 0.5j * energy)
        )
        lhs = cmath.exp(2j * theta + 1j * energy * math.log(math.pi)) * ratio34
        quartet = _gamma_quartet(energy)
        worst = max(worst, abs(lhs - quartet))

        cutoff_phase = cmath.exp(2j * energy * math.log(u0 / 8.0))
        form_a = cutoff_phase + quartet                     # (u0/8)^{2iE} = -G
        form_b = cmath.exp(2j * theta + 1j * energy * math.log(math.pi)) + cutoff_phase / ratio34
        worst = max(worst, abs(form_a / ratio34 - form_b))
    return worst


def closed_form_residuals(energy: float = 7.0, u0: float = 0.01) -> tuple[float, float]:
    """(normalized ODE residual, |phi(u0)| / term size) of the closed form."""
    samples = list(np.geomspace(2.0 * u0, 20.0, 50))
    residual = radial_ode.residual_closed_form(energy, u0, samples)
    term = abs(
        radial_ode.closed_form_solution(energy, u0, u0)
    )  # exact 0 in structure; measure against the term size
    scale = abs(
        radial_ode.specfun.whittaker_km(0.5, 1j * energy, u0)
        * radial_ode.specfun.whittaker_km(0.5, -1j * energy, u0)
    )
    return residual, term / max(scale, 1e-300)


def phase_vs_shooting_residual(
    u0: float = 1e-3, n_eigen: int = 5, u_max: float = 60.0
) -> float:
    """Max relative gap between exact-phase roots and shooting eigenvalues."""
    if n_eigen < 1:
        raise ValueError("n_eigen must be >= 1")
    roots = [
        spectrum.eigenvalue_at_index(k, u0, spectrum.Variant.EXACT)
        for k in range(1, n_eigen + 1)
    ]
    spacing = roots[1] - roots[0] if n_eigen > 1 else 0.3
    worst = 0.0
    for root in roots:
        shot = radial_ode.shoot_eigenvalue(
            root - 0.45 * spacing, root + 0.45 * spacing, u0, u_max
        )
        worst = max(worst, abs(shot - root) / root)
    return worst


def run_verification(
    u0: float = 1e-3,
    n_eigen: int = 5,
    tol_scale: float = 1.0,
) -> list[CheckResult]:
    """Run the full suite; tolerances are multiplied by ``tol_scale``."""
    closed_residual, boundary = closed_form_residuals()
    results = [
        CheckResult("gamma_reflection", gamma_reflection_residual(), 1e-10),
        CheckResult("gamma_duplication", gamma_duplication_residual(), 1e-10),
        CheckResult("kummer_branch_overlap", kummer_overlap_residual(), 1e-8),
        CheckResult("duplication_chain", duplication_chain_residual(), 1e-10),
        CheckResult("condition_restatement", condition_restatement_residual(u0), 1e-10),
        CheckResult("closed_form_ode_residual", closed_residual, 1e-5),
        CheckResult("closed_form_boundary", boundary, 1e-12),
        CheckResult(
            "phase_vs_shooting", phase_vs_shooting_residual(u0, n_eigen), 1e-5
        ),
    ]
    return [
        CheckResult(r.name, r.residual, r.tolerance * tol_scale) for r in results
    ]
