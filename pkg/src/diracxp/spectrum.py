"""Quantization conditions and eigenvalue enumeration for the cutoff problem.

The boundary condition phi(u0) = 0 plus square-integrability at infinity
yields a transcendental condition on E.  Two forms are implemented:

* the exact condition, a ratio of the radial solutions W_{1/2,+-iE} at u0
  against a Gamma-function ratio, and
* its u0 -> 0 reduction, where the same condition collapses (via the
  Legendre duplication identity) to a pure Gamma/cutoff phase.

Both are exposed as continuous, unwrapped phase functions sharing one
convention: phase(0) = 0, eigenvalue k (1-based) sits where the phase
crosses pi*(k - 1/2).  Working with unwrapped phases built from the
continuous Im log Gamma plus explicit E*ln terms turns root-finding into
scalar bisection on an increasing function and avoids mod-2pi ambiguity.
"""

from __future__ import annotations

import cmath
import math
import warnings
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from . import specfun
from .errors import (
    BracketingError,
    CalibrationWarning,
    ConfigurationError,
    ConsistencyError,
    DomainError,
    MonotonicityError,
)

_UNIMODULAR_TOL = 1e-8
_EULER_GAMMA = 0.5772156649015329

# The phase slope at E = 0 is ln(8/u0) + (psi(1/4) + psi(3/4))/2
# = ln(8/u0) - gamma - 3 ln 2, so the counting function is increasing from
# E = 0 exactly when u0 < e^{-gamma}.  Calibration searches only that domain
# (a hair inside it); larger cutoffs fail the counting precondition.
U0_MONOTONE_CAP = math.exp(-_EULER_GAMMA) * (1.0 - 1e-6)
_CAL_LOG_BRACKET = (math.log(1e-12), math.log(U0_MONOTONE_CAP))
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Variant(str, Enum):
    """Which form of the spectral condition produced a result."""

    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"
    SHOOTING = "shooting"


@dataclass(frozen=True)
class SpectralConfig:
    """Cutoff, energy window, tolerances and condition variant for enumeration.

    ``u0`` must lie in (0, 8) so that ln(8/u0) > 0 and the spectral phase is
    increasing; violations raise :class:`ConfigurationError` rather than
    silently producing a non-monotone counting function.
    """

    u0: float
    e_max: float
    e_min: float = 0.0
    tol_e: float = 1e-9
    variant: Variant = Variant.ASYMPTOTIC
    scan_step: float = 0.05
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not 0.0 < self.u0 < 8.0:
            raise ConfigurationError(
                f"u0 must lie in (0, 8) so that ln(8/u0) > 0; got {self.u0:g}"
            )
        if not self.e_min < self.e_max:
            raise ConfigurationError(
                f"need e_min < e_max, got [{self.e_min:g}, {self.e_max:g}]"
            )
        if self.e_min < 0.0:
            raise ConfigurationError(f"e_min must be >= 0, got {self.e_min:g}")
        if not self.tol_e > 0.0:
            raise ConfigurationError(f"tol_e must be > 0, got {self.tol_e:g}")
        if not self.scan_step > 0.0:
            raise ConfigurationError(f"scan_step must be > 0, got {self.scan_step:g}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class EigenvalueRecord:
    """One solved eigenvalue: ordinal index, energy, phase residual, method."""

    index: int
    energy: float
    residual: float
    variant: Variant


@dataclass(frozen=True)
class CylinderMode:
    """Angular mode on the semi-infinite cylinder: integer n, flux phase
    alpha in [0, 1), circumference radius > 0."""

    n: int
    alpha: float
    radius: float

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise ConfigurationError(f"alpha must lie in [0, 1), got {self.alpha!r}")
        if not self.radius > 0.0:
            raise ConfigurationError(f"radius must be > 0, got {self.radius!r}")
        if self.n + self.alpha == 0.0:
            raise ConfigurationError(
                "degenerate mode: n + alpha = 0 (the coordinate map x = R u / (2(n+alpha)) "
                "has no inverse)"
            )


def mode_to_radial(mode: CylinderMode, u: float) -> float:
    """Map the dimensionless radial coordinate u to x = R u / (2 (n + alpha)).

    Positive iff n + alpha > 0.  The reduced spectral problem never consumes
    the mode; this map only relates u back to the physical half-line.
    """
    if not u > 0.0:
        raise DomainError(f"mode_to_radial: u must be > 0, got {u!r}")
    return mode.radius * u / (2.0 * (mode.n + mode.alpha))


def radial_to_mode(mode: CylinderMode, x: float) -> float:
    """Inverse of :func:`mode_to_radial`: u = 2 (n + alpha) x / R."""
    return 2.0 * (mode.n + mode.alpha) * x / mode.radius


def _im_log_gamma(z: complex) -> float:
    return specfun.log_gamma(z).imag


def phase_asymptotic(energy: float, u0: float) -> float:
    """Unwrapped phase of the u0 -> 0 quantization condition.

    Phi(E; u0) = E ln(8/u0) + Im log Gamma(1/4 + iE/2) + Im log Gamma(3/4 + iE/2).

    Taking arguments of (u0/8)^{2iE} = -G, with G the unimodular product of
    Gamma ratios, gives 2*Phi = -pi mod 2pi, i.e. eigenvalues sit at
    Phi = pi (k - 1/2), k = 1, 2, ...; Phi(0) = 0 and Phi is increasing for
    small u0, which fixes the branch.
    """
    energy = float(energy)
    if energy < 0.0:
        raise DomainError(f"phase_asymptotic: energy must be >= 0, got {energy:g}")
    if not 0.0 < u0 < 8.0:
        raise ConfigurationError(
            f"phase_asymptotic: u0 must lie in (0, 8), got {u0:g}"
        )
    return (
        energy * math.log(8.0 / u0)
        + _im_log_gamma(0.25 + 0.5j * energy)
        + _im_log_gamma(0.75 + 0.5j * energy)
    )


def _kummer_arg_continued(a: complex, b: complex, u: float) -> float:
    # Continuously tracked arg M(a, b; u) from arg M(a, b; 0) = 0.  M stays
    # near 1 for small u; for larger u the argument is chained across
    # checkpoints spaced <= 1 in u so each principal-arg step is small.
    steps = max(1, math.ceil(u))
    previous = 1.0 + 0j
    total = 0.0
    for j in range(1, steps + 1):
        value = specfun.kummer_m(a, b, u * j / steps)
        total += cmath.phase(value / previous)
        previous = value
    return total


def phase_exact(energy: float, u0: float) -> float:
    """Unwrapped phase of the exact quantization condition at cutoff u0.

    The condition equates the unimodular ratio W_{1/2,-iE}(u0)/W_{1/2,+iE}(u0)
    with the Gamma ratio [Gamma(1-2iE)/Gamma(1+2iE)]*[Gamma(iE)/Gamma(-iE)].
    The raw unwrapped argument difference arg(LHS) - arg(RHS) starts at pi for
    E -> 0+ and eigenvalues sit where it hits multiples of 2pi; this function
    returns the normalized (arg LHS - arg RHS - pi)/2 so that it shares the
    asymptotic convention exactly: phase(0+) = 0, eigenvalue k at
    pi (k - 1/2), and phase_exact -> phase_asymptotic pointwise as u0 -> 0.

    Both sides are checked to be unimodular to 1e-8 (they are conjugate
    ratios for real E); violations raise :class:`ConsistencyError`.
    """
    energy = float(energy)
    if not energy > 0.0:
        raise DomainError(
            f"phase_exact: energy must be > 0 (Gamma(iE) pole at E = 0), got {energy:g}"
        )
    if not u0 > 0.0:
        raise DomainError(f"phase_exact: u0 must be > 0, got {u0:g}")

    w_plus = specfun.whittaker_km(0.5, 1j * energy, u0)
    w_minus = specfun.whittaker_km(0.5, -1j * energy, u0)
    lhs_modulus = abs(w_minus / w_plus)
    if abs(lhs_modulus - 1.0) > _UNIMODULAR_TOL:
        raise ConsistencyError(
            f"exact condition LHS lost unimodularity: |W-/W+| - 1 = {lhs_modulus - 1.0:.3e} "
            f"at (E, u0) = ({energy:g}, {u0:g})"
        )
    log_rhs = (
        specfun.log_gamma(1.0 - 2j * energy)
        - specfun.log_gamma(1.0 + 2j * energy)
        + specfun.log_gamma(1j * energy)
        - specfun.log_gamma(-1j * energy)
    )
    if abs(math.expm1(log_rhs.real)) > _UNIMODULAR_TOL:
        raise ConsistencyError(
            f"exact condition RHS lost unimodularity: |Gamma ratio| - 1 = "
            f"{math.expm1(log_rhs.real):.3e} at E = {energy:g}"
        )

    # The e^{-u0/2} u0^{1/2} prefactor is real, so arg W_{1/2,+-iE}(u0)
    # = +-(E ln u0 + arg M) and arg(LHS) = -2 (E ln u0 + arg M(iE, 1+2iE; u0)),
    # each term continuous in E.
    arg_lhs = -2.0 * (
        energy * math.log(u0)
        + _kummer_arg_continued(1j * energy, 1.0 + 2j * energy, u0)
    )
    arg_rhs = log_rhs.imag
    return 0.5 * (arg_lhs - arg_rhs - math.pi)


def _phase_function(variant: Variant, u0: float):
    if variant == Variant.ASYMPTOTIC:
        return lambda energy: phase_asymptotic(energy, u0)
    if variant == Variant.EXACT:
        return lambda energy: phase_exact(energy, u0)
    raise ConfigurationError(
        f"enumeration supports the exact and asymptotic variants, not {variant.value!r}"
    )


def _level(index: int) -> float:
    return math.pi * (index - 0.5)


def _bisect_to_level(phase, lo: float, hi: float, level: float, tol: float) -> tuple[float, float]:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if phase(mid) < level:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    return root, abs(phase(root) - level)


def eigenvalues(config: SpectralConfig) -> list[EigenvalueRecord]:
    """Enumerate all eigenvalues in (e_min, e_max] for the configured variant.

    Scans the phase on a grid (step bounded by the local slope estimate
    ln(8/u0) so no pi-level crossing can be skipped), brackets each crossing
    of a pi (k - 1/2) level, and refines by bisection to ``tol_e``.  Records
    come back sorted, consecutively indexed by the global ordinal k, with the
    absolute phase residual at the solution.

    Disjoint brackets are refined concurrently when ``workers`` > 1; results
    are merged in index order, so output is independent of evaluation order.
    """
    phase = _phase_function(config.variant, config.u0)
    e_lo = max(config.e_min, config.tol_e)  # avoid the trivial phase(0) = 0 boundary
    e_hi = config.e_max
    if e_lo >= e_hi:
        return []

    slope = math.log(8.0 / config.u0)
    step = min(config.scan_step, math.pi / (4.0 * max(slope, 1.0)))
    n_cells = max(1, math.ceil((e_hi - e_lo) / step))
    grid = [e_lo + (e_hi - e_lo) * i / n_cells for i in range(n_cells + 1)]

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            values = list(pool.map(phase, grid))
    else:
        values = [phase(e) for e in grid]

    for i in range(len(grid) - 1):
        if values[i + 1] <= values[i]:
            raise MonotonicityError(
                f"spectral phase is not increasing near E = {grid[i]:.6g} "
                f"(u0 = {config.u0:g}); use a smaller u0 or a smaller scan_step"
            )

    k_first = math.floor(values[0] / math.pi + 0.5) + 1
    k_last = math.floor(values[-1] / math.pi + 0.5)
    if k_last < k_first:
        return []

    def refine(k: int) -> EigenvalueRecord:
        level = _level(k)
        cell = bisect_left(values, level)
        if cell <= 0 or cell >= len(grid):
            raise BracketingError(
                f"no grid bracket for level index k = {k} (phase range "
                f"[{values[0]:.6g}, {values[-1]:.6g}])"
            )
        energy, residual = _bisect_to_level(
            phase, grid[cell - 1], grid[cell], level, config.tol_e
        )
        return EigenvalueRecord(index=k, energy=energy, residual=residual,
                                variant=config.variant)

    indices = range(k_first, k_last + 1)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(refine, indices))
    else:
        records = []
        for k in indices:
            try:
                records.append(refine(k))
            except BracketingError as exc:
                exc.partial = records
                raise

    records.sort(key=lambda r: r.index)
    return records


def counting_model(energy: float, config: SpectralConfig) -> float:
    """Smooth eigenvalue-counting function of the model: phase(E)/pi + 1/2.

    Its floor is the exact eigenvalue count below E.  Requires the phase to
    be monotone on [0, E]; a coarse scan guards against silent violations.
    """
    if energy == 0.0:
        return 0.5  # phase(0) = 0 by construction in both variants
    phase = _phase_function(config.variant, config.u0)
    lo = config.tol_e
    if energy > lo:
        samples = 32
        previous = phase(lo)
        for i in range(1, samples + 1):
            e = lo + (energy - lo) * i / samples
            current = phase(e)
            if current <= previous:
                raise MonotonicityError(
                    f"spectral phase is not increasing near E = {e:.6g} "
                    f"(u0 = {config.u0:g}); use a smaller u0"
                )
            previous = current
        return current / math.pi + 0.5
    return phase(energy) / math.pi + 0.5


def eigenvalue_at_index(
    index: int,
    u0: float,
    variant: Variant = Variant.ASYMPTOTIC,
    tol: float = 1e-12,
) -> float:
    """Solve phase(E) = pi (index - 1/2) for the single eigenvalue E_index.

    Works for any u0 in (0, 8), including the regime where the phase dips
    below zero at small E (the positive levels are still crossed exactly
    once on the increasing branch).
    """
    if index < 1:
        raise ConfigurationError(f"eigenvalue index must be >= 1, got {index}")
    phase = _phase_function(Variant(variant), u0)
    level = _level(index)
    lo = 1e-12
    hi = max(1.0, level / max(math.log(8.0 / u0), 0.1))
    for _ in range(200):
        if phase(hi) > level:
            break
        hi *= 2.0
    else:
        raise BracketingError(
            f"could not bracket eigenvalue {index} at u0 = {u0:g}"
        )
    energy, _ = _bisect_to_level(phase, lo, hi, level, tol)
    return energy


def calibrate_u0(
    targets,
    count: int,
    variant: Variant = Variant.ASYMPTOTIC,
    tol_e: float = 1e-9,
) -> float:
    """Least-squares cutoff calibration against the first ``count`` ordinates.

    Minimizes sum_k (E_k(u0) - target_k)^2 over ln u0 in
    [ln 1e-12, ln U0_MONOTONE_CAP] by golden-section search; deterministic
    for fixed inputs.  The bracket stops at e^{-gamma} because beyond it the
    counting function loses monotonicity at small E and downstream
    comparisons would reject the calibrated cutoff.  If a coarse probe of the
    objective finds a better value than the search result (the objective was
    not unimodal on the bracket), a :class:`CalibrationWarning` is emitted
    and the best value found is returned.
    """
    if count < 1:
        raise ConfigurationError(f"count must be >= 1, got {count}")
    ordinates = list(targets.ordinates)
    if len(ordinates) < count:
        raise DomainError(
            f"targets hold {len(ordinates)} ordinates, calibration needs {count}"
        )
    goal = ordinates[:count]
    inner_tol = min(1e-13, 0.01 * tol_e)  # solve well inside the fit tolerance

    def objective(x: float) -> float:
        u0 = math.exp(x)
        return sum(
            (eigenvalue_at_index(k, u0, variant, tol=inner_tol) - g) ** 2
            for k, g in enumerate(goal, start=1)
        )

    def golden(lo: float, hi: float) -> tuple[float, float]:
        a, b = lo, hi
        x1 = b - _GOLDEN * (b - a)
        x2 = a + _GOLDEN * (b - a)
        f1, f2 = objective(x1), objective(x2)
        for _ in range(90):
            if b - a < 1e-13:
                break
            if f1 <= f2:
                b, x2, f2 = x2, x1, f1
                x1 = b - _GOLDEN * (b - a)
                f1 = objective(x1)
            else:
                a, x1, f1 = x1, x2, f2
                x2 = a + _GOLDEN * (b - a)
                f2 = objective(x2)
        x = x1 if f1 <= f2 else x2
        return x, min(f1, f2)

    x_best, f_best = golden(*_CAL_LOG_BRACKET)

    # unimodality probe: a strictly better coarse sample means golden section
    # was not entitled to its bracket-shrinking steps
    lo, hi = _CAL_LOG_BRACKET
    probes = [lo + (hi - lo) * i / 16 for i in range(17)]
    probe_vals = [objective(x) for x in probes]
    i_best = min(range(len(probes)), key=probe_vals.__getitem__)
    if probe_vals[i_best] < f_best * (1.0 - 1e-9):
        span = (hi - lo) / 16
        x_retry, f_retry = golden(
            max(lo, probes[i_best] - span), min(hi, probes[i_best] + span)
        )
        warnings.warn(
            "calibration objective is not unimodal on the search bracket; "
            "returning the best value found",
            CalibrationWarning,
            stacklevel=2,
        )
        if f_retry < f_best:
            x_best = x_retry
    return math.exp(x_best)
