"""Spectral pipeline for the Dirac-type x.sigma.p model.

Radial Whittaker-form solutions, cutoff-regularized eigenvalue enumeration,
and comparison of the model's counting function against the Riemann-von
Mangoldt formula and tabulated zeta zeros.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    BracketingError,
    CalibrationWarning,
    ConfigurationError,
    ConsistencyError,
    ConvergenceError,
    DiracxpError,
    DomainError,
    IntegrationError,
    MonotonicityError,
    NearZeroError,
    TableError,
)
from .specfun import (  # noqa: F401
    WhittakerParams,
    kummer_m,
    log_gamma,
    riemann_siegel_theta,
    whittaker_km,
)
from .spectrum import (  # noqa: F401
    CylinderMode,
    EigenvalueRecord,
    SpectralConfig,
    Variant,
    calibrate_u0,
    counting_model,
    eigenvalue_at_index,
    eigenvalues,
    mode_to_radial,
    phase_asymptotic,
    phase_exact,
)
from .radial_ode import (  # noqa: F401
    RadialSolution,
    integrate_whittaker,
    residual_closed_form,
    shoot_eigenvalue,
)
from .zeta import (  # noqa: F401
    CountingSample,
    ZeroTable,
    compare_counting,
    count_zeros,
    load_zero_table,
    n_smooth,
    s_fluctuation,
    zeta_critical_line,
)
