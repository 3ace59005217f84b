"""Exception types shared across the package."""


class DiracxpError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DiracxpError, ValueError):
    """Mathematically invalid input (Gamma pole, u <= 0, out-of-window energy)."""


class ConfigurationError(DiracxpError, ValueError):
    """A parameter violates a documented constraint (e.g. u0 outside (0, 8))."""


class ConvergenceError(DiracxpError, RuntimeError):
    """An iterative evaluation exhausted its budget.

    ``residual`` holds the best relative residual attained before giving up.
    """

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ConsistencyError(DiracxpError, RuntimeError):
    """An internal cross-check failed (e.g. a unimodular ratio drifted off |z| = 1)."""


class MonotonicityError(DiracxpError, RuntimeError):
    """The spectral phase is not increasing on the requested window."""


class BracketingError(DiracxpError, RuntimeError):
    """Root bracketing failed; ``partial`` carries any results found so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = list(partial) if partial is not None else []


class IntegrationError(DiracxpError, RuntimeError):
    """The ODE integrator failed before reaching the end of the interval."""


class NearZeroError(DiracxpError, RuntimeError):
    """Evaluation too close to a zeta zero for the argument to be tracked."""


class TableError(DiracxpError, ValueError):
    """A zero table failed to parse or validate; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class CalibrationWarning(UserWarning):
    """The calibration objective did not look unimodal on the search bracket."""
