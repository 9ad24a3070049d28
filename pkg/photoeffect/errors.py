"""
Errors Module
Exception hierarchy shared by the numerical modules and the CLI
"""

# =========================
# EXIT CODES
# =========================
EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NONCONVERGENCE = 3


class PhotoeffectError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 1


# =========================
# VALIDATION ERRORS
# =========================
class ValidationError(PhotoeffectError, ValueError):
    """Input outside the validated domain."""

    exit_code = EXIT_VALIDATION


class UnitError(ValidationError):
    """Unsupported physical dimension."""


class BelowThresholdError(ValidationError):
    """Frequency at or below the red bound where the continuous spectrum is required."""

    def __init__(self, omega, omega_red):
        super().__init__(
            f"omega={omega:.6g} a.u. is not above the red bound |omega1|={omega_red:.6g} a.u."
        )
        self.omega = omega
        self.omega_red = omega_red


class ConfigError(ValidationError):
    """Malformed configuration file."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class WindowTooShortError(ValidationError):
    """Fit window covers fewer driving periods than required."""


# =========================
# NUMERICAL FAILURES
# =========================
class NonConvergenceError(PhotoeffectError, ArithmeticError):
    """A numerical procedure missed its accuracy target."""

    exit_code = EXIT_NONCONVERGENCE

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class QuadratureNonConvergence(NonConvergenceError):
    pass


class FitNonConvergence(NonConvergenceError):
    pass


class FitResidualError(NonConvergenceError):
    pass


class EigenNonConvergence(NonConvergenceError):
    pass


class GridTooCoarseError(NonConvergenceError):
    pass


class InstabilityError(NonConvergenceError):
    pass
