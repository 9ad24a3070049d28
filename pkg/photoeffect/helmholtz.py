"""
Helmholtz Module
Limiting amplitudes w+ (outgoing Helmholtz kernel) and w- (Yukawa kernel)
"""

from dataclasses import dataclass, field

import numpy as np

from photoeffect.errors import BelowThresholdError, QuadratureNonConvergence, ValidationError
from photoeffect.hydrogen import GROUND, HydrogenGroundState
from photoeffect.quadrature import QuadratureResult, QuadratureSpec, convolve

MAX_OSCILLATION = 1.0e4
BRANCHES = ("plus", "minus")

__all__ = [
    "DrivenProblem",
    "LimitingAmplitudePair",
    "QuadratureResult",
    "QuadratureSpec",
    "ResidualReport",
    "decay_rate_bound",
    "helmholtz_residual",
    "k_r",
    "k_r_complex",
    "kappa_minus",
    "limiting_absorption_w_plus",
    "source_f_minus",
    "source_f_plus",
    "w_minus",
    "w_plus",
]


@dataclass(frozen=True)
class DrivenProblem:
    """Incident wave of frequency omega = c k (a.u.), polarized along e3, travelling along e1."""

    omega: float
    branch: str = "plus"
    ground: HydrogenGroundState = field(default=GROUND)

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValidationError(f"omega must be positive, got {self.omega}")
        if self.branch not in BRANCHES:
            raise ValidationError(f"branch must be one of {BRANCHES}, got '{self.branch}'")

    @classmethod
    def from_wavenumber(cls, k, branch="plus", ground=GROUND):
        return cls(k * ground.constants.light_speed, branch, ground)

    @property
    def k(self):
        return self.omega / self.ground.constants.light_speed

    @property
    def source_prefactor(self):
        """e / (hbar c), shared by both sources."""
        c = self.ground.constants
        return c.electron_charge / (c.hbar * c.light_speed)

# =========================
# WAVENUMBERS
# =========================
def k_r_complex(omega, ground=GROUND):
    """sqrt(2m(omega1 + omega)/hbar) on the principal branch; Im > 0 for Im(omega) > 0."""
    c = ground.constants
    return np.sqrt(2.0 * c.electron_mass * (ground.omega1 + omega) / c.hbar + 0j)


def k_r(problem):
    """Radiated wavenumber; requires omega above the red bound."""
    ground = problem.ground
    if problem.omega + ground.omega1 <= 0.0:
        raise BelowThresholdError(problem.omega, abs(ground.omega1))
    return float(k_r_complex(problem.omega, ground).real)


def kappa_minus(problem):
    """Decay rate sqrt(-2m(omega1 - omega)/hbar) of w-."""
    c = problem.ground.constants
    return float(np.sqrt(-2.0 * c.electron_mass * (problem.ground.omega1 - problem.omega) / c.hbar))


@dataclass(frozen=True)
class LimitingAmplitudePair:
    """Both limiting amplitudes of one driven problem."""

    problem: DrivenProblem
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)

    @property
    def k_r(self):
        return k_r(self.problem)

    @property
    def kappa_minus(self):
        return kappa_minus(self.problem)

    def w_plus(self, x):
        return w_plus(x, self.problem, self.spec)

    def w_minus(self, x):
        return w_minus(x, self.problem, self.spec)

# =========================
# SOURCES
# =========================
def source_f_plus(x, problem):
    """f+(x) = (e / hbar c) exp(i k x1) d3 psi1(x)."""
    x = np.asarray(x, dtype=float)
    phase = np.exp(1j * problem.k * x[..., 0])
    return problem.source_prefactor * phase * problem.ground.grad3_psi1(x)


def source_f_minus(x, problem):
    """f-(x) = (e / hbar c) exp(-i k x1) d3 psi1(x); equal to conj(f+) for real psi1."""
    x = np.asarray(x, dtype=float)
    phase = np.exp(-1j * problem.k * x[..., 0])
    return problem.source_prefactor * phase * problem.ground.grad3_psi1(x)

# =========================
# CONVOLUTIONS
# =========================
def _check_point(x, spec):
    x = np.asarray(x, dtype=float)
    if x.shape != (3,):
        raise ValidationError(f"point must be a 3-vector, got shape {x.shape}")
    if np.linalg.norm(x) > 10.0 * spec.radial_cutoff:
        raise ValidationError(
            f"|x|={np.linalg.norm(x):.6g} exceeds the validated range 10*radial_cutoff"
        )
    return x


def _finish(result, spec, label):
    if result.error_estimate > spec.target_rel_error:
        raise QuadratureNonConvergence(
            f"{label}: error estimate {result.error_estimate:.3g} above target {spec.target_rel_error:.3g}",
            value=result.value,
            error_estimate=result.error_estimate,
            nodes=result.nodes,
        )
    return result


def _outgoing(x, problem, spec, wavenumber, anchor, label):
    spec = spec or QuadratureSpec()
    spec.validate_for(problem.ground.r1)
    x = _check_point(x, spec)
    if abs(wavenumber) * spec.radial_cutoff > MAX_OSCILLATION:
        raise ValidationError("k_r * radial_cutoff exceeds the validated oscillation range")

    result = convolve(
        x,
        lambda y: source_f_plus(y, problem),
        lambda d: np.exp(1j * wavenumber * d),
        wavenumber,
        spec,
        r1=problem.ground.r1,
        anchor=anchor,
    )
    return _finish(result, spec, label)


def w_plus(x, problem, spec=None, anchor=None):
    """
    w+(x) = -integral exp(i k_r |x-y|) / (4 pi |x-y|) f+(y) dy.

    The Coulomb term of the stationary equation is neglected. Returns a
    QuadratureResult; raises QuadratureNonConvergence above the target error.
    """
    return _outgoing(x, problem, spec, k_r(problem), anchor, "w_plus")


def limiting_absorption_w_plus(x, problem, spec=None, epsilon=0.0, anchor=None):
    """w+ with the kernel exp(i k_r(omega + i epsilon)|x-y|); epsilon = 0 is w_plus."""
    if epsilon < 0.0:
        raise ValidationError("epsilon must be non-negative")
    k_r(problem)
    wavenumber = k_r_complex(problem.omega + 1j * epsilon, problem.ground)
    if epsilon == 0.0:
        wavenumber = wavenumber.real
    return _outgoing(x, problem, spec, wavenumber, anchor, "limiting_absorption_w_plus")


def w_minus(x, problem, spec=None, anchor=None):
    """w-(x) = -integral exp(-kappa |x-y|) / (4 pi |x-y|) f-(y) dy; decays like exp(-min(1/r1, kappa)|x|)."""
    spec = spec or QuadratureSpec()
    spec.validate_for(problem.ground.r1)
    x = _check_point(x, spec)
    kappa = kappa_minus(problem)

    result = convolve(
        x,
        lambda y: source_f_minus(y, problem),
        lambda d: np.exp(-kappa * d),
        kappa,
        spec,
        r1=problem.ground.r1,
        anchor=anchor,
    )
    return _finish(result, spec, "w_minus")


def decay_rate_bound(problem):
    """min(1/r1, kappa-), the exponential decay rate of w-."""
    return min(1.0 / problem.ground.r1, kappa_minus(problem))

# =========================
# SELF-CHECKS
# =========================
@dataclass(frozen=True)
class ResidualReport:
    residual: complex
    magnitude: float
    source_magnitude: float
    step: float


def laplacian_7pt(evaluate, x, h):
    """Seven-point finite-difference Laplacian of a scalar field at x."""
    x = np.asarray(x, dtype=float)
    center = evaluate(x)
    total = -6.0 * center
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        total += evaluate(x + offset) + evaluate(x - offset)
    return total / h ** 2, center


def helmholtz_residual(problem, spec=None, x=(2.0, 1.0, 1.0), h=1.0e-2, field_fn=None):
    """
    (Delta_h + k_r^2) w+ - f+ at x with the seven-point Laplacian.

    All stencil evaluations share the node layout anchored at x. `field_fn`
    replaces the quadrature w+ (used to probe other candidate fields).
    """
    x = np.asarray(x, dtype=float)
    if np.linalg.norm(x) < 10.0 * h:
        raise ValidationError("x must be at least 10 h away from the origin")
    wavenumber = k_r(problem)

    if field_fn is None:
        def field_fn(point):
            return w_plus(point, problem, spec, anchor=x).value

    laplacian, center = laplacian_7pt(field_fn, x, h)
    source = complex(source_f_plus(x, problem))
    residual = complex(laplacian + wavenumber ** 2 * center - source)
    return ResidualReport(residual, abs(residual), abs(source), h)
