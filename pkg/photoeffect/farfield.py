"""
Far-Field Module
Far-field amplitude C(k), the angular law C sin(theta) cos(phi), and its
numeric extraction from the quadrature w+
"""

from dataclasses import dataclass

import numpy as np

from photoeffect.errors import FitNonConvergence, ValidationError
from photoeffect.helmholtz import DrivenProblem, k_r, w_plus
from photoeffect.hydrogen import GROUND

PATTERN_KINDS = ("forward", "outgoing")


@dataclass(frozen=True)
class SphericalDirection:
    """
    theta: angle between n = x/|x| and e1, in [0, pi].
    phi: angle between e3 and the plane (n, e1), in [0, 2 pi).

    With this convention x3 = |x| sin(theta) cos(phi).
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not -1e-12 <= self.theta <= np.pi + 1e-12:
            raise ValidationError(f"theta={self.theta} outside [0, pi]")
        object.__setattr__(self, "theta", float(np.clip(self.theta, 0.0, np.pi)))
        object.__setattr__(self, "phi", float(np.mod(self.phi, 2.0 * np.pi)))

    @classmethod
    def from_vector(cls, x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x)
        if r == 0.0:
            raise ValidationError("direction of the zero vector is undefined")
        return cls(float(np.arccos(np.clip(x[0] / r, -1.0, 1.0))), float(np.arctan2(x[1], x[2])))

    def unit_vector(self):
        st = np.sin(self.theta)
        return np.array([np.cos(self.theta), st * np.sin(self.phi), st * np.cos(self.phi)])

    @property
    def dipole_factor(self):
        """sin(theta) cos(phi), the e3 component of n."""
        return np.sin(self.theta) * np.cos(self.phi)


@dataclass(frozen=True)
class FarFieldPattern:
    """
    Leading far-field term of w+: a(n) = C sin(theta) cos(phi).

    kind 'forward' carries C(k) with the transform at the incident wave
    vector; 'outgoing' carries the constant the convolution converges to.
    """

    C: complex
    k_r: float
    omega: float
    k: float
    kind: str = "forward"

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise ValidationError(f"pattern kind must be one of {PATTERN_KINDS}")

# =========================
# CONSTANTS
# =========================
def _prefactor(problem):
    c = problem.ground.constants
    return 1j * k_r(problem) * c.electron_charge / (4.0 * np.pi * c.hbar * c.light_speed)


def c_of_k(k, ground=GROUND):
    """C(k) = (i k_r e / (4 pi hbar c)) * integral exp(i k y1) psi1(y) dy."""
    problem = DrivenProblem.from_wavenumber(k, ground=ground)
    return complex(_prefactor(problem) * ground.psi1_fourier(np.array([k, 0.0, 0.0])))


def outgoing_amplitude(direction, problem):
    """
    Direction-resolved far-field amplitude of the quadrature w+:
    -(i k_r e / (4 pi hbar c)) psi1_hat(k e1 - k_r n) sin(theta) cos(phi).
    """
    q = problem.k * np.array([1.0, 0.0, 0.0]) - k_r(problem) * direction.unit_vector()
    return complex(-_prefactor(problem) * problem.ground.psi1_fourier(q) * direction.dipole_factor)


def outgoing_constant(problem):
    """Peak of `outgoing_amplitude`, reached at theta = pi/2, phi = 0."""
    return outgoing_amplitude(SphericalDirection(np.pi / 2.0, 0.0), problem)


def pattern_for(problem, kind="forward"):
    """FarFieldPattern of a driven problem with the requested constant."""
    if kind == "forward":
        C = c_of_k(problem.k, problem.ground)
    elif kind == "outgoing":
        C = outgoing_constant(problem)
    else:
        raise ValidationError(f"pattern kind must be one of {PATTERN_KINDS}")
    return FarFieldPattern(C, k_r(problem), problem.omega, problem.k, kind)

# =========================
# ANGULAR LAW
# =========================
def angular_amplitude(direction, pattern):
    """a(phi, theta) = C sin(theta) cos(phi)."""
    return pattern.C * direction.dipole_factor


def far_field_w_plus(x, pattern):
    """a(n(x)) exp(i k_r |x|) / |x|, spatial part only."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0.0):
        raise ValidationError("far field is undefined at the origin")
    return pattern.C * (x[..., 2] / r) * np.exp(1j * pattern.k_r * r) / r


def angular_grid(n_theta, n_phi):
    """theta on [0, pi] inclusive, phi uniform on [0, 2 pi)."""
    if n_theta < 2 or n_phi < 1:
        raise ValidationError("angular grid needs n_theta >= 2 and n_phi >= 1")
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = 2.0 * np.pi * np.arange(n_phi) / n_phi
    return [SphericalDirection(t, p) for t in thetas for p in phis]


def pattern_table(pattern, n_theta, n_phi):
    """Rows of theta, phi, a, |a|^2 and arg(a) over the angular grid."""
    rows = []
    for direction in angular_grid(n_theta, n_phi):
        a = angular_amplitude(direction, pattern)
        rows.append({
            "theta": direction.theta,
            "phi": direction.phi,
            "amplitude": complex(a),
            "abs_a_squared": abs(a) ** 2,
            "phase": float(np.angle(a)),
        })
    return rows

# =========================
# NUMERIC EXTRACTION
# =========================
@dataclass(frozen=True)
class ExtractionResult:
    value: complex
    spread: float
    correction: complex
    radii: tuple
    samples: tuple


def extract_amplitude_numeric(direction, radii, problem, spec=None, max_spread=0.2):
    """
    Fit |x| exp(-i k_r |x|) w+(x) = a + b/|x| along a ray.

    The spread is the largest deviation of the raw samples from a, relative
    to the peak of the outgoing pattern, so nodal directions stay defined.

    Raises:
        ValidationError: radii not increasing or k_r * min(radii) < 50
        FitNonConvergence: spread above max_spread
    """
    radii = np.asarray(radii, dtype=float)
    if radii.ndim != 1 or radii.size == 0 or np.any(np.diff(radii) <= 0.0):
        raise ValidationError("radii must be a strictly increasing list")
    wavenumber = k_r(problem)
    if wavenumber * radii[0] < 50.0:
        raise ValidationError(f"k_r * min(radii) = {wavenumber * radii[0]:.3g} < 50")

    n = direction.unit_vector()
    samples = np.array([
        r * np.exp(-1j * wavenumber * r) * w_plus(r * n, problem, spec).value for r in radii
    ])

    if radii.size == 1:
        value, correction = samples[0], 0.0j
    else:
        design = np.column_stack([np.ones_like(radii), 1.0 / radii]).astype(complex)
        (value, correction), *_ = np.linalg.lstsq(design, samples, rcond=None)

    scale = abs(outgoing_constant(problem))
    spread = float(np.max(np.abs(samples - value)) / scale)
    if spread > max_spread:
        raise FitNonConvergence(
            f"amplitude fit spread {spread:.3g} above {max_spread}",
            value=complex(value),
            spread=spread,
        )
    return ExtractionResult(complex(value), spread, complex(correction),
                            tuple(radii), tuple(complex(s) for s in samples))
