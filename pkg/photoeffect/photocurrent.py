"""
Photocurrent Module
Current density of the wave function, Wentzel's far-field law with the
Sommerfeld-Schur and Fisher-Sauter corrections, and flux through spheres
"""

from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np

from photoeffect.errors import QuadratureNonConvergence, ValidationError
from photoeffect.farfield import SphericalDirection, outgoing_constant
from photoeffect.helmholtz import DrivenProblem, k_r, w_plus
from photoeffect.hydrogen import GROUND
from photoeffect.quadrature import sphere_rule
from photoeffect.units import ATOMIC

SIGN_CONVENTION = "signed electric current; e < 0 makes the outward flux negative"


class CurrentLaw(str, Enum):
    WENTZEL = "wentzel"
    SOMMERFELD_SCHUR = "ss"
    FISHER_SAUTER = "fs"


@dataclass(frozen=True)
class CurrentModel:
    """Angular law of the photocurrent; beta = v/c is ignored by Wentzel's law."""

    law: CurrentLaw = CurrentLaw.WENTZEL
    beta: float = 0.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "law", CurrentLaw(self.law))
        except ValueError:
            raise ValidationError(f"Unknown current law '{self.law}'") from None
        if not 0.0 <= self.beta < 1.0:
            raise ValidationError(f"beta={self.beta} outside [0, 1)")


@dataclass(frozen=True)
class FluxReport:
    J_infinity: float
    J_abs: float
    normalized: float
    radius_used: float
    quadrature_error: float
    nodes: int
    sign_convention: str = SIGN_CONVENTION

    def to_dict(self):
        return asdict(self)

# =========================
# CURRENT DENSITIES
# =========================
def probability_current(psi_value, psi_gradient, constants=ATOMIC):
    """j = -(e/m) Re(i hbar grad(psi) conj(psi)) = (e hbar / m) Im(grad(psi) conj(psi))."""
    psi_value = np.asarray(psi_value, dtype=complex)
    psi_gradient = np.asarray(psi_gradient, dtype=complex)
    scale = constants.electron_charge * constants.hbar / constants.electron_mass
    return scale * np.imag(psi_gradient * np.conj(psi_value)[..., None])


def current_prefactor(A, pattern, constants=ATOMIC):
    """A^2 (e hbar k_r / m) |C|^2."""
    return (A ** 2 * constants.electron_charge * constants.hbar * pattern.k_r
            / constants.electron_mass * abs(pattern.C) ** 2)


def wentzel_current(x, A, pattern, constants=ATOMIC):
    """A^2 (e hbar k_r / m) |a|^2 / |x|^2 n(x) with a = C sin(theta) cos(phi)."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0.0):
        raise ValidationError("current is undefined at the origin")
    n = x / r[..., None]
    a_squared = abs(pattern.C) ** 2 * n[..., 2] ** 2
    scale = A ** 2 * constants.electron_charge * constants.hbar * pattern.k_r / constants.electron_mass
    return (scale * a_squared / r ** 2)[..., None] * n

# =========================
# ANGULAR LAWS
# =========================
def _factor(law, beta, cos_theta, dipole_squared):
    if law is CurrentLaw.WENTZEL:
        return dipole_squared
    if law is CurrentLaw.SOMMERFELD_SCHUR:
        return dipole_squared * (1.0 + 4.0 * beta * cos_theta)
    return dipole_squared / (1.0 - beta * cos_theta) ** 4


def angular_factor(model, direction):
    """sin^2(theta) cos^2(phi) times the law's correction; all laws agree at beta = 0."""
    return float(_factor(model.law, model.beta, np.cos(direction.theta), direction.dipole_factor ** 2))


def beta_from_omega(omega, ground=GROUND):
    """beta = v/c with m v = hbar k_r."""
    c = ground.constants
    v = c.hbar * k_r(DrivenProblem(omega, ground=ground)) / c.electron_mass
    return v / c.light_speed


def current_density(x, A, pattern, model, constants=ATOMIC):
    """Far-field current of the selected law, normalized to Wentzel's prefactor."""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if np.any(r == 0.0):
        raise ValidationError("current is undefined at the origin")
    n = x / r[..., None]
    factor =_factor(model.law, model.beta, n[..., 0], n[..., 2] ** 2)
    return (current_prefactor(A, pattern, constants) * factor / r ** 2)[..., None] * n

# =========================
# FLUX THROUGH SPHERES
# =========================
def _sphere_points(nodes):
    mu, w_mu, phi, w_phi = sphere_rule(nodes, 2 * nodes)
    s = np.sqrt(1.0 - mu ** 2)[:, None]
    n = np.stack([
        np.broadcast_to(mu[:, None], (nodes, 2 * nodes)),
        s * np.sin(phi)[None, :],
        s * np.cos(phi)[None, :],
    ], axis=-1)
    return n, w_mu[:, None] * w_phi[None, :]


def _surface_flux(model, A, pattern, radius, nodes, constants):
    n, weights = _sphere_points(nodes)
    j = current_density(radius * n, A, pattern, model, constants)
    return float(np.sum(weights * np.sum(j * n, axis=-1)) * radius ** 2)


def total_flux(model, A, pattern, radius, nodes=32, constants=ATOMIC, tolerance=1.0e-6):
    """
    Integral of j.n over the sphere |x| = radius.

    Gauss-Legendre in cos(theta) times the trapezoid rule in phi; the error
    estimate compares `nodes` with `nodes // 2`.
    """
    if radius <= 0.0:
        raise ValidationError("radius must be positive")
    if nodes < 4:
        raise ValidationError("total_flux needs at least 4 nodes in cos(theta)")

    flux = _surface_flux(model, A, pattern, radius, nodes, constants)
    coarse = _surface_flux(model, A, pattern, radius, nodes // 2, constants)
    error = abs(flux - coarse) / abs(flux) if flux != 0.0 else 0.0
    if error > tolerance:
        raise QuadratureNonConvergence(
            f"flux error estimate {error:.3g} above {tolerance:.3g}", flux=flux, nodes=nodes
        )

    prefactor = current_prefactor(A, pattern, constants)
    normalized = flux / prefactor if prefactor != 0.0 else 0.0
    return FluxReport(flux, abs(flux), normalized, float(radius), error, nodes * 2 * nodes)


def analytic_flux(model, A, pattern, constants=ATOMIC):
    """Closed-form totals: 4 pi / 3 for Wentzel and SS, (4 pi / 3) / (1 - beta^2)^2 for FS."""
    total = current_prefactor(A, pattern, constants) * 4.0 * np.pi / 3.0
    if model.law is CurrentLaw.FISHER_SAUTER:
        total /= (1.0 - model.beta ** 2) ** 2
    return total

# =========================
# CURRENT OF THE QUADRATURE AMPLITUDE
# =========================
def current_from_amplitude(x, A, problem, spec=None, h=None):
    """Current of the wave A w+(x), gradient by central differences."""
    x = np.asarray(x, dtype=float)
    h = h or 0.05 / k_r(problem)
    value = A * w_plus(x, problem, spec).value
    gradient = np.zeros(3, dtype=complex)
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = h
        forward = w_plus(x + offset, problem, spec).value
        backward = w_plus(x - offset, problem, spec).value
        gradient[axis] = A * (forward - backward) / (2.0 * h)
    return probability_current(value, gradient, problem.ground.constants)


def radial_current_from_amplitude(x, A, problem, spec=None, h=None):
    """j.n of the wave A w+ at x, derivative along n by a central difference."""
    x = np.asarray(x, dtype=float)
    n = x / np.linalg.norm(x)
    h = h or 0.05 / k_r(problem)
    value = A * w_plus(x, problem, spec).value
    derivative = A * (w_plus(x + h * n, problem, spec).value
                      - w_plus(x - h * n, problem, spec).value) / (2.0 * h)
    return float(probability_current(value, derivative * n, problem.ground.constants) @ n)


def numeric_flux(problem, A, radius, spec=None, n_theta=6, n_phi=8):
    """
    Flux of the quadrature current through |x| = radius, compared with the
    Wentzel total of the outgoing pattern.

    Returns:
        (numeric flux, analytic flux)
    """
    mu, w_mu, phi, w_phi = sphere_rule(n_theta, n_phi)
    flux = 0.0
    for m, wm in zip(mu, w_mu):
        for p, wp in zip(phi, w_phi):
            direction = SphericalDirection(float(np.arccos(m)), float(p))
            jn = radial_current_from_amplitude(radius * direction.unit_vector(), A, problem, spec)
            flux += wm * wp * jn * radius ** 2

    c = problem.ground.constants
    analytic = (A ** 2 * c.electron_charge * c.hbar * k_r(problem) / c.electron_mass
                * abs(outgoing_constant(problem)) ** 2 * 4.0 * np.pi / 3.0)
    return flux, analytic
