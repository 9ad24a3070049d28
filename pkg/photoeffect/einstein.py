"""
Einstein Module
Red bound, maximal photoelectron energy, stopping voltage, and the
stopping-potential shift of the ground level on a radial grid
"""

from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import splu

from photoeffect.errors import EigenNonConvergence, GridTooCoarseError, ValidationError
from photoeffect.hydrogen import GROUND
from photoeffect.units import Dimension, from_atomic, omega_to_wavelength, wavelength_to_omega

INVERSE_ITERATION_SHIFT = -0.6
GRID_TOLERANCE = 1.0e-3

# =========================
# EINSTEIN'S RULES
# =========================
def work_function(ground=GROUND):
    """W = hbar |omega1|."""
    return ground.constants.hbar * abs(ground.omega1)


def _check_omega(omega):
    if not omega > 0.0:
        raise ValidationError(f"omega must be positive, got {omega}")


def max_electron_energy(omega, ground=GROUND):
    """m v_max^2 / 2 = hbar omega - W; None when the photoeffect is forbidden."""
    _check_omega(omega)
    energy = ground.constants.hbar * omega - work_function(ground)
    return energy if energy >= 0.0 else None


def min_stopping_voltage(omega, ground=GROUND):
    """(hbar omega - W) / |e|; zero below the red bound."""
    energy = max_electron_energy(omega, ground)
    if energy is None:
        return 0.0
    return energy / ground.constants.elementary_charge_magnitude


def photoeffect_allowed(omega, U_stop=0.0, ground=GROUND):
    """hbar omega > hbar |omega1| + |e| U_stop, strict."""
    _check_omega(omega)
    if U_stop < 0.0:
        raise ValidationError("U_stop must be non-negative")
    c = ground.constants
    return bool(c.hbar * omega > work_function(ground) + c.elementary_charge_magnitude * U_stop)


@dataclass(frozen=True)
class EinsteinReport:
    omega: float
    omega_red: float
    W: float
    E_max: float
    U_stop_min: float
    U_stop: float
    v_max: float
    allowed: bool
    reason: str

    def to_dict(self, si=False):
        data = asdict(self)
        if si:
            dims = {
                "omega": Dimension.FREQUENCY,
                "omega_red": Dimension.FREQUENCY,
                "W": Dimension.ENERGY,
                "E_max": Dimension.ENERGY,
                "U_stop_min": Dimension.VOLTAGE,
                "U_stop": Dimension.VOLTAGE,
                "v_max": Dimension.VELOCITY,
            }
            for name, dim in dims.items():
                value = data[name]
                data[f"{name}_si"] = None if value is None else from_atomic(value, dim).value
            data["wavelength_angstrom"] = omega_to_wavelength(self.omega)
        return data


def einstein_report(omega, U_stop=0.0, ground=GROUND):
    """Consolidated rules for one frequency and stopping voltage (atomic units)."""
    c = ground.constants
    energy = max_electron_energy(omega, ground)
    allowed = photoeffect_allowed(omega, U_stop, ground)

    if energy is None or energy == 0.0:
        reason = "below red bound"
    elif not allowed:
        reason = "stopping voltage"
    else:
        reason = "allowed"

    v_max = None if energy is None else float(np.sqrt(2.0 * energy / c.electron_mass))
    return EinsteinReport(
        omega=float(omega),
        omega_red=abs(ground.omega1),
        W=work_function(ground),
        E_max=energy,
        U_stop_min=min_stopping_voltage(omega, ground),
        U_stop=float(U_stop),
        v_max=v_max,
        allowed=allowed,
        reason=reason,
    )


def stopping_voltage_scan(wavelengths, ground=GROUND):
    """U_stop_min against wavelength (angstrom); grows as the wavelength shrinks."""
    rows = []
    for wavelength in wavelengths:
        omega = wavelength_to_omega(wavelength, ground.constants)
        voltage = min_stopping_voltage(omega, ground)
        rows.append({
            "wavelength_angstrom": float(wavelength),
            "omega": omega,
            "U_stop_min": voltage,
            "U_stop_min_V": from_atomic(voltage, Dimension.VOLTAGE, ground.constants).value,
            "allowed": photoeffect_allowed(omega, 0.0, ground),
        })
    return rows

# =========================
# RADIAL PROBLEM
# =========================
@dataclass(frozen=True)
class RadialGrid:
    """Uniform grid r_i = i h, i = 1..n_points, h = r_max / (n_points + 1)."""

    r_max: float = 60.0
    n_points: int = 3000

    def __post_init__(self):
        if self.r_max < 40.0 * GROUND.r1:
            raise ValidationError(f"r_max={self.r_max} must be at least 40 r1")
        if self.n_points < 2000:
            raise ValidationError(f"n_points={self.n_points} must be at least 2000")

    @property
    def spacing(self):
        return self.r_max / (self.n_points + 1)

    @property
    def r(self):
        return np.arange(1, self.n_points + 1) * self.spacing


@dataclass(frozen=True)
class StoppingPotentialProblem:
    """Stopping potential equal to U_stop on r <= plateau_radius, cosine taper over decay_width."""

    U_stop: float
    plateau_radius: float = 20.0
    decay_width: float = 10.0
    grid: RadialGrid = field(default_factory=RadialGrid)

    def __post_init__(self):
        if self.U_stop < 0.0:
            raise ValidationError("U_stop must be non-negative")
        if self.plateau_radius <= 0.0 or self.decay_width <= 0.0:
            raise ValidationError("plateau_radius and decay_width must be positive")

    def phi_stop(self, r):
        r = np.asarray(r, dtype=float)
        t = np.clip((r - self.plateau_radius) / self.decay_width, 0.0, 1.0)
        return self.U_stop * 0.5 * (1.0 + np.cos(np.pi * t))


def _tridiagonal(problem, ground, with_potential=True):
    c = ground.constants
    grid = problem.grid
    r = grid.r
    kinetic = c.hbar ** 2 / (2.0 * c.electron_mass * grid.spacing ** 2)
    potential = -c.elementary_charge_magnitude ** 2 / r
    if with_potential:
        potential = potential + c.electron_charge * problem.phi_stop(r)
    diag = 2.0 * kinetic + potential
    off = np.full(grid.n_points - 1, -kinetic)
    return diag, off


def inverse_iteration(diag, off, shift, tol=1.0e-12, max_iter=200):
    """Eigenvalue of a symmetric tridiagonal matrix closest to `shift`."""
    n = diag.size
    matrix = sparse.diags([off, diag - shift, off], [-1, 0, 1], format="csc")
    lu = splu(matrix)

    v = np.ones(n) / np.sqrt(n)
    previous = np.inf
    for iteration in range(1, max_iter + 1):
        v = lu.solve(v)
        v /= np.linalg.norm(v)
        hv = diag * v
        hv[:-1] += off * v[1:]
        hv[1:] += off * v[:-1]
        value = float(v @ hv)
        if abs(value - previous) < tol:
            return value, v
        previous = value
    raise EigenNonConvergence(
        f"inverse iteration did not converge in {max_iter} iterations",
        last_value=previous,
        shift=shift,
    )


def radial_levels(problem, count=10, ground=GROUND, with_potential=True):
    """Lowest `count` eigenvalues of the discretized radial operator."""
    diag, off = _tridiagonal(problem, ground, with_potential)
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))


def _ground_level(problem, ground, with_potential):
    diag, off = _tridiagonal(problem, ground, with_potential)
    shift = INVERSE_ITERATION_SHIFT
    if with_potential:
        shift += ground.constants.electron_charge * problem.U_stop
    value, _ = inverse_iteration(diag, off, shift)
    return value


@dataclass(frozen=True)
class MinimaxReport:
    U_stop: float
    shifted_energy: float
    unperturbed_energy: float
    shift: float
    expected_shift: float
    relative_deviation: float
    lower_bound: float
    lower_bound_holds: bool
    plateau_radius: float
    decay_width: float
    r_max: float
    n_points: int

    def to_dict(self, si=False):
        data = asdict(self)
        if si:
            for name in ("shifted_energy", "unperturbed_energy", "shift", "expected_shift", "lower_bound"):
                data[f"{name}_si"] = from_atomic(data[name], Dimension.ENERGY).value
            data["U_stop_si"] = from_atomic(self.U_stop, Dimension.VOLTAGE).value
        return data


def shifted_ground_energy(problem, ground=GROUND):
    """
    Lowest eigenvalue of -(hbar^2/2m) d^2/dr^2 - e^2/r + e phi_stop(r) on u = r psi,
    u(0) = u(r_max) = 0.

    Raises:
        GridTooCoarseError: unperturbed level off hbar*omega1 by more than 1e-3
    """
    unperturbed = _ground_level(problem, ground, with_potential=False)
    if abs(unperturbed - ground.E1) > GRID_TOLERANCE:
        raise GridTooCoarseError(
            f"unperturbed ground level {unperturbed:.6f} off {ground.E1} by more than {GRID_TOLERANCE}",
            unperturbed_energy=unperturbed,
        )
    return _ground_level(problem, ground, with_potential=True)


def minimax_report(problem, ground=GROUND):
    """Shifted level against the estimate hbar omega1 + e U_stop and its lower bound."""
    shifted = shifted_ground_energy(problem, ground)
    unperturbed = _ground_level(problem, ground, with_potential=False)
    expected = ground.constants.electron_charge * problem.U_stop
    shift = shifted - unperturbed
    lower_bound = ground.E1 + expected
    deviation = abs(shift - expected) / abs(expected) if expected != 0.0 else abs(shift)
    return MinimaxReport(
        U_stop=problem.U_stop,
        shifted_energy=shifted,
        unperturbed_energy=unperturbed,
        shift=shift,
        expected_shift=expected,
        relative_deviation=deviation,
        lower_bound=lower_bound,
        lower_bound_holds=bool(shifted >= lower_bound - GRID_TOLERANCE),
        plateau_radius=problem.plateau_radius,
        decay_width=problem.decay_width,
        r_max=problem.grid.r_max,
        n_points=problem.grid.n_points,
    )
