"""
Units Module
Hartree atomic units and conversions to SI (eV, V, m, s)
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import constants as sp

from photoeffect.errors import UnitError

ANGSTROM = 1.0e-10


class Dimension(str, Enum):
    """Physical dimensions the conversions support."""

    ENERGY = "energy"
    LENGTH = "length"
    TIME = "time"
    FREQUENCY = "frequency"
    WAVENUMBER = "wavenumber"
    VOLTAGE = "voltage"
    VELOCITY = "velocity"
    CURRENT = "current"
    CURRENT_DENSITY = "current_density"
    DIMENSIONLESS = "dimensionless"


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Internal constants in Hartree atomic units plus CODATA conversion factors.

    The electron charge is negative: `electron_charge == -elementary_charge_magnitude`.
    """

    # Internal unit system
    hbar: float = 1.0
    electron_mass: float = 1.0
    elementary_charge_magnitude: float = 1.0

    # Fine-structure constant (dimensionless)
    fine_structure_alpha: float = sp.fine_structure

    # Hartree energy (eV)
    hartree_in_eV: float = sp.physical_constants["Hartree energy in eV"][0]

    # Bohr radius (m)
    bohr_in_meters: float = sp.physical_constants["Bohr radius"][0]

    # Atomic unit of time (s)
    atomic_time_in_seconds: float = sp.physical_constants["atomic unit of time"][0]

    # Proton to electron mass ratio, used for the reduced-mass red bound
    proton_electron_mass_ratio: float = sp.physical_constants["proton-electron mass ratio"][0]

    # Atomic unit of current (A)
    atomic_current_in_amperes: float = sp.physical_constants["atomic unit of current"][0]

    # Speed of light (m/s)
    light_speed_si: float = sp.c

    def __post_init__(self):
        for name in ("hartree_in_eV", "bohr_in_meters", "atomic_time_in_seconds", "atomic_current_in_amperes"):
            if getattr(self, name) <= 0:
                raise UnitError(f"{name} must be strictly positive")

    @property
    def light_speed(self):
        return 1.0 / self.fine_structure_alpha

    @property
    def electron_charge(self):
        return -self.elementary_charge_magnitude

    @property
    def rydberg_per_meter(self):
        """Rydberg constant from E1 = -2*pi*hbar*c*R, with E1 = -m e^4 / (2 hbar^2)."""
        e4 = self.elementary_charge_magnitude ** 4
        ground_energy = -self.electron_mass * e4 / (2.0 * self.hbar ** 2)
        rydberg_au = -ground_energy / (2.0 * np.pi * self.hbar * self.light_speed)
        return rydberg_au / self.bohr_in_meters

    def consistency_gap(self):
        """Relative gap between (a0 / t_au) / c_SI and alpha."""
        velocity = self.bohr_in_meters / self.atomic_time_in_seconds
        return abs(velocity / self.light_speed_si - self.fine_structure_alpha) / self.fine_structure_alpha

    def si_factor(self, dimension):
        """SI value of one atomic unit of the given dimension."""
        dimension = _as_dimension(dimension)
        factors = {
            Dimension.ENERGY: self.hartree_in_eV,
            Dimension.LENGTH: self.bohr_in_meters,
            Dimension.TIME: self.atomic_time_in_seconds,
            Dimension.FREQUENCY: 1.0 / self.atomic_time_in_seconds,
            Dimension.WAVENUMBER: 1.0 / self.bohr_in_meters,
            Dimension.VOLTAGE: self.hartree_in_eV,
            Dimension.VELOCITY: self.bohr_in_meters / self.atomic_time_in_seconds,
            Dimension.CURRENT: self.atomic_current_in_amperes,
            Dimension.CURRENT_DENSITY: self.atomic_current_in_amperes / self.bohr_in_meters ** 2,
            Dimension.DIMENSIONLESS: 1.0,
        }
        return factors[dimension]


ATOMIC = PhysicalConstants()


@dataclass(frozen=True)
class Quantity:
    """A real SI value tagged with its dimension (energy in eV, voltage in V)."""

    value: float
    dimension: Dimension

    def __post_init__(self):
        object.__setattr__(self, "dimension", _as_dimension(self.dimension))


def _as_dimension(dimension):
    try:
        return Dimension(dimension)
    except ValueError:
        raise UnitError(f"Unsupported dimension '{dimension}'") from None

# =========================
# CONVERSIONS
# =========================
def to_atomic(quantity, constants=ATOMIC):
    """Express an SI quantity in Hartree atomic units."""
    return quantity.value / constants.si_factor(quantity.dimension)


def from_atomic(value, dimension, constants=ATOMIC):
    """Inverse of `to_atomic`."""
    dimension = _as_dimension(dimension)
    return Quantity(value * constants.si_factor(dimension), dimension)


def wavelength_to_wavenumber(angstrom, constants=ATOMIC):
    """Wavenumber 2*pi/lambda in bohr^-1 for a wavelength given in angstrom."""
    if angstrom <= 0:
        raise UnitError("wavelength must be positive")
    return 2.0 * np.pi / (angstrom * ANGSTROM / constants.bohr_in_meters)


def wavelength_to_omega(angstrom, constants=ATOMIC):
    """Angular frequency omega = c*k (a.u.) of light with the given wavelength."""
    return constants.light_speed * wavelength_to_wavenumber(angstrom, constants)


def omega_to_wavelength(omega, constants=ATOMIC):
    """Wavelength in angstrom of light with angular frequency omega (a.u.)."""
    if omega <= 0:
        raise UnitError("omega must be positive")
    k = omega / constants.light_speed
    return 2.0 * np.pi / k * constants.bohr_in_meters / ANGSTROM
