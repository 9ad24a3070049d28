"""
Hydrogen Module
Ground state of hydrogen: wave function, gradient, Fourier transform, red bound
"""

from dataclasses import asdict, dataclass

import numpy as np

from photoeffect.units import ANGSTROM, ATOMIC, PhysicalConstants


@dataclass(frozen=True)
class HydrogenGroundState:
    """
    Spatial part C1 * exp(-|x|/r1) of the hydrogen ground state.

    The time phase exp(-i*omega1*t) is applied by callers. Evaluators accept
    arrays of points with the Cartesian axis last.
    """

    constants: PhysicalConstants = ATOMIC

    @property
    def r1(self):
        c = self.constants
        return c.hbar ** 2 / (c.electron_mass * c.elementary_charge_magnitude ** 2)

    @property
    def omega1(self):
        c = self.constants
        return -c.electron_mass * c.elementary_charge_magnitude ** 4 / (2.0 * c.hbar ** 3)

    @property
    def E1(self):
        return self.constants.hbar * self.omega1

    @property
    def C1(self):
        return (np.pi * self.r1 ** 3) ** -0.5

    # =========================
    # EVALUATORS
    # =========================
    def psi1(self, x):
        """C1 * exp(-|x|/r1)."""
        r = np.linalg.norm(np.asarray(x, dtype=float), axis=-1)
        return self.C1 * np.exp(-r / self.r1)

    def grad3_psi1(self, x):
        """d(psi1)/dx3 = -(x3 / (r1 |x|)) psi1; zero at the origin."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        safe_r = np.where(r > 0.0, r, 1.0)
        value = -(x[..., 2] / (self.r1 * safe_r)) * self.C1 * np.exp(-r / self.r1)
        return np.where(r > 0.0, value, 0.0)

    def psi1_fourier(self, q):
        """Integral of exp(i q.y) psi1(y) dy = C1 8 pi r1^3 / (1 + |q|^2 r1^2)^2."""
        q2 = np.sum(np.abs(np.asarray(q)) ** 2, axis=-1)
        return self.C1 * 8.0 * np.pi * self.r1 ** 3 / (1.0 + q2 * self.r1 ** 2) ** 2

    def red_bound(self, finite_nuclear_mass=True):
        """Red bound of the photoeffect in atomic units and in SI."""
        return red_bound(self, finite_nuclear_mass)


GROUND = HydrogenGroundState()


@dataclass(frozen=True)
class RedBoundReport:
    """
    Red bound quantities.

    Atomic-unit fields belong to the infinite-nuclear-mass model used by every
    other module; SI fields carry `reduced_mass_factor` (1 when disabled).
    """

    omega_red: float
    k1: float
    lambda_red: float
    omega_red_per_s: float
    k1_per_m: float
    lambda_red_angstrom: float
    reduced_mass_factor: float

    def to_dict(self):
        return asdict(self)


def red_bound(ground=GROUND, finite_nuclear_mass=True):
    """omega_red = |omega1|, k1 = omega_red / c, lambda_red = 2 pi / k1."""
    c = ground.constants
    omega_red = abs(ground.omega1)
    k1 = omega_red / c.light_speed

    factor = 1.0
    if finite_nuclear_mass:
        factor = 1.0 / (1.0 + 1.0 / c.proton_electron_mass_ratio)

    omega_si = factor * omega_red / c.atomic_time_in_seconds
    k1_si = omega_si / c.light_speed_si
    return RedBoundReport(
        omega_red=omega_red,
        k1=k1,
        lambda_red=2.0 * np.pi / k1,
        omega_red_per_s=omega_si,
        k1_per_m=k1_si,
        lambda_red_angstrom=2.0 * np.pi / k1_si / ANGSTROM,
        reduced_mass_factor=factor,
    )
