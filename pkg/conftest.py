"""
Shared fixtures: the omega = 1 driven problem and closed-form radial
solutions used as oracles for the convolution quadrature
"""

import numpy as np
import pytest

from photoeffect.helmholtz import DrivenProblem
from photoeffect.hydrogen import GROUND
from photoeffect.quadrature import QuadratureSpec


@pytest.fixture
def problem():
    """omega = 1 a.u.: k_r = 1, kappa- = sqrt(3)."""
    return DrivenProblem(1.0)


@pytest.fixture
def light_spec():
    return QuadratureSpec(node_budget=2 ** 18)


def _coefficients(lam, amplitude):
    """(a, b, D) of v = (a r + b) e^-r + D h(r) solving -v'' + lam v = amplitude r e^-r, v(0) = 0."""
    a = amplitude / (lam - 1.0)
    b = -2.0 * amplitude / (lam - 1.0) ** 2
    return a, b, -b


@pytest.fixture
def yukawa_potential():
    """
    U(r) = integral exp(-kappa|x-y|) / (4 pi |x-y|) * amplitude exp(-|y|) dy
    and its radial derivative, for kappa != 1.
    """
    def evaluate(r, kappa, amplitude=1.0):
        a, b, D = _coefficients(kappa ** 2, amplitude)
        g = (a * r + b) * np.exp(-r) + D * np.exp(-kappa * r)
        dg = (a - a * r - b) * np.exp(-r) - kappa * D * np.exp(-kappa * r)
        return g / r, dg / r - g / r ** 2

    return evaluate


@pytest.fixture
def helmholtz_potential():
    """
    U(r) = integral exp(i k |x-y|) / (4 pi |x-y|) * amplitude exp(-|y|) dy
    and its radial derivative.
    """
    def evaluate(r, k, amplitude=1.0):
        a, b, D = _coefficients(-k ** 2, amplitude)
        g = (a * r + b) * np.exp(-r) + D * np.exp(1j * k * r)
        dg = (a - a * r - b) * np.exp(-r) + 1j * k * D * np.exp(1j * k * r)
        return g / r, dg / r - g / r ** 2

    return evaluate


@pytest.fixture
def source_scale():
    """e / (hbar c) in atomic units."""
    c = GROUND.constants
    return c.electron_charge / (c.hbar * c.light_speed)
