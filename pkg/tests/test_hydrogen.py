"""Hydrogen ground state and the red bound."""

import numpy as np
import pytest
from scipy import integrate

from photoeffect.hydrogen import GROUND, red_bound


def test_atomic_unit_values():
    assert GROUND.r1 == 1.0
    assert GROUND.omega1 == -0.5
    assert GROUND.E1 == -0.5
    assert GROUND.C1 == pytest.approx(np.pi ** -0.5)


def test_ground_state_is_normalized():
    value, _ = integrate.quad(lambda r: 4.0 * np.pi * r ** 2 * GROUND.psi1([0.0, 0.0, r]) ** 2, 0, 50)
    assert value == pytest.approx(1.0, rel=1e-10)


def test_psi1_is_vectorized():
    x = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 3.0, 4.0]])
    expected = GROUND.C1 * np.exp(-np.array([0.0, 1.0, 5.0]))
    np.testing.assert_allclose(GROUND.psi1(x), expected)


def test_grad3_psi1_matches_finite_difference():
    x = np.array([0.3, -0.4, 0.7])
    h = 1e-6
    step = np.array([0.0, 0.0, h])
    numeric = (GROUND.psi1(x + step) - GROUND.psi1(x - step)) / (2 * h)
    assert GROUND.grad3_psi1(x) == pytest.approx(numeric, rel=1e-7)


def test_grad3_psi1_special_points():
    assert GROUND.grad3_psi1([0.0, 0.0, 0.0]) == 0.0
    assert GROUND.grad3_psi1([0.0, 0.0, 1.0]) == pytest.approx(-GROUND.C1 * np.exp(-1.0))
    assert GROUND.grad3_psi1([2.0, 1.0, 0.0]) == 0.0


def test_fourier_transform_closed_form():
    assert GROUND.psi1_fourier(np.zeros(3)) == pytest.approx(8.0 * np.sqrt(np.pi))
    assert GROUND.psi1_fourier(np.array([1.0, 0.0, 0.0])) == pytest.approx(2.0 * np.sqrt(np.pi))


def test_fourier_transform_matches_radial_integral():
    q = 2.0
    value, _ = integrate.quad(
        lambda r: 4.0 * np.pi * r ** 2 * GROUND.C1 * np.exp(-r) * np.sinc(q * r / np.pi), 0, 60
    )
    assert GROUND.psi1_fourier(np.array([0.0, q, 0.0])) == pytest.approx(value, rel=1e-8)


def test_red_bound_reproduces_quoted_values():
    report = red_bound()
    assert abs(report.lambda_red_angstrom - 911.76) / 911.76 < 5e-4
    assert abs(report.k1_per_m - 6.8e7) / 6.8e7 < 2e-2
    assert abs(report.omega_red_per_s - 20.5e15) / 20.5e15 < 1e-2


def test_red_bound_atomic_fields_ignore_nuclear_mass():
    finite = red_bound(finite_nuclear_mass=True)
    infinite = red_bound(finite_nuclear_mass=False)
    assert finite.omega_red == infinite.omega_red == 0.5
    assert finite.k1 == pytest.approx(0.5 / 137.035999, rel=1e-8)
    assert infinite.reduced_mass_factor == 1.0
    assert finite.reduced_mass_factor == pytest.approx(0.999455679, rel=1e-8)
    assert infinite.lambda_red_angstrom == pytest.approx(911.267, rel=1e-5)
    assert finite.lambda_red_angstrom > infinite.lambda_red_angstrom


def test_red_bound_method_delegates():
    assert GROUND.red_bound().to_dict() == red_bound().to_dict()
