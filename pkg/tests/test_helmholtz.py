"""Limiting amplitudes w+ / w- and the Helmholtz residual."""

import numpy as np
import pytest

from photoeffect.errors import BelowThresholdError, ValidationError
from photoeffect.farfield import far_field_w_plus, outgoing_constant, pattern_for
from photoeffect.helmholtz import (
    DrivenProblem,
    LimitingAmplitudePair,
    decay_rate_bound,
    helmholtz_residual,
    k_r,
    k_r_complex,
    kappa_minus,
    limiting_absorption_w_plus,
    source_f_minus,
    source_f_plus,
    w_minus,
    w_plus,
)
from photoeffect.hydrogen import GROUND
from photoeffect.quadrature import QuadratureSpec

RESIDUAL_POINTS = [
    (2.0, 1.0, 1.0),
    (1.0, -1.0, 2.0),
    (-1.5, 0.5, 1.0),
    (0.5, 2.0, -1.5),
    (3.0, 0.0, 1.0),
]

# max |f+| = C1 |e| / (hbar c), reached at the origin
MAX_SOURCE = GROUND.C1 / GROUND.constants.light_speed


# =========================
# Wavenumbers and sources
# =========================

def test_wavenumbers_at_omega_one(problem):
    assert problem.k == pytest.approx(1.0 / 137.035999, rel=1e-8)
    assert k_r(problem) == pytest.approx(1.0)
    assert kappa_minus(problem) == pytest.approx(np.sqrt(3.0))
    assert decay_rate_bound(problem) == 1.0


def test_complex_wavenumber_has_positive_imaginary_part():
    value = k_r_complex(1.0 + 1e-3j)
    assert value.imag > 0.0
    assert value.real == pytest.approx(1.0, rel=1e-5)


def test_below_threshold_is_rejected():
    problem = DrivenProblem(0.4)
    with pytest.raises(BelowThresholdError):
        k_r(problem)
    with pytest.raises(BelowThresholdError):
        w_plus([0.0, 0.0, 1.0], problem)
    # w- stays defined below the red bound
    assert kappa_minus(problem) == pytest.approx(np.sqrt(1.8))


def test_problem_validation():
    with pytest.raises(ValidationError):
        DrivenProblem(0.0)
    with pytest.raises(ValidationError):
        DrivenProblem(1.0, branch="sideways")
    assert DrivenProblem.from_wavenumber(2.0 / 137.035999).omega == pytest.approx(2.0)


def test_sources_are_conjugate(problem):
    x = np.array([[0.3, -0.2, 0.9], [1.0, 1.0, -1.0], [2.0, 0.0, 0.5]])
    np.testing.assert_allclose(source_f_minus(x, problem), np.conj(source_f_plus(x, problem)))


def test_source_prefactor(problem, source_scale):
    x = np.array([0.0, 0.0, 1.0])
    assert source_f_plus(x, problem).real == pytest.approx(source_scale * GROUND.grad3_psi1(x))


def test_points_outside_validated_range_are_rejected(problem):
    with pytest.raises(ValidationError):
        w_plus([0.0, 0.0, 250.0], problem)
    with pytest.raises(ValidationError):
        w_minus([0.0, 0.0], problem)
    with pytest.raises(ValidationError):
        w_plus([0.0, 0.0, 1.0], problem, QuadratureSpec(radial_cutoff=10.0))


# =========================
# Closed-form oracles (k -> 0 on the x1 = 0 plane)
# =========================

ORACLE_POINTS = [
    (0.0, 0.0, 1.5),
    (0.0, 0.0, 3.0),
    (0.0, 0.0, 5.0),
    (0.0, 2.0, 2.0),
    (0.0, -3.0, 1.5),
]


def _radial_oracle(x, derivative, source_scale):
    """-(e/(hbar c)) U'(r) x3 / r for a source proportional to d(psi1)/dx3."""
    x = np.asarray(x)
    return -source_scale * derivative * x[2] / np.linalg.norm(x)


def test_yukawa_oracle_value(yukawa_potential, source_scale):
    _, derivative = yukawa_potential(3.0, np.sqrt(3.0), GROUND.C1)
    assert _radial_oracle([0.0, 0.0, 3.0], derivative, source_scale) == pytest.approx(-6.48e-5, rel=1e-2)


@pytest.mark.slow
@pytest.mark.parametrize("x", ORACLE_POINTS)
def test_w_minus_matches_yukawa_solution(problem, yukawa_potential, source_scale, x):
    _, derivative = yukawa_potential(np.linalg.norm(x), np.sqrt(3.0), GROUND.C1)
    expected = _radial_oracle(x, derivative, source_scale)

    result = w_minus(x, problem)
    assert abs(result.value - expected) < 1e-3 * abs(expected)


@pytest.mark.slow
@pytest.mark.parametrize("x", ORACLE_POINTS)
def test_w_plus_matches_outgoing_solution(problem, helmholtz_potential, source_scale, x):
    _, derivative = helmholtz_potential(np.linalg.norm(x), 1.0, GROUND.C1)
    expected = _radial_oracle(x, derivative, source_scale)

    result = w_plus(x, problem)
    assert abs(result.value - expected) < 1e-3 * abs(expected)
    assert result.error_estimate <= 1e-2


@pytest.mark.slow
def test_w_minus_decays_exponentially(problem):
    radii = [4.0, 8.0, 12.0]
    values = [abs(w_minus([0.0, 0.0, r], problem).value) for r in radii]
    slopes = np.diff(np.log(values)) / np.diff(radii)
    assert np.all(slopes <= -0.9), slopes


@pytest.mark.slow
def test_only_w_plus_keeps_a_far_field(problem):
    """|x| |w+| settles at |C_out| on the dipole axis; |x| |w-| dies out."""
    limit = abs(outgoing_constant(problem))
    near = 5.0 * abs(w_minus([0.0, 0.0, 5.0], problem).value)
    for r in (20.0, 40.0, 60.0):
        x = [0.0, 0.0, r]
        assert r * abs(w_plus(x, problem).value) == pytest.approx(limit, rel=2e-2)
        assert r * abs(w_minus(x, problem).value) < 1e-3 * near


# =========================
# Symmetry
# =========================

@pytest.mark.slow
def test_amplitudes_vanish_on_nodal_plane(problem, light_spec):
    for x in ([1.0, 2.0, 0.0], [3.0, 0.0, 0.0], [-3.0, 0.0, 0.0]):
        assert abs(w_plus(x, problem, light_spec).value) < 1e-12
        assert abs(w_minus(x, problem, light_spec).value) < 1e-12


@pytest.mark.slow
def test_amplitudes_are_odd_in_x3(problem, light_spec):
    pair = LimitingAmplitudePair(problem, light_spec)
    up, down = np.array([0.5, -1.0, 1.2]), np.array([0.5, -1.0, -1.2])
    assert pair.w_plus(up).value == pytest.approx(-pair.w_plus(down).value, rel=1e-10)
    assert pair.w_minus(up).value == pytest.approx(-pair.w_minus(down).value, rel=1e-10)


# =========================
# Limiting absorption
# =========================

@pytest.mark.slow
def test_limiting_absorption_converges_to_w_plus(problem, light_spec):
    x = [1.0, 0.5, 1.5]
    target = w_plus(x, problem, light_spec).value
    assert limiting_absorption_w_plus(x, problem, light_spec, epsilon=0.0).value == target

    gaps = [abs(limiting_absorption_w_plus(x, problem, light_spec, epsilon=eps).value - target)
            for eps in (1e-1, 1e-2, 1e-3)]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 2e-2 * abs(target)


def test_negative_epsilon_is_rejected(problem):
    with pytest.raises(ValidationError):
        limiting_absorption_w_plus([0.0, 0.0, 1.0], problem, epsilon=-1e-3)


# =========================
# Helmholtz residual
# =========================

@pytest.mark.slow
@pytest.mark.parametrize("x", RESIDUAL_POINTS)
def test_helmholtz_residual_is_small(problem, x):
    report = helmholtz_residual(problem, x=x)
    assert report.magnitude <= 1e-2 * MAX_SOURCE, report


def test_residual_detects_far_field_only_solution(problem):
    """The leading far-field term alone misses the near field: large residual."""
    pattern = pattern_for(problem)
    report = helmholtz_residual(problem, field_fn=lambda point: far_field_w_plus(point, pattern))
    assert report.magnitude > 1e-2 * MAX_SOURCE
    assert report.source_magnitude == pytest.approx(1.451e-4, rel=1e-2)


def test_residual_point_too_close_to_origin(problem):
    with pytest.raises(ValidationError):
        helmholtz_residual(problem, x=(0.05, 0.0, 0.0))
