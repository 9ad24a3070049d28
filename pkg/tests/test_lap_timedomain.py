"""Driven 1D field: stationary profile, Crank-Nicolson evolution and the windowed fit."""

import numpy as np
import pytest

from photoeffect.errors import FitResidualError, ValidationError, WindowTooShortError
from photoeffect.lap_timedomain import (
    AbsorberSpec,
    DrivenField1D,
    DrivenHistory,
    Grid1D,
    default_stride,
    evolve_driven_1d,
    exponential_source,
    extract_limiting_amplitude,
    lap_discrepancy,
    stationary_outgoing_1d,
    verify_limiting_amplitude,
)

SMALL_GRID = Grid1D(x_max=10.0, dx=0.05)


def _log_slope(profile, left, right):
    x = np.asarray(profile.x)
    i, j = np.argmin(np.abs(x - left)), np.argmin(np.abs(x - right))
    return (np.log(abs(profile.values[j])) - np.log(abs(profile.values[i]))) / (x[j] - x[i])


def _synthetic_history(amplitude, Omega, periods, samples_per_period=40):
    period = 2.0 * np.pi / abs(Omega)
    times = np.linspace(0.0, periods * period, periods * samples_per_period + 1)
    snapshots = np.exp(-1j * Omega * times)[:, None] * amplitude[None, :]
    return DrivenHistory(x=np.arange(amplitude.size, dtype=float), times=times, snapshots=snapshots)


# =========================
# Grids and problems
# =========================

def test_default_grid():
    grid = Grid1D()
    assert grid.n_points == 4001
    assert grid.x[0] == -50.0 and grid.x[-1] == 50.0
    assert grid.trapezoid_weights().sum() == pytest.approx(100.0)
    with pytest.raises(ValidationError):
        Grid1D(x_max=10.0, dx=2.0)


def test_problem_validation():
    with pytest.raises(ValidationError):
        DrivenField1D(0.0)
    with pytest.raises(ValidationError):
        DrivenField1D(1.0, dt=0.0)
    with pytest.raises(ValidationError):
        AbsorberSpec(fraction=0.6)
    with pytest.raises(ValidationError):
        exponential_source(0.0)


def test_absorber_geometry():
    problem = DrivenField1D(1.0)
    assert problem.absorber_start == pytest.approx(40.0)
    assert problem.stretch(np.array([0.0, 39.0]))[1] == 1.0
    assert problem.stretch(np.array([50.0]))[0] == pytest.approx(1.0 + 2.0j)
    off = DrivenField1D(1.0, absorber=AbsorberSpec(enabled=False))
    assert np.all(off.stretch(off.grid.x) == 1.0)


def test_default_stride():
    assert default_stride(DrivenField1D(1.0)) == 7
    assert default_stride(DrivenField1D(1000.0)) == 1


# =========================
# Stationary profile
# =========================

def test_stationary_profile_is_symmetric():
    profile = stationary_outgoing_1d(exponential_source(), 1.0, SMALL_GRID)
    assert profile.regime == "oscillatory"
    assert profile.kappa == pytest.approx(np.sqrt(2.0))
    np.testing.assert_allclose(profile.values, profile.values[::-1], rtol=1e-10)
    assert len(profile.to_rows()) == SMALL_GRID.n_points


def test_point_source_limit():
    grid = Grid1D(x_max=10.0, dx=0.005)
    profile = stationary_outgoing_1d(exponential_source(0.05), 1.0, grid)
    outside = (np.abs(grid.x) >= 1.0) & (np.abs(grid.x) <= 9.0)
    scaled = np.abs(profile.values[outside]) * profile.kappa
    np.testing.assert_allclose(scaled, 1.0, atol=1e-2)


def test_evanescent_profile_decays_at_kappa():
    profile = stationary_outgoing_1d(exponential_source(0.25), -1.0, SMALL_GRID)
    assert profile.regime == "evanescent"
    assert _log_slope(profile, 2.0, 6.0) == pytest.approx(-np.sqrt(2.0), rel=5e-2)


def test_stationary_rejects_threshold_and_mismatched_source():
    with pytest.raises(ValidationError):
        stationary_outgoing_1d(exponential_source(), 0.0, SMALL_GRID)
    with pytest.raises(ValidationError):
        stationary_outgoing_1d(np.ones(7), 1.0, SMALL_GRID)


# =========================
# Evolution
# =========================

def test_zero_source_gives_zero_field():
    problem = DrivenField1D(1.0, grid=SMALL_GRID, source=np.zeros_like)
    history = evolve_driven_1d(problem, 5.0)
    assert history.times[0] == 0.0
    assert np.all(history.snapshots == 0.0)


def test_evolution_starts_from_zero_and_is_linear():
    base = DrivenField1D(1.0, grid=SMALL_GRID)
    tripled = DrivenField1D(1.0, grid=SMALL_GRID, source=lambda x: 3.0 * exponential_source()(x))
    one = evolve_driven_1d(base, 5.0)
    three = evolve_driven_1d(tripled, 5.0)

    assert np.all(one.snapshots[0] == 0.0)
    np.testing.assert_allclose(three.snapshots, 3.0 * one.snapshots, rtol=1e-10, atol=1e-14)
    assert np.all(np.diff(one.times) > 0.0)
    assert one.mass[0] == 0.0 and one.mass[-1] > 0.0


def test_record_after_skips_early_snapshots():
    problem = DrivenField1D(1.0, grid=SMALL_GRID)
    history = evolve_driven_1d(problem, 10.0, record_after=6.0, record_stride=5)
    assert history.times[0] >= 6.0 - 1e-12
    assert history.times[-1] == pytest.approx(10.0)
    assert history.mass_times[0] == 0.0
    with pytest.raises(ValidationError):
        evolve_driven_1d(problem, 0.0)


# =========================
# Extraction
# =========================

def test_fit_recovers_exact_harmonic():
    amplitude = np.array([1.0 + 2.0j, -0.5j, 3.0, 0.25 - 0.25j])
    history = _synthetic_history(amplitude, 1.0, 12)
    profile = extract_limiting_amplitude(history, 1.0, 10 * 2.0 * np.pi)
    np.testing.assert_allclose(profile.values, amplitude, atol=1e-12)
    assert profile.residual < 1e-12


def test_window_must_span_ten_periods():
    history = _synthetic_history(np.ones(3, dtype=complex), 1.0, 12)
    with pytest.raises(WindowTooShortError):
        extract_limiting_amplitude(history, 1.0, 5 * 2.0 * np.pi)


def test_window_must_be_covered_by_history():
    history = _synthetic_history(np.ones(3, dtype=complex), 1.0, 8)
    with pytest.raises(WindowTooShortError):
        extract_limiting_amplitude(history, 1.0, 10 * 2.0 * np.pi)

    sparse_history = DrivenHistory(x=np.zeros(1), times=np.array([0.0, 100.0]), snapshots=np.ones((2, 1)))
    with pytest.raises(WindowTooShortError):
        extract_limiting_amplitude(sparse_history, 1.0, 70.0)


def test_wrong_frequency_fails_the_fit():
    history = _synthetic_history(np.ones(5, dtype=complex), 1.0, 12)
    with pytest.raises(FitResidualError):
        extract_limiting_amplitude(history, 1.5, 10 * 2.0 * np.pi / 1.5)


def test_discrepancy_of_identical_profiles_is_zero():
    profile = stationary_outgoing_1d(exponential_source(), 1.0, SMALL_GRID)
    assert lap_discrepancy(profile, profile) == 0.0
    assert lap_discrepancy(profile, profile, region=2.0) == 0.0


def test_verification_needs_room_for_the_window():
    with pytest.raises(WindowTooShortError):
        verify_limiting_amplitude(DrivenField1D(1.0, grid=SMALL_GRID), 50.0)


# =========================
# Limiting amplitude principle
# =========================

@pytest.mark.slow
def test_field_converges_to_outgoing_profile():
    report = verify_limiting_amplitude(DrivenField1D(1.0), 200.0)
    assert report.discrepancy <= 2e-2
    assert report.to_dict()["absorber"] is True

    longer = verify_limiting_amplitude(DrivenField1D(1.0), 400.0)
    assert longer.discrepancy <= report.discrepancy + 1e-4


@pytest.mark.slow
def test_reflecting_walls_spoil_the_limit():
    absorbing = verify_limiting_amplitude(DrivenField1D(1.0), 200.0)
    reflecting = verify_limiting_amplitude(DrivenField1D(1.0, absorber=AbsorberSpec(enabled=False)), 200.0)
    assert reflecting.discrepancy > absorbing.discrepancy


@pytest.mark.slow
@pytest.mark.parametrize("Omega, t_final", [(0.5, 300.0), (2.0, 200.0)])
def test_other_frequencies_converge(Omega, t_final):
    assert verify_limiting_amplitude(DrivenField1D(Omega), t_final).discrepancy <= 5e-2


@pytest.mark.slow
def test_evanescent_limit_decays_at_kappa():
    problem = DrivenField1D(-1.0, source_width=0.25)
    report = verify_limiting_amplitude(problem, 200.0, window_periods=20)
    assert report.extracted.regime == "evanescent"
    assert _log_slope(report.extracted, 2.0, 5.0) == pytest.approx(-np.sqrt(2.0), rel=5e-2)


def test_zero_history_gives_zero_profile():
    history = _synthetic_history(np.zeros(4, dtype=complex), 1.0, 12)
    profile = extract_limiting_amplitude(history, 1.0, 10 * 2.0 * np.pi)
    assert np.all(profile.values == 0.0)
    assert profile.residual == 0.0
