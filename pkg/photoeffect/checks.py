"""
Acceptance Checks
Fast self-checks of the closed-form and grid results, collected into a report
"""

import numpy as np

from photoeffect.common import log_message, write_report
from photoeffect.einstein import (
    RadialGrid,
    StoppingPotentialProblem,
    max_electron_energy,
    min_stopping_voltage,
    minimax_report,
    photoeffect_allowed,
)
from photoeffect.farfield import angular_grid, pattern_for
from photoeffect.helmholtz import DrivenProblem
from photoeffect.hydrogen import GROUND, red_bound
from photoeffect.photocurrent import CurrentLaw, CurrentModel, angular_factor, total_flux
from photoeffect.units import Dimension, Quantity, from_atomic, to_atomic

# =========================
# CONFIGURATION
# =========================
LAMBDA_RED_ANGSTROM = 911.76
K1_PER_M = 6.8e7
OMEGA1_PER_S = 20.5e15
E_MAX_EV = 13.606
FLUX_RADII = (10.0, 100.0, 1000.0)
BETAS = (0.01, 0.05, 0.1)

# =========================
# CHECK FUNCTIONS
# =========================
def check_red_bound():
    """lambda_red near 911.76 A and k1 near 6.8e7 1/m."""
    issues = []
    report = red_bound()
    deviation = abs(report.lambda_red_angstrom - LAMBDA_RED_ANGSTROM) / LAMBDA_RED_ANGSTROM
    if deviation > 5e-4:
        issues.append(f"  - lambda_red = {report.lambda_red_angstrom:.4f} A, {deviation:.2e} off {LAMBDA_RED_ANGSTROM}")
    deviation = abs(report.k1_per_m - K1_PER_M) / K1_PER_M
    if deviation > 2e-2:
        issues.append(f"  - k1 = {report.k1_per_m:.4e} 1/m, {deviation:.2e} off {K1_PER_M:.2e}")
    return issues


def check_ground_frequency():
    """|omega1| near 20.5e15 1/s."""
    issues = []
    omega = from_atomic(abs(GROUND.omega1), Dimension.FREQUENCY).value
    deviation = abs(omega - OMEGA1_PER_S) / OMEGA1_PER_S
    if deviation > 1e-2:
        issues.append(f"  - |omega1| = {omega:.4e} 1/s, {deviation:.2e} off {OMEGA1_PER_S:.2e}")
    return issues


def check_flux_factor():
    """Wentzel flux over A^2 (e hbar k_r / m) |C|^2 equals 4 pi / 3 at every radius."""
    issues = []
    pattern = pattern_for(DrivenProblem(1.0))
    for radius in FLUX_RADII:
        flux = total_flux(CurrentModel(CurrentLaw.WENTZEL), 1.0, pattern, radius)
        if abs(flux.normalized - 4.0 * np.pi / 3.0) > 1e-6:
            issues.append(f"  - R = {radius:g}: normalized flux {flux.normalized:.9f} != 4 pi / 3")
    return issues


def check_current_corrections():
    """|(1 - beta cos)^-4 - (1 + 4 beta cos)| <= 40 beta^2; both laws are Wentzel's at beta = 0."""
    issues = []
    cos_theta = np.cos(np.linspace(0.0, np.pi, 721))
    for beta in BETAS:
        gap = np.max(np.abs((1.0 - beta * cos_theta) ** -4 - (1.0 + 4.0 * beta * cos_theta)))
        if gap > 40.0 * beta ** 2:
            issues.append(f"  - beta = {beta}: gap {gap:.3e} above {40.0 * beta ** 2:.3e}")
    for law in (CurrentLaw.SOMMERFELD_SCHUR, CurrentLaw.FISHER_SAUTER):
        for direction in angular_grid(9, 8):
            if angular_factor(CurrentModel(law, 0.0), direction) != angular_factor(CurrentModel(), direction):
                issues.append(f"  - {law.value} differs from Wentzel's law at beta = 0")
                break
    return issues


def check_einstein_rules():
    """E_max and U_stop_min at 2|omega1|, and the strict threshold truth table."""
    issues = []
    omega = 2.0 * abs(GROUND.omega1)
    energy = from_atomic(max_electron_energy(omega), Dimension.ENERGY).value
    if abs(energy - E_MAX_EV) > 1e-3:
        issues.append(f"  - E_max = {energy:.5f} eV, expected {E_MAX_EV}")
    voltage = from_atomic(min_stopping_voltage(omega), Dimension.VOLTAGE).value
    if abs(voltage - E_MAX_EV) > 1e-3:
        issues.append(f"  - U_stop_min = {voltage:.5f} V, expected {E_MAX_EV}")

    red = abs(GROUND.omega1)
    u_min = min_stopping_voltage(omega)
    table = {
        (red, 0.0): False,
        (red * (1.0 + 1e-9), 0.0): True,
        (omega, u_min): False,
        (omega, u_min * (1.0 - 1e-9)): True,
    }
    for (w, u), expected in table.items():
        if photoeffect_allowed(w, u) is not expected:
            issues.append(f"  - photoeffect_allowed({w:.9g}, {u:.9g}) != {expected}")
    return issues


def check_minimax_shift(grid=None):
    """Shift within 2% of e U_stop for 1 V and a 20 r1 plateau; lower bound holds."""
    issues = []
    u_stop = to_atomic(Quantity(1.0, Dimension.VOLTAGE))
    report = minimax_report(StoppingPotentialProblem(u_stop, 20.0, grid=grid or RadialGrid()))
    if abs(report.unperturbed_energy - GROUND.E1) > 1e-3:
        issues.append(f"  - unperturbed level {report.unperturbed_energy:.6f} Hartree")
    if report.relative_deviation > 2e-2:
        issues.append(f"  - shift {report.shift:.6f} is {report.relative_deviation:.2%} off e U_stop")
    if not report.lower_bound_holds:
        issues.append(f"  - {report.shifted_energy:.6f} below the bound {report.lower_bound:.6f}")
    return issues


CHECKS = {
    "Red bound": check_red_bound,
    "Ground frequency": check_ground_frequency,
    "Flux factor": check_flux_factor,
    "Current corrections": check_current_corrections,
    "Einstein rules": check_einstein_rules,
    "Minimax shift": check_minimax_shift,
}

# =========================
# MAIN CHECK
# =========================
def run_checks(report_file=None, log_file=None):
    """
    Run every check and write the report.

    Returns:
        Dict of check name to its issue list (empty when clean)
    """
    results = {}
    for name, check in CHECKS.items():
        log_message(f"Running check: {name}", log_file)
        try:
            results[name] = check()
        except Exception as e:
            results[name] = [f"  - ERROR: {e}"]

    failed = sum(1 for issues in results.values() if issues)
    sections = list(results.items())
    sections.append(("Summary", [f"  Checks run: {len(results)}", f"  Checks failed: {failed}"]))
    write_report("PHOTOEFFECT ACCEPTANCE CHECKS", sections, report_file)
    log_message(f"{len(results) - failed}/{len(results)} checks clean", log_file,
                "SUCCESS" if failed == 0 else "WARNING")
    return results
