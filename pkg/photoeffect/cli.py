"""
Photoeffect CLI
Subcommands over the hydrogen photoeffect model, with CSV/JSON/text output
and a run manifest next to every written result

usage:
  python -m photoeffect hydrogen
  python -m photoeffect amplitude --omega 1.0 --point 2,1,1
  python -m photoeffect angular --wavelength 400 --grid 9x8
  python -m photoeffect angular-current --omega 1.0 --law fs
  python -m photoeffect flux --omega 1.0 --radius 10 --radius 100
  python -m photoeffect flux --omega-scan 1:2:5 --format csv
  python -m photoeffect einstein --wavelength 400 --ustop 5
  python -m photoeffect minimax --ustop 1 --plateau 20
  python -m photoeffect verify-lap --omega 1.0 --t-final 200
  python -m photoeffect check
"""

import argparse
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime

import numpy as np

from photoeffect import __version__
from photoeffect.checks import run_checks
from photoeffect.common import config_hash, log_message, render, save_json, write_output
from photoeffect.config import (
    absorber_spec,
    apply_overrides,
    lap_grid,
    load_config,
    output_dir,
    quadrature_spec,
    radial_grid,
)
from photoeffect.einstein import (
    StoppingPotentialProblem,
    einstein_report,
    minimax_report,
    radial_levels,
    stopping_voltage_scan,
)
from photoeffect.errors import (
    EXIT_NONCONVERGENCE,
    EXIT_OK,
    EXIT_VALIDATION,
    NonConvergenceError,
    ValidationError,
)
from photoeffect.farfield import (
    SphericalDirection,
    angular_grid,
    extract_amplitude_numeric,
    pattern_for,
    pattern_table,
)
from photoeffect.helmholtz import (
    DrivenProblem,
    k_r,
    kappa_minus,
    limiting_absorption_w_plus,
    w_minus,
)
from photoeffect.hydrogen import GROUND, red_bound
from photoeffect.lap_timedomain import DrivenField1D, verify_limiting_amplitude
from photoeffect.photocurrent import (
    CurrentModel,
    analytic_flux,
    beta_from_omega,
    current_density,
    numeric_flux,
    total_flux,
)
from photoeffect.units import Dimension, Quantity, from_atomic, to_atomic, wavelength_to_omega

EXTENSIONS = {"csv": "csv", "json": "json", "text": "txt"}


@dataclass
class RunManifest:
    subcommand: str
    parameters: dict
    config_hash: str
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now().isoformat(timespec="seconds"))
    outputs: list = field(default_factory=list)
    runtime: float = 0.0

# =========================
# ARGUMENT HELPERS
# =========================
def _add_common(parser):
    parser.add_argument("--units", choices=("atomic", "si"), default="atomic",
                        help="atomic units, or atomic plus `_si` companion fields")
    parser.add_argument("--format", choices=("csv", "json", "text"), default="json", dest="fmt",
                        help="output format (default json)")
    parser.add_argument("--config", help="key = value file overriding the defaults")
    parser.add_argument("--output-dir", help="write results here instead of stdout")
    parser.add_argument("--log-file", help="append log lines to this file")


def _add_frequency(parser, scan=False, omega_scan=False):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--omega", type=float, help="angular frequency of the light (a.u.)")
    group.add_argument("--wavelength", type=float, help="wavelength of the light (angstrom)")
    if scan:
        group.add_argument("--wavelength-scan", metavar="A:B:N",
                           help="N wavelengths from A to B angstrom")
    if omega_scan:
        group.add_argument("--omega-scan", metavar="A:B:N",
                           help="N frequencies from A to B (a.u.)")


def _add_grid(parser, n_theta, n_phi):
    parser.add_argument("--grid", metavar="NTxNP",
                        help=f"angular grid, e.g. {n_theta}x{n_phi}; overrides --n-theta/--n-phi")
    parser.add_argument("--n-theta", type=int, default=n_theta)
    parser.add_argument("--n-phi", type=int, default=n_phi)


def _add_quadrature(parser):
    parser.add_argument("--radial-cutoff", type=float, help="source truncation radius (bohr)")
    parser.add_argument("--node-budget", type=int, help="nodes of the fine quadrature rule")
    parser.add_argument("--target-error", type=float, help="relative error target")


def _add_current(parser):
    parser.add_argument("--law", choices=("wentzel", "ss", "fs"), default="wentzel")
    parser.add_argument("--beta", type=float, help="v/c (default from omega)")
    parser.add_argument("--amplitude", type=float, default=1.0, help="field amplitude A")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="photoeffect",
        description="Photoelectric effect in the hydrogen atom: amplitudes, currents, Einstein rules",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("hydrogen", help="ground state constants and the red bound")
    p.add_argument("--infinite-nuclear-mass", action="store_true",
                   help="red bound without the reduced-mass factor")
    _add_common(p)

    p = sub.add_parser("amplitude", help="limiting amplitudes w+ / w- at points")
    _add_frequency(p)
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--point", nargs="+", action="append", metavar="X1,X2,X3",
                   help="evaluation point in bohr, comma or space separated (repeatable)")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="imaginary part of the frequency for the w+ branch")
    _add_quadrature(p)
    _add_common(p)

    p = sub.add_parser("angular", help="far-field angular law C sin(theta) cos(phi)")
    _add_frequency(p)
    _add_grid(p, 9, 8)
    p.add_argument("--pattern", choices=("forward", "outgoing"), default="forward")
    p.add_argument("--numeric", action="store_true",
                   help="also extract the amplitude from the quadrature w+")
    p.add_argument("--radii", type=float, nargs="+", help="extraction radii (bohr)")
    _add_quadrature(p)
    _add_common(p)

    p = sub.add_parser("angular-current", help="far-field current density per direction")
    _add_frequency(p)
    _add_current(p)
    p.add_argument("--radius", type=float, default=100.0)
    _add_grid(p, 19, 8)
    _add_common(p)

    p = sub.add_parser("flux", help="total photocurrent through spheres, or over a frequency scan")
    _add_frequency(p, omega_scan=True)
    _add_current(p)
    p.add_argument("--radius", type=float, action="append",
                   help="sphere radius (repeatable; a scan uses the first)")
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--numeric", action="store_true",
                   help="flux of the quadrature w+ current (Wentzel law only)")
    _add_quadrature(p)
    _add_common(p)

    p = sub.add_parser("einstein", help="Einstein's rules for one frequency or a wavelength scan")
    _add_frequency(p, scan=True)
    p.add_argument("--ustop", type=float, default=0.0, help="stopping voltage (V)")
    _add_common(p)

    p = sub.add_parser("minimax", help="ground level shifted by a stopping potential")
    p.add_argument("--ustop", type=float, required=True, help="stopping voltage (V)")
    p.add_argument("--plateau", type=float, default=20.0, help="plateau radius (r1)")
    p.add_argument("--decay", type=float, default=10.0, help="taper width (r1)")
    p.add_argument("--r-max", type=float)
    p.add_argument("--n-points", type=int)
    p.add_argument("--levels", type=int, default=0, help="also list the lowest N levels")
    _add_common(p)

    p = sub.add_parser("verify-lap", help="limiting amplitude principle on a 1D driven run")
    p.add_argument("--omega", type=float, required=True, help="driving frequency Omega (a.u.)")
    p.add_argument("--t-final", type=float, help="duration (default 200/|Omega|)")
    p.add_argument("--no-absorber", action="store_true", help="hard walls instead of the absorber")
    p.add_argument("--profile", action="store_true", help="also write the extracted profile as CSV")
    _add_common(p)

    p = sub.add_parser("check", help="run the fast acceptance checks")
    _add_common(p)
    return parser

# =========================
# HELPERS
# =========================
def _omega(args):
    if args.wavelength is not None:
        return wavelength_to_omega(args.wavelength)
    return args.omega


def _volts(value):
    return to_atomic(Quantity(value, Dimension.VOLTAGE))


def _with_si(record, dims, enabled):
    if not enabled:
        return record
    out = dict(record)
    for name, dim in dims.items():
        if out.get(name) is not None:
            out[f"{name}_si"] = from_atomic(out[name], dim).value
    return out


def _parse_scan(text, flag="--wavelength-scan"):
    try:
        start, stop, count = text.split(":")
        count = int(count)
    except ValueError:
        raise ValidationError(f"{flag} expects A:B:N, got '{text}'") from None
    if count < 1:
        raise ValidationError(f"{flag} needs N >= 1, got '{text}'")
    try:
        return np.linspace(float(start), float(stop), count)
    except ValueError:
        raise ValidationError(f"{flag} expects A:B:N, got '{text}'") from None


def _parse_point(tokens):
    """'2,1,1' or '2 1 1' -> [2.0, 1.0, 1.0]."""
    parts = [p for p in ",".join(tokens).replace(" ", ",").split(",") if p]
    try:
        point = [float(p) for p in parts]
    except ValueError:
        point = []
    if len(point) != 3:
        raise ValidationError(f"--point expects x,y,z, got '{' '.join(tokens)}'")
    return point


def _parse_grid(args):
    """--grid NTxNP, falling back to --n-theta/--n-phi."""
    if not args.grid:
        return args.n_theta, args.n_phi
    try:
        n_theta, n_phi = (int(n) for n in args.grid.lower().split("x"))
    except ValueError:
        raise ValidationError(f"--grid expects NTxNP, got '{args.grid}'") from None
    return n_theta, n_phi


def _quadrature(config, args):
    config = apply_overrides(
        config,
        quadrature__radial_cutoff=args.radial_cutoff,
        quadrature__node_budget=args.node_budget,
        quadrature__target_rel_error=args.target_error,
    )
    return quadrature_spec(config)

# =========================
# SUBCOMMANDS
# =========================
def cmd_hydrogen(args, config):
    report = red_bound(GROUND, finite_nuclear_mass=not args.infinite_nuclear_mass).to_dict()
    payload = {"r1": GROUND.r1, "omega1": GROUND.omega1, "E1": GROUND.E1, "C1": GROUND.C1, **report}
    return _with_si(payload, {"r1": Dimension.LENGTH, "omega1": Dimension.FREQUENCY,
                              "E1": Dimension.ENERGY}, args.units == "si")


def cmd_amplitude(args, config):
    points = [_parse_point(tokens) for tokens in args.point] if args.point else [[2.0, 1.0, 1.0]]
    spec = _quadrature(config, args)
    problem = DrivenProblem(_omega(args), args.branch)
    rows = []
    for point in points:
        if args.branch == "plus":
            result = limiting_absorption_w_plus(point, problem, spec, epsilon=args.epsilon)
            rate = k_r(problem)
        else:
            result = w_minus(point, problem, spec)
            rate = kappa_minus(problem)
        rows.append(_with_si({
            "x1": point[0], "x2": point[1], "x3": point[2],
            "omega": problem.omega,
            "rate": rate,
            "value": result.value,
            "error_estimate": result.error_estimate,
            "nodes": result.nodes,
        }, {"omega": Dimension.FREQUENCY, "rate": Dimension.WAVENUMBER}, args.units == "si"))
    return rows


def cmd_angular(args, config):
    n_theta, n_phi = _parse_grid(args)
    problem = DrivenProblem(_omega(args))
    pattern = pattern_for(problem, args.pattern)
    rows = pattern_table(pattern, n_theta, n_phi)
    if args.numeric:
        spec = _quadrature(config, args)
        radii = args.radii or [100.0 / pattern.k_r, 125.0 / pattern.k_r, 150.0 / pattern.k_r]
        for row in rows:
            direction = SphericalDirection(row["theta"], row["phi"])
            extracted = extract_amplitude_numeric(direction, radii, problem, spec)
            row["numeric"] = extracted.value
            row["spread"] = extracted.spread
    dims = {"omega": Dimension.FREQUENCY, "k_r": Dimension.WAVENUMBER}
    return [_with_si({**row, "omega": problem.omega, "k_r": pattern.k_r}, dims, args.units == "si")
            for row in rows]


def _current_model(args, omega):
    beta = args.beta if args.beta is not None else beta_from_omega(omega)
    return CurrentModel(args.law, beta if args.law != "wentzel" else 0.0)


def cmd_angular_current(args, config):
    n_theta, n_phi = _parse_grid(args)
    omega = _omega(args)
    pattern = pattern_for(DrivenProblem(omega))
    model = _current_model(args, omega)
    dims = {"omega": Dimension.FREQUENCY, "radius": Dimension.LENGTH, "j_r": Dimension.CURRENT_DENSITY}
    rows = []
    for direction in angular_grid(n_theta, n_phi):
        n = direction.unit_vector()
        j = current_density(args.radius * n, args.amplitude, pattern, model)
        rows.append(_with_si({
            "theta": direction.theta,
            "phi": direction.phi,
            "omega": omega,
            "radius": args.radius,
            "j_r": float(j @ n),
            "law": model.law.value,
            "beta": model.beta,
        }, dims, args.units == "si"))
    return rows


FLUX_DIMENSIONS = {
    "omega": Dimension.FREQUENCY,
    "k_r": Dimension.WAVENUMBER,
    "radius_used": Dimension.LENGTH,
    "J_infinity": Dimension.CURRENT,
    "J_abs": Dimension.CURRENT,
    "analytic": Dimension.CURRENT,
    "numeric": Dimension.CURRENT,
    "numeric_analytic": Dimension.CURRENT,
}


def _flux_row(args, config, omega, radius):
    problem = DrivenProblem(omega)
    pattern = pattern_for(problem)
    model = _current_model(args, omega)
    report = total_flux(model, args.amplitude, pattern, radius, nodes=args.nodes).to_dict()
    row = {"omega": omega, "k_r": pattern.k_r, "C_abs": abs(pattern.C), **report}
    row["analytic"] = analytic_flux(model, args.amplitude, pattern)
    row["law"] = model.law.value
    row["beta"] = model.beta
    if args.numeric:
        numeric, analytic = numeric_flux(problem, args.amplitude, radius, _quadrature(config, args))
        row["numeric"] = numeric
        row["numeric_analytic"] = analytic
    return _with_si(row, FLUX_DIMENSIONS, args.units == "si")


def cmd_flux(args, config):
    radii = args.radius or [10.0, 100.0, 1000.0]
    if args.omega_scan:
        omegas = _parse_scan(args.omega_scan, "--omega-scan")
        return [_flux_row(args, config, float(omega), radii[0]) for omega in omegas]
    return [_flux_row(args, config, _omega(args), radius) for radius in radii]


def cmd_einstein(args, config):
    si = args.units == "si"
    if args.wavelength_scan:
        rows = stopping_voltage_scan(_parse_scan(args.wavelength_scan))
        return [_with_si(r, {"omega": Dimension.FREQUENCY}, si) for r in rows]
    if args.ustop < 0.0:
        raise ValidationError("--ustop must be non-negative")
    return einstein_report(_omega(args), _volts(args.ustop)).to_dict(si=si)


def cmd_minimax(args, config):
    if args.ustop < 0.0:
        raise ValidationError("--ustop must be non-negative")
    config = apply_overrides(config, radial__r_max=args.r_max, radial__n_points=args.n_points)
    problem = StoppingPotentialProblem(
        _volts(args.ustop), args.plateau * GROUND.r1, args.decay * GROUND.r1, radial_grid(config)
    )
    payload = minimax_report(problem).to_dict(si=args.units == "si")
    if args.levels > 0:
        payload["levels"] = radial_levels(problem, args.levels).tolist()
        payload["levels_unperturbed"] = radial_levels(problem, args.levels, with_potential=False).tolist()
    return payload


def cmd_verify_lap(args, config):
    problem = DrivenField1D(
        Omega=args.omega,
        grid=lap_grid(config),
        dt=config["lap.dt"],
        source_width=config["lap.source_width"],
        absorber=absorber_spec(config, enabled=not args.no_absorber),
    )
    t_final = args.t_final or 200.0 / abs(args.omega)
    report = verify_limiting_amplitude(problem, t_final, config["lap.window_periods"])
    payload = _with_si(report.to_dict(), {"omega": Dimension.FREQUENCY, "t_final": Dimension.TIME},
                       args.units == "si")
    if args.profile:
        args.extra_outputs = {"profile": report.extracted.to_rows()}
    return payload


def cmd_check(args, config):
    directory = output_dir(config, args.output_dir)
    report_file = os.path.join(directory, "check_report.txt") if directory else None
    results = run_checks(report_file, args.log_file)
    if report_file:
        args.extra_files = [report_file]
    args.failed = any(results.values())
    return [{"check": name, "status": "FAIL" if issues else "OK", "issues": len(issues)}
            for name, issues in results.items()]


COMMANDS = {
    "hydrogen": cmd_hydrogen,
    "amplitude": cmd_amplitude,
    "angular": cmd_angular,
    "angular-current": cmd_angular_current,
    "flux": cmd_flux,
    "einstein": cmd_einstein,
    "minimax": cmd_minimax,
    "verify-lap": cmd_verify_lap,
    "check": cmd_check,
}

# =========================
# MAIN
# =========================
def _parameters(args):
    hidden = {"fmt", "output_dir", "log_file", "config", "extra_outputs", "extra_files", "failed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in hidden}


def run(argv=None):
    """Parse arguments, run one subcommand and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_VALIDATION

    log_file = args.log_file
    start = time.time()
    try:
        config = load_config(args.config)
        log_file = log_file or config["log.file"] or None
        args.log_file = log_file
        parameters = _parameters(args)
        log_message(f"Starting {args.subcommand}: {parameters}", log_file)

        payload = COMMANDS[args.subcommand](args, config)

        directory = output_dir(config, args.output_dir)
        manifest = RunManifest(args.subcommand, parameters, config_hash({**config, **parameters}))
        if directory:
            stem = os.path.join(directory, args.subcommand)
            manifest.outputs.append(write_output(payload, args.fmt, f"{stem}.{EXTENSIONS[args.fmt]}", log_file))
            for name, rows in getattr(args, "extra_outputs", {}).items():
                manifest.outputs.append(write_output(rows, "csv", f"{stem}.{name}.csv", log_file))
            manifest.outputs.extend(getattr(args, "extra_files", []))
            manifest.runtime = time.time() - start
            save_json(asdict(manifest), f"{stem}.manifest.json")
        else:
            write_output(payload, args.fmt)

        log_message(f"Finished {args.subcommand} in {time.time() - start:.2f}s", log_file, "SUCCESS")
        if getattr(args, "failed", False):
            return EXIT_NONCONVERGENCE
        return EXIT_OK

    except ValidationError as e:
        log_message(f"{type(e).__name__}: {e}", log_file, "ERROR")
        return EXIT_VALIDATION
    except NonConvergenceError as e:
        log_message(f"{type(e).__name__}: {e}", log_file, "ERROR")
        if e.diagnostics:
            sys.stderr.write(render({k: _diagnostic(v) for k, v in e.diagnostics.items()}, "json"))
        return EXIT_NONCONVERGENCE


def _diagnostic(value):
    if isinstance(value, (complex, np.complexfloating)):
        return complex(value)
    if isinstance(value, (np.ndarray, list, tuple)):
        return np.asarray(value).tolist()
    return value


def main():
    sys.exit(run())
