"""
Configuration Module
Default parameters, plain-text `key = value` overrides and spec builders
"""

import os

from photoeffect.einstein import RadialGrid
from photoeffect.errors import ConfigError
from photoeffect.lap_timedomain import AbsorberSpec, Grid1D
from photoeffect.quadrature import QuadratureSpec

# =========================
# CONFIGURATION
# =========================
OUTPUT_DIR_ENV = "PHOTOEFFECT_OUTPUT_DIR"

DEFAULTS = {
    "quadrature.radial_cutoff": 20.0,
    "quadrature.node_budget": 2 ** 20,
    "quadrature.singular_shell_radius": 1.0,
    "quadrature.target_rel_error": 1.0e-2,
    "radial.r_max": 60.0,
    "radial.n_points": 3000,
    "lap.x_max": 50.0,
    "lap.dx": 0.025,
    "lap.dt": 0.02,
    "lap.absorber_fraction": 0.2,
    "lap.absorber_strength": 2.0,
    "lap.window_periods": 10,
    "lap.source_width": 1.0,
    "output.dir": "",
    "log.file": "",
}

# =========================
# PARSING
# =========================
def _coerce(key, raw, line_number):
    default = DEFAULTS[key]
    try:
        if isinstance(default, int):
            value = float(raw)
            if not value.is_integer():
                raise ValueError
            return int(value)
        if isinstance(default, float):
            return float(raw)
    except ValueError:
        raise ConfigError(f"'{key}' expects a {type(default).__name__}, got '{raw}'", line_number) from None
    return raw


def parse_config(text):
    """Overrides from `key = value` lines; '#' starts a comment."""
    overrides = {}
    for line_number, line in enumerate(text.splitlines(), 1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"expected 'key = value', got '{content}'", line_number)

        key, raw = (part.strip() for part in content.split("=", 1))
        if key not in DEFAULTS:
            raise ConfigError(f"unknown key '{key}'", line_number)
        if not raw:
            raise ConfigError(f"missing value for '{key}'", line_number)
        overrides[key] = _coerce(key, raw, line_number)
    return overrides


def load_config(path=None):
    """
    Defaults updated with the overrides of a config file.

    Args:
        path: Config file path; None returns the defaults

    Returns:
        Full parameter dict
    """
    config = dict(DEFAULTS)
    if path is None:
        return config
    if not os.path.exists(path):
        raise ConfigError(f"config file '{path}' not found")
    with open(path, "r", encoding="utf-8") as f:
        config.update(parse_config(f.read()))
    return config


def apply_overrides(config, **flags):
    """Explicit flags win over the file; None means 'not given'."""
    merged = dict(config)
    for key, value in flags.items():
        dotted = key.replace("__", ".")
        if dotted not in DEFAULTS:
            raise ConfigError(f"unknown key '{dotted}'")
        if value is not None:
            merged[dotted] = value
    return merged

# =========================
# BUILDERS
# =========================
def quadrature_spec(config):
    return QuadratureSpec(
        radial_cutoff=config["quadrature.radial_cutoff"],
        node_budget=config["quadrature.node_budget"],
        singular_shell_radius=config["quadrature.singular_shell_radius"],
        target_rel_error=config["quadrature.target_rel_error"],
    )


def radial_grid(config):
    return RadialGrid(r_max=config["radial.r_max"], n_points=config["radial.n_points"])


def lap_grid(config):
    return Grid1D(x_max=config["lap.x_max"], dx=config["lap.dx"])


def absorber_spec(config, enabled=True):
    return AbsorberSpec(
        enabled=enabled,
        fraction=config["lap.absorber_fraction"],
        strength=config["lap.absorber_strength"],
    )


def output_dir(config, flag=None):
    """Output directory: flag, then the environment, then `output.dir`; None for stdout."""
    return flag or os.environ.get(OUTPUT_DIR_ENV) or config["output.dir"] or None
