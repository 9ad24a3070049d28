"""
Common Photoeffect Module
Shared functions for logging, files and table output
"""

import hashlib
import json
import os
import sys
from datetime import datetime

import numpy as np
import pandas as pd
from tabulate import tabulate

# =========================
# CONSTANTS
# =========================
SIGNIFICANT_DIGITS = 12
CSV_FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"
FORMATS = ("csv", "json", "text")

# =========================
# LOGGING FUNCTIONS
# =========================
def log_message(message, log_file=None, level="INFO"):
    """Write log message to the error stream and, if given, to a file."""
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    log_entry = f"[{timestamp}] [{level}] {message}"
    print(log_entry, file=sys.stderr)
    if log_file:
        with open(log_file, "a", encoding="utf-8") as f:
            f.write(log_entry + "\n")

# =========================
# FILE MANAGEMENT
# =========================
def ensure_directory(directory):
    """Create directory if it doesn't exist."""
    if directory and not os.path.exists(directory):
        os.makedirs(directory)

# =========================
# VALUE FORMATTING
# =========================
def round_significant(value, digits=SIGNIFICANT_DIGITS):
    """Round a float to a fixed number of significant digits."""
    if value is None or not np.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


def flatten_record(record):
    """
    Split complex entries into `_re`/`_im` fields and unwrap numpy scalars.

    Args:
        record: Mapping of field name to value

    Returns:
        New dict with only JSON/CSV-friendly scalars, lists and strings
    """
    flat = {}
    for key, value in record.items():
        if isinstance(value, np.generic):
            value = value.item()
        if isinstance(value, complex):
            flat[f"{key}_re"] = value.real
            flat[f"{key}_im"] = value.imag
        elif isinstance(value, np.ndarray):
            flat[key] = value.tolist()
        else:
            flat[key] = value
    return flat


def _json_ready(value):
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in flatten_record(value).items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, float):
        return round_significant(value)
    return value


def records_to_frame(records):
    """Build a DataFrame from a list of records, complex values split in two columns."""
    return pd.DataFrame([flatten_record(r) for r in records])

# =========================
# OUTPUT FUNCTIONS
# =========================
def render(payload, fmt):
    """
    Render a payload as CSV, JSON or an aligned text table.

    Args:
        payload: A dict (single object) or a list of dicts (table rows)
        fmt: One of 'csv', 'json', 'text'

    Returns:
        The rendered string, newline terminated
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format '{fmt}'")

    if fmt == "json":
        return json.dumps(_json_ready(payload), indent=2) + "\n"

    rows = payload if isinstance(payload, list) else [payload]
    df = records_to_frame(rows)
    if fmt == "csv":
        return df.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return tabulate(df.values.tolist(), headers=list(df.columns), tablefmt="grid",
                    floatfmt=f".{SIGNIFICANT_DIGITS}g") + "\n"


def write_output(payload, fmt, filepath=None, log_file=None):
    """Write a rendered payload to a file, or to stdout when no path is given."""
    text = render(payload, fmt)
    if filepath is None:
        sys.stdout.write(text)
        return None

    ensure_directory(os.path.dirname(filepath))
    with open(filepath, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    log_message(f"Saved {os.path.basename(filepath)}", log_file, "SUCCESS")
    return filepath


def save_json(data, filepath):
    """Save a JSON document with two-space indentation."""
    ensure_directory(os.path.dirname(filepath))
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(_json_ready(data), f, indent=2)


def config_hash(parameters):
    """SHA-256 of the canonical JSON form of a parameter mapping."""
    canonical = json.dumps(_json_ready(dict(parameters)), sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

# =========================
# REPORT FUNCTIONS
# =========================
def write_report(title, sections, report_file=None):
    """
    Print a sectioned text report and optionally save it.

    Args:
        title: Report heading
        sections: List of (name, lines) pairs
        report_file: Optional path of the TXT report

    Returns:
        The full report text
    """
    timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    report = [f"{'='*80}", title, timestamp, f"{'='*80}", ""]
    for name, lines in sections:
        report.append(f"{name}:")
        report.extend(lines if lines else ["  OK"])
        report.append("")
    report.append("=" * 80)
    text = "\n".join(report) + "\n"

    print(text, file=sys.stderr)
    if report_file:
        ensure_directory(os.path.dirname(report_file))
        with open(report_file, "w", encoding="utf-8") as f:
            f.write(text)
    return text
