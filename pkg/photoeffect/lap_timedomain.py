"""
LAP Time-Domain Module
Driven one-dimensional Schrodinger field from zero data, its windowed
limiting amplitude, and the stationary outgoing profile it converges to

Atomic units throughout (hbar = m = 1):
    i u_t = -(1/2) u_xx + f(x) exp(-i Omega t),  u(0, x) = 0
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from photoeffect.errors import (
    FitResidualError,
    InstabilityError,
    ValidationError,
    WindowTooShortError,
)

# =========================
# CONFIGURATION
# =========================
MIN_WINDOW_PERIODS = 10
MAX_FIT_RESIDUAL = 0.5
INSTABILITY_FACTOR = 10.0
SAMPLES_PER_PERIOD = 40
STATIONARY_CHUNK = 512


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on [-x_max, x_max]; the field vanishes just outside."""

    x_max: float = 50.0
    dx: float = 0.025

    def __post_init__(self):
        if self.x_max <= 0.0 or self.dx <= 0.0:
            raise ValidationError("x_max and dx must be positive")
        if self.dx > self.x_max / 10.0:
            raise ValidationError(f"dx={self.dx} is too coarse for x_max={self.x_max}")

    @property
    def n_points(self):
        return int(round(2.0 * self.x_max / self.dx)) + 1

    @property
    def x(self):
        return np.linspace(-self.x_max, self.x_max, self.n_points)

    @property
    def spacing(self):
        return 2.0 * self.x_max / (self.n_points - 1)

    def trapezoid_weights(self):
        w = np.full(self.n_points, self.spacing)
        w[[0, -1]] *= 0.5
        return w


@dataclass(frozen=True)
class AbsorberSpec:
    """Complex stretch s = 1 + i strength ((|x| - x_a) / L)^2 over the outer `fraction`."""

    enabled: bool = True
    fraction: float = 0.2
    strength: float = 2.0

    def __post_init__(self):
        if not 0.0 < self.fraction < 0.5:
            raise ValidationError("absorber fraction must lie in (0, 0.5)")
        if self.strength <= 0.0:
            raise ValidationError("absorber strength must be positive")


def exponential_source(width=1.0):
    """exp(-|x| / width) / (2 width), unit integral."""
    if width <= 0.0:
        raise ValidationError("source width must be positive")

    def profile(x):
        return np.exp(-np.abs(x) / width) / (2.0 * width)

    return profile


@dataclass(frozen=True)
class DrivenField1D:
    """
    Driven problem on a grid. `source` overrides the exponential profile of
    width `source_width` when given.
    """

    Omega: float
    grid: Grid1D = field(default_factory=Grid1D)
    dt: float = 0.02
    source_width: float = 1.0
    absorber: AbsorberSpec = field(default_factory=AbsorberSpec)
    source: object = None

    def __post_init__(self):
        if self.Omega == 0.0:
            raise ValidationError("Omega = 0 is the threshold of the spectrum and is rejected")
        if self.dt <= 0.0:
            raise ValidationError("dt must be positive")
        if self.source_width <= 0.0:
            raise ValidationError("source_width must be positive")

    @property
    def absorber_start(self):
        """x_a; the interior region is |x| <= x_a."""
        return self.grid.x_max * (1.0 - self.absorber.fraction)

    @property
    def period(self):
        return 2.0 * np.pi / abs(self.Omega)

    def source_values(self):
        profile = self.source if self.source is not None else exponential_source(self.source_width)
        return np.asarray(profile(self.grid.x), dtype=complex)

    def stretch(self, x):
        x = np.asarray(x, dtype=float)
        if not self.absorber.enabled:
            return np.ones_like(x, dtype=complex)
        depth = np.clip((np.abs(x) - self.absorber_start) / (self.grid.x_max - self.absorber_start), 0.0, None)
        return 1.0 + 1j * self.absorber.strength * depth ** 2

    def hamiltonian(self):
        """-(1/2) s^-1 d/dx (s^-1 d/dx) with stretch factors on the staggered half points."""
        x = self.grid.x
        h = self.grid.spacing
        s = self.stretch(x)
        s_right = self.stretch(x + 0.5 * h)
        s_left = self.stretch(x - 0.5 * h)

        scale = 1.0 / (2.0 * s * h ** 2)
        diag = scale * (1.0 / s_right + 1.0 / s_left)
        upper = -(scale / s_right)[:-1]
        lower = -(scale / s_left)[1:]
        return sparse.diags([lower, diag, upper], [-1, 0, 1], format="csc")


@dataclass(frozen=True)
class StationaryProfile1D:
    x: np.ndarray
    values: np.ndarray
    kappa: float
    regime: str
    Omega: float
    residual: float = 0.0

    def to_rows(self):
        return [{"x": float(xi), "value": complex(v)} for xi, v in zip(self.x, self.values)]


@dataclass(frozen=True)
class DrivenHistory:
    """Snapshots u(t, x) from `record_after` on, plus the mass h*sum|u|^2 over all steps checked."""

    x: np.ndarray
    times: np.ndarray
    snapshots: np.ndarray
    mass_times: np.ndarray = None
    mass: np.ndarray = None


def _regime(Omega):
    return "oscillatory" if Omega > 0.0 else "evanescent"

# =========================
# STATIONARY PROFILE
# =========================
def stationary_outgoing_1d(source, Omega, grid=None):
    """
    Stationary solution a(x) exp(-i Omega t) of the driven equation:
    a = 2 (g * f) with g = exp(i kappa |x|) / (2 i kappa) for Omega > 0 and
    g = -exp(-kappa |x|) / (2 kappa) for Omega < 0, kappa = sqrt(2 |Omega|).

    Args:
        source: Callable profile f(x) or its values on the grid
        Omega: Driving frequency, nonzero
        grid: Grid1D (default grid when omitted)
    """
    if Omega == 0.0:
        raise ValidationError("Omega = 0 is the threshold of the spectrum and is rejected")
    grid = grid or Grid1D()
    x = grid.x
    f = source(x) if callable(source) else np.asarray(source)
    if f.shape != x.shape:
        raise ValidationError("source values do not match the grid")

    kappa = float(np.sqrt(2.0 * abs(Omega)))
    weighted = f * grid.trapezoid_weights()
    values = np.empty(x.size, dtype=complex)
    for start in range(0, x.size, STATIONARY_CHUNK):
        stop = min(start + STATIONARY_CHUNK, x.size)
        d = np.abs(x[start:stop, None] - x[None, :])
        if Omega > 0.0:
            kernel = np.exp(1j * kappa * d) / (2j * kappa)
        else:
            kernel = -np.exp(-kappa * d) / (2.0 * kappa)
        values[start:stop] = 2.0 * (kernel @ weighted)

    return StationaryProfile1D(x, values, kappa, _regime(Omega), float(Omega))

# =========================
# TIME EVOLUTION
# =========================
def default_stride(problem):
    """Steps between stored snapshots, SAMPLES_PER_PERIOD samples per driving period."""
    return max(1, int(problem.period / (SAMPLES_PER_PERIOD * problem.dt)))


def evolve_driven_1d(problem, t_final, record_after=0.0, record_stride=None):
    """
    Crank-Nicolson steps from zero data with the trapezoidal source term:
    (I + i dt/2 H) u+ = (I - i dt/2 H) u - i dt (s(t) + s(t + dt)) / 2.

    The scheme is unconditionally stable; dt only controls accuracy, the
    driving frequency is effectively (2/dt) tan(Omega dt/2).

    Raises:
        InstabilityError: |u| above 10 times the Duhamel bound t*|f|
    """
    if t_final <= 0.0:
        raise ValidationError("t_final must be positive")
    stride = record_stride or default_stride(problem)
    n_steps = int(round(t_final / problem.dt))
    dt = problem.dt
    h = problem.grid.spacing

    H = problem.hamiltonian()
    identity = sparse.identity(problem.grid.n_points, dtype=complex, format="csc")
    implicit = splu((identity + 0.5j * dt * H).tocsc())
    explicit = (identity - 0.5j * dt * H).tocsr()

    f = problem.source_values()
    f_norm = np.sqrt(h) * np.linalg.norm(f)
    u = np.zeros(problem.grid.n_points, dtype=complex)

    times, snapshots = [], []
    mass_times, masses = [0.0], [0.0]
    if record_after <= 0.0:
        times.append(0.0)
        snapshots.append(u.copy())

    for step in range(1, n_steps + 1):
        t = step * dt
        drive = 0.5 * f * (np.exp(-1j * problem.Omega * (t - dt)) + np.exp(-1j * problem.Omega * t))
        u = implicit.solve(explicit @ u - 1j * dt * drive)

        if step % stride and step != n_steps:
            continue
        mass = h * float(np.vdot(u, u).real)
        bound = INSTABILITY_FACTOR * t * f_norm + np.finfo(float).tiny
        if not np.isfinite(mass) or np.sqrt(mass) > bound:
            raise InstabilityError(
                f"field norm {np.sqrt(mass):.3g} exceeds {bound:.3g} at t={t:.6g}",
                t=t,
                norm=float(np.sqrt(mass)),
            )
        mass_times.append(t)
        masses.append(mass)
        if t >= record_after - 1e-12:
            times.append(t)
            snapshots.append(u.copy())

    return DrivenHistory(
        x=problem.grid.x,
        times=np.asarray(times),
        snapshots=np.asarray(snapshots),
        mass_times=np.asarray(mass_times),
        mass=np.asarray(masses),
    )

# =========================
# EXTRACTION
# =========================
def extract_limiting_amplitude(history, Omega, window):
    """
    Hann-weighted least-squares fit u(t, x) ~ a(x) exp(-i Omega t) over the
    trailing `window` of the history.

    Returns:
        StationaryProfile1D with `residual` = weighted relative misfit

    Raises:
        WindowTooShortError: window below 10 periods or not covered by the history
        FitResidualError: misfit above MAX_FIT_RESIDUAL
    """
    if Omega == 0.0:
        raise ValidationError("Omega must be nonzero")
    periods = window * abs(Omega) / (2.0 * np.pi)
    if periods < MIN_WINDOW_PERIODS - 1e-9:
        raise WindowTooShortError(f"window covers {periods:.3g} periods, need {MIN_WINDOW_PERIODS}")

    times = np.asarray(history.times)
    t_end = times[-1]
    if times[0] > t_end - window + 1e-9:
        raise WindowTooShortError(
            f"history starts at t={times[0]:.6g}, window needs t <= {t_end - window:.6g}"
        )
    mask = times >= t_end - window - 1e-9
    t = times[mask]
    u = np.asarray(history.snapshots)[mask]
    if t.size < 3:
        raise WindowTooShortError("window holds fewer than 3 snapshots")

    weights = np.sin(np.pi * (t - t[0]) / (t[-1] - t[0])) ** 2
    phase = np.exp(1j * Omega * t)
    values = (weights * phase) @ u / weights.sum()

    model = np.conj(phase)[:, None] * values[None, :]
    total = float(weights @ np.sum(np.abs(u) ** 2, axis=1))
    misfit = float(weights @ np.sum(np.abs(u - model) ** 2, axis=1))
    residual = np.sqrt(misfit / total) if total > 0.0 else 0.0
    if residual > MAX_FIT_RESIDUAL:
        raise FitResidualError(
            f"fit residual {residual:.3g} above {MAX_FIT_RESIDUAL}",
            residual=residual,
            window=window,
        )

    kappa = float(np.sqrt(2.0 * abs(Omega)))
    return StationaryProfile1D(np.asarray(history.x), values, kappa, _regime(Omega), float(Omega), residual)


def lap_discrepancy(extracted, stationary, region=None):
    """Relative L2 difference over |x| <= region (whole grid when None)."""
    a = np.asarray(extracted.values)
    b = np.asarray(stationary.values)
    if a.shape != b.shape:
        raise ValidationError("profiles live on different grids")
    mask = np.ones(a.shape, dtype=bool)
    if region is not None:
        mask = np.abs(np.asarray(stationary.x)) <= region
    reference = np.linalg.norm(b[mask])
    if reference == 0.0:
        return float(np.linalg.norm(a[mask]))
    return float(np.linalg.norm(a[mask] - b[mask]) / reference)

# =========================
# VERIFICATION RUN
# =========================
@dataclass(frozen=True)
class LapReport:
    discrepancy: float
    residual: float
    omega: float
    t_final: float
    absorber: bool
    extracted: StationaryProfile1D = None
    stationary: StationaryProfile1D = None

    def to_dict(self):
        return {
            "discrepancy": self.discrepancy,
            "residual": self.residual,
            "omega": self.omega,
            "t_final": self.t_final,
            "absorber": self.absorber,
        }


def verify_limiting_amplitude(problem, t_final, window_periods=MIN_WINDOW_PERIODS):
    """Evolve, extract over the trailing window and compare on the interior."""
    window = window_periods * problem.period
    if window >= t_final:
        raise WindowTooShortError(f"t_final={t_final} does not exceed the fit window {window:.6g}")

    record_after = max(0.0, t_final - window - problem.period)
    history = evolve_driven_1d(problem, t_final, record_after=record_after)
    extracted = extract_limiting_amplitude(history, problem.Omega, window)
    stationary = stationary_outgoing_1d(problem.source_values(), problem.Omega, problem.grid)
    discrepancy = lap_discrepancy(extracted, stationary, problem.absorber_start)
    return LapReport(discrepancy, extracted.residual, problem.Omega, float(t_final),
                     problem.absorber.enabled, extracted, stationary)
