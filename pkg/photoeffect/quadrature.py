"""
Quadrature Module
Gauss-Legendre panels, sphere rules and the singular convolution engine
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from photoeffect.errors import ValidationError

NODES_PER_PANEL = 8
MIN_ANGULAR_NODES = 8


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Controls of the convolution quadrature (lengths in bohr).

    The source is truncated at `radial_cutoff`; the ball of radius
    `singular_shell_radius` around the evaluation point is its own radial
    panel. `node_budget` is the node count of the fine rule; the error
    estimate compares it with a rule of node_budget/8 nodes.
    """

    radial_cutoff: float = 20.0
    node_budget: int = 2 ** 20
    singular_shell_radius: float = 1.0
    target_rel_error: float = 1.0e-2

    def __post_init__(self):
        if not 0.0 < self.target_rel_error <= 0.1:
            raise ValidationError("target_rel_error must lie in (0, 0.1]")
        if self.singular_shell_radius <= 0.0:
            raise ValidationError("singular_shell_radius must be positive")
        if self.node_budget < 8 * NODES_PER_PANEL * MIN_ANGULAR_NODES ** 2:
            raise ValidationError(f"node_budget={self.node_budget} is too small")

    def validate_for(self, r1):
        """The source decays like exp(-r/r1); require radial_cutoff >= 20 r1."""
        if self.radial_cutoff < 20.0 * r1:
            raise ValidationError(
                f"radial_cutoff={self.radial_cutoff} must be at least 20*r1={20.0 * r1}"
            )


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a convolution with its nested-refinement error estimate."""

    value: complex
    abs_error: float
    error_estimate: float
    nodes: int

# =========================
# ONE-DIMENSIONAL RULES
# =========================
@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    nodes, weights = special.roots_legendre(n)
    return nodes, weights


def panel_edges(breaks, max_width):
    """Subdivide [breaks[i], breaks[i+1]] into equal panels no wider than max_width."""
    edges = [breaks[0]]
    for a, b in zip(breaks[:-1], breaks[1:]):
        count = max(1, int(np.ceil((b - a) / max_width - 1e-9)))
        edges.extend(np.linspace(a, b, count + 1)[1:])
    return np.asarray(edges)


def panel_rule(a, b, n):
    """n-point Gauss-Legendre rule mapped to [a, b]."""
    t, w = gauss_legendre(n)
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * t, half * w


def sphere_rule(n_mu, n_phi):
    """
    Product rule on the unit sphere: Gauss-Legendre in mu = cos(polar angle)
    and the trapezoid rule in the azimuth.

    Returns:
        mu, mu_weights, phi, phi_weights
    """
    mu, w_mu = gauss_legendre(n_mu)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    w_phi = np.full(n_phi, 2.0 * np.pi / n_phi)
    return mu, w_mu, phi, w_phi

# =========================
# FRAMES
# =========================
def frame(axis):
    """
    Orthonormal frame (p, u, v) with pole p along `axis`.

    u is e3 made orthogonal to p (e1 when p is parallel to e3), so the rule
    built on a point and on its mirror image under x3 -> -x3 are mirror images.
    """
    axis = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(axis)
    p = axis / norm if norm > 0.0 else np.array([0.0, 0.0, 1.0])

    u = np.array([0.0, 0.0, 1.0]) - p[2] * p
    if np.linalg.norm(u) < 1e-8:
        u = np.array([1.0, 0.0, 0.0]) - p[0] * p
    u /= np.linalg.norm(u)
    return p, u, np.cross(p, u)


def directions(p, u, v, mu, phi):
    """Unit vectors mu p + sqrt(1-mu^2)(cos(phi) u + sin(phi) v), shape (n_mu, n_phi, 3)."""
    s = np.sqrt(1.0 - mu ** 2)[:, None, None]
    return (mu[:, None, None] * p
            + s * np.cos(phi)[None, :, None] * u
            + s * np.sin(phi)[None, :, None] * v)

# =========================
# CONVOLUTION ENGINE
# =========================
@dataclass(frozen=True)
class _Layout:
    centered: bool
    pole: tuple
    edges: tuple
    n_mu: int
    n_phi: int


def _layout(anchor, wavenumber, spec, r1):
    anchor = np.asarray(anchor, dtype=float)
    distance = float(np.linalg.norm(anchor))
    width = r1
    if abs(wavenumber) * r1 > np.pi:
        width = np.pi / abs(wavenumber)

    centered = distance <= spec.radial_cutoff + spec.singular_shell_radius
    if centered:
        outer = distance + spec.radial_cutoff
        breaks = sorted({0.0, min(spec.singular_shell_radius, outer), distance, outer})
        breaks = [b for i, b in enumerate(breaks) if i == 0 or b - breaks[i - 1] > 1e-12 * outer]
        pole = -anchor
    else:
        breaks = [0.0, spec.radial_cutoff]
        pole = anchor

    edges = panel_edges(breaks, width)
    panels = len(edges) - 1
    angular = spec.node_budget / (NODES_PER_PANEL * panels)
    n_mu = max(MIN_ANGULAR_NODES, 2 * int(np.sqrt(angular / 2.0) // 2))
    return _Layout(centered, tuple(pole), tuple(edges), n_mu, 2 * n_mu)


def _integrate(x, source, phase, layout, level):
    n_radial = NODES_PER_PANEL // level
    mu, w_mu, phi, w_phi = sphere_rule(layout.n_mu // level, layout.n_phi // level)
    d = directions(*frame(layout.pole), mu, phi)
    w_angle = w_mu[:, None] * w_phi[None, :]

    total = 0.0 + 0.0j
    mass = 0.0
    nodes = 0
    for a, b in zip(layout.edges[:-1], layout.edges[1:]):
        rho, w_rho = panel_rule(a, b, n_radial)
        points = rho[:, None, None, None] * d[None, ...]
        if layout.centered:
            y = x + points
            weight = rho * phase(rho) / (4.0 * np.pi)
            weight = weight[:, None, None]
        else:
            y = points
            dist = np.linalg.norm(x - y, axis=-1)
            weight = (rho ** 2)[:, None, None] * phase(dist) / (4.0 * np.pi * dist)
        integrand = weight * source(y) * w_rho[:, None, None] * w_angle[None, ...]
        total += integrand.sum()
        mass += np.abs(integrand).sum()
        nodes += integrand.size
    return -total, mass, nodes


def convolve(x, source, phase, wavenumber, spec, r1=1.0, anchor=None):
    """
    Evaluate -integral K(x-y) source(y) dy with K(d) = phase(d) / (4 pi d).

    Args:
        x: Evaluation point (3-vector, bohr)
        source: Vectorized callable of points (..., 3)
        phase: Vectorized callable of distances, e.g. exp(i k d) or exp(-kappa d)
        wavenumber: Oscillation or decay rate of the phase, sets panel widths
        spec: QuadratureSpec
        r1: Decay length of the source
        anchor: Point whose node layout is used (defaults to x)

    Returns:
        QuadratureResult
    """
    x = np.asarray(x, dtype=float)
    layout = _layout(x if anchor is None else anchor, wavenumber, spec, r1)

    value, mass, nodes = _integrate(x, source, phase, layout, level=1)
    coarse, _, _ = _integrate(x, source, phase, layout, level=2)

    abs_error = abs(value - coarse)
    scale = max(abs(value), 1e-6 * mass)
    error_estimate = abs_error / scale if scale > 0.0 else 0.0
    return QuadratureResult(complex(value), float(abs_error), float(error_estimate), nodes)
