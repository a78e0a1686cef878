"""
Limiting spectral density by Stieltjes inversion

rho(E) = Im s(E + i*eta_min) / pi, with s = gamma*m1 + (1 - gamma)*m2. The grid
solve starts from the cached support scan one ladder level above eta_min.

Example Usage:
==============
>>> from bsgcomplexity.model import derive_params, parse_mixture
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> semicircle = density(params, FieldPoint(), resolution=512)
>>> round(semicircle.right_edge, 4)
6.9282
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import ConfigurationError, WindowTooSmallError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.edges import scan_solution, support_edges
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.mde.grid import cosine_nodes, symmetric_linspace
from bsgcomplexity.mde.solve import MdeCoefficients, kappa, solve_energies
from bsgcomplexity.model.params import ModelParams

GRID_UNIFORM = "uniform"
GRID_SUPPORT = "support"
GRID_MODES = (GRID_UNIFORM, GRID_SUPPORT)

MIN_RESOLUTION = 64
MASS_TOLERANCE = 1e-3


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    grid: np.ndarray
    values: np.ndarray
    left_edge: float
    right_edge: float
    mass: float
    eta_min: float
    resolution: int
    u: FieldPoint = FieldPoint()
    grid_mode: str = GRID_UNIFORM

    def reflect(self) -> "SpectralDensity":
        """Density of the image measure under lambda -> -lambda."""
        return SpectralDensity(
            grid=-self.grid[::-1],
            values=self.values[::-1].copy(),
            left_edge=-self.right_edge,
            right_edge=-self.left_edge,
            mass=self.mass,
            eta_min=self.eta_min,
            resolution=self.resolution,
            u=-self.u,
            grid_mode=self.grid_mode,
        )

    def value_at(self, x) -> np.ndarray:
        return np.interp(x, self.grid, self.values, left=0.0, right=0.0)

    def cdf(self) -> np.ndarray:
        return cumulative_trapezoid(self.values, self.grid, initial=0.0)

    def cell_masses(self) -> np.ndarray:
        """Trapezoid weights: the mass the rule assigns to each node."""
        widths = np.diff(self.grid)
        masses = np.zeros_like(self.values)
        masses[:-1] += 0.5 * widths * self.values[:-1]
        masses[1:] += 0.5 * widths * self.values[1:]
        return masses

    def sidecar(self) -> dict:
        return {
            "left_edge": self.left_edge,
            "right_edge": self.right_edge,
            "mass": self.mass,
            "eta_min": self.eta_min,
            "resolution": self.resolution,
            "grid": self.grid_mode,
            "u": self.u.to_dict(),
        }


def default_window(params: ModelParams, u: FieldPoint) -> Tuple[float, float]:
    """
    default_window

    :param params: ModelParams
    :param u: FieldPoint
    :return: (-kappa(u) - 1, kappa(u) + 1)
    """
    bound = kappa(params, u) + 1.0
    return -bound, bound


def density(
    params: ModelParams,
    u: FieldPoint,
    window: Optional[Tuple[float, float]] = None,
    resolution: Optional[int] = None,
    grid: str = GRID_UNIFORM,
    settings: NumericalSettings = DEFAULTS,
) -> SpectralDensity:
    """
    density

    :param params: ModelParams
    :param u: FieldPoint
    :param window: (lo, hi), defaults to the support bound plus one
    :param resolution: int number of grid points, at least 64
    :param grid: "uniform" over the window, or "support" for cosine nodes between the edges
    :param settings: NumericalSettings
    :return: SpectralDensity
    """
    resolution = settings.resolution if resolution is None else int(resolution)
    if resolution < MIN_RESOLUTION:
        raise ConfigurationError(f"resolution must be >= {MIN_RESOLUTION}, got {resolution}")
    if grid not in GRID_MODES:
        raise ConfigurationError(f"grid must be one of {GRID_MODES}, got {grid!r}")

    left, right = support_edges(params, u, settings)
    if grid == GRID_SUPPORT:
        lo, hi = left, right
        x = cosine_nodes(left, right, resolution)
    else:
        lo, hi = default_window(params, u) if window is None else window
        x = symmetric_linspace(float(lo), float(hi), resolution)

    reduced = u.reduced(params.pure)
    coeffs = MdeCoefficients.from_params(params, reduced)
    # enters at the level above eta_min so both extrapolation levels are solved here
    start = scan_solution(params, reduced, settings).warm_start(x, previous=True)
    solution = solve_energies(coeffs, x, settings.eta_min, settings, start=start)
    raw = solution.stieltjes(params).imag / np.pi
    extrapolated = solution.extrapolated_density(params)
    values = extrapolated if settings.richardson else raw

    margin = 10.0 * settings.edge_tolerance
    outside = (extrapolated < settings.edge_threshold) | (x < left - margin) | (x > right + margin)
    values = np.where(outside, 0.0, np.clip(values, 0.0, None))
    mass = float(trapezoid(values, x))

    covered = lo <= left + margin and right - margin <= hi
    if not covered and mass < 1.0 - MASS_TOLERANCE:
        raise WindowTooSmallError(
            f"window [{lo:.6f}, {hi:.6f}] misses part of the support "
            f"[{left:.6f}, {right:.6f}] (mass {mass:.6f})"
        )
    if covered and abs(mass - 1.0) > MASS_TOLERANCE:
        log.warning(f"Density mass {mass:.6f} outside [0.999, 1.001]; increase resolution")

    log.parameter("Density mass", mass)
    return SpectralDensity(
        grid=x,
        values=values,
        left_edge=left,
        right_edge=right,
        mass=mass,
        eta_min=settings.eta_min,
        resolution=resolution,
        u=u,
        grid_mode=grid,
    )
