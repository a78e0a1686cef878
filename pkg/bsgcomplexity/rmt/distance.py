"""
Distances between empirical spectra and limiting densities

Example Usage:
==============
>>> wasserstein1([0.0], [1.0])
1.0
"""

from typing import Optional

import numpy as np
from scipy.stats import wasserstein_distance

from bsgcomplexity.error import WindowTooSmallError
from bsgcomplexity.mde.density import SpectralDensity
from bsgcomplexity.rmt.spectrum import EmpiricalSpectrum

BL_CAP = 2.0
WINDOW_MARGIN = 0.5


def wasserstein1(
    u_values, v_values, v_weights: Optional[np.ndarray] = None
) -> float:
    """
    wasserstein1

    :param u_values: atoms of the first measure, equal weights
    :param v_values: atoms of the second measure
    :param v_weights: optional weights of the second measure
    :return: float W1 distance, the integrated absolute CDF difference
    """
    return float(wasserstein_distance(u_values, v_values, v_weights=v_weights))


def _density_weights(density: SpectralDensity) -> np.ndarray:
    weights = density.cell_masses()
    if not np.any(weights > 0):
        raise WindowTooSmallError("density carries no mass on its grid")
    return weights


def w1_distance(empirical: EmpiricalSpectrum, density: SpectralDensity) -> float:
    """
    w1_distance

    The density is discretized to its grid nodes with trapezoid masses. The spectrum
    must lie inside the density grid, up to WINDOW_MARGIN on either side.

    :param empirical: EmpiricalSpectrum
    :param density: SpectralDensity
    :return: float
    """
    lo, hi = float(density.grid[0]), float(density.grid[-1])
    if empirical.lambda_min < lo - WINDOW_MARGIN or empirical.lambda_max > hi + WINDOW_MARGIN:
        raise WindowTooSmallError(
            f"spectrum [{empirical.lambda_min:.6f}, {empirical.lambda_max:.6f}] leaves the "
            f"density window [{lo:.6f}, {hi:.6f}]"
        )
    return wasserstein1(empirical.eigenvalues, density.grid, _density_weights(density))


def bl_distance(empirical: EmpiricalSpectrum, density: SpectralDensity) -> float:
    """Bounded-Lipschitz bound min(W1, 2)."""
    return min(w1_distance(empirical, density), BL_CAP)


def kolmogorov_distance(empirical: EmpiricalSpectrum, density: SpectralDensity) -> float:
    """
    kolmogorov_distance

    :param empirical: EmpiricalSpectrum
    :param density: SpectralDensity
    :return: float sup |F_empirical - F_density|, checked on both sides of each jump
    """
    cdf = density.cdf()
    cdf = cdf / cdf[-1]
    limit = np.interp(empirical.eigenvalues, density.grid, cdf, left=0.0, right=1.0)
    steps = np.arange(1, empirical.size + 1) / empirical.size
    return float(max(np.max(np.abs(steps - limit)), np.max(np.abs(steps - 1.0 / empirical.size - limit))))


def operator_norm_difference(first: np.ndarray, second: np.ndarray) -> float:
    """
    operator_norm_difference

    :param first: symmetric matrix
    :param second: symmetric matrix of the same shape
    :return: float largest |eigenvalue| of first - second
    """
    return float(np.max(np.abs(np.linalg.eigvalsh(np.asarray(first) - np.asarray(second)))))
