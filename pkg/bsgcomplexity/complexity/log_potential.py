"""
Log-potential of a discretized density

When 0 lies inside the support the integral is split at [-h, h]: rho(0)*log|lambda|
is integrated exactly there (2h(log h - 1)*rho(0)) and only the remainder
(rho - rho(0))*log|lambda|, which vanishes at 0, goes through the trapezoid rule.
"""

import numpy as np
from scipy.integrate import trapezoid

from bsgcomplexity.mde.density import SpectralDensity

MAX_SPLIT_HALF_WIDTH = 1.0


def _log_abs(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(x))


def _plain(x: np.ndarray, rho: np.ndarray) -> float:
    integrand = np.where(rho > 0.0, rho * _log_abs(np.where(x == 0.0, 1.0, x)), 0.0)
    return float(trapezoid(integrand, x))


def log_potential(density: SpectralDensity) -> float:
    """
    log_potential

    :param density: SpectralDensity
    :return: float integral of log|lambda| against the density
    """
    x, rho = density.grid, density.values
    if not x[0] < 0.0 < x[-1]:
        return _plain(x, rho)

    rho0 = float(np.interp(0.0, x, rho))
    if rho0 <= 0.0 or not density.left_edge < 0.0 < density.right_edge:
        return _plain(x, rho)

    h = 0.5 * min(-density.left_edge, density.right_edge, -x[0], x[-1], 2.0 * MAX_SPLIT_HALF_WIDTH)
    rho_minus, rho_plus = np.interp([-h, h], x, rho)

    inner = (x > -h) & (x < h)
    xc = np.concatenate(([-h], x[inner], [h]))
    yc = np.concatenate(([rho_minus], rho[inner], [rho_plus]))
    if not np.any(xc == 0.0):
        at = int(np.searchsorted(xc, 0.0))
        xc = np.insert(xc, at, 0.0)
        yc = np.insert(yc, at, rho0)
    remainder = np.where(xc == 0.0, 0.0, (yc - rho0) * _log_abs(np.where(xc == 0.0, 1.0, xc)))
    central = rho0 * 2.0 * h * (np.log(h) - 1.0) + trapezoid(remainder, xc)

    below = x < -h
    xl = np.concatenate((x[below], [-h]))
    yl = np.concatenate((rho[below], [rho_minus]))
    above = x > h
    xr = np.concatenate(([h], x[above]))
    yr = np.concatenate(([rho_plus], rho[above]))

    return float(central + _plain(xl, yl) + _plain(xr, yr))
