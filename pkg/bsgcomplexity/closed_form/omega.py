"""
Log-potential of the unit semicircle

omega(x) = integral of log|lambda - x| against the semicircle density on [-2, 2]:

    x^2/4 - 1/2                                          for |x| <= 2
    x^2/4 - 1/2 - (|x|/4 sqrt(x^2 - 4) - log((|x| + sqrt(x^2 - 4))/2))   for |x| >= 2

With y = sqrt(x^2 - 4)/2 the bracket is y*sqrt(1 + y^2) - asinh(y), which has the
series (2/3)y^3 - (1/5)y^5 near the junction.
"""

import numpy as np

JUNCTION = 2.0
SERIES_WIDTH = 1e-6


def _outer_correction(ax: np.ndarray) -> np.ndarray:
    y = 0.5 * np.sqrt((ax - JUNCTION) * (ax + JUNCTION))
    series = ax < JUNCTION + SERIES_WIDTH
    y2 = y * y
    exact = y * np.sqrt(1.0 + y2) - np.arcsinh(y)
    near = y * y2 * (2.0 / 3.0 - y2 / 5.0)
    return np.where(series, near, exact)


def omega(x):
    """
    omega

    :param x: float or array
    :return: float or array, same shape as x
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    value = 0.25 * ax * ax - 0.5
    outer = ax > JUNCTION
    if np.any(outer):
        value = np.where(outer, value - _outer_correction(np.maximum(ax, JUNCTION)), value)
    if value.ndim == 0:
        return float(value)
    return value
