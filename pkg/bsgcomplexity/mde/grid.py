"""Abscissae for density evaluation"""

import numpy as np

from bsgcomplexity.error import ConfigurationError


def symmetric_linspace(lo: float, hi: float, count: int) -> np.ndarray:
    """
    symmetric_linspace

    Like numpy.linspace, but exactly point-symmetric when lo == -hi so that
    reflected windows produce reflected grids bit for bit.

    :param lo: float
    :param hi: float
    :param count: int
    :return: np.ndarray
    """
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise ConfigurationError(f"window must be finite with lo < hi, got [{lo}, {hi}]")
    grid = np.linspace(lo, hi, count)
    if lo == -hi:
        grid = 0.5 * (grid - grid[::-1])
    return grid


def cosine_nodes(lo: float, hi: float, count: int) -> np.ndarray:
    """
    cosine_nodes

    Nodes clustered quadratically at both ends, suited to square-root edges.

    :param lo: float
    :param hi: float
    :param count: int
    :return: np.ndarray strictly increasing, endpoints lo and hi
    """
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise ConfigurationError(f"interval must be finite with lo < hi, got [{lo}, {hi}]")
    theta = np.linspace(np.pi, 0.0, count)
    unit = 0.5 * (1.0 + np.cos(theta))
    nodes = lo + (hi - lo) * unit
    nodes[0], nodes[-1] = lo, hi
    return nodes
