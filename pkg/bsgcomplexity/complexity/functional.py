"""
Complexity functional S[u] = integral log|lambda| mu(u, d lambda) - |u|^2/2

Densities are evaluated on cosine nodes between the detected edges; values are
cached per (params, u, settings), with u reduced to (u0, 0, 0) for pure models.
"""

from functools import lru_cache
from typing import Optional

from bsgcomplexity.complexity.log_potential import log_potential
from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.density import GRID_SUPPORT, density
from bsgcomplexity.mde.edges import left_edge
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams


@lru_cache(maxsize=8192)
def _log_potential_at(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings
) -> float:
    value = log_potential(density(params, u, grid=GRID_SUPPORT, settings=settings))
    log.parameter(f"Log-potential at {u.as_tuple()}", value)
    return value


def log_potential_of(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings = DEFAULTS
) -> float:
    """Integral of log|lambda| against the limiting spectrum at u."""
    return _log_potential_at(params, u.reduced(params.pure), settings)


def s_bsg(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings = DEFAULTS
) -> float:
    """
    s_bsg

    :param params: ModelParams
    :param u: FieldPoint
    :param settings: NumericalSettings
    :return: float
    """
    return log_potential_of(params, u, settings) - 0.5 * u.norm_squared


def in_g(
    params: ModelParams,
    u: FieldPoint,
    tol: Optional[float] = None,
    settings: NumericalSettings = DEFAULTS,
) -> bool:
    """
    in_g

    Membership in the set of u whose limiting spectrum lies in [0, inf).

    :param params: ModelParams
    :param u: FieldPoint
    :param tol: float >= 0, defaults to settings.membership_tolerance
    :param settings: NumericalSettings
    :return: bool
    """
    tol = settings.membership_tolerance if tol is None else tol
    return left_edge(params, u, settings) >= -tol
