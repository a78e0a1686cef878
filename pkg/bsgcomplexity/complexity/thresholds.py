"""
Energy threshold of the pure-model positivity set

For pure models the positivity set is the half-line u0 <= -E_inf; E_inf is found
by bisection on the sign of the left support edge.
"""

import math
from functools import lru_cache
from typing import Any, Dict, Tuple

from scipy.optimize import bisect

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import BracketingError, NotPureModelError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.edges import left_edge
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.mde.solve import MdeCoefficients
from bsgcomplexity.model.params import ModelParams

MAX_BRACKET_DOUBLINGS = 12


def initial_bracket_width(params: ModelParams) -> float:
    """
    initial_bracket_width

    2*sqrt(|S|)/min(xi1'/gamma, xi2'/(1-gamma)) + 1: beyond this depth the left edge
    is positive.

    :param params: ModelParams
    :return: float
    """
    coeffs = MdeCoefficients.from_params(params, FieldPoint())
    rate = min(params.xi1_prime / params.gamma, params.xi2_prime / params.gamma2)
    return 2.0 * math.sqrt(coeffs.stability_norm) / rate + 1.0


@lru_cache(maxsize=256)
def _e_infinity_search(
    params: ModelParams, settings: NumericalSettings
) -> Tuple[float, Dict[str, Any]]:
    def edge(u0: float) -> float:
        return left_edge(params, FieldPoint(u0), settings)

    hi = 0.0
    edge_hi = edge(hi)
    if edge_hi >= 0.0:
        raise BracketingError(f"left edge at u0=0 is {edge_hi:.6e}, expected negative")

    lo = -initial_bracket_width(params)
    edge_lo = edge(lo)
    doublings = 0
    while edge_lo < 0.0:
        if doublings >= MAX_BRACKET_DOUBLINGS:
            raise BracketingError(
                f"left edge still negative at u0={lo:.6f} ({edge_lo:.6e})"
            )
        lo *= 2.0
        edge_lo = edge(lo)
        doublings += 1

    half = 0.5 * settings.bisection_tolerance
    root, report = bisect(edge, lo, hi, xtol=half, full_output=True)
    # step to the side where the spectrum is nonnegative
    if edge(root) < 0.0:
        root -= half
    info = {
        "method": "bisection",
        "bracket": [lo, hi],
        "bracket_doublings": doublings,
        "iterations": report.iterations,
        "function_calls": report.function_calls,
        "tolerance": settings.bisection_tolerance,
    }
    log.parameter("Threshold E_inf", -root)
    return -float(root), info


def e_infinity_report(
    params: ModelParams, settings: NumericalSettings = DEFAULTS
) -> Tuple[float, Dict[str, Any]]:
    """
    e_infinity_report

    :param params: ModelParams of a pure model
    :param settings: NumericalSettings
    :return: (E_inf, bisection metadata)
    """
    if not params.pure:
        raise NotPureModelError("e_infinity is only defined for pure (p,q) models")
    value, info = _e_infinity_search(params, settings)
    return value, dict(info)


def e_infinity(params: ModelParams, settings: NumericalSettings = DEFAULTS) -> float:
    """
    e_infinity

    :param params: ModelParams of a pure model
    :param settings: NumericalSettings
    :return: float E_inf > 0
    """
    return e_infinity_report(params, settings)[0]
