"""Ground-state energy bound: the zero of t -> sigma_total(t) on (-inf, 0)"""

from typing import Any, Dict, Tuple

from scipy.optimize import bisect

from bsgcomplexity.complexity.sigma import sigma_total
from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import BracketingError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.model.params import ModelParams


def ground_state_report(
    params: ModelParams, settings: NumericalSettings = DEFAULTS
) -> Tuple[float, Dict[str, Any]]:
    """
    ground_state_report

    :param params: ModelParams
    :param settings: NumericalSettings
    :return: (-E0, bisection metadata)
    """

    def total(t: float) -> float:
        return sigma_total(params, t, settings).value

    hi = 0.0
    value_hi = total(hi)
    if value_hi <= 0.0:
        raise BracketingError(
            f"sigma_total(0) = {value_hi:.6e} is not positive; no zero on (-inf, 0)"
        )
    lo = -1.0
    value_lo = total(lo)
    while value_lo >= 0.0:
        if 2.0 * lo < -settings.search_radius:
            raise BracketingError(
                f"sigma_total stays nonnegative down to t={lo:.6f} ({value_lo:.6e})"
            )
        lo *= 2.0
        value_lo = total(lo)

    root, report = bisect(total, lo, hi, xtol=settings.bisection_tolerance, full_output=True)
    log.parameter("Ground state bound -E0", root)
    return float(root), {
        "method": "bisection",
        "bracket": [lo, hi],
        "iterations": report.iterations,
        "function_calls": report.function_calls,
        "tolerance": settings.bisection_tolerance,
    }


def ground_state_bound(params: ModelParams, settings: NumericalSettings = DEFAULTS) -> float:
    """
    ground_state_bound

    :param params: ModelParams
    :param settings: NumericalSettings
    :return: float -E0 < 0
    """
    return ground_state_report(params, settings)[0]
