"""
Total complexity and complexity of local minima

Example Usage:
==============
>>> from bsgcomplexity.model import derive_params, parse_mixture
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> round(sigma_total(params).value, 3)
0.549
"""

from typing import Optional

from bsgcomplexity.complexity.functional import _log_potential_at
from bsgcomplexity.complexity.optimize import _pure_unconstrained, maximize_mixture, maximize_pure
from bsgcomplexity.complexity.result import ComplexityMode, ComplexityResult
from bsgcomplexity.complexity.thresholds import _e_infinity_search, e_infinity_report
from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import UnsupportedModelError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.edges import _support_edges, scan_solution
from bsgcomplexity.model.params import ModelParams, prefactor_limit


def _require_nondegenerate(params: ModelParams) -> None:
    if not params.nondegenerate:
        raise UnsupportedModelError(
            "complexity requires xi1'' > 0 and xi2'' > 0 (pure (1,q) and (p,1) excluded)"
        )


def sigma_total(
    params: ModelParams,
    t: Optional[float] = None,
    settings: NumericalSettings = DEFAULTS,
) -> ComplexityResult:
    """
    sigma_total

    :param params: ModelParams
    :param t: float optional energy threshold (half-space u0 <= t)
    :param settings: NumericalSettings
    :return: ComplexityResult
    """
    _require_nondegenerate(params)
    if params.pure:
        outcome = maximize_pure(params, t, settings)
    else:
        outcome = maximize_mixture(params, ComplexityMode.TOTAL, t, settings)
    result = ComplexityResult.build(
        prefactor_limit(params),
        outcome.value,
        outcome.maximizer,
        ComplexityMode.TOTAL,
        t,
        outcome.diagnostics,
    )
    log.parameter(f"Total complexity (t={t})", result.value)
    return result


def sigma_min(
    params: ModelParams,
    t: Optional[float] = None,
    settings: NumericalSettings = DEFAULTS,
) -> ComplexityResult:
    """
    sigma_min

    :param params: ModelParams
    :param t: float optional energy threshold
    :param settings: NumericalSettings
    :return: ComplexityResult, maximizer inside the positivity set
    """
    _require_nondegenerate(params)
    if params.pure:
        threshold, threshold_info = e_infinity_report(params, settings)
        upper = -threshold if t is None else min(t, -threshold)
        outcome = maximize_pure(params, upper, settings)
        outcome.diagnostics["e_infinity"] = threshold
        outcome.diagnostics["e_infinity_search"] = threshold_info
    else:
        outcome = maximize_mixture(params, ComplexityMode.MINIMA, t, settings)
    result = ComplexityResult.build(
        prefactor_limit(params),
        outcome.value,
        outcome.maximizer,
        ComplexityMode.MINIMA,
        t,
        outcome.diagnostics,
    )
    log.parameter(f"Minima complexity (t={t})", result.value)
    return result


def clear_caches() -> None:
    """Drop cached scans, edges, log-potentials and optimizer results."""
    for cached in (
        scan_solution,
        _support_edges,
        _log_potential_at,
        _pure_unconstrained,
        _e_infinity_search,
    ):
        cached.cache_clear()
