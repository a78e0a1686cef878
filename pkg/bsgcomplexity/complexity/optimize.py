"""
Variational search over the field u

Pure models reduce to one dimension in u0: the unconstrained maximizer is found
once by bounded Brent search on [-R, R]; under the constraint u0 <= c the
maximizer is min(c, u*). Mixtures use multi-start Nelder-Mead in three
dimensions with u0 clamped to the half-space and an exact penalty outside the
positivity set. Mixture results are labelled "best found".
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from bsgcomplexity.complexity.functional import in_g, s_bsg
from bsgcomplexity.complexity.result import ComplexityMode
from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import (
    BsgError,
    InfeasibleStartError,
    OptimizerBoundaryError,
    OptimizerError,
)
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams

BOUNDARY_MARGIN = 1e-3
START_SCALE = 1.0
SIMPLEX_STEP = 0.5
MAX_EVALUATIONS = 600
MAX_START_SHIFTS = 16


@dataclass
class SearchOutcome:
    maximizer: FieldPoint
    value: float
    diagnostics: Dict[str, Any] = field(default_factory=dict)


@lru_cache(maxsize=256)
def _pure_unconstrained(
    params: ModelParams, settings: NumericalSettings
) -> Tuple[float, float, int]:
    radius = settings.search_radius

    def objective(u0: float) -> float:
        return -s_bsg(params, FieldPoint(u0), settings)

    result = minimize_scalar(
        objective,
        bounds=(-radius, radius),
        method="bounded",
        options={"xatol": settings.optimizer_xatol},
    )
    if not result.success:
        raise OptimizerError(f"bounded search did not converge: {result.message}")
    u_star = float(result.x)
    if radius - abs(u_star) < BOUNDARY_MARGIN:
        raise OptimizerBoundaryError(
            f"maximizer u0={u_star:.6f} lies on the boundary of [-{radius}, {radius}]"
        )
    log.parameter("Unconstrained maximizer u0", u_star)
    return u_star, float(-result.fun), int(result.nfev)


def maximize_pure(
    params: ModelParams,
    upper: Optional[float] = None,
    settings: NumericalSettings = DEFAULTS,
) -> SearchOutcome:
    """
    maximize_pure

    :param params: ModelParams of a pure model
    :param upper: float optional constraint u0 <= upper
    :param settings: NumericalSettings
    :return: SearchOutcome
    """
    radius = settings.search_radius
    if upper is not None and upper < -radius - settings.optimizer_xatol:
        raise OptimizerBoundaryError(
            f"constraint u0 <= {upper:.6f} leaves the search box [-{radius}, {radius}]"
        )
    u_star, value, evaluations = _pure_unconstrained(params, settings)
    diagnostics = {
        "method": "bounded-brent",
        "evaluations": evaluations,
        "unconstrained_maximizer": u_star,
        "search_radius": radius,
    }
    if upper is None or u_star <= upper:
        diagnostics["constraint_active"] = False
        return SearchOutcome(FieldPoint(u_star), value, diagnostics)

    diagnostics["constraint_active"] = True
    maximizer = FieldPoint(float(upper))
    return SearchOutcome(maximizer, s_bsg(params, maximizer, settings), diagnostics)


def _clamp(x: np.ndarray, upper: Optional[float]) -> FieldPoint:
    u0 = float(x[0]) if upper is None else min(float(x[0]), upper)
    return FieldPoint(u0, float(x[1]), float(x[2]))


def _starts(
    upper: Optional[float], settings: NumericalSettings
) -> List[np.ndarray]:
    generator = np.random.Generator(np.random.Philox(settings.start_seed))
    starts = [np.zeros(3)]
    for _ in range(settings.n_starts - 1):
        starts.append(generator.normal(scale=START_SCALE, size=3))
    if upper is not None:
        for start in starts:
            start[0] = min(start[0], upper)
    return starts


def _feasible_start(
    params: ModelParams, start: np.ndarray, settings: NumericalSettings
) -> np.ndarray:
    """Move u0 down until the spectrum is nonnegative."""
    start = start.copy()
    shift = 0.5
    for _ in range(MAX_START_SHIFTS):
        if in_g(params, FieldPoint(*start), settings=settings):
            return start
        start[0] -= shift
        shift *= 2.0
        if start[0] < -settings.search_radius:
            break
    raise InfeasibleStartError(
        f"could not reach the positivity set from start {start.tolist()}"
    )


def _run_start(
    params: ModelParams,
    mode: ComplexityMode,
    upper: Optional[float],
    start: np.ndarray,
    settings: NumericalSettings,
) -> Dict[str, Any]:
    radius = settings.search_radius

    def objective(x: np.ndarray) -> float:
        u = _clamp(x, upper)
        if u.norm > radius:
            return -settings.penalty
        if mode is ComplexityMode.MINIMA and not in_g(params, u, settings=settings):
            return -settings.penalty
        return -s_bsg(params, u, settings)

    if mode is ComplexityMode.MINIMA:
        start = _feasible_start(params, start, settings)
    simplex = np.vstack([start, start + SIMPLEX_STEP * np.eye(3)])
    result = minimize(
        objective,
        start,
        method="Nelder-Mead",
        options={
            "xatol": settings.optimizer_xatol,
            "fatol": 1e-10,
            "maxfev": MAX_EVALUATIONS,
            "initial_simplex": simplex,
        },
    )
    maximizer = _clamp(result.x, upper)
    return {
        "start": start.tolist(),
        "maximizer": maximizer,
        "value": float(-result.fun),
        "converged": bool(result.success),
        "evaluations": int(result.nfev),
    }


def maximize_mixture(
    params: ModelParams,
    mode: ComplexityMode,
    upper: Optional[float] = None,
    settings: NumericalSettings = DEFAULTS,
) -> SearchOutcome:
    """
    maximize_mixture

    :param params: ModelParams
    :param mode: ComplexityMode
    :param upper: float optional constraint u0 <= upper
    :param settings: NumericalSettings
    :return: SearchOutcome, best of settings.n_starts Nelder-Mead runs
    """
    mode = ComplexityMode(mode)
    starts = _starts(upper, settings)
    workers = max(1, min(settings.threads, len(starts)))

    def run(start: np.ndarray) -> Dict[str, Any]:
        try:
            return _run_start(params, mode, upper, start, settings)
        except BsgError as ex:
            log.warning(f"Start {start.tolist()} failed", ex)
            return {"start": start.tolist(), "error": str(ex), "converged": False}

    if workers == 1:
        runs = [run(start) for start in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(run, starts))

    usable = [r for r in runs if "maximizer" in r and r["value"] > settings.penalty / 2]
    if not usable:
        if mode is ComplexityMode.MINIMA and all("error" in r for r in runs):
            raise InfeasibleStartError("no start reached the positivity set")
        raise OptimizerError("no Nelder-Mead start produced a feasible maximizer")
    if not any(r["converged"] for r in usable):
        raise OptimizerError("no Nelder-Mead start converged")

    best_value = max(r["value"] for r in usable)
    ties = [r for r in usable if best_value - r["value"] <= settings.tie_tolerance]
    best = min(ties, key=lambda r: (r["maximizer"].norm, runs.index(r)))
    maximizer = best["maximizer"]
    if maximizer.norm > settings.search_radius - BOUNDARY_MARGIN:
        raise OptimizerBoundaryError(
            f"maximizer {maximizer.as_tuple()} lies on the boundary of the search ball "
            f"of radius {settings.search_radius}"
        )

    diagnostics = {
        "method": "multi-start-nelder-mead",
        "label": "best found",
        "starts": [
            {
                "start": r["start"],
                "value": r.get("value"),
                "maximizer": r["maximizer"].to_dict() if "maximizer" in r else None,
                "converged": r["converged"],
                "evaluations": r.get("evaluations", 0),
                "error": r.get("error"),
            }
            for r in runs
        ],
        "ties": len(ties),
        "search_radius": settings.search_radius,
        "constraint_active": upper is not None and maximizer.u0 >= upper - settings.optimizer_xatol,
    }
    log.message(f"Best found maximizer {maximizer.as_tuple()} value {best_value:.9f}")
    return SearchOutcome(maximizer, best_value, diagnostics)
