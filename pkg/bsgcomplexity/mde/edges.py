"""
Support edges of the limiting spectral measure

A coarse scan over the support bound [-kappa-1, kappa+1] classifies points with
the eta-extrapolated density, then each outer edge is refined by multi-section
on the pointwise test Im s(E + i*edge_eta)/pi >= edge_threshold. Refinement
points enter the eta ladder at eta_min from the interpolated scan solution.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy.integrate import trapezoid

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import SolverConvergenceError, WindowTooSmallError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.mde.grid import symmetric_linspace
from bsgcomplexity.mde.solve import LadderSolution, MdeCoefficients, kappa, solve_energies
from bsgcomplexity.model.params import ModelParams

EDGE_RESIDUAL_TOLERANCE = 1e-13
MAX_BRACKET_SHIFTS = 8


def _inside(
    coeffs: MdeCoefficients,
    params: ModelParams,
    energies: np.ndarray,
    scan: LadderSolution,
    settings: NumericalSettings,
) -> np.ndarray:
    solution = solve_energies(
        coeffs,
        energies,
        settings.edge_eta,
        settings,
        tolerance=min(settings.residual_tolerance, EDGE_RESIDUAL_TOLERANCE),
        start=scan.warm_start(energies),
    )
    return solution.stieltjes(params).imag / np.pi >= settings.edge_threshold


def _verify_bracket(
    coeffs: MdeCoefficients,
    params: ModelParams,
    outer: float,
    inner: float,
    scan: LadderSolution,
    settings: NumericalSettings,
) -> Tuple[float, float]:
    """Shift (outer, inner) until outer tests outside and inner tests inside."""
    step = inner - outer
    for _ in range(MAX_BRACKET_SHIFTS):
        flags = _inside(coeffs, params, np.array([outer, inner]), scan, settings)
        if flags[0]:
            outer, inner = outer - step, outer
        elif not flags[1]:
            outer, inner = inner, inner + step
        else:
            return outer, inner
    raise SolverConvergenceError(
        f"could not bracket the support edge near {inner:.6f}"
    )


def _refine(
    coeffs: MdeCoefficients,
    params: ModelParams,
    outer: float,
    inner: float,
    scan: LadderSolution,
    settings: NumericalSettings,
) -> float:
    outer, inner = _verify_bracket(coeffs, params, outer, inner, scan, settings)
    per_round = settings.edge_points
    fractions = np.arange(1, per_round + 1) / (per_round + 1)
    rounds = 0
    while abs(inner - outer) > settings.edge_tolerance:
        trial = outer + (inner - outer) * fractions
        flags = _inside(coeffs, params, trial, scan, settings)
        if flags.any():
            # first trial point inside, walking from the outer end
            k = int(np.argmax(flags))
            inner = trial[k]
            if k > 0:
                outer = trial[k - 1]
        else:
            outer = trial[-1]
        rounds += 1
    log.parameter("Edge multi-section rounds", rounds)
    return 0.5 * (outer + inner)


@lru_cache(maxsize=256)
def scan_solution(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings = DEFAULTS
) -> LadderSolution:
    """
    scan_solution

    The full eta ladder down to eta_min on scan_resolution points of [-kappa-1, kappa+1].
    Later solves at the same u start from it.

    :param params: ModelParams
    :param u: FieldPoint, already reduced for pure models
    :param settings: NumericalSettings
    :return: LadderSolution, shared between callers and not to be modified
    """
    coeffs = MdeCoefficients.from_params(params, u)
    bound = kappa(params, u) + 1.0
    grid = symmetric_linspace(-bound, bound, settings.scan_resolution)
    return solve_energies(coeffs, grid, settings.eta_min, settings)


@lru_cache(maxsize=4096)
def _support_edges(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings
) -> Tuple[float, float]:
    coeffs = MdeCoefficients.from_params(params, u)
    scan = scan_solution(params, u, settings)
    grid = scan.energies
    density = scan.extrapolated_density(params)
    inside = np.flatnonzero(density >= settings.edge_threshold)
    if inside.size == 0:
        raise SolverConvergenceError(f"no spectral mass found on the scan grid for {u}")
    first, last = int(inside[0]), int(inside[-1])
    if first == 0 or last == grid.size - 1:
        raise WindowTooSmallError(
            f"support reaches the scan window [{grid[0]:.4f}, {grid[-1]:.4f}] for {u}"
        )

    left = _refine(coeffs, params, grid[first - 1], grid[first], scan, settings)
    right = _refine(coeffs, params, grid[last + 1], grid[last], scan, settings)

    margin = 10.0 * settings.edge_tolerance
    outside = (grid < left - margin) | (grid > right + margin)
    outside_mass = trapezoid(np.where(outside, np.clip(density, 0.0, None), 0.0), grid)
    if outside_mass > settings.outside_mass_tolerance:
        log.warning(
            f"Mass {outside_mass:.3e} outside the detected edges [{left:.6f}, {right:.6f}]"
        )
    log.parameter("Support edges", (round(left, 9), round(right, 9)))
    return float(left), float(right)


def support_edges(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings = DEFAULTS
) -> Tuple[float, float]:
    """
    support_edges

    :param params: ModelParams
    :param u: FieldPoint
    :param settings: NumericalSettings
    :return: (left_edge, right_edge) accurate to settings.edge_tolerance
    """
    return _support_edges(params, u.reduced(params.pure), settings)


def left_edge(
    params: ModelParams, u: FieldPoint, settings: NumericalSettings = DEFAULTS
) -> float:
    return support_edges(params, u, settings)[0]
