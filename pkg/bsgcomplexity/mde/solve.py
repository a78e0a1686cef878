"""
Two-species Dyson equation solver

For u = (u0, u1, u2) and z in the upper half-plane the pair (m1, m2) solves

    1 + (z - s1 + b1*m1 + c1*m2) * m1 = 0
    1 + (z - s2 + b2*m2 + c2*m1) * m2 = 0

with Im m1 > 0, Im m2 > 0. Points are solved as numpy arrays: a damped fixed
point with per-point adaptive damping, then Newton on the residual map for the
points whose contraction has stalled. Small Im z is reached by continuation in
eta with warm starts.

Example Usage:
==============
>>> from bsgcomplexity.model import derive_params, parse_mixture
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> pair = solve_point(params, FieldPoint(), 1j)
>>> round(pair.m1.imag, 12)
0.25
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import (
    InvalidSpectralPointError,
    SolverConvergenceError,
    check_residuals,
    check_upper_half_plane,
)
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.mde.pair import StieltjesPair
from bsgcomplexity.model.params import ModelParams

DAMPING_GROWTH = 1.25
MAX_DAMPING = 1.0


@dataclass(frozen=True)
class MdeCoefficients:
    """Scalar coefficients of the two equations for a fixed field point."""

    s1: float
    s2: float
    b1: float
    b2: float
    c1: float
    c2: float

    @classmethod
    def from_params(cls, params: ModelParams, u: FieldPoint) -> "MdeCoefficients":
        gamma1, gamma2 = params.gamma, params.gamma2
        cross = params.xi1_prime * params.xi2_prime
        return cls(
            s1=(params.alpha1 * u.u1 - params.xi1_prime * u.u0) / gamma1,
            s2=(params.alpha2 * u.u2 - params.xi2_prime * u.u0) / gamma2,
            b1=params.xi1_dprime / gamma1,
            b2=params.xi2_dprime / gamma2,
            c1=cross / gamma1,
            c2=cross / gamma2,
        )

    @property
    def shift_bound(self) -> float:
        """Largest |diagonal entry| of the deterministic part."""
        return max(abs(self.s1), abs(self.s2))

    @property
    def stability_norm(self) -> float:
        """Row-sum norm of the self-energy operator."""
        return max(self.b1 + self.c1, self.b2 + self.c2)

    def denominators(self, z, m1, m2):
        d1 = z - self.s1 + self.b1 * m1 + self.c1 * m2
        d2 = z - self.s2 + self.b2 * m2 + self.c2 * m1
        return d1, d2

    def residuals(self, z, m1, m2):
        d1, d2 = self.denominators(z, m1, m2)
        return 1.0 + d1 * m1, 1.0 + d2 * m2

    def update(self, z, m1, m2):
        d1, d2 = self.denominators(z, m1, m2)
        return -1.0 / d1, -1.0 / d2

    def jacobian(self, z, m1, m2):
        j11 = z - self.s1 + 2.0 * self.b1 * m1 + self.c1 * m2
        j12 = self.c1 * m1
        j21 = self.c2 * m2
        j22 = z - self.s2 + 2.0 * self.b2 * m2 + self.c2 * m1
        return j11, j12, j21, j22


def kappa(params: ModelParams, u: FieldPoint) -> float:
    """
    kappa

    Support bound: supp mu(u) lies in [-kappa(u), kappa(u)].

    :param params: ModelParams
    :param u: FieldPoint
    :return: float
    """
    coeffs = MdeCoefficients.from_params(params, u)
    return coeffs.shift_bound + 2.0 * np.sqrt(coeffs.stability_norm)


@dataclass
class SolveStats:
    points: int = 0
    fixed_point_iterations: int = 0
    newton_points: int = 0
    newton_iterations: int = 0

    def merge(self, other: "SolveStats") -> None:
        self.points += other.points
        self.fixed_point_iterations += other.fixed_point_iterations
        self.newton_points += other.newton_points
        self.newton_iterations += other.newton_iterations


@dataclass
class BlockSolution:
    m1: np.ndarray
    m2: np.ndarray
    residual1: np.ndarray
    residual2: np.ndarray
    converged: np.ndarray
    used_newton: np.ndarray
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def residual(self) -> np.ndarray:
        return np.maximum(self.residual1, self.residual2)


def _residual_norm(coeffs: MdeCoefficients, z, m1, m2):
    r1, r2 = coeffs.residuals(z, m1, m2)
    return np.maximum(np.abs(r1), np.abs(r2))


def _fixed_point(
    coeffs: MdeCoefficients,
    z: np.ndarray,
    m1: np.ndarray,
    m2: np.ndarray,
    tolerance: float,
    settings: NumericalSettings,
    stats: SolveStats,
) -> np.ndarray:
    """Damped iteration in place; returns the residual norms."""
    err = _residual_norm(coeffs, z, m1, m2)
    damping = np.full(z.shape, settings.damping)
    active = err > tolerance
    window_start = err.copy()
    budget = settings.max_fixed_point_iterations
    window = settings.stall_window

    for iteration in range(1, budget + 1):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        za, a1, a2 = z[idx], m1[idx], m2[idx]
        f1, f2 = coeffs.update(za, a1, a2)
        d = damping[idx]
        # convex combination of upper half-plane points stays in the upper half-plane
        n1 = (1.0 - d) * a1 + d * f1
        n2 = (1.0 - d) * a2 + d * f2
        new_err = _residual_norm(coeffs, za, n1, n2)

        worse = ~(new_err <= err[idx])
        damping[idx] = np.where(
            worse,
            np.maximum(d * 0.5, settings.min_damping),
            np.minimum(d * DAMPING_GROWTH, MAX_DAMPING),
        )
        m1[idx], m2[idx], err[idx] = n1, n2, new_err
        active[idx] = new_err > tolerance
        stats.fixed_point_iterations += 1

        if iteration % window == 0:
            idx = np.flatnonzero(active)
            if idx.size:
                ratio = err[idx] / window_start[idx]
                remaining = budget - iteration
                with np.errstate(divide="ignore", invalid="ignore"):
                    needed = window * np.log(tolerance / err[idx]) / np.log(ratio)
                stalled = ~(ratio < 1.0) | ~(needed <= remaining)
                # stalled points are handed to Newton
                active[idx[stalled]] = False
            window_start = err.copy()
    return err


def _newton(
    coeffs: MdeCoefficients,
    z: np.ndarray,
    m1: np.ndarray,
    m2: np.ndarray,
    err: np.ndarray,
    tolerance: float,
    settings: NumericalSettings,
    stats: SolveStats,
    mask: Optional[np.ndarray] = None,
) -> None:
    """Newton with step halving that keeps Im m > 0 and decreases the residual."""
    active = err > tolerance
    if mask is not None:
        active &= mask
    stats.newton_points += int(active.sum())

    for _ in range(settings.max_newton_iterations):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        za, a1, a2 = z[idx], m1[idx], m2[idx]
        f1, f2 = coeffs.residuals(za, a1, a2)
        j11, j12, j21, j22 = coeffs.jacobian(za, a1, a2)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            det = j11 * j22 - j12 * j21
            d1 = (f1 * j22 - f2 * j12) / det
            d2 = (j11 * f2 - j21 * f1) / det

        current = err[idx]
        step = np.ones(idx.size)
        accepted = np.zeros(idx.size, dtype=bool)
        for _ in range(settings.max_step_halvings):
            pending = np.flatnonzero(~accepted)
            if pending.size == 0:
                break
            t1 = a1[pending] - step[pending] * d1[pending]
            t2 = a2[pending] - step[pending] * d2[pending]
            with np.errstate(invalid="ignore", over="ignore"):
                trial = _residual_norm(coeffs, za[pending], t1, t2)
            ok = (t1.imag > 0.0) & (t2.imag > 0.0) & (trial < current[pending])
            good = pending[ok]
            a1[good], a2[good], current[good] = t1[ok], t2[ok], trial[ok]
            accepted[good] = True
            step[pending[~ok]] *= 0.5

        m1[idx], m2[idx], err[idx] = a1, a2, current
        # points whose step cannot be accepted are left unconverged
        active[idx] = accepted & (current > tolerance)
        stats.newton_iterations += 1


def solve_block(
    coeffs: MdeCoefficients,
    z: np.ndarray,
    m1: np.ndarray,
    m2: np.ndarray,
    tolerance: float,
    settings: NumericalSettings = DEFAULTS,
    newton_first: Optional[np.ndarray] = None,
) -> BlockSolution:
    """
    solve_block

    :param coeffs: MdeCoefficients
    :param z: complex array of spectral points
    :param m1: complex array, starting values (Im > 0)
    :param m2: complex array, starting values (Im > 0)
    :param tolerance: float residual target
    :param settings: NumericalSettings
    :param newton_first: bool array, points that skip the fixed point unless Newton fails
    :return: BlockSolution
    """
    z = np.asarray(z, dtype=complex)
    m1 = np.array(m1, dtype=complex)
    m2 = np.array(m2, dtype=complex)
    stats = SolveStats(points=z.size)
    used_newton = np.zeros(z.shape, dtype=bool)
    if newton_first is not None and newton_first.any():
        err = _residual_norm(coeffs, z, m1, m2)
        used_newton |= newton_first & (err > tolerance)
        _newton(coeffs, z, m1, m2, err, tolerance, settings, stats, mask=newton_first)
    err = _fixed_point(coeffs, z, m1, m2, tolerance, settings, stats)
    if np.any(err > tolerance):
        used_newton |= err > tolerance
        _newton(coeffs, z, m1, m2, err, tolerance, settings, stats)
    r1, r2 = coeffs.residuals(z, m1, m2)
    r1, r2 = np.abs(r1), np.abs(r2)
    converged = (np.maximum(r1, r2) <= tolerance) & (m1.imag > 0) & (m2.imag > 0)
    return BlockSolution(m1, m2, r1, r2, converged, used_newton, stats)


def eta_ladder(
    eta_target: float,
    settings: NumericalSettings = DEFAULTS,
    eta_start: Optional[float] = None,
) -> np.ndarray:
    """
    eta_ladder

    Geometric continuation from eta_max to eta_target: factor eta_factor down to
    eta_min, then edge_eta_factor below it. A ladder entered at eta_start, a level of
    the full ladder, reproduces the remaining levels exactly.

    :param eta_target: float > 0
    :param settings: NumericalSettings
    :param eta_start: float optional first level, defaults to eta_max
    :return: np.ndarray decreasing, last entry eta_target
    """
    levels: List[float] = []
    eta = settings.eta_max if eta_start is None else float(eta_start)
    floor = max(eta_target, settings.eta_min)
    while eta > floor * (1.0 + 1e-12):
        levels.append(eta)
        eta *= settings.eta_factor
    if eta_target < settings.eta_min:
        eta = settings.eta_min if eta_start is None else min(float(eta_start), settings.eta_min)
        while eta > eta_target * (1.0 + 1e-12):
            levels.append(eta)
            eta *= settings.edge_eta_factor
    levels.append(eta_target)
    return np.asarray(levels)


@dataclass(frozen=True)
class WarmStart:
    """Approximate solutions at the ladder level eta, used in place of the levels above it."""

    eta: float
    m1: np.ndarray
    m2: np.ndarray

    def take(self, index: np.ndarray) -> "WarmStart":
        return WarmStart(self.eta, self.m1[index], self.m2[index])


@dataclass
class LadderSolution:
    energies: np.ndarray
    eta: float
    m1: np.ndarray
    m2: np.ndarray
    residual1: np.ndarray
    residual2: np.ndarray
    previous_eta: Optional[float] = None
    previous_m1: Optional[np.ndarray] = None
    previous_m2: Optional[np.ndarray] = None
    stats: SolveStats = field(default_factory=SolveStats)

    def stieltjes(self, params: ModelParams) -> np.ndarray:
        return params.gamma * self.m1 + params.gamma2 * self.m2

    def previous_stieltjes(self, params: ModelParams) -> Optional[np.ndarray]:
        if self.previous_m1 is None:
            return None
        return params.gamma * self.previous_m1 + params.gamma2 * self.previous_m2

    def extrapolated_density(self, params: ModelParams) -> np.ndarray:
        """
        Im s / pi extrapolated linearly in eta to the real axis from the last two levels.

        Outside the support Im s is odd in eta, so the linear term cancels exactly.
        """
        current = self.stieltjes(params).imag / np.pi
        previous = self.previous_stieltjes(params)
        if previous is None:
            return current
        previous = previous.imag / np.pi
        eta1, eta2 = self.eta, self.previous_eta
        return current - eta1 * (previous - current) / (eta2 - eta1)

    def unconverged(self, settings: NumericalSettings) -> np.ndarray:
        bad = np.maximum(self.residual1, self.residual2) > settings.residual_tolerance
        return bad | ~((self.m1.imag > 0) & (self.m2.imag > 0))

    def warm_start(self, energies: np.ndarray, previous: bool = False) -> Optional[WarmStart]:
        """
        warm_start

        Linear interpolation of (m1, m2) in energy, clamped at the ends of this solution.

        :param energies: real array
        :param previous: bool interpolate the second-to-last level instead of the last
        :return: WarmStart, or None when the requested level was not kept
        """
        if previous:
            if self.previous_m1 is None:
                return None
            eta, m1, m2 = self.previous_eta, self.previous_m1, self.previous_m2
        else:
            eta, m1, m2 = self.eta, self.m1, self.m2
        energies = np.asarray(energies, dtype=float)

        def interpolate(values: np.ndarray) -> np.ndarray:
            real = np.interp(energies, self.energies, values.real)
            return real + 1j * np.interp(energies, self.energies, values.imag)

        return WarmStart(float(eta), interpolate(m1), interpolate(m2))

    def splice(self, mask: np.ndarray, other: "LadderSolution") -> None:
        """Overwrite the points in mask with the solutions of other, in order."""
        self.m1[mask], self.m2[mask] = other.m1, other.m2
        self.residual1[mask], self.residual2[mask] = other.residual1, other.residual2
        if self.previous_m1 is not None and other.previous_m1 is not None:
            self.previous_m1[mask] = other.previous_m1
            self.previous_m2[mask] = other.previous_m2
        self.stats.merge(other.stats)


def _climb(
    coeffs: MdeCoefficients,
    energies: np.ndarray,
    levels: np.ndarray,
    m1: np.ndarray,
    m2: np.ndarray,
    final_tolerance: float,
    settings: NumericalSettings,
) -> LadderSolution:
    stats = SolveStats()
    previous: Tuple[Optional[float], Optional[np.ndarray], Optional[np.ndarray]] = (
        None,
        None,
        None,
    )
    block = None
    newton_first = None
    for level, eta in enumerate(levels):
        last = level == len(levels) - 1
        level_tolerance = final_tolerance if last else settings.ladder_tolerance
        if last and len(levels) > 1:
            previous = (float(levels[level - 1]), m1.copy(), m2.copy())
        block = solve_block(
            coeffs, energies + 1j * eta, m1, m2, level_tolerance, settings, newton_first
        )
        stats.merge(block.stats)
        m1, m2 = block.m1, block.m2
        newton_first = block.used_newton
    return LadderSolution(
        energies=energies,
        eta=float(levels[-1]),
        m1=m1,
        m2=m2,
        residual1=block.residual1,
        residual2=block.residual2,
        previous_eta=previous[0],
        previous_m1=previous[1],
        previous_m2=previous[2],
        stats=stats,
    )


def solve_ladder(
    coeffs: MdeCoefficients,
    energies: np.ndarray,
    eta_target: float,
    settings: NumericalSettings = DEFAULTS,
    tolerance: Optional[float] = None,
    start: Optional[WarmStart] = None,
) -> LadderSolution:
    """
    solve_ladder

    :param coeffs: MdeCoefficients
    :param energies: real array
    :param eta_target: float final imaginary part
    :param settings: NumericalSettings
    :param tolerance: float final-level residual target, defaults to residual_tolerance
    :param start: WarmStart optional; points it fails to carry are re-solved from eta_max
    :return: LadderSolution
    """
    energies = np.asarray(energies, dtype=float)
    final_tolerance = settings.residual_tolerance if tolerance is None else tolerance
    if start is None:
        levels = eta_ladder(eta_target, settings)
        m1 = np.full(energies.shape, 1j)
        m2 = np.full(energies.shape, 1j)
    else:
        levels = eta_ladder(eta_target, settings, eta_start=start.eta)
        m1 = np.array(start.m1, dtype=complex)
        m2 = np.array(start.m2, dtype=complex)
        lost = ~((m1.imag > 0) & (m2.imag > 0))
        m1[lost], m2[lost] = 1j, 1j

    solution = _climb(coeffs, energies, levels, m1, m2, final_tolerance, settings)
    bad = solution.unconverged(settings)
    if bad.any() and start is not None:
        log.debug(f"Warm start missed {int(bad.sum())} points, solving them from eta_max")
        solution.splice(bad, solve_ladder(coeffs, energies[bad], eta_target, settings, tolerance))
        bad = solution.unconverged(settings)

    if bad.any():
        residual = np.maximum(solution.residual1, solution.residual2)
        worst = np.sort(residual[bad])[::-1][:3]
        raise SolverConvergenceError(
            f"Dyson equation did not converge at {int(bad.sum())} of {energies.size} "
            f"points (eta={eta_target:.1e})",
            residuals=worst,
        )
    return solution


def solve_energies(
    coeffs: MdeCoefficients,
    energies: np.ndarray,
    eta_target: float,
    settings: NumericalSettings = DEFAULTS,
    tolerance: Optional[float] = None,
    start: Optional[WarmStart] = None,
) -> LadderSolution:
    """
    solve_energies

    Splits the energies into contiguous blocks, one independent warm-start chain
    per block, capped by settings.threads. Every point is solved independently of
    the block layout, so the result does not depend on the thread count.

    :param start: WarmStart optional, aligned with energies
    :return: LadderSolution
    """
    energies = np.asarray(energies, dtype=float)
    workers = max(1, min(settings.threads, energies.size))
    if workers == 1:
        solution = solve_ladder(coeffs, energies, eta_target, settings, tolerance, start)
    else:
        chunks = np.array_split(np.arange(energies.size), workers)

        def run(index: np.ndarray) -> LadderSolution:
            part_start = None if start is None else start.take(index)
            return solve_ladder(coeffs, energies[index], eta_target, settings, tolerance, part_start)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
        stats = SolveStats()
        for part in parts:
            stats.merge(part.stats)
        first = parts[0]
        solution = LadderSolution(
            energies=energies,
            eta=first.eta,
            m1=np.concatenate([p.m1 for p in parts]),
            m2=np.concatenate([p.m2 for p in parts]),
            residual1=np.concatenate([p.residual1 for p in parts]),
            residual2=np.concatenate([p.residual2 for p in parts]),
            previous_eta=first.previous_eta,
            previous_m1=None
            if first.previous_m1 is None
            else np.concatenate([p.previous_m1 for p in parts]),
            previous_m2=None
            if first.previous_m2 is None
            else np.concatenate([p.previous_m2 for p in parts]),
            stats=stats,
        )
    check_residuals(
        f"eta={eta_target:.1e}",
        float(solution.residual1.max(initial=0.0)),
        float(solution.residual2.max(initial=0.0)),
        settings.residual_tolerance,
    )
    log.parameter("Dyson solver points", solution.stats.points)
    log.parameter("Fixed point iterations", solution.stats.fixed_point_iterations)
    log.parameter("Newton fallback points", solution.stats.newton_points)
    return solution


def solve_point(
    params: ModelParams,
    u: FieldPoint,
    z: complex,
    warm_start: Optional[StieltjesPair] = None,
    settings: NumericalSettings = DEFAULTS,
) -> StieltjesPair:
    """
    solve_point

    :param params: ModelParams
    :param u: FieldPoint
    :param z: complex with Im z > 0
    :param warm_start: StieltjesPair optional starting values
    :param settings: NumericalSettings
    :return: StieltjesPair
    """
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)) or z.imag <= 0.0:
        raise InvalidSpectralPointError(f"spectral point must satisfy Im z > 0, got {z}")
    coeffs = MdeCoefficients.from_params(params, u)
    tolerance = settings.residual_tolerance

    if warm_start is not None and warm_start.m1.imag > 0 and warm_start.m2.imag > 0:
        block = solve_block(
            coeffs,
            np.array([z]),
            np.array([warm_start.m1]),
            np.array([warm_start.m2]),
            tolerance,
            settings,
        )
        if block.converged[0]:
            return _pair(z, block.m1[0], block.m2[0], block.residual1[0], block.residual2[0])
        log.debug("Warm start failed, falling back to eta continuation")

    if z.imag >= settings.eta_max:
        block = solve_block(
            coeffs, np.array([z]), np.array([1j]), np.array([1j]), tolerance, settings
        )
        if not block.converged[0]:
            raise SolverConvergenceError(
                f"Dyson equation did not converge at z={z}",
                residuals=(block.residual1[0], block.residual2[0]),
            )
        return _pair(z, block.m1[0], block.m2[0], block.residual1[0], block.residual2[0])

    solution = solve_ladder(coeffs, np.array([z.real]), z.imag, settings)
    return _pair(
        z, solution.m1[0], solution.m2[0], solution.residual1[0], solution.residual2[0]
    )


def _pair(z: complex, m1: complex, m2: complex, r1: float, r2: float) -> StieltjesPair:
    check_upper_half_plane(f"z={z}", m1, m2)
    return StieltjesPair(
        z=complex(z),
        m1=complex(m1),
        m2=complex(m2),
        residual1=float(r1),
        residual2=float(r2),
    )
