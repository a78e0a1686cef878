"""
Complexity curves of pure models with gamma = p/(p+q)

These depend on p and q only through s = p + q.

Example Usage:
==============
>>> round(sigma_pq(0.0, 4), 6)
0.549306
>>> round(e_inf_closed(4), 6)
1.732051
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

from scipy.optimize import bisect

from bsgcomplexity.closed_form.omega import omega
from bsgcomplexity.error import BracketingError, ConfigurationError
from bsgcomplexity.logger import Logger as log

MIN_DEGREE_SUM = 4
E0_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PureSumSpec:
    """s = p + q; values below 4 need unchecked=True."""

    s: int
    unchecked: bool = False

    def __post_init__(self):
        if not self.unchecked and self.s < MIN_DEGREE_SUM:
            raise ConfigurationError(
                f"p+q must be >= {MIN_DEGREE_SUM}, got {self.s} (pass unchecked=True to override)"
            )
        if self.s < 2:
            raise ConfigurationError(f"p+q must be >= 2, got {self.s}")


SumLike = Union[int, PureSumSpec]


def _as_spec(s: SumLike) -> PureSumSpec:
    return s if isinstance(s, PureSumSpec) else PureSumSpec(int(s))


def _degree_sum(s: SumLike) -> int:
    return _as_spec(s).s


def e_inf_closed(s: SumLike) -> float:
    """
    e_inf_closed

    :param s: p + q
    :return: float 2*sqrt((s-1)/s)
    """
    n = _degree_sum(s)
    return 2.0 * math.sqrt((n - 1) / n)


def semicircle_log_potential_scaled(u0: float, s: SumLike) -> float:
    """
    semicircle_log_potential_scaled

    The complexity functional at (u0, 0, 0): the log-potential of the semicircle of
    variance (s-1)*s centred at -s*u0, minus u0^2/2.

    :param u0: float
    :param s: p + q
    :return: float
    """
    n = _degree_sum(s)
    return 0.5 * math.log((n - 1) * n) + omega(u0 * math.sqrt(n / (n - 1))) - 0.5 * u0 * u0


def sigma_pq(t: float, s: SumLike) -> float:
    """
    sigma_pq

    :param t: float energy threshold
    :param s: p + q
    :return: float total complexity below t
    """
    n = _degree_sum(s)
    if t >= 0.0:
        return 0.5 * math.log(n - 1)
    return 0.5 * (1.0 + math.log(n - 1)) + omega(t * math.sqrt(n / (n - 1))) - 0.5 * t * t


def sigma_pq_min(t: float, s: SumLike) -> float:
    """
    sigma_pq_min

    :param t: float
    :param s: p + q
    :return: float complexity of local minima below t
    """
    return sigma_pq(min(t, -e_inf_closed(s)), s)


def sigma_pq_total(s: SumLike) -> float:
    return 0.5 * math.log(_degree_sum(s) - 1)


def sigma_pq_min_total(s: SumLike) -> float:
    n = _degree_sum(s)
    return 0.5 * math.log(n - 1) + 2.0 / n - 1.0


def e0_bounds(s: SumLike) -> Tuple[float, float]:
    """
    e0_bounds

    Crude bracket for the zero of sigma_pq from 0 <= omega(x) <= |x|.

    :param s: p + q
    :return: (lower, upper)
    """
    n = _degree_sum(s)
    slope = math.sqrt(n / (n - 1))
    level = 0.5 * (1.0 + math.log(n - 1))
    return -slope - math.sqrt(slope * slope + 2.0 * level), -math.sqrt(2.0 * level)


def e0_closed(s: SumLike) -> float:
    """
    e0_closed

    :param s: p + q
    :return: float the zero of sigma_pq(., s) on (-inf, 0)
    """
    spec = _as_spec(s)
    n = spec.s
    lower, upper = e0_bounds(spec)
    lo, hi = lower - 1.0, min(upper + 1.0, 0.0)
    f_lo, f_hi = sigma_pq(lo, spec), sigma_pq(hi, spec)
    if not (f_lo < 0.0 < f_hi):
        raise BracketingError(
            f"cannot bracket the zero of sigma_pq for s={n}: "
            f"sigma({lo:.6f})={f_lo:.6e}, sigma({hi:.6f})={f_hi:.6e}"
        )
    root = bisect(sigma_pq, lo, hi, args=(spec,), xtol=E0_TOLERANCE)
    log.parameter("Closed-form ground state bound", root)
    return float(root)
