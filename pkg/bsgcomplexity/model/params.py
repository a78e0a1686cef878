"""
Derived model scalars

xi_i' and xi_i'' are the first and second partial derivatives of xi at (1, 1),
alpha_i^2 = xi_i'' + xi_i' - xi_i'^2.

Example Usage:
==============
>>> from bsgcomplexity.model.parse import parse_mixture
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> params.xi1_prime, params.alpha1
(2.0, 0.0)
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from bsgcomplexity.error import ModelValidationError, UnsupportedModelError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.model.mixture import MixtureSpec


@dataclass(frozen=True)
class ModelParams:
    """Immutable, hashable; safe to share between threads and to use as a cache key."""

    gamma: float
    xi1_prime: float
    xi2_prime: float
    xi1_dprime: float
    xi2_dprime: float
    alpha1: float
    alpha2: float
    pure: bool
    pure_degrees: Optional[Tuple[int, int]]
    nondegenerate: bool

    @property
    def gamma2(self) -> float:
        return 1.0 - self.gamma

    @property
    def degree_sum(self) -> Optional[int]:
        if self.pure_degrees is None:
            return None
        return sum(self.pure_degrees)

    @property
    def is_balanced(self) -> bool:
        """Pure model with gamma = p/(p+q), where closed forms exist."""
        if self.pure_degrees is None:
            return False
        p, q = self.pure_degrees
        return math.isclose(self.gamma, p / (p + q), rel_tol=0.0, abs_tol=1e-12)

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "xi1_prime": self.xi1_prime,
            "xi2_prime": self.xi2_prime,
            "xi1_dprime": self.xi1_dprime,
            "xi2_dprime": self.xi2_dprime,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "pure": self.pure,
            "pure_degrees": list(self.pure_degrees) if self.pure_degrees else None,
            "nondegenerate": self.nondegenerate,
        }


def derive_params(
    spec: MixtureSpec, gamma: float, allow_degenerate: bool = False
) -> ModelParams:
    """
    derive_params

    :param spec: MixtureSpec
    :param gamma: float in (0, 1)
    :param allow_degenerate: bool return params with xi_i'' = 0 instead of raising
    :return: ModelParams
    """
    if not (0.0 < gamma < 1.0) or not math.isfinite(gamma):
        raise ModelValidationError(f"gamma must lie in (0, 1), got {gamma!r}")

    total = spec.total_weight
    xi1_prime = xi2_prime = xi1_dprime = xi2_dprime = 0.0
    for term in spec.terms:
        # weights renormalized so rounding in the written betas cannot make alpha^2 < 0
        weight = term.weight / total
        xi1_prime += weight * term.p
        xi2_prime += weight * term.q
        xi1_dprime += weight * term.p * (term.p - 1)
        xi2_dprime += weight * term.q * (term.q - 1)

    pure = spec.is_pure
    if pure:
        alpha1 = alpha2 = 0.0
    else:
        alpha1 = math.sqrt(max(xi1_dprime + xi1_prime - xi1_prime**2, 0.0))
        alpha2 = math.sqrt(max(xi2_dprime + xi2_prime - xi2_prime**2, 0.0))

    nondegenerate = xi1_dprime > 0.0 and xi2_dprime > 0.0
    if not nondegenerate and not allow_degenerate:
        raise UnsupportedModelError(
            f"model requires xi1'' > 0 and xi2'' > 0 (got {xi1_dprime:g}, "
            f"{xi2_dprime:g}); pure (1,q) and (p,1) models are not supported"
        )

    params = ModelParams(
        gamma=float(gamma),
        xi1_prime=xi1_prime,
        xi2_prime=xi2_prime,
        xi1_dprime=xi1_dprime,
        xi2_dprime=xi2_dprime,
        alpha1=alpha1,
        alpha2=alpha2,
        pure=pure,
        pure_degrees=spec.pure_degrees,
        nondegenerate=nondegenerate,
    )
    log.parameter("Derived model parameters", params.to_dict())
    return params


def prefactor_limit(params: ModelParams) -> float:
    """
    prefactor_limit

    Large-N limit of (1/N) log of the Kac-Rice prefactor.

    :param params: ModelParams
    :return: float
    """
    gamma, gamma2 = params.gamma, params.gamma2
    return (
        1.0
        + gamma * math.log(gamma / params.xi1_prime)
        + gamma2 * math.log(gamma2 / params.xi2_prime)
    ) / 2.0
