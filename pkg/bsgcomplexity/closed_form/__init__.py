"""Explicit formulas for pure models with gamma = p/(p+q)."""

from bsgcomplexity.closed_form.omega import omega
from bsgcomplexity.closed_form.sigma_pq import (
    PureSumSpec,
    e0_bounds,
    e0_closed,
    e_inf_closed,
    semicircle_log_potential_scaled,
    sigma_pq,
    sigma_pq_min,
    sigma_pq_min_total,
    sigma_pq_total,
)

__all__ = [
    "omega",
    "PureSumSpec",
    "sigma_pq",
    "sigma_pq_min",
    "sigma_pq_total",
    "sigma_pq_min_total",
    "e_inf_closed",
    "e0_closed",
    "e0_bounds",
    "semicircle_log_potential_scaled",
]
