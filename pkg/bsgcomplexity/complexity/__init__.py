"""Complexity functional, variational problems and energy thresholds."""

from bsgcomplexity.complexity.functional import in_g, log_potential_of, s_bsg
from bsgcomplexity.complexity.ground_state import ground_state_bound, ground_state_report
from bsgcomplexity.complexity.log_potential import log_potential
from bsgcomplexity.complexity.result import ComplexityMode, ComplexityResult
from bsgcomplexity.complexity.sigma import clear_caches, sigma_min, sigma_total
from bsgcomplexity.complexity.thresholds import e_infinity, e_infinity_report

__all__ = [
    "log_potential",
    "log_potential_of",
    "s_bsg",
    "in_g",
    "ComplexityMode",
    "ComplexityResult",
    "sigma_total",
    "sigma_min",
    "e_infinity",
    "e_infinity_report",
    "ground_state_bound",
    "ground_state_report",
    "clear_caches",
]
