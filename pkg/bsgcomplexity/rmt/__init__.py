"""Finite-N Hessian sampling and Monte Carlo checks against the limiting theory."""

from bsgcomplexity.rmt.determinant import finite_n_prefactor_log, mc_log_determinant
from bsgcomplexity.rmt.dims import BlockDims, admissible_dims
from bsgcomplexity.rmt.distance import (
    bl_distance,
    kolmogorov_distance,
    operator_norm_difference,
    w1_distance,
)
from bsgcomplexity.rmt.edges import EdgeReport, edge_check
from bsgcomplexity.rmt.sample import sample_h, sample_h_prime, stability_operator_norm
from bsgcomplexity.rmt.spectrum import EmpiricalSpectrum, spectrum, write_eigenvalues
from bsgcomplexity.rmt.verify import CheckResult, VerificationReport, run_verification

__all__ = [
    "BlockDims",
    "admissible_dims",
    "sample_h",
    "sample_h_prime",
    "stability_operator_norm",
    "EmpiricalSpectrum",
    "spectrum",
    "write_eigenvalues",
    "w1_distance",
    "bl_distance",
    "kolmogorov_distance",
    "operator_norm_difference",
    "mc_log_determinant",
    "finite_n_prefactor_log",
    "EdgeReport",
    "edge_check",
    "CheckResult",
    "VerificationReport",
    "run_verification",
]
