"""
Determinant asymptotics at finite N

mc_log_determinant estimates E[(1/(N-2)) log|det H_N(u)|] by Monte Carlo;
finite_n_prefactor_log is (1/N) log of the Kac-Rice prefactor, evaluated with
log-Gamma so that it stays finite for every admissible N.

Example Usage:
==============
>>> from bsgcomplexity.model import derive_params, parse_mixture
>>> from bsgcomplexity.rmt.dims import admissible_dims
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> value = finite_n_prefactor_log(admissible_dims(0.5, 10002), params)
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Tuple

import numpy as np
from scipy.special import gammaln

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import ConfigurationError, SingularSampleError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams
from bsgcomplexity.rmt.dims import BlockDims
from bsgcomplexity.rmt.sample import sample_h, sample_seeds
from bsgcomplexity.rmt.spectrum import spectrum

SINGULAR_THRESHOLD = 1e-300
MAX_ATTEMPTS = 2


def log_abs_det_rate(
    params: ModelParams, dims: BlockDims, u: FieldPoint, seed: int
) -> float:
    """
    log_abs_det_rate

    :param params: ModelParams
    :param dims: BlockDims
    :param u: FieldPoint
    :param seed: int
    :return: float (1/(N-2)) sum log|lambda_i| of one sample, resampled once if singular
    """
    for attempt in range(MAX_ATTEMPTS):
        eigenvalues = spectrum(sample_h(params, dims, u, seed, attempt)).eigenvalues
        if np.min(np.abs(eigenvalues)) >= SINGULAR_THRESHOLD:
            return float(np.mean(np.log(np.abs(eigenvalues))))
        log.warning(f"Sample with seed {seed} is singular, resampling (attempt {attempt + 1})")
    raise SingularSampleError(f"sample with seed {seed} singular after {MAX_ATTEMPTS} attempts")


def mc_log_determinant(
    params: ModelParams,
    dims: BlockDims,
    u: FieldPoint,
    samples: int,
    seed: int,
    settings: NumericalSettings = DEFAULTS,
) -> Tuple[float, float]:
    """
    mc_log_determinant

    :param params: ModelParams
    :param dims: BlockDims
    :param u: FieldPoint
    :param samples: int >= 1
    :param seed: int
    :param settings: NumericalSettings
    :return: (mean, standard error); the standard error is 0.0 for a single sample
    """
    if samples < 1:
        raise ConfigurationError(f"samples must be >= 1, got {samples}")
    seeds = sample_seeds(seed, samples)
    with ThreadPoolExecutor(max_workers=min(settings.threads, samples)) as pool:
        rates = np.array(list(pool.map(lambda s: log_abs_det_rate(params, dims, u, s), seeds)))
    mean = float(rates.mean())
    std_error = float(rates.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    log.parameter("MC log|det| rate", mean)
    log.parameter("MC standard error", std_error)
    return mean, std_error


def finite_n_prefactor_log(dims: BlockDims, params: ModelParams) -> float:
    """
    finite_n_prefactor_log

    :param dims: BlockDims
    :param params: ModelParams
    :return: float (1/N) log f(N1, N2)
    """
    N, N1, N2 = float(dims.N), float(dims.N1), float(dims.N2)
    sphere1 = np.log(2.0) + 0.5 * N1 * np.log(np.pi * N1) - gammaln(0.5 * N1)
    sphere2 = np.log(2.0) + 0.5 * N2 * np.log(np.pi * N2) - gammaln(0.5 * N2)
    gaussian = 1.5 * np.log(N / (2.0 * np.pi))
    covariance = 0.5 * (
        (N - 2.0) * np.log(2.0 * np.pi * N)
        + (N1 - 1.0) * np.log(params.xi1_prime / N1)
        + (N2 - 1.0) * np.log(params.xi2_prime / N2)
    )
    return float((sphere1 + sphere2 + gaussian - covariance) / N)
