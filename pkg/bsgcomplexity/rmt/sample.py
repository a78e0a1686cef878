"""
Finite-N Hessian ensembles

H_N(u) = A_N(u) + W_N and H'_N(u) = A'_N(u) + T_N * W_N (entrywise), both of size
N - 2. The two are built from the same Gaussian draws for equal seeds. Each seed
feeds a Philox counter-based generator through SeedSequence([seed, attempt]);
normals come from numpy's standard ziggurat sampler.

GOE blocks are assembled explicitly from their upper triangle so that
E[M_ij^2] = (1 + delta_ij)/(N_i - 1) holds exactly.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from bsgcomplexity.error import DimensionMismatchError, UnsupportedModelError
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams
from bsgcomplexity.rmt.dims import BlockDims


def generator(seed: int, attempt: int = 0) -> np.random.Generator:
    """
    generator

    :param seed: int
    :param attempt: int resample counter
    :return: np.random.Generator backed by Philox
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(attempt)])))


@dataclass(frozen=True)
class NoiseDraw:
    goe1: np.ndarray
    goe2: np.ndarray
    cross: np.ndarray


def goe(size: int, rng: np.random.Generator) -> np.ndarray:
    """
    goe

    :param size: int
    :param rng: np.random.Generator
    :return: symmetric matrix, off-diagonal variance 1/size, diagonal 2/size
    """
    gaussian = rng.standard_normal((size, size))
    upper = np.triu(gaussian, k=1) / np.sqrt(size)
    matrix = upper + upper.T
    matrix[np.diag_indices(size)] = np.diag(gaussian) * np.sqrt(2.0 / size)
    return matrix


def _draw_noise(dims: BlockDims, rng: np.random.Generator) -> NoiseDraw:
    return NoiseDraw(
        goe1=goe(dims.n1, rng),
        goe2=goe(dims.n2, rng),
        cross=rng.standard_normal((dims.n1, dims.n2)),
    )


def _check(params: ModelParams, dims: BlockDims) -> None:
    if dims.gamma != params.gamma:
        raise DimensionMismatchError(
            f"dimensions built for gamma={dims.gamma!r}, model has gamma={params.gamma!r}"
        )
    if not params.nondegenerate:
        raise UnsupportedModelError("sampling requires xi1'' > 0 and xi2'' > 0")


def noise_matrix(params: ModelParams, dims: BlockDims, noise: NoiseDraw) -> np.ndarray:
    """W_N assembled block by block."""
    N, N1, N2 = dims.N, dims.N1, dims.N2
    g1 = np.sqrt(N * dims.n1 * params.xi1_dprime / N1**2) * noise.goe1
    g2 = np.sqrt(N * dims.n2 * params.xi2_dprime / N2**2) * noise.goe2
    g = np.sqrt(N * params.xi1_prime * params.xi2_prime / (N1 * N2)) * noise.cross
    return np.block([[g1, g], [g.T, g2]])


def shift_diagonal(params: ModelParams, dims: BlockDims, u: FieldPoint) -> np.ndarray:
    """Diagonal of A_N(u)."""
    a1 = dims.N / dims.N1 * (params.alpha1 * u.u1 - params.xi1_prime * u.u0)
    a2 = dims.N / dims.N2 * (params.alpha2 * u.u2 - params.xi2_prime * u.u0)
    return np.concatenate((np.full(dims.n1, a1), np.full(dims.n2, a2)))


def limit_shift_diagonal(params: ModelParams, dims: BlockDims, u: FieldPoint) -> np.ndarray:
    """Diagonal of A'_N(u)."""
    a1 = (params.alpha1 * u.u1 - params.xi1_prime * u.u0) / params.gamma
    a2 = (params.alpha2 * u.u2 - params.xi2_prime * u.u0) / params.gamma2
    return np.concatenate((np.full(dims.n1, a1), np.full(dims.n2, a2)))


def variance_factor(params: ModelParams, dims: BlockDims) -> np.ndarray:
    """T_N: entrywise factor turning the variance profile of W_N into that of W'_N."""
    N, N1, N2 = dims.N, dims.N1, dims.N2
    gamma1, gamma2 = params.gamma, params.gamma2
    t11 = np.full((dims.n1, dims.n1), np.sqrt(N1**2 / (gamma1**2 * N * (N - 2))))
    t11[np.diag_indices(dims.n1)] = np.sqrt(N1**2 / (2.0 * gamma1**2 * N * (N - 2)))
    t22 = np.full((dims.n2, dims.n2), np.sqrt(N2**2 / (gamma2**2 * N * (N - 2))))
    t22[np.diag_indices(dims.n2)] = np.sqrt(N2**2 / (2.0 * gamma2**2 * N * (N - 2)))
    t12 = np.full((dims.n1, dims.n2), np.sqrt(N1 * N2 / (gamma1 * N * (N2 - 1))))
    return np.block([[t11, t12], [t12.T, t22]])


def sample_h(
    params: ModelParams, dims: BlockDims, u: FieldPoint, seed: int, attempt: int = 0
) -> np.ndarray:
    """
    sample_h

    :param params: ModelParams
    :param dims: BlockDims
    :param u: FieldPoint
    :param seed: int
    :param attempt: int
    :return: symmetric (N-2) x (N-2) matrix H_N(u)
    """
    _check(params, dims)
    noise = _draw_noise(dims, generator(seed, attempt))
    matrix = noise_matrix(params, dims, noise)
    matrix[np.diag_indices(dims.size)] += shift_diagonal(params, dims, u)
    return matrix


def sample_h_prime(
    params: ModelParams, dims: BlockDims, u: FieldPoint, seed: int, attempt: int = 0
) -> np.ndarray:
    """
    sample_h_prime

    :param params: ModelParams
    :param dims: BlockDims
    :param u: FieldPoint
    :param seed: int, same seed as sample_h gives the coupled matrix
    :param attempt: int
    :return: symmetric (N-2) x (N-2) matrix H'_N(u)
    """
    _check(params, dims)
    noise = _draw_noise(dims, generator(seed, attempt))
    matrix = variance_factor(params, dims) * noise_matrix(params, dims, noise)
    matrix[np.diag_indices(dims.size)] += limit_shift_diagonal(params, dims, u)
    return matrix


def sample_pair(
    params: ModelParams, dims: BlockDims, u: FieldPoint, seed: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Coupled (H_N(u), H'_N(u)) from one draw."""
    _check(params, dims)
    noise = _draw_noise(dims, generator(seed))
    w = noise_matrix(params, dims, noise)
    h = w.copy()
    h[np.diag_indices(dims.size)] += shift_diagonal(params, dims, u)
    h_prime = variance_factor(params, dims) * w
    h_prime[np.diag_indices(dims.size)] += limit_shift_diagonal(params, dims, u)
    return h, h_prime


def variance_profile(params: ModelParams, dims: BlockDims) -> np.ndarray:
    """
    variance_profile

    :param params: ModelParams
    :param dims: BlockDims
    :return: matrix of E[W_jk^2]
    """
    N, N1, N2 = dims.N, dims.N1, dims.N2
    s11 = np.full((dims.n1, dims.n1), N * params.xi1_dprime / N1**2)
    s11[np.diag_indices(dims.n1)] *= 2.0
    s22 = np.full((dims.n2, dims.n2), N * params.xi2_dprime / N2**2)
    s22[np.diag_indices(dims.n2)] *= 2.0
    s12 = np.full((dims.n1, dims.n2), N * params.xi1_prime * params.xi2_prime / (N1 * N2))
    return np.block([[s11, s12], [s12.T, s22]])


def stability_operator_norm(params: ModelParams, dims: BlockDims) -> Tuple[float, float]:
    """
    stability_operator_norm

    Row-sum norms of the self-energy operators of W_N and of T_N * W_N.

    :param params: ModelParams
    :param dims: BlockDims
    :return: (norm of S_N, norm of S'_N)
    """
    profile = variance_profile(params, dims)
    limit_profile = variance_factor(params, dims) ** 2 * profile
    return float(profile.sum(axis=1).max()), float(limit_profile.sum(axis=1).max())


def sample_seeds(seed: int, samples: int) -> List[int]:
    """
    sample_seeds

    :param seed: int base seed
    :param samples: int
    :return: one independent 32-bit seed per sample
    """
    return [int(value) for value in np.random.SeedSequence(int(seed)).generate_state(samples)]


def field_seed(seed: int, index: int) -> int:
    """
    field_seed

    Base seed for the index-th field point of a run, so that field points never share
    Gaussian draws.

    :param seed: int run seed
    :param index: int position of the field point
    :return: int
    """
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])
