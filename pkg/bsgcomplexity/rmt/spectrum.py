"""Empirical spectra of sampled Hessians"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import ConfigurationError, EigensolverError
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams
from bsgcomplexity.rmt.dims import BlockDims
from bsgcomplexity.rmt.sample import sample_h, sample_seeds

SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class EmpiricalSpectrum:
    eigenvalues: np.ndarray

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def size(self) -> int:
        return int(self.eigenvalues.size)

    def operator_norm(self) -> float:
        return max(abs(self.lambda_min), abs(self.lambda_max))

    def reflect(self) -> "EmpiricalSpectrum":
        return EmpiricalSpectrum(-self.eigenvalues[::-1])


def spectrum(matrix: np.ndarray) -> EmpiricalSpectrum:
    """
    spectrum

    :param matrix: symmetric real matrix
    :return: EmpiricalSpectrum sorted ascending
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise ConfigurationError(f"expected a non-empty square matrix, got shape {matrix.shape}")
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * scale:
        raise ConfigurationError("matrix is not symmetric")
    try:
        eigenvalues = np.linalg.eigvalsh(matrix)
    except np.linalg.LinAlgError as ex:
        raise EigensolverError(f"symmetric eigensolver failed: {ex}") from ex
    if not np.all(np.isfinite(eigenvalues)):
        raise EigensolverError("symmetric eigensolver returned non-finite eigenvalues")
    return EmpiricalSpectrum(np.sort(eigenvalues))


def eigenvalue_frame(spectra: Sequence[EmpiricalSpectrum], labels: Sequence[str]) -> pd.DataFrame:
    """
    eigenvalue_frame

    :param spectra: spectra to dump
    :param labels: one label per spectrum
    :return: long-format frame (label, index, lambda)
    """
    frames = [
        pd.DataFrame({"label": label, "index": np.arange(item.size), "lambda": item.eigenvalues})
        for label, item in zip(labels, spectra)
    ]
    return pd.concat(frames, ignore_index=True)


def write_eigenvalues(
    spectra: Sequence[EmpiricalSpectrum], labels: Sequence[str], path: Union[str, Path]
) -> Path:
    path = Path(path)
    text = eigenvalue_frame(spectra, labels).to_csv(
        index=False, lineterminator="\n", float_format="%.17g"
    )
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def sample_spectra(
    params: ModelParams,
    dims: BlockDims,
    u: FieldPoint,
    samples: int,
    seed: int,
    settings: NumericalSettings = DEFAULTS,
) -> List[EmpiricalSpectrum]:
    """
    sample_spectra

    :param params: ModelParams
    :param dims: BlockDims
    :param u: FieldPoint
    :param samples: int >= 1
    :param seed: int
    :param settings: NumericalSettings, threads caps the worker pool
    :return: spectra of H_N(u), in seed order
    """
    if samples < 1:
        raise ConfigurationError(f"samples must be >= 1, got {samples}")

    def one(sample_seed: int) -> EmpiricalSpectrum:
        return spectrum(sample_h(params, dims, u, sample_seed))

    with ThreadPoolExecutor(max_workers=min(settings.threads, samples)) as pool:
        return list(pool.map(one, sample_seeds(seed, samples)))
