"""Extreme eigenvalues against the predicted support edges"""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.mde.edges import support_edges
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams
from bsgcomplexity.rmt.dims import BlockDims
from bsgcomplexity.rmt.spectrum import sample_spectra

EDGE_BAND = 0.15


@dataclass
class EdgeReport:
    left_edge: float
    right_edge: float
    tolerance: float
    lambda_min: List[float] = field(default_factory=list)
    lambda_max: List[float] = field(default_factory=list)

    @property
    def min_deviation(self) -> float:
        return float(np.max(np.abs(np.asarray(self.lambda_min) - self.left_edge)))

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(np.asarray(self.lambda_max) - self.right_edge)))

    @property
    def fraction_within(self) -> float:
        """Share of samples with both extremes inside the band."""
        lows = np.abs(np.asarray(self.lambda_min) - self.left_edge) <= self.tolerance
        highs = np.abs(np.asarray(self.lambda_max) - self.right_edge) <= self.tolerance
        return float(np.mean(lows & highs))

    @property
    def passed(self) -> bool:
        return self.fraction_within == 1.0

    def to_dict(self) -> dict:
        return {
            "left_edge": self.left_edge,
            "right_edge": self.right_edge,
            "tolerance": self.tolerance,
            "lambda_min": list(self.lambda_min),
            "lambda_max": list(self.lambda_max),
            "fraction_within": self.fraction_within,
        }


def edge_check(
    params: ModelParams,
    dims: BlockDims,
    u: FieldPoint,
    samples: int,
    seed: int,
    tolerance: float = EDGE_BAND,
    settings: NumericalSettings = DEFAULTS,
) -> EdgeReport:
    """
    edge_check

    :param params: ModelParams
    :param dims: BlockDims
    :param u: FieldPoint
    :param samples: int >= 1
    :param seed: int
    :param tolerance: float band around each predicted edge
    :param settings: NumericalSettings
    :return: EdgeReport
    """
    left, right = support_edges(params, u, settings)
    spectra = sample_spectra(params, dims, u, samples, seed, settings)
    return EdgeReport(
        left_edge=left,
        right_edge=right,
        tolerance=tolerance,
        lambda_min=[item.lambda_min for item in spectra],
        lambda_max=[item.lambda_max for item in spectra],
    )
