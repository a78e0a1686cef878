"""
Monte Carlo verification suite

Every check compares a finite-N statistic with its limiting oracle:

* ESD distance: W1 between each sampled spectrum and the MDE density
* extreme eigenvalues against the detected support edges
* operator-norm coupling of H_N(u) and H'_N(u)
* the Kac-Rice prefactor against its N -> infinity limit
* Monte Carlo log|det| against the log-potential of the limiting density

Example Usage:
==============
>>> from bsgcomplexity.model import derive_params, parse_mixture
>>> params = derive_params(parse_mixture("pure 2 2"), 0.5)
>>> report = run_verification(params, N=1002, samples=5, seed=7)
>>> failed = report.failed
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from bsgcomplexity.complexity.functional import log_potential_of
from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.density import density
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model.params import ModelParams, prefactor_limit
from bsgcomplexity.rmt.determinant import finite_n_prefactor_log, mc_log_determinant
from bsgcomplexity.rmt.dims import BlockDims, admissible_dims
from bsgcomplexity.rmt.distance import operator_norm_difference, w1_distance
from bsgcomplexity.rmt.edges import EDGE_BAND
from bsgcomplexity.rmt.sample import field_seed, sample_pair, sample_seeds
from bsgcomplexity.rmt.spectrum import EmpiricalSpectrum, spectrum

DEFAULT_FIELDS = (FieldPoint(), FieldPoint(-2.5))
ESD_TOLERANCE = 0.10
COUPLING_TOLERANCE = 0.5
LOG_DET_TOLERANCE = 0.05
LOG_DET_SINGULAR_TOLERANCE = 0.08


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    oracle: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "oracle": self.oracle,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class VerificationReport:
    dims: BlockDims
    samples: int
    seed: int
    checks: List[CheckResult] = field(default_factory=list)
    spectra: List[EmpiricalSpectrum] = field(default_factory=list, repr=False)
    labels: List[str] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[str]:
        return [check.name for check in self.checks if not check.passed]

    def add(self, name: str, value: float, oracle: float, tolerance: float, passed: bool) -> None:
        self.checks.append(CheckResult(name, float(value), float(oracle), float(tolerance), bool(passed)))

    def to_dict(self) -> dict:
        return {
            "dims": self.dims.to_dict(),
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def _label(u: FieldPoint) -> str:
    return "u=(" + ",".join(f"{value:g}" for value in u.as_tuple()) + ")"


def _field_checks(
    report: VerificationReport,
    params: ModelParams,
    u: FieldPoint,
    index: int,
    settings: NumericalSettings,
) -> None:
    dims, label = report.dims, _label(u)
    seed = field_seed(report.seed, index)
    limit = density(params, u, settings=settings)
    pairs = [sample_pair(params, dims, u, s) for s in sample_seeds(seed, report.samples)]
    spectra = [spectrum(h) for h, _ in pairs]
    report.spectra.extend(spectra)
    report.labels.extend(f"{label}/sample={k}" for k in range(len(spectra)))

    distances = [w1_distance(item, limit) for item in spectra]
    worst = max(distances)
    report.add(f"esd_w1[{label}]", worst, 0.0, ESD_TOLERANCE, worst <= ESD_TOLERANCE)

    lows = np.array([item.lambda_min for item in spectra])
    highs = np.array([item.lambda_max for item in spectra])
    low = float(lows[np.argmax(np.abs(lows - limit.left_edge))])
    high = float(highs[np.argmax(np.abs(highs - limit.right_edge))])
    report.add(
        f"lambda_min[{label}]", low, limit.left_edge, EDGE_BAND,
        abs(low - limit.left_edge) <= EDGE_BAND,
    )
    report.add(
        f"lambda_max[{label}]", high, limit.right_edge, EDGE_BAND,
        abs(high - limit.right_edge) <= EDGE_BAND,
    )

    coupling = max(operator_norm_difference(h, h_prime) for h, h_prime in pairs)
    report.add(f"coupling[{label}]", coupling, 0.0, COUPLING_TOLERANCE, coupling < COUPLING_TOLERANCE)

    mean, std_error = mc_log_determinant(params, dims, u, report.samples, seed, settings)
    oracle = log_potential_of(params, u, settings)
    singular = limit.left_edge < 0.0 < limit.right_edge
    tolerance = LOG_DET_SINGULAR_TOLERANCE if singular else LOG_DET_TOLERANCE
    report.add(f"log_determinant[{label}]", mean, oracle, tolerance, abs(mean - oracle) <= tolerance)
    log.parameter(f"log|det| standard error {label}", std_error)


def run_verification(
    params: ModelParams,
    N: int,
    samples: int,
    seed: int,
    fields: Optional[Sequence[FieldPoint]] = None,
    settings: NumericalSettings = DEFAULTS,
) -> VerificationReport:
    """
    run_verification

    :param params: ModelParams
    :param N: int admissible dimension
    :param samples: int >= 1 per field point
    :param seed: int
    :param fields: field points to test, defaults to u = 0 and u = (-2.5, 0, 0)
    :param settings: NumericalSettings
    :return: VerificationReport
    """
    dims = admissible_dims(params.gamma, N)
    report = VerificationReport(dims=dims, samples=samples, seed=seed)
    log.header_message(f"Verifying {dims.N1} + {dims.N2} at N={dims.N}, {samples} samples")

    for index, u in enumerate(DEFAULT_FIELDS if fields is None else fields):
        _field_checks(report, params, u, index, settings)

    prefactor = finite_n_prefactor_log(dims, params)
    tolerance = 3.0 * np.log(dims.N) / dims.N
    oracle = prefactor_limit(params)
    report.add("prefactor", prefactor, oracle, tolerance, abs(prefactor - oracle) <= tolerance)

    passed = [check.name for check in report.checks if check.passed]
    log.check_summary(passed, report.failed)
    return report
