"""
Exceptions and numerical sanity checks

Every exception carries the process exit code the command line reports for it:
2 for invalid input, 3 for numerical failure, 4 for an optimizer stuck on the
search-box boundary.

Example Usage:
==============
>>> from bsgcomplexity.error import check_residuals
>>> check_residuals("semicircle", 1e-14, 2e-14, 1e-10)
True
"""

from typing import Iterable, Optional, Sequence

import numpy as np

from bsgcomplexity.logger import Logger as log

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_BOUNDARY = 4


class BsgError(Exception):
    """Base class for all library errors."""

    exit_code = EXIT_FAILURE


class ModelValidationError(BsgError, ValueError):
    """Malformed or unnormalized model description."""

    exit_code = EXIT_VALIDATION

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NormalizationError(ModelValidationError):
    """Sum of squared coefficients differs from one."""

    def __init__(self, total: float, tolerance: float):
        self.total = total
        self.deviation = total - 1.0
        self.tolerance = tolerance
        super().__init__(
            f"mixture is not normalized: sum of beta^2 = {total:.17g} "
            f"(deviation {self.deviation:.3e}, tolerance {tolerance:.1e})"
        )


class ConfigurationError(BsgError, ValueError):
    """Invalid numerical argument such as a resolution below 64 or an empty window."""

    exit_code = EXIT_VALIDATION


class UnsupportedModelError(BsgError, ValueError):
    """Pure (1,q) and (p,1) models violate xi1'' > 0 and xi2'' > 0."""

    exit_code = EXIT_VALIDATION


class NotPureModelError(BsgError, ValueError):
    """Operation only defined for a single-term mixture."""

    exit_code = EXIT_VALIDATION


class InvalidSpectralPointError(BsgError, ValueError):
    """Spectral parameter not in the open upper half-plane."""

    exit_code = EXIT_VALIDATION


class InadmissibleDimensionsError(BsgError, ValueError):
    """(N1 - 1)/(N - 2) = gamma has no integer solution for the requested N."""

    exit_code = EXIT_VALIDATION

    def __init__(self, gamma: float, n: int, nearest: Sequence[int]):
        self.gamma = gamma
        self.n = n
        self.nearest = tuple(nearest)
        listing = " and ".join(str(value) for value in self.nearest)
        super().__init__(
            f"N={n} is not admissible for gamma={gamma!r}: gamma*(N-2) must be an "
            f"integer; nearest admissible N: {listing}"
        )


class DimensionMismatchError(BsgError, ValueError):
    """Block dimensions built for a different gamma."""

    exit_code = EXIT_VALIDATION


class SolverConvergenceError(BsgError, ArithmeticError):
    """The Dyson equation solver did not reach its residual tolerance."""

    exit_code = EXIT_NUMERICAL

    def __init__(self, message: str, residuals: Optional[Iterable[float]] = None):
        self.residuals = tuple(residuals) if residuals is not None else ()
        if self.residuals:
            message = f"{message} (last residuals: " + ", ".join(
                f"{value:.3e}" for value in self.residuals
            ) + ")"
        super().__init__(message)


class WindowTooSmallError(BsgError, ArithmeticError):
    """The density window does not contain the support."""

    exit_code = EXIT_NUMERICAL


class BracketingError(BsgError, ArithmeticError):
    """A root finder could not bracket a sign change."""

    exit_code = EXIT_NUMERICAL


class SingularSampleError(BsgError, ArithmeticError):
    """Sampled matrix was numerically singular twice in a row."""

    exit_code = EXIT_NUMERICAL


class EigensolverError(BsgError, ArithmeticError):
    """Symmetric eigensolver did not converge."""

    exit_code = EXIT_NUMERICAL


class OptimizerError(BsgError, ArithmeticError):
    """The variational search failed."""

    exit_code = EXIT_NUMERICAL


class InfeasibleStartError(OptimizerError):
    """No start point in the positivity set could be recovered."""


class OptimizerBoundaryError(OptimizerError):
    """Maximizer found on the boundary of the search box."""

    exit_code = EXIT_BOUNDARY


def check_residuals(
    label: str, residual1: float, residual2: float, tolerance: float
) -> bool:
    """
    check_residuals

    :param label: str where the residuals were computed
    :param residual1: float first equation residual
    :param residual2: float second equation residual
    :param tolerance: float
    :return: bool True when both residuals are within tolerance
    """
    worst = max(residual1, residual2)
    if not np.isfinite(worst) or worst > tolerance:
        log.error(f"Residual check failed after {label}: {residual1:.3e}, {residual2:.3e}")
        return False
    return True


def check_upper_half_plane(label: str, *values: complex) -> bool:
    """
    check_upper_half_plane

    :param label: str
    :param values: complex numbers that must have positive imaginary part
    :return: bool
    """
    imag = np.imag(np.asarray(values, dtype=complex))
    if not np.all(imag > 0):
        log.error(f"Upper half-plane check failed after {label}: {imag.min():.3e}")
        return False
    return True
