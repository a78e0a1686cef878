import numpy as np
import pytest

from bsgcomplexity.defaults import DEFAULTS, THREADS_ENV_VAR, NumericalSettings, threads_from_env
from bsgcomplexity.error import (
    EXIT_BOUNDARY,
    EXIT_NUMERICAL,
    EXIT_VALIDATION,
    BracketingError,
    ConfigurationError,
    InadmissibleDimensionsError,
    InfeasibleStartError,
    ModelValidationError,
    NormalizationError,
    OptimizerBoundaryError,
    SingularSampleError,
    SolverConvergenceError,
    WindowTooSmallError,
    check_residuals,
    check_upper_half_plane,
)
from bsgcomplexity.info import get_runtime_info


@pytest.mark.parametrize(
    "error, code",
    [
        (ModelValidationError("bad"), EXIT_VALIDATION),
        (ConfigurationError("bad"), EXIT_VALIDATION),
        (InadmissibleDimensionsError(0.4, 101, [97, 102]), EXIT_VALIDATION),
        (SolverConvergenceError("stuck"), EXIT_NUMERICAL),
        (WindowTooSmallError("narrow"), EXIT_NUMERICAL),
        (BracketingError("flat"), EXIT_NUMERICAL),
        (SingularSampleError("zero"), EXIT_NUMERICAL),
        (InfeasibleStartError("outside"), EXIT_NUMERICAL),
        (OptimizerBoundaryError("edge"), EXIT_BOUNDARY),
    ],
)
def test_exit_codes(error, code):
    assert error.exit_code == code


def test_validation_errors_are_value_errors():
    assert isinstance(NormalizationError(2.0, 1e-12), ValueError)
    assert isinstance(SolverConvergenceError("stuck"), ArithmeticError)


def test_solver_error_reports_residuals():
    error = SolverConvergenceError("no convergence", residuals=[1.5e-3, 2e-9])
    assert error.residuals == (1.5e-3, 2e-9)
    assert "1.500e-03" in str(error)


def test_residual_checks(caplog):
    assert check_residuals("fixed point", 1e-12, 5e-11, 1e-10)
    assert not check_residuals("fixed point", 1e-12, 1e-9, 1e-10)
    assert not check_residuals("fixed point", float("nan"), 0.0, 1e-10)
    assert "fixed point" in caplog.text
    assert check_upper_half_plane("ladder", 0.1j, 1.0 + 1e-9j)
    assert not check_upper_half_plane("ladder", 0.1j, 1.0 - 1e-9j)


def test_settings_replace_and_dict():
    changed = DEFAULTS.replace(resolution=512)
    assert changed.resolution == 512
    assert DEFAULTS.resolution == 2048
    assert isinstance(changed, NumericalSettings)
    values = DEFAULTS.to_dict()
    assert values["eta_min"] == 1e-6
    assert values["residual_tolerance"] == 1e-10
    assert values["n_starts"] == 8
    assert changed != DEFAULTS


@pytest.mark.parametrize("raw, expected", [("4", 4), ("0", 1), ("many", 1), ("", 1)])
def test_threads_from_env(monkeypatch, raw, expected):
    monkeypatch.setenv(THREADS_ENV_VAR, raw)
    assert threads_from_env() == expected


def test_runtime_info():
    info = get_runtime_info()
    assert info["numpy"] == np.__version__
    assert set(info) == {"bsgcomplexity", "python", "numpy", "scipy", "pandas"}
