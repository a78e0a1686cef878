"""
Subcommand drivers

Each driver takes a RunConfig, writes its payload and returns the exit status.
"""

import logging

import numpy as np
import pandas as pd

from bsgcomplexity.cli.config import RunConfig
from bsgcomplexity.cli.output import csv_table, emit, emit_json, emit_table, metadata
from bsgcomplexity.closed_form import (
    PureSumSpec,
    e0_closed,
    e_inf_closed,
    sigma_pq,
    sigma_pq_min,
)
from bsgcomplexity.complexity import (
    ComplexityMode,
    e_infinity_report,
    ground_state_report,
    sigma_min,
    sigma_total,
)
from bsgcomplexity.error import EXIT_NUMERICAL, EXIT_OK, ConfigurationError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.mde.density import density
from bsgcomplexity.mde.export import density_frame, sidecar_document, write_density
from bsgcomplexity.rmt import run_verification, write_eigenvalues

T_DECIMALS = 12


def t_values(t_min: float, t_max: float, step: float) -> np.ndarray:
    """
    t_values

    :param t_min: float
    :param t_max: float, included when it lies on the step lattice
    :param step: float > 0
    :return: np.ndarray t_min, t_min + step, ... rounded to 12 decimals
    """
    if step <= 0.0:
        raise ConfigurationError(f"--step must be positive, got {step}")
    count = int(np.floor((t_max - t_min) / step + 1e-9)) + 1
    return np.round(t_min + step * np.arange(count), T_DECIMALS)


def cmd_complexity(config: RunConfig) -> int:
    params = config.load_params()
    mode = ComplexityMode(config.mode)
    solve = sigma_total if mode is ComplexityMode.TOTAL else sigma_min
    result = solve(params, config.t, config.settings)
    log.parameter(f"Sigma {mode}", result.value, level=logging.INFO)
    emit_json(config, {"params": params.to_dict(), "result": result.to_dict()})
    return EXIT_OK


def cmd_curve(config: RunConfig) -> int:
    params = config.load_params()
    ts = t_values(config.t_min, config.t_max, config.step)
    columns = {
        "t": ts,
        "sigma_total": [sigma_total(params, t, config.settings).value for t in ts],
        "sigma_min": [sigma_min(params, t, config.settings).value for t in ts],
    }
    if params.pure and params.is_balanced:
        s = PureSumSpec(params.degree_sum)
        columns["closed_form_total"] = [sigma_pq(t, s) for t in ts]
        columns["closed_form_min"] = [sigma_pq_min(t, s) for t in ts]
    emit_table(config, pd.DataFrame(columns))
    return EXIT_OK


def cmd_thresholds(config: RunConfig) -> int:
    """
    cmd_thresholds

    Mixtures have no E_inf threshold; the field is omitted with a warning.
    """
    params = config.load_params()
    body = {"params": params.to_dict()}
    if params.pure:
        body["e_infinity"], body["e_infinity_method"] = e_infinity_report(params, config.settings)
    else:
        log.warning("Model is a mixture: e_infinity omitted")
    body["ground_state_bound"], body["ground_state_method"] = ground_state_report(
        params, config.settings
    )
    if params.pure and params.is_balanced:
        body["closed_form_e_infinity"] = e_inf_closed(params.degree_sum)
        body["closed_form_ground_state"] = e0_closed(params.degree_sum)
    emit_json(config, body)
    return EXIT_OK


def cmd_density(config: RunConfig) -> int:
    if config.u is None:
        raise ConfigurationError("--u is required")
    params = config.load_params()
    result = density(
        params, config.u, window=config.window, resolution=config.resolution, settings=config.settings
    )
    if config.output_format("csv") == "json":
        emit_json(
            config,
            {**result.sidecar(), "lambda": result.grid, "rho": result.values},
        )
    elif config.output is not None:
        sidecar = write_density(result, config.output, config.settings, metadata(config))
        log.message(f"Wrote {config.output} and {sidecar}")
    else:
        emit(csv_table(density_frame(result)))
        log.json(sidecar_document(result, config.settings, metadata(config)), level=logging.INFO)
    return EXIT_OK


def cmd_closed_form(config: RunConfig) -> int:
    if config.s is None:
        raise ConfigurationError("--s is required")
    s = PureSumSpec(config.s)
    ts = t_values(config.t_min, config.t_max, config.step)
    frame = pd.DataFrame(
        {
            "t": ts,
            "sigma": [sigma_pq(t, s) for t in ts],
            "sigma_min": [sigma_pq_min(t, s) for t in ts],
        }
    )
    emit_table(config, frame)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    """
    cmd_verify

    :return: 0 when every check passes, 3 otherwise
    """
    if config.N is None:
        raise ConfigurationError("--n is required")
    params = config.load_params()
    report = run_verification(params, config.N, config.samples, config.seed, settings=config.settings)
    if config.eigenvalues is not None:
        write_eigenvalues(report.spectra, report.labels, config.eigenvalues)
    emit_json(config, {"params": params.to_dict(), "report": report.to_dict()})
    return EXIT_OK if report.passed else EXIT_NUMERICAL


COMMANDS = {
    "complexity": cmd_complexity,
    "curve": cmd_curve,
    "thresholds": cmd_thresholds,
    "density": cmd_density,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
}
