"""
Numerical settings shared by every solver

Example Usage:
==============
>>> from bsgcomplexity.defaults import DEFAULTS
>>> coarse = DEFAULTS.replace(resolution=512)
"""

import dataclasses
import os
from dataclasses import dataclass, field
from typing import Any, Dict

THREADS_ENV_VAR = "BSGCOMPLEXITY_THREADS"

SCHEMA_VERSION = "1.0"


def threads_from_env() -> int:
    """
    threads_from_env

    :return: int worker cap from BSGCOMPLEXITY_THREADS, 1 when unset or invalid
    """
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class NumericalSettings:
    """Tolerances and iteration budgets; printed into every report."""

    # eta ladder
    eta_max: float = 1.0
    eta_factor: float = 0.7
    eta_min: float = 1e-6
    edge_eta: float = 1e-12
    edge_eta_factor: float = 0.1

    # fixed point and Newton
    residual_tolerance: float = 1e-10
    ladder_tolerance: float = 1e-6
    max_fixed_point_iterations: int = 2000
    stall_window: int = 50
    damping: float = 0.5
    min_damping: float = 1.0 / 64.0
    max_newton_iterations: int = 100
    max_step_halvings: int = 40

    # density and edges
    resolution: int = 2048
    scan_resolution: int = 512
    edge_threshold: float = 1e-8
    outside_mass_tolerance: float = 1e-6
    edge_tolerance: float = 1e-6
    edge_points: int = 32
    richardson: bool = False

    # variational search
    search_radius: float = 10.0
    n_starts: int = 8
    start_seed: int = 20210101
    penalty: float = -1e6
    tie_tolerance: float = 1e-9
    optimizer_xatol: float = 1e-6
    bisection_tolerance: float = 1e-6
    membership_tolerance: float = 1e-6

    threads: int = field(default_factory=threads_from_env)

    def replace(self, **changes: Any) -> "NumericalSettings":
        """
        replace

        :param changes: field overrides
        :return: NumericalSettings copy
        """
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """
        to_dict

        :return: dict of every setting
        """
        return dataclasses.asdict(self)


DEFAULTS = NumericalSettings()
