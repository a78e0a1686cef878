"""Run configuration assembled from the command line"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

from bsgcomplexity.defaults import DEFAULTS, NumericalSettings
from bsgcomplexity.error import ConfigurationError
from bsgcomplexity.mde.density import MIN_RESOLUTION
from bsgcomplexity.mde.field import FieldPoint
from bsgcomplexity.model import ModelParams, derive_params, load_mixture

FORMAT_CSV = "csv"
FORMAT_JSON = "json"


@dataclass(frozen=True)
class RunConfig:
    command: str
    model_path: Optional[Path] = None
    gamma: Optional[float] = None
    t: Optional[float] = None
    u: Optional[FieldPoint] = None
    window: Optional[Tuple[float, float]] = None
    N: Optional[int] = None
    samples: int = 5
    seed: int = 0
    resolution: Optional[int] = None
    output: Optional[Path] = None
    format: Optional[str] = None
    threads: Optional[int] = None
    mode: str = "total"
    t_min: float = -2.2
    t_max: float = 0.5
    step: float = 0.05
    s: Optional[int] = None
    renormalize: bool = False
    verbose: int = 0
    log_dir: Optional[Path] = None
    eigenvalues: Optional[Path] = None
    settings: NumericalSettings = field(default=DEFAULTS, compare=False)

    def __post_init__(self):
        if self.gamma is not None and not 0.0 < self.gamma < 1.0:
            raise ConfigurationError(f"--gamma must lie in (0, 1), got {self.gamma}")
        if self.resolution is not None and self.resolution < MIN_RESOLUTION:
            raise ConfigurationError(f"--resolution must be >= {MIN_RESOLUTION}, got {self.resolution}")
        if self.step <= 0.0:
            raise ConfigurationError(f"--step must be positive, got {self.step}")
        if self.t_max < self.t_min:
            raise ConfigurationError(f"--t-max {self.t_max} is below --t-min {self.t_min}")
        if self.threads is not None and self.threads < 1:
            raise ConfigurationError(f"--threads must be >= 1, got {self.threads}")
        changes = {}
        if self.resolution is not None:
            changes["resolution"] = self.resolution
        if self.threads is not None:
            changes["threads"] = self.threads
        if changes:
            object.__setattr__(self, "settings", self.settings.replace(**changes))

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        """
        from_args

        :param args: argparse.Namespace
        :return: RunConfig
        """
        values = vars(args)
        u = values.get("u")
        window = values.get("window")
        return cls(
            command=args.command,
            model_path=Path(values["model"]) if values.get("model") else None,
            gamma=values.get("gamma"),
            t=values.get("t"),
            u=FieldPoint.from_sequence(u) if u else None,
            window=tuple(window) if window else None,
            N=values.get("n"),
            samples=values.get("samples") or 5,
            seed=values.get("seed") or 0,
            resolution=values.get("resolution"),
            output=Path(values["output"]) if values.get("output") else None,
            format=values.get("format"),
            threads=values.get("threads"),
            mode=values.get("mode") or "total",
            t_min=values.get("t_min", -2.2),
            t_max=values.get("t_max", 0.5),
            step=values.get("step", 0.05),
            s=values.get("s"),
            renormalize=bool(values.get("renormalize")),
            verbose=values.get("verbose") or 0,
            log_dir=Path(values["log_dir"]) if values.get("log_dir") else None,
            eigenvalues=Path(values["eigenvalues"]) if values.get("eigenvalues") else None,
        )

    def output_format(self, default: str) -> str:
        return self.format or default

    def load_params(self) -> ModelParams:
        """Model file and gamma turned into derived parameters."""
        if self.model_path is None:
            raise ConfigurationError("--model is required")
        if self.gamma is None:
            raise ConfigurationError("--gamma is required")
        spec = load_mixture(self.model_path, renormalize=self.renormalize)
        return derive_params(spec, self.gamma)
