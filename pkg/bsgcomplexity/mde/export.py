"""Density CSV and JSON sidecar"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from bsgcomplexity.defaults import DEFAULTS, SCHEMA_VERSION, NumericalSettings
from bsgcomplexity.info import get_runtime_info
from bsgcomplexity.mde.density import SpectralDensity


def density_frame(density: SpectralDensity) -> pd.DataFrame:
    return pd.DataFrame({"lambda": density.grid, "rho": density.values})


def density_csv(density: SpectralDensity) -> str:
    """
    density_csv

    :param density: SpectralDensity
    :return: str CSV text, header lambda,rho, LF line endings
    """
    return density_frame(density).to_csv(index=False, lineterminator="\n", float_format="%.17g")


def sidecar_path(csv_path: Union[str, Path]) -> Path:
    return Path(csv_path).with_suffix(".json")


def sidecar_document(
    density: SpectralDensity,
    settings: NumericalSettings = DEFAULTS,
    metadata: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    sidecar_document

    :param density: SpectralDensity
    :param settings: NumericalSettings the density was computed with
    :param metadata: dict report metadata, defaults to the settings and library versions
    :return: dict schema_version, density summary, metadata
    """
    if metadata is None:
        metadata = {"settings": settings.to_dict(), "runtime": get_runtime_info()}
    return {"schema_version": SCHEMA_VERSION, **density.sidecar(), "metadata": metadata}


def write_density(
    density: SpectralDensity,
    csv_path: Union[str, Path],
    settings: NumericalSettings = DEFAULTS,
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    write_density

    :param density: SpectralDensity
    :param csv_path: destination of the CSV; the sidecar goes next to it
    :param settings: NumericalSettings the density was computed with
    :param metadata: dict report metadata, see sidecar_document
    :return: Path of the JSON sidecar
    """
    csv_path = Path(csv_path)
    csv_path.write_text(density_csv(density), encoding="utf-8", newline="\n")
    sidecar = sidecar_path(csv_path)
    payload = sidecar_document(density, settings, metadata)
    sidecar.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8", newline="\n")
    return sidecar
