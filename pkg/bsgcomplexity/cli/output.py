"""
Report payloads: JSON documents and CSV tables

Payloads carry no timestamps so that reruns are byte-identical.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from bsgcomplexity.cli.config import RunConfig
from bsgcomplexity.defaults import SCHEMA_VERSION
from bsgcomplexity.info import get_runtime_info
from bsgcomplexity.logger import Logger as log


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def metadata(config: RunConfig) -> Dict[str, Any]:
    """
    metadata

    :param config: RunConfig
    :return: dict with the command, model, gamma, numerical settings and library versions
    """
    return {
        "command": config.command,
        "model": str(config.model_path) if config.model_path else None,
        "gamma": config.gamma,
        "settings": config.settings.to_dict(),
        "runtime": get_runtime_info(),
    }


def json_document(config: RunConfig, body: Dict[str, Any]) -> str:
    payload = {"schema_version": SCHEMA_VERSION, **body, "metadata": metadata(config)}
    return json.dumps(payload, indent=2, default=_jsonable) + "\n"


def csv_table(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n", float_format="%.17g")


def emit(text: str, output: Optional[Path] = None) -> None:
    """
    emit

    :param text: str payload
    :param output: Path or None for stdout
    """
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    output.write_text(text, encoding="utf-8", newline="\n")
    log.message(f"Wrote {output}")


def emit_json(config: RunConfig, body: Dict[str, Any]) -> None:
    emit(json_document(config, body), config.output)


def emit_table(config: RunConfig, frame: pd.DataFrame) -> None:
    """Table as CSV, or as JSON records with the metadata block."""
    if config.output_format("csv") == "json":
        emit_json(config, {"rows": frame.to_dict(orient="records")})
    else:
        emit(csv_table(frame), config.output)
