"""log message"""

import json
import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, List, Optional, Sequence

import numpy as np

from bsgcomplexity.project import __project__

NOW = datetime.now()
DATE_STRING = NOW.strftime("%d%b%Y")
TIME_STRING = NOW.strftime("%H-%M")

LOG_PADDING_WIDTH = 40

LOG_FORMAT = "%(filename)-20s| %(lineno)-5s| %(levelname)-8s| %(message)-24s"

LOGGING = True

_HANDLERS: List[logging.Handler] = []


def setup_logging(
    level: int = logging.WARNING, log_dir: Optional[Path] = None
) -> logging.Logger:
    """
    setup_logging

    Console output goes to stderr so that stdout only ever carries command payloads.

    :param level: int console log level
    :param log_dir: Path optional directory for a rotating log file
    :return: logging.Logger
    """
    try:
        # Reset handlers from a previous call
        for handler in _HANDLERS:
            logging.root.removeHandler(handler)
            handler.close()
        _HANDLERS.clear()

        formatter = logging.Formatter(LOG_FORMAT)

        console_handler = logging.StreamHandler(sys.__stderr__)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logging.root.addHandler(console_handler)
        _HANDLERS.append(console_handler)

        log_file = None
        if log_dir is not None:
            log_dir = Path(log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)
            log_file = log_dir / f"{__project__}-{DATE_STRING}-{TIME_STRING}.log"
            file_handler = RotatingFileHandler(
                str(log_file),
                maxBytes=1024 * 1024,  # 1MB per file
                backupCount=5,
                encoding="utf-8",
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            logging.root.addHandler(file_handler)
            _HANDLERS.append(file_handler)

        logging.root.setLevel(logging.DEBUG if log_file else level)

        logger = logging.getLogger(__project__)
        logger.debug(f"{__project__} starting up...")
        if log_file:
            logger.debug(f"Log file: {log_file}")
        return logger

    except Exception as ex:
        print(f"Error setting up logging: {str(ex)}", file=sys.stderr)
        raise


LEVEL_EMOJIS = {
    logging.DEBUG: "🔍",
    logging.INFO: "ℹ️",
    logging.WARNING: "⚠️",
    logging.ERROR: "❌",
    logging.CRITICAL: "💥",
}


def get_qc_tag(msg: str) -> str:
    """
    get QC emoji etc
    :param msg: str
    :return: str
    """
    msg = f"{msg}".lower()
    if "pass rate" in msg:
        return "📊"
    if "converged" in msg or "passed" in msg or "found" in msg:
        return "✅"
    if "fail" in msg or "error" in msg:
        return "❌"
    return " "


def decorate_log_message(message: str, level: int) -> str:
    """
    Adds emoji decoration to a log message based on its content and log level.
    :param message: The original log message
    :param level: The logging level
    :return: Decorated log message string
    """
    level_emoji_tag = LEVEL_EMOJIS.get(level, "🔔")
    qc_tag = get_qc_tag(message)
    return f"{level_emoji_tag}{qc_tag}{message}"


def _with_exception(message: str, exception: Optional[BaseException]) -> str:
    return f"{message}: {exception}" if exception else message


def format_value(value: Any, precision: int = 6) -> str:
    """
    format_value

    :param value: scalar, array, mapping or a value type with to_dict/as_tuple
    :param precision: int significant digits for floats
    :return: str
    """
    if value is None:
        return "None"
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{precision}g}"
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return f"{value.real:.{precision}g}{value.imag:+.{precision}g}j"
    if isinstance(value, np.ndarray):
        return np.array2string(value, precision=precision, threshold=8)
    if hasattr(value, "as_tuple"):
        return format_value(value.as_tuple(), precision)
    if hasattr(value, "to_dict"):
        return format_value(value.to_dict(), precision)
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(item, precision) for item in value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={format_value(v, precision)}" for k, v in value.items())
    return str(value)


class Logger:
    """Static helpers over the root logger; every message gets an emoji prefix."""

    @staticmethod
    def message(
        message: str,
        level: int = logging.INFO,
        stacklevel: int = 3,
        silent: bool = False,
    ) -> None:
        if LOGGING and not silent:
            logging.log(level, decorate_log_message(message, level), stacklevel=stacklevel)

    @staticmethod
    def debug(message: str, stacklevel: int = 4, silent: bool = False) -> None:
        Logger.message(message, logging.DEBUG, stacklevel, silent)

    @staticmethod
    def warning(
        message: str,
        exception: Optional[BaseException] = None,
        stacklevel: int = 4,
        silent: bool = False,
    ) -> None:
        """
        warning

        :param message: str
        :param exception: optional exception appended as ": <exception>"
        """
        Logger.message(_with_exception(message, exception), logging.WARNING, stacklevel, silent)

    @staticmethod
    def error(
        message: str,
        exception: Optional[BaseException] = None,
        stacklevel: int = 4,
        silent: bool = False,
    ) -> None:
        Logger.message(_with_exception(message, exception), logging.ERROR, stacklevel, silent)

    @staticmethod
    def json(data: Any, level: int = logging.DEBUG, silent: bool = False) -> None:
        """
        json

        One compact line; numpy scalars and other unknown values fall back to str.

        :param data: dict, list or JSON string
        :param level: int
        :param silent: bool
        """
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as ex:
                Logger.warning("Invalid JSON string", ex, stacklevel=3)
                return
        compact = json.dumps(data, separators=(",", ":"), default=str)
        Logger.message(compact, level, stacklevel=3, silent=silent)

    @staticmethod
    def parameter(
        message: str,
        parameter: Any,
        precision: int = 6,
        max_length: int = 300,
        level: int = logging.DEBUG,
        stacklevel: int = 4,
        silent: bool = False,
    ) -> None:
        """
        parameter

        Logs "<message> <type> <value>" in padded columns.

        :param message: str label
        :param parameter: value to show
        :param precision: int significant digits for floats
        :param max_length: int the value is truncated beyond this
        """
        value = format_value(parameter, precision)
        if len(value) > max_length:
            value = value[: max_length - 3] + "..."
        type_name = type(parameter).__name__
        line = f"{message:<{LOG_PADDING_WIDTH}} {type_name:<12} {value}".rstrip()
        Logger.message(line, level, stacklevel, silent)

    @staticmethod
    def header_message(
        message: str,
        level: int = logging.INFO,
        silent: bool = False,
        stacklevel: int = 3,
    ) -> None:
        separator = "=" * 100
        for line in (separator, message, separator):
            Logger.message(line, level, stacklevel, silent)

    @staticmethod
    def check_summary(
        passed: Sequence[str], failed: Sequence[str], stacklevel: int = 3
    ) -> float:
        """
        check_summary

        :param passed: names of checks that passed
        :param failed: names of checks that failed
        :param stacklevel: int
        :return: float pass rate in percent, 0 when there were no checks
        """
        total = len(passed) + len(failed)
        pass_rate = 100.0 * len(passed) / total if total else 0.0
        Logger.message(f"Passed ({len(passed)}): {list(passed)}", stacklevel=stacklevel)
        Logger.message(
            f"Failed ({len(failed)}): {list(failed)}",
            logging.WARNING if failed else logging.INFO,
            stacklevel,
        )
        Logger.message(f"Pass rate: {pass_rate:.1f}%", stacklevel=stacklevel)
        return pass_rate
