import logging

import pytest

from bsgcomplexity import logger as logger_module
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.logger import decorate_log_message, get_qc_tag, setup_logging


@pytest.mark.parametrize(
    "message, tag",
    [
        ("Pass rate: 100.0%", "📊"),
        ("Newton converged after 3 steps", "✅"),
        ("Residual check failed", "❌"),
        ("Density mass", " "),
    ],
)
def test_qc_tags(message, tag):
    assert get_qc_tag(message) == tag


def test_decoration_prefixes_level_emoji():
    assert decorate_log_message("hello", logging.WARNING).startswith("⚠️")


def test_parameter_formats_floats_and_complex(caplog):
    with caplog.at_level(logging.DEBUG):
        log.parameter("Support edges", 6.928203230275509)
        log.parameter("Stieltjes value", 0.25j)
    assert "float" in caplog.text and "6.9282" in caplog.text
    assert "complex" in caplog.text and "+0.25j" in caplog.text


def test_check_summary(caplog):
    with caplog.at_level(logging.INFO):
        rate = log.check_summary(["esd_w1", "prefactor"], ["coupling"])
    assert rate == pytest.approx(200.0 / 3.0)
    assert "Pass rate: 66.7%" in caplog.text
    assert log.check_summary([], []) == 0.0


def test_switch_silences_everything(caplog, monkeypatch):
    monkeypatch.setattr(logger_module, "LOGGING", False)
    with caplog.at_level(logging.DEBUG):
        log.warning("should not appear")
    assert caplog.text == ""


def test_log_file(tmp_path):
    setup_logging(logging.WARNING, tmp_path / "logs")
    try:
        log.message("written to the file")
        files = list((tmp_path / "logs").glob("bsgcomplexity-*.log"))
        assert len(files) == 1
        for handler in logging.root.handlers:
            handler.flush()
        assert "written to the file" in files[0].read_text(encoding="utf-8")
    finally:
        setup_logging(logging.WARNING)


def test_format_value_handles_arrays_and_field_points():
    import numpy as np

    from bsgcomplexity.logger import format_value
    from bsgcomplexity.mde.field import FieldPoint

    assert format_value(np.float64(0.5)) == "0.5"
    assert format_value(np.array([1.0, 2.0])) == "[1. 2.]"
    assert format_value(FieldPoint(-2.0)) == "-2, 0, 0"
    assert format_value({"mass": 1.0, "edges": (-1.5, 1.5)}) == "mass=1, edges=-1.5, 1.5"
