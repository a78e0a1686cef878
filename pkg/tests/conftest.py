import pytest

from bsgcomplexity.defaults import DEFAULTS
from bsgcomplexity.model import derive_params, parse_mixture

MIXTURE_TEXT = "term 2 2 0.7071067812\nterm 2 3 0.7071067812\n"


@pytest.fixture(scope="session")
def pure22():
    return derive_params(parse_mixture("pure 2 2"), 0.5)


@pytest.fixture(scope="session")
def pure23():
    return derive_params(parse_mixture("pure 2 3"), 0.4)


@pytest.fixture(scope="session")
def pure32():
    return derive_params(parse_mixture("pure 3 2"), 0.6)


@pytest.fixture(scope="session")
def pure33():
    return derive_params(parse_mixture("pure 3 3"), 0.5)


@pytest.fixture(scope="session")
def mixture():
    return derive_params(parse_mixture(MIXTURE_TEXT), 0.5)


@pytest.fixture(scope="session")
def coarse():
    """Cheaper settings for tests that only need a qualitative answer."""
    return DEFAULTS.replace(resolution=256, scan_resolution=256, n_starts=2)


@pytest.fixture
def model_file(tmp_path):
    def write(text: str, name: str = "model.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
