import math

import numpy as np
import pytest

from bsgcomplexity.closed_form import semicircle_log_potential_scaled
from bsgcomplexity.complexity import log_potential, log_potential_of
from bsgcomplexity.mde import FieldPoint, SpectralDensity, density
from bsgcomplexity.mde.grid import cosine_nodes


def semicircle(radius: float, count: int = 2049, center: float = 0.0) -> SpectralDensity:
    grid = cosine_nodes(center - radius, center + radius, count)
    values = 2.0 * np.sqrt(np.clip(radius**2 - (grid - center) ** 2, 0.0, None)) / (np.pi * radius**2)
    return SpectralDensity(
        grid=grid,
        values=values,
        left_edge=center - radius,
        right_edge=center + radius,
        mass=1.0,
        eta_min=0.0,
        resolution=count,
        grid_mode="support",
    )


def test_unit_semicircle():
    assert log_potential(semicircle(2.0)) == pytest.approx(-0.5, abs=1e-5)


def test_scaled_semicircle():
    radius = 4.0 * math.sqrt(3.0)
    assert log_potential(semicircle(radius)) == pytest.approx(0.5 * math.log(12.0) - 0.5, abs=1e-5)


def test_reflection_invariance():
    shifted = semicircle(2.0, center=0.7)
    assert log_potential(shifted.reflect()) == pytest.approx(log_potential(shifted), abs=1e-12)


def test_semicircle_away_from_origin():
    # log-potential of a semicircle of radius 2 centred at 3: omega(3)
    assert log_potential(semicircle(2.0, center=3.0)) == pytest.approx(1.035374, abs=1e-5)


def test_pure22_at_origin(pure22):
    assert log_potential_of(pure22, FieldPoint()) == pytest.approx(
        0.5 * math.log(12.0) - 0.5, abs=1e-5
    )


def test_pure22_shifted_matches_closed_form(pure22):
    u0 = -2.5
    expected = semicircle_log_potential_scaled(u0, 4) + 0.5 * u0 * u0
    assert log_potential_of(pure22, FieldPoint(u0)) == pytest.approx(expected, abs=1e-5)


def test_uniform_and_support_grids_agree(pure22):
    u = FieldPoint(-0.5)
    uniform = log_potential(density(pure22, u))
    support = log_potential(density(pure22, u, resolution=2048, grid="support"))
    assert uniform == pytest.approx(support, abs=1e-3)
