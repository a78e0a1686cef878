import json
import math

import numpy as np
import pytest

from bsgcomplexity.defaults import DEFAULTS
from bsgcomplexity.error import (
    ConfigurationError,
    InvalidSpectralPointError,
    WindowTooSmallError,
)
from bsgcomplexity.mde import (
    FieldPoint,
    MdeCoefficients,
    default_window,
    density,
    kappa,
    solve_point,
    stieltjes_transform,
    support_edges,
)
from bsgcomplexity.mde.export import density_csv, sidecar_path, write_density
from bsgcomplexity.mde.grid import cosine_nodes, symmetric_linspace
from bsgcomplexity.mde.solve import WarmStart, eta_ladder, solve_energies

SQRT3 = math.sqrt(3.0)


def semicircle_stieltjes(z: complex, variance: float) -> complex:
    root = np.sqrt(z * z - 4.0 * variance)
    m = (-z + root) / (2.0 * variance)
    if m.imag <= 0:
        m = (-z - root) / (2.0 * variance)
    return m


def semicircle_density(x, variance: float):
    return np.sqrt(np.clip(4.0 * variance - x * x, 0.0, None)) / (2.0 * np.pi * variance)


def test_field_point_basics():
    u = FieldPoint(1.0, -2.0, 2.0)
    assert u.norm_squared == 9.0
    assert u.norm == 3.0
    assert (-u).as_tuple() == (-1.0, 2.0, -2.0)
    assert u.reduced(True) == FieldPoint(1.0)
    assert FieldPoint.from_sequence([0.5]) == FieldPoint(0.5)
    with pytest.raises(ConfigurationError):
        FieldPoint.from_sequence([1.0, 2.0])
    with pytest.raises(ConfigurationError):
        FieldPoint(float("inf"))


def test_solve_point_at_i(pure22):
    pair = solve_point(pure22, FieldPoint(), 1j)
    assert pair.m1 == pytest.approx(0.25j, abs=1e-10)
    assert pair.m2 == pytest.approx(0.25j, abs=1e-10)
    assert pair.residual <= 1e-10


def test_solve_point_inside_bulk(pure22):
    z = 0.1 + 0.01j
    pair = solve_point(pure22, FieldPoint(), z)
    expected = semicircle_stieltjes(z, 12.0)
    assert pair.m1 == pytest.approx(expected, abs=1e-8)
    assert stieltjes_transform(pair, pure22) == pytest.approx(expected, abs=1e-8)
    assert pair.m1.imag > 0 and pair.m2.imag > 0


def test_pure_model_ignores_u1_u2(pure22):
    z = -0.5 + 0.3j
    plain = solve_point(pure22, FieldPoint(-0.4), z)
    tilted = solve_point(pure22, FieldPoint(-0.4, 0.7, -1.3), z)
    assert tilted.m1 == pytest.approx(plain.m1, abs=1e-12)
    assert tilted.m2 == pytest.approx(plain.m2, abs=1e-12)


@pytest.mark.parametrize("z", [0.0, 1.0 - 0.1j, complex("nan+1j")])
def test_invalid_spectral_point(pure22, z):
    with pytest.raises(InvalidSpectralPointError):
        solve_point(pure22, FieldPoint(), z)


@pytest.mark.parametrize("z", [2.0 + 1e-3j, -7.0 + 1e-6j, 0.3 + 1e-6j, 12.0 + 0.5j])
def test_mixture_solution_satisfies_equations(mixture, z):
    u = FieldPoint(-0.3, 0.5, 0.5)
    pair = solve_point(mixture, u, z)
    coeffs = MdeCoefficients.from_params(mixture, u)
    r1, r2 = coeffs.residuals(np.array([z]), np.array([pair.m1]), np.array([pair.m2]))
    assert max(abs(r1[0]), abs(r2[0])) <= 1e-10
    assert pair.m1.imag > 0 and pair.m2.imag > 0


def test_warm_start_reproduces_solution(mixture):
    u = FieldPoint(0.2, 0.1, -0.1)
    first = solve_point(mixture, u, 1.0 + 0.01j)
    second = solve_point(mixture, u, 1.0 + 0.01j, warm_start=first)
    assert second.m1 == pytest.approx(first.m1, abs=1e-9)


def test_eta_ladder_is_decreasing():
    levels = eta_ladder(1e-6)
    assert levels[0] == 1.0
    assert levels[-1] == 1e-6
    assert np.all(np.diff(levels) < 0)
    deeper = eta_ladder(1e-12)
    assert deeper[-1] == 1e-12
    assert np.all(np.diff(deeper) < 0)


def test_eta_ladder_entered_midway():
    full = eta_ladder(1e-12)
    tail = eta_ladder(1e-12, eta_start=DEFAULTS.eta_min)
    assert tail[0] == DEFAULTS.eta_min
    np.testing.assert_allclose(tail, full[-len(tail):], rtol=1e-12)
    scan = eta_ladder(DEFAULTS.eta_min)
    np.testing.assert_allclose(eta_ladder(DEFAULTS.eta_min, eta_start=scan[-2]), scan[-2:])


def test_warm_started_solve_matches_cold(pure22):
    coeffs = MdeCoefficients.from_params(pure22, FieldPoint())
    scan = solve_energies(coeffs, symmetric_linspace(-8.0, 8.0, 129), DEFAULTS.eta_min)
    x = np.linspace(-6.0, 6.0, 25)

    cold = solve_energies(coeffs, x, DEFAULTS.eta_min)
    warm = solve_energies(coeffs, x, DEFAULTS.eta_min, start=scan.warm_start(x, previous=True))
    assert warm.previous_eta == pytest.approx(cold.previous_eta)
    np.testing.assert_allclose(
        warm.extrapolated_density(pure22), cold.extrapolated_density(pure22), atol=1e-8
    )

    cold = solve_energies(coeffs, x, DEFAULTS.edge_eta)
    warm = solve_energies(coeffs, x, DEFAULTS.edge_eta, start=scan.warm_start(x))
    np.testing.assert_allclose(warm.m1, cold.m1, atol=1e-7)


def test_unusable_warm_start_falls_back(pure22):
    coeffs = MdeCoefficients.from_params(pure22, FieldPoint())
    x = np.linspace(-3.0, 3.0, 9)
    start = WarmStart(DEFAULTS.eta_min, np.full(9, -1j), np.full(9, 5.0 + 0j))
    warm = solve_energies(coeffs, x, DEFAULTS.eta_min, start=start)
    cold = solve_energies(coeffs, x, DEFAULTS.eta_min)
    assert np.all(warm.m1.imag > 0) and np.all(warm.m2.imag > 0)
    np.testing.assert_allclose(warm.m1, cold.m1, atol=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("u", [FieldPoint(), FieldPoint(-0.5, 0.5, 0.5), FieldPoint(0.8, -0.3, 0.2)])
def test_residuals_on_full_grid(pure22, mixture, u):
    for params in (pure22, mixture):
        coeffs = MdeCoefficients.from_params(params, u.reduced(params.pure))
        lo, hi = default_window(params, u)
        grid = symmetric_linspace(lo, hi, 2048)
        solution = solve_energies(coeffs, grid, 1e-6)
        assert np.all(solution.residual1 <= 1e-10)
        assert np.all(solution.residual2 <= 1e-10)
        assert np.all(solution.m1.imag > 0) and np.all(solution.m2.imag > 0)


def test_grids():
    grid = symmetric_linspace(-3.7, 3.7, 101)
    assert np.array_equal(grid, -grid[::-1])
    nodes = cosine_nodes(-1.0, 2.0, 65)
    assert nodes[0] == -1.0 and nodes[-1] == 2.0
    assert np.all(np.diff(nodes) > 0)
    with pytest.raises(ConfigurationError):
        symmetric_linspace(1.0, 1.0, 10)


def test_kappa_bounds_semicircle(pure22):
    assert kappa(pure22, FieldPoint()) == pytest.approx(4.0 * SQRT3)
    lo, hi = default_window(pure22, FieldPoint())
    assert hi == pytest.approx(4.0 * SQRT3 + 1.0)
    assert lo == -hi


def test_semicircle_edges(pure22):
    left, right = support_edges(pure22, FieldPoint())
    assert left == pytest.approx(-4.0 * SQRT3, abs=1e-6)
    assert right == pytest.approx(4.0 * SQRT3, abs=1e-6)


def test_edge_at_threshold_energy(pure22):
    left, _ = support_edges(pure22, FieldPoint(-SQRT3))
    assert left == pytest.approx(0.0, abs=1e-6)


def test_pure33_edges(pure33):
    left, right = support_edges(pure33, FieldPoint())
    assert right == pytest.approx(2.0 * math.sqrt(30.0), abs=1e-6)
    assert left == pytest.approx(-2.0 * math.sqrt(30.0), abs=1e-6)


def test_semicircle_density(pure22):
    result = density(pure22, FieldPoint())
    assert 0.999 <= result.mass <= 1.001
    assert np.all(np.diff(result.grid) > 0)
    assert np.all(result.values >= 0)
    expected = semicircle_density(result.grid, 12.0)
    bulk = np.abs(result.grid) < 6.5
    assert np.max(np.abs(result.values[bulk] - expected[bulk])) < 1e-4
    outside = np.abs(result.grid) > 4.0 * SQRT3 + 1e-4
    assert np.all(result.values[outside] == 0.0)


def test_shifted_semicircle(pure22):
    result = density(pure22, FieldPoint(-2.0), resolution=512)
    assert result.left_edge == pytest.approx(8.0 - 4.0 * SQRT3, abs=1e-6)
    assert result.right_edge == pytest.approx(8.0 + 4.0 * SQRT3, abs=1e-6)


@pytest.mark.parametrize(
    "u",
    [
        FieldPoint(),
        FieldPoint(-1.0),
        FieldPoint(0.7),
        FieldPoint(-0.3, 0.5, 0.5),
        FieldPoint(0.4, -0.6, 0.2),
    ],
)
def test_density_reflection(pure22, mixture, u):
    params = pure22 if u.u1 == 0.0 and u.u2 == 0.0 else mixture
    forward = density(params, u, resolution=512)
    backward = density(params, -u, resolution=512).reflect()
    assert np.array_equal(forward.grid, backward.grid)
    assert np.max(np.abs(forward.values - backward.values)) <= 1e-6
    assert forward.left_edge == pytest.approx(backward.left_edge, abs=2e-6)


def test_mixture_density_depends_on_u1_u2(mixture):
    flat = support_edges(mixture, FieldPoint())
    tilted = support_edges(mixture, FieldPoint(0.0, 0.5, 0.5))
    assert tilted != pytest.approx(flat, abs=1e-3)


def test_window_too_small(pure22):
    with pytest.raises(WindowTooSmallError):
        density(pure22, FieldPoint(), window=(-1.0, 1.0), resolution=128)


def test_resolution_floor(pure22):
    with pytest.raises(ConfigurationError):
        density(pure22, FieldPoint(), resolution=32)
    with pytest.raises(ConfigurationError):
        density(pure22, FieldPoint(), resolution=128, grid="log")


def test_support_grid_covers_edges(pure22):
    result = density(pure22, FieldPoint(), resolution=256, grid="support")
    assert result.grid[0] == result.left_edge
    assert result.grid[-1] == result.right_edge
    assert result.mass == pytest.approx(1.0, abs=1e-3)


def test_density_export(pure22, tmp_path):
    result = density(pure22, FieldPoint(), resolution=128)
    text = density_csv(result)
    assert text.startswith("lambda,rho\n")
    assert "\r" not in text
    assert len(text.splitlines()) == 129

    csv_path = tmp_path / "semicircle.csv"
    sidecar = write_density(result, csv_path)
    assert sidecar == sidecar_path(csv_path)
    payload = json.loads(sidecar.read_text())
    assert payload["schema_version"] == "1.0"
    assert payload["right_edge"] == pytest.approx(6.928203, abs=1e-6)
    assert payload["resolution"] == 128
    assert payload["u"] == {"u0": 0.0, "u1": 0.0, "u2": 0.0}
    assert payload["metadata"]["settings"]["resolution"] == DEFAULTS.resolution
    assert set(payload["metadata"]["runtime"]) >= {"numpy", "scipy", "pandas"}


def pure_closed_density(grid: np.ndarray, s: int, u0: float) -> np.ndarray:
    centre, variance = -s * u0, (s - 1) * s
    return np.sqrt(np.clip(4.0 * variance - (grid - centre) ** 2, 0.0, None)) / (2.0 * math.pi * variance)


@pytest.mark.parametrize(
    "name, u0",
    [("pure22", 0.0), ("pure23", 0.0), ("pure33", 0.0), ("pure22", -1.0)],
)
def test_density_matches_closed_form_up_to_edges(request, name, u0):
    params = request.getfixturevalue(name)
    s = params.degree_sum
    result = density(params, FieldPoint(u0), resolution=1024)
    error = np.abs(result.values - pure_closed_density(result.grid, s, u0))

    radius = 2.0 * math.sqrt((s - 1) * s)
    edges = np.array([-s * u0 - radius, -s * u0 + radius])
    distance = np.min(np.abs(result.grid[:, None] - edges[None, :]), axis=1)
    near = distance <= 0.05
    assert near.any()
    assert np.max(error[~near]) < 1e-4
    assert np.max(error[near]) < 1e-2
