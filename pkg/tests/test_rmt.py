import math

import numpy as np
import pytest

from bsgcomplexity.error import (
    ConfigurationError,
    DimensionMismatchError,
    InadmissibleDimensionsError,
    WindowTooSmallError,
)
from bsgcomplexity.mde import FieldPoint, density
from bsgcomplexity.model import prefactor_limit
from bsgcomplexity.rmt import (
    BlockDims,
    EmpiricalSpectrum,
    admissible_dims,
    bl_distance,
    edge_check,
    finite_n_prefactor_log,
    kolmogorov_distance,
    mc_log_determinant,
    operator_norm_difference,
    run_verification,
    sample_h,
    sample_h_prime,
    spectrum,
    stability_operator_norm,
    w1_distance,
    write_eigenvalues,
)
from bsgcomplexity.rmt.distance import wasserstein1
from bsgcomplexity.rmt.sample import (
    field_seed,
    limit_shift_diagonal,
    sample_pair,
    shift_diagonal,
    variance_factor,
)
from bsgcomplexity.complexity import log_potential_of

SQRT3 = math.sqrt(3.0)


@pytest.mark.parametrize("gamma, n, n1, n2", [(0.5, 100, 50, 50), (0.4, 102, 41, 61), (0.5, 4, 2, 2)])
def test_admissible_dims(gamma, n, n1, n2):
    dims = admissible_dims(gamma, n)
    assert (dims.N1, dims.N2) == (n1, n2)
    assert dims.size == n - 2
    assert (dims.N1 - 1) / (dims.N - 2) == gamma


def test_inadmissible_dims_names_neighbours():
    with pytest.raises(InadmissibleDimensionsError) as info:
        admissible_dims(0.4, 101)
    assert info.value.nearest == (97, 102)
    assert "97" in str(info.value) and "102" in str(info.value)


def test_invalid_block_dims():
    with pytest.raises(ConfigurationError):
        admissible_dims(0.5, 3)
    with pytest.raises(ConfigurationError):
        BlockDims(N=10, N1=1, N2=9, gamma=0.125)


def test_dimension_mismatch(pure22):
    with pytest.raises(DimensionMismatchError):
        sample_h(pure22, admissible_dims(0.4, 102), FieldPoint(), seed=1)


def test_sample_is_symmetric_and_deterministic(mixture):
    dims = admissible_dims(0.5, 62)
    u = FieldPoint(-0.5, 0.2, 0.3)
    first = sample_h(mixture, dims, u, seed=11)
    assert first.shape == (60, 60)
    assert np.array_equal(first, first.T)
    assert np.array_equal(first, sample_h(mixture, dims, u, seed=11))
    assert not np.array_equal(first, sample_h(mixture, dims, u, seed=12))


def test_zero_field_has_no_shift(pure22):
    dims = admissible_dims(0.5, 102)
    assert np.all(shift_diagonal(pure22, dims, FieldPoint()) == 0.0)
    assert np.all(limit_shift_diagonal(pure22, dims, FieldPoint()) == 0.0)


def test_block_variance_profile(pure22):
    dims = admissible_dims(0.5, 102)
    n1 = dims.n1
    upper = np.triu_indices(n1, k=1)
    draws = np.concatenate(
        [sample_h(pure22, dims, FieldPoint(), seed)[:n1, :n1][upper] for seed in range(100)]
    )
    expected = 102 * 2.0 / 51**2
    standard_error = expected * math.sqrt(2.0 / draws.size)
    assert abs(draws.var() - expected) < 4.0 * standard_error


def test_mean_is_shift(pure22):
    dims = admissible_dims(0.5, 102)
    u = FieldPoint(-1.0)
    diagonals = np.array(
        [np.diag(sample_h(pure22, dims, u, seed))[: dims.n1] for seed in range(200)]
    )
    shift = shift_diagonal(pure22, dims, u)[0]
    assert shift == pytest.approx(102 / 51 * 2.0)
    standard_error = math.sqrt(2.0 * 102 * 2.0 / 51**2 / diagonals.size)
    assert abs(diagonals.mean() - shift) < 4.0 * standard_error


def test_cross_block_factor(pure22):
    dims = admissible_dims(0.5, 102)
    factor = variance_factor(pure22, dims)
    assert factor[0, dims.n1] == pytest.approx(1.009950, abs=1e-6)
    assert np.array_equal(factor, factor.T)


def test_coupled_construction(pure22):
    dims = admissible_dims(0.5, 102)
    u = FieldPoint(-1.0)
    h = sample_h(pure22, dims, u, seed=5)
    h_prime = sample_h_prime(pure22, dims, u, seed=5)
    noise = h - np.diag(shift_diagonal(pure22, dims, u))
    expected = variance_factor(pure22, dims) * noise + np.diag(limit_shift_diagonal(pure22, dims, u))
    assert np.allclose(h_prime, expected, atol=1e-12)
    pair = sample_pair(pure22, dims, u, seed=5)
    assert np.array_equal(pair[0], h)
    assert np.allclose(pair[1], h_prime, atol=1e-14)


def test_limit_stability_norm(pure22):
    dims = admissible_dims(0.5, 102)
    finite, limit = stability_operator_norm(pure22, dims)
    assert limit == pytest.approx(12.0, rel=1e-12)
    assert finite == pytest.approx(12.0, rel=0.1)


def test_spectrum_basics():
    assert np.array_equal(spectrum(np.eye(4)).eigenvalues, np.ones(4))
    result = spectrum(np.diag([2.0, -1.0, 0.0]))
    assert np.allclose(result.eigenvalues, [-1.0, 0.0, 2.0])
    assert result.lambda_min == pytest.approx(-1.0)
    assert result.lambda_max == pytest.approx(2.0)
    with pytest.raises(ConfigurationError):
        spectrum(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_trace_consistency(mixture):
    dims = admissible_dims(0.5, 82)
    matrix = sample_h(mixture, dims, FieldPoint(0.3, -0.2, 0.1), seed=3)
    assert spectrum(matrix).eigenvalues.sum() == pytest.approx(np.trace(matrix), abs=1e-8 * dims.N)


def test_wasserstein_elementary():
    assert wasserstein1([0.0], [1.0]) == pytest.approx(1.0)
    values = np.array([0.1, -0.4, 2.0])
    assert wasserstein1(values, values) == 0.0


def test_quantile_spectrum_is_close(pure22):
    limit = density(pure22, FieldPoint(), resolution=512)
    cdf = limit.cdf() / limit.cdf()[-1]
    levels = (np.arange(500) + 0.5) / 500
    quantiles = EmpiricalSpectrum(np.interp(levels, cdf, limit.grid))
    spacing = limit.grid[1] - limit.grid[0]
    assert w1_distance(quantiles, limit) < spacing
    assert bl_distance(quantiles, limit) <= w1_distance(quantiles, limit)
    assert kolmogorov_distance(quantiles, limit) <= 2.0 / 500


def test_operator_norm_difference():
    first = np.diag([1.0, 2.0, 3.0])
    second = np.diag([1.0, 2.5, 1.0])
    assert operator_norm_difference(first, second) == pytest.approx(2.0)


def test_prefactor_converges(pure22):
    limit = prefactor_limit(pure22)
    near = finite_n_prefactor_log(admissible_dims(0.5, 10002), pure22)
    nearer = finite_n_prefactor_log(admissible_dims(0.5, 100002), pure22)
    assert abs(near - limit) < 2.5e-3
    assert abs(nearer - limit) < abs(near - limit)


@pytest.mark.parametrize("n", [4, 6, 12, 1002])
def test_prefactor_finite(pure22, n):
    assert math.isfinite(finite_n_prefactor_log(admissible_dims(0.5, n), pure22))


def test_log_determinant_reproducible(pure22):
    dims = admissible_dims(0.5, 62)
    u = FieldPoint(-2.5)
    first = mc_log_determinant(pure22, dims, u, samples=1, seed=9)
    assert first == mc_log_determinant(pure22, dims, u, samples=1, seed=9)
    assert first[1] == 0.0
    with pytest.raises(ConfigurationError):
        mc_log_determinant(pure22, dims, u, samples=0, seed=9)


def test_eigenvalue_dump(tmp_path):
    path = write_eigenvalues(
        [EmpiricalSpectrum(np.array([-1.0, 2.0]))], ["u=(0,0,0)/sample=0"], tmp_path / "eig.csv"
    )
    assert path.read_text().splitlines() == [
        "label,index,lambda",
        "u=(0,0,0)/sample=0,0,-1",
        "u=(0,0,0)/sample=0,1,2",
    ]


@pytest.mark.slow
@pytest.mark.parametrize("u0", [0.0, -1.0, -2.5])
def test_esd_convergence(pure22, u0):
    u = FieldPoint(u0)
    limit = density(pure22, u)
    dims = admissible_dims(0.5, 1002)
    assert w1_distance(spectrum(sample_h(pure22, dims, u, seed=1)), limit) <= 0.10


@pytest.mark.slow
def test_esd_does_not_worsen_with_n(pure22):
    limit = density(pure22, FieldPoint())
    small, large = admissible_dims(0.5, 1002), admissible_dims(0.5, 2002)
    seeds = range(5)
    first = np.mean([w1_distance(spectrum(sample_h(pure22, small, FieldPoint(), s)), limit) for s in seeds])
    second = np.mean([w1_distance(spectrum(sample_h(pure22, large, FieldPoint(), s)), limit) for s in seeds])
    assert second <= first


@pytest.mark.slow
def test_coupling_is_small(pure22):
    dims = admissible_dims(0.5, 400)
    u = FieldPoint(-1.0)
    for seed in range(20):
        h, h_prime = sample_pair(pure22, dims, u, seed)
        assert operator_norm_difference(h, h_prime) < 0.5


@pytest.mark.slow
def test_coupling_shrinks_with_n(pure22):
    u = FieldPoint(-1.0)

    def mean_gap(n: int) -> float:
        dims = admissible_dims(0.5, n)
        return np.mean([operator_norm_difference(*sample_pair(pure22, dims, u, s)) for s in range(10)])

    assert mean_gap(802) < mean_gap(202)


@pytest.mark.slow
def test_symmetry_in_distribution(pure22, mixture):
    dims = admissible_dims(0.5, 1002)
    for params, u in ((pure22, FieldPoint(-0.8)), (mixture, FieldPoint(-0.3, 0.5, 0.5))):
        forward = spectrum(sample_h(params, dims, u, seed=21))
        backward = spectrum(sample_h(params, dims, -u, seed=22)).reflect()
        assert wasserstein1(forward.eigenvalues, backward.eigenvalues) <= 0.1


@pytest.mark.slow
def test_extreme_eigenvalues(pure22):
    dims = admissible_dims(0.5, 1002)
    report = edge_check(pure22, dims, FieldPoint(), samples=10, seed=3)
    assert report.left_edge == pytest.approx(-4.0 * SQRT3, abs=1e-6)
    assert report.passed
    assert report.max_deviation <= 0.15 and report.min_deviation <= 0.15
    shifted = edge_check(pure22, dims, FieldPoint(-2.5), samples=3, seed=4)
    assert shifted.left_edge == pytest.approx(10.0 - 4.0 * SQRT3, abs=1e-6)
    assert shifted.fraction_within == 1.0


@pytest.mark.slow
def test_log_determinant_matches_log_potential(pure22):
    dims = admissible_dims(0.5, 402)
    mean, std_error = mc_log_determinant(pure22, dims, FieldPoint(-2.5), samples=50, seed=13)
    assert mean == pytest.approx(log_potential_of(pure22, FieldPoint(-2.5)), abs=0.05)
    assert std_error < 0.01
    bulk, _ = mc_log_determinant(pure22, dims, FieldPoint(), samples=50, seed=14)
    assert bulk == pytest.approx(0.5 * math.log(12.0) - 0.5, abs=0.08)


@pytest.mark.slow
def test_verification_suite(pure22):
    report = run_verification(pure22, N=1002, samples=5, seed=7)
    assert report.passed, report.failed
    names = [check.name for check in report.checks]
    assert "prefactor" in names
    assert any(name.startswith("esd_w1") for name in names)
    assert len(report.spectra) == 10
    payload = report.to_dict()
    assert payload["dims"] == {"N": 1002, "N1": 501, "N2": 501, "gamma": 0.5}
    assert all(set(check) == {"name", "value", "oracle", "tolerance", "passed"} for check in payload["checks"])
    first, second = report.spectra[0], report.spectra[5]
    assert np.ptp(second.eigenvalues - first.eigenvalues) > 1e-3


def test_field_points_use_independent_draws(pure22):
    dims = admissible_dims(0.5, 102)
    seeds = [field_seed(7, k) for k in range(3)]
    assert len(set(seeds)) == 3
    assert field_seed(7, 1) == seeds[1]
    base = spectrum(sample_h(pure22, dims, FieldPoint(), seeds[0])).eigenvalues
    moved = spectrum(sample_h(pure22, dims, FieldPoint(-2.5), seeds[1])).eigenvalues
    # equal seeds would make a pure-model shift an exact translate
    assert np.ptp(moved - base) > 1e-3


def test_w1_rejects_spectrum_outside_window(pure22):
    limit = density(pure22, FieldPoint(), resolution=256)
    cdf = limit.cdf() / limit.cdf()[-1]
    quantiles = np.interp((np.arange(100) + 0.5) / 100, cdf, limit.grid)
    near = EmpiricalSpectrum(np.append(quantiles, limit.grid[-1] + 0.25))
    assert w1_distance(near, limit) < 0.2
    with pytest.raises(WindowTooSmallError):
        w1_distance(EmpiricalSpectrum(quantiles + 20.0), limit)
    with pytest.raises(WindowTooSmallError):
        bl_distance(EmpiricalSpectrum(quantiles - 20.0), limit)
