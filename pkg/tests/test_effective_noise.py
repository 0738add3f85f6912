"""Effective-noise search, grid oracle and Monte Carlo quantile"""

import numpy as np
import pytest

from src.bounds.subgaussian import gaussian_subgauss_params, rademacher_subgauss_params
from src.config.schema import NoiseSearchOptions
from src.effective_noise import (
    brute_force_sup_tiny,
    empirical_quantile,
    estimate_quantile,
    grid_slack,
    maximize_inner_product,
    quantile_confidence_interval,
    quantile_rank,
    unit_ball_grid,
)
from src.models.network import Architecture, Dataset
from src.regularizers.l1 import RegularizerKind, value

OPTS = NoiseSearchOptions(restarts=8, max_iters=100)
QUICK = NoiseSearchOptions(restarts=2, max_iters=20)


class TestSearch:

    def test_single_point(self, tiny_arch, relu):
        data = Dataset.design_only(np.array([[1.0]]))
        omega, z = maximize_inner_product(data, np.array([1.0]), tiny_arch, relu, "sum_l1", OPTS)
        assert z == pytest.approx(0.5, abs=1e-3)
        assert value(RegularizerKind.SUM_L1, omega) <= 1.0 + 1e-9

    def test_zero_noise(self, small_arch, relu, small_dataset):
        _, z = maximize_inner_product(small_dataset, np.zeros(small_dataset.n), small_arch, relu, "sum_l1", QUICK)
        assert z == 0.0

    def test_linear_in_noise_scale(self, small_arch, relu, small_dataset, rng):
        u = rng.standard_normal(small_dataset.n)
        _, z1 = maximize_inner_product(small_dataset, u, small_arch, relu, "sum_l1", QUICK, seed=4, key=1)
        _, z2 = maximize_inner_product(small_dataset, 2.0 * u, small_arch, relu, "sum_l1", QUICK, seed=4, key=1)
        assert z2 == 2.0 * z1

    def test_warm_start_not_worse(self, small_arch, relu, small_dataset, rng):
        u = rng.standard_normal(small_dataset.n)
        omega, z = maximize_inner_product(small_dataset, u, small_arch, relu, "sum_l1", OPTS, seed=1)
        _, z_warm = maximize_inner_product(
            small_dataset, u, small_arch, relu, "sum_l1", QUICK, seed=9, init=omega,
        )
        assert z_warm >= z * (1.0 - 1e-9)

    def test_length_mismatch(self, small_arch, relu, small_dataset):
        with pytest.raises(ValueError):
            maximize_inner_product(small_dataset, np.ones(3), small_arch, relu, "sum_l1", QUICK)


class TestBruteForce:

    def test_matches_search(self, tiny_arch, relu):
        opts = NoiseSearchOptions(restarts=32, max_iters=200)
        rng = np.random.default_rng(21)
        data = Dataset.design_only(rng.standard_normal((15, 1)))
        for _ in range(5):
            u = rng.standard_normal(15)
            brute = brute_force_sup_tiny(data, u, tiny_arch, relu, grid_resolution=101)
            _, z = maximize_inner_product(data, u, tiny_arch, relu, "sum_l1", opts)
            slack = grid_slack(tiny_arch, relu, data, u, 101)
            assert z <= brute + slack + 1e-12
            assert z >= brute * (1.0 - 1e-4) - 1e-9

    def test_refinement_monotone(self, tiny_arch, relu, rng):
        data = Dataset.design_only(rng.standard_normal((10, 1)))
        u = rng.standard_normal(10)
        values = [brute_force_sup_tiny(data, u, tiny_arch, relu, m) for m in (11, 21, 41)]
        assert values[0] <= values[1] <= values[2]

    def test_grid_inside_ball(self, tiny_arch):
        points = unit_ball_grid(tiny_arch, "sum_l1", 21)
        assert np.all(np.abs(points).sum(axis=1) <= 1.0 + 1e-12)
        assert points.shape[1] == 2

    def test_zero_noise(self, tiny_arch, relu):
        data = Dataset.design_only(np.ones((4, 1)))
        assert brute_force_sup_tiny(data, np.zeros(4), tiny_arch, relu, 11) == 0.0

    def test_too_large(self, small_arch, relu, small_dataset):
        with pytest.raises(ValueError):
            brute_force_sup_tiny(small_dataset, np.ones(small_dataset.n), small_arch, relu, 11)

    def test_bad_resolution(self, tiny_arch):
        with pytest.raises(ValueError):
            unit_ball_grid(tiny_arch, "sum_l1", 1)


class TestQuantile:

    def test_rank(self):
        assert quantile_rank(0.05, 200) == 190
        assert quantile_rank(0.1, 10) == 9
        assert quantile_rank(0.5, 1) == 1

    def test_empirical_quantile(self):
        values = np.arange(20.0, 0.0, -1.0)
        assert empirical_quantile(values, 0.1) == 18.0
        with pytest.raises(ValueError):
            empirical_quantile([], 0.1)

    def test_confidence_interval(self, rng):
        z = rng.standard_normal(200)
        low, high = quantile_confidence_interval(z, 0.05)
        q = empirical_quantile(z, 0.05)
        assert low <= q <= high
        with pytest.raises(ValueError):
            quantile_confidence_interval(z, 0.05, confidence=1.0)

    def test_estimate(self, small_arch, relu, small_dataset):
        noise = gaussian_subgauss_params(0.5)
        report = estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", t=0.2, reps=10, opts=QUICK, seed=5)
        assert len(report.z_values) == 10
        assert report.lambda_hat == empirical_quantile(report.z_values, 0.2)
        assert report.ci_low <= report.lambda_hat <= report.ci_high
        assert all(z >= 0.0 for z in report.z_values)
        assert all(env >= z for env, z in zip(report.envelopes, report.z_values))

    def test_too_few_reps(self, small_arch, relu, small_dataset):
        noise = gaussian_subgauss_params(0.5)
        with pytest.raises(ValueError):
            estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", t=0.1, reps=5, opts=QUICK)
        with pytest.raises(ValueError):
            estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", t=1.0, reps=5, opts=QUICK)

    def test_zero_noise(self, small_arch, relu, small_dataset):
        report = estimate_quantile(
            small_dataset, gaussian_subgauss_params(0.0), small_arch, relu, "sum_l1", t=0.5, reps=2, opts=QUICK,
        )
        assert report.lambda_hat == 0.0

    @pytest.mark.parametrize("t", [0.05, 0.5, 0.9])
    def test_rademacher_single_point(self, tiny_arch, relu, t):
        # |u| = 1 on a single input, so every replicate attains 0.5
        data = Dataset.design_only(np.array([[1.0]]))
        report = estimate_quantile(data, rademacher_subgauss_params(1.0), tiny_arch, relu, "sum_l1", t, 20, OPTS, seed=2)
        np.testing.assert_allclose(report.z_values, 0.5, atol=1e-3)
        assert report.lambda_hat == pytest.approx(0.5, abs=1e-3)

    def test_nonincreasing_in_level(self, small_arch, relu, small_dataset, rng):
        z = rng.exponential(size=50)
        levels = [0.02, 0.05, 0.1, 0.25, 0.5, 0.9]
        values = [empirical_quantile(z, t) for t in levels]
        assert all(a >= b for a, b in zip(values, values[1:]))
        noise = gaussian_subgauss_params(0.5)
        low = estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", 0.1, 20, QUICK, seed=6)
        high = estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", 0.5, 20, QUICK, seed=6)
        assert low.z_values == high.z_values
        assert low.lambda_hat >= high.lambda_hat

    @pytest.mark.parametrize("warm_start", [True, False])
    def test_workers_do_not_change_result(self, small_arch, relu, small_dataset, warm_start):
        noise = gaussian_subgauss_params(1.0)
        serial = NoiseSearchOptions(restarts=2, max_iters=20, warm_start=warm_start, n_jobs=1)
        parallel = NoiseSearchOptions(restarts=2, max_iters=20, warm_start=warm_start, n_jobs=2)
        a = estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", 0.25, 8, serial, seed=3)
        b = estimate_quantile(small_dataset, noise, small_arch, relu, "sum_l1", 0.25, 8, parallel, seed=3)
        assert a.z_values == b.z_values
        assert a.lambda_hat == b.lambda_hat
