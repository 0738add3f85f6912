"""Closed-form bounds and sub-Gaussian constants"""

import numpy as np
import pytest

from src.bounds import (
    GaussianSampler,
    NoiseKind,
    RademacherSampler,
    SubGaussianSpec,
    UniformSampler,
    build_bound_report,
    c_lip1,
    depth_factor,
    dudley_bound,
    entropy_bound,
    gaussian_subgauss_params,
    generalization_bound,
    lipschitz_empirical,
    lipschitz_pointwise,
    lipschitz_unit_ball,
    parametric_bound,
    rademacher_subgauss_params,
    reports_to_frame,
    subgauss_params,
    subgaussian_tail,
    tuning_lambda,
    uniform_subgauss_params,
    unit_ball_envelope,
    BOUND_COLUMNS,
)
from src.models.network import Architecture, Dataset, NetworkParams
from src.network.forward import forward, forward_batch
from src.regularizers.l1 import RegularizerKind, get_regularizer

LAMBDA_EXAMPLE = 2.0 * np.sqrt(np.log(4.0)) * np.log(200.0) / 10.0


class TestTuningLambda:

    def test_example(self):
        lam = tuning_lambda(n=100, P=2, L=1, a_lip=1.0, x_norm_n=1.0)
        assert lam == pytest.approx(LAMBDA_EXAMPLE, rel=1e-12)
        assert lam == pytest.approx(1.2477, abs=1e-4)

    def test_scales_with_a(self):
        base = tuning_lambda(100, 2, 1, 1.0, 1.0)
        assert tuning_lambda(100, 2, 1, 1.0, 1.0, a=3.0) == pytest.approx(3.0 * base)

    def test_decreases_in_n(self):
        values = [tuning_lambda(n, 50, 3, 1.0, 1.0) for n in (100, 1000, 10000)]
        assert values[0] > values[1] > values[2]

    def test_invalid(self):
        with pytest.raises(ValueError):
            tuning_lambda(0, 2, 1, 1.0, 1.0)
        with pytest.raises(ValueError):
            tuning_lambda(100, 2, 1, 1.0, 0.0)

    def test_depth_factor(self):
        assert depth_factor(1, 1.0) == pytest.approx(2.0)
        assert depth_factor(4, 1.0) == pytest.approx(0.5 ** 4 * 2.0)
        assert depth_factor(8, 1.0) < depth_factor(4, 1.0)
        with pytest.raises(ValueError):
            depth_factor(0, 1.0)

    def test_parametric_bound(self):
        assert parametric_bound(2.0, 100, 2, 1, 1.0, 1.0) == pytest.approx(4.0 * LAMBDA_EXAMPLE)
        assert parametric_bound(0.0, 100, 2, 1, 1.0, 1.0) == 0.0
        with pytest.raises(ValueError):
            parametric_bound(-1.0, 100, 2, 1, 1.0, 1.0)

    def test_generalization_bound(self):
        base = generalization_bound(0.0, 0.0, 100, 2, 1, 1.0, 1.0, x_fourth_sum=100.0)
        assert base == 0.0
        value = generalization_bound(1.0, 2.0, 100, 2, 1, 1.0, 1.0, x_fourth_sum=100.0)
        assert value > 1.01 + 2.0 * LAMBDA_EXAMPLE


class TestComplexity:

    def test_entropy_example(self):
        assert entropy_bound(4.0, 4.0, 2) == pytest.approx(6.0 * np.log(2.0 * np.e))
        assert entropy_bound(4.0, 4.0, 2) == pytest.approx(10.159, abs=1e-3)

    def test_entropy_zero_constant(self):
        assert entropy_bound(0.3, 0.0, 10) == 0.0

    def test_entropy_nonincreasing_in_r(self):
        values = [entropy_bound(r, 2.0, 30) for r in (0.1, 0.2, 0.5, 1.0, 2.0)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_entropy_invalid(self):
        with pytest.raises(ValueError):
            entropy_bound(0.0, 1.0, 2)
        with pytest.raises(ValueError):
            entropy_bound(1.0, -1.0, 2)

    def test_dudley_example(self):
        expected = 10.0 * np.sqrt(np.log(2.0 * np.e)) * np.log(8.0)
        assert dudley_bound(4.0, 1.0, 4.0, 2) == pytest.approx(expected)
        assert dudley_bound(4.0, 1.0, 4.0, 2) == pytest.approx(27.06, abs=1e-2)

    def test_dudley_upper_limit_is_zero(self):
        assert dudley_bound(32.0, 1.0, 4.0, 2) == pytest.approx(0.0)

    def test_dudley_range(self):
        with pytest.raises(ValueError):
            dudley_bound(0.0, 1.0, 4.0, 2)
        with pytest.raises(ValueError):
            dudley_bound(33.0, 1.0, 4.0, 2)


class TestLipschitz:

    def test_c_lip1_example(self):
        assert c_lip1(1.0, 1, 1.0) == pytest.approx(4.0)

    def test_pointwise_example(self, tiny_arch, relu, example_theta):
        gamma = NetworkParams(tiny_arch, (np.array([[1.0]]), np.array([[1.0]])))
        assert lipschitz_pointwise(example_theta, gamma, relu, np.array([1.0])) == pytest.approx(6.0)

    def test_pointwise_inequality(self, small_arch, relu, tanh, rng):
        for act in (relu, tanh):
            for _ in range(200):
                theta = NetworkParams.random_normal(small_arch, rng)
                gamma = NetworkParams.random_normal(small_arch, rng)
                x = rng.standard_normal(3)
                lhs = abs(forward(theta, act, x) - forward(gamma, act, x))
                rhs = lipschitz_pointwise(theta, gamma, act, x) * np.linalg.norm((theta - gamma).flatten())
                assert lhs <= rhs * (1.0 + 1e-10)

    def test_empirical_inequality(self, small_arch, relu, small_dataset, rng):
        for _ in range(100):
            theta = NetworkParams.random_normal(small_arch, rng)
            gamma = NetworkParams.random_normal(small_arch, rng)
            diff = forward_batch(theta, relu, small_dataset.inputs) - forward_batch(gamma, relu, small_dataset.inputs)
            lhs = np.sqrt(np.mean(diff ** 2))
            rhs = lipschitz_empirical(theta, gamma, relu, small_dataset) * np.linalg.norm((theta - gamma).flatten())
            assert lhs <= rhs * (1.0 + 1e-10)

    def test_unit_ball_bounded(self, small_arch, relu, small_dataset, rng):
        reg = get_regularizer(RegularizerKind.SUM_L1)
        c = lipschitz_unit_ball(relu, small_arch.depth, small_dataset)
        assert c == pytest.approx(c_lip1(1.0, small_arch.depth, small_dataset.inputs_norm))
        for _ in range(200):
            omega = reg.random_direction(small_arch, rng)
            g = forward_batch(omega, relu, small_dataset.inputs)
            assert np.sqrt(np.mean(g ** 2)) <= c

    def test_envelope(self, relu):
        assert unit_ball_envelope("sum_l1", relu, 1, 1.0) == pytest.approx(4.0)
        assert unit_ball_envelope("max_layer_l1", relu, 2, 1.0) == pytest.approx(2.0 * np.sqrt(2.0))

    def test_dimension_mismatch(self, example_theta, relu):
        with pytest.raises(ValueError):
            lipschitz_pointwise(example_theta, example_theta, relu, np.array([1.0, 2.0]))
        data = Dataset(np.ones((3, 2)), np.zeros(3))
        with pytest.raises(ValueError):
            lipschitz_empirical(example_theta, example_theta, relu, data)


class TestSubGaussian:

    def test_gaussian_constants(self):
        spec = gaussian_subgauss_params(1.0)
        assert spec.K == pytest.approx(2.0)
        assert spec.gamma_sq == pytest.approx(4.0 * (np.sqrt(2.0) - 1.0))
        assert spec.kind == NoiseKind.GAUSSIAN

    def test_rademacher_constants(self):
        spec = rademacher_subgauss_params(0.5)
        assert spec.K == pytest.approx(1.0)
        assert spec.gamma_sq == pytest.approx(np.exp(0.25) - 1.0)

    def test_uniform_constants(self):
        spec = uniform_subgauss_params(1.0)
        assert spec.K == pytest.approx(2.0)
        assert 0.0 < spec.gamma_sq < gaussian_subgauss_params(1.0).gamma_sq
        assert spec.variance == pytest.approx(1.0 / 3.0)

    def test_zero_scale(self):
        spec = gaussian_subgauss_params(0.0)
        assert spec.K == 1.0
        assert spec.gamma == 0.0
        np.testing.assert_array_equal(spec.sample(np.random.default_rng(0), 5), np.zeros(5))

    def test_insufficient_gamma_rejected(self):
        with pytest.raises(ValueError):
            SubGaussianSpec(K=2.0, gamma=0.1, sampler=GaussianSampler(1.0))

    def test_by_name(self):
        assert subgauss_params("rademacher", 1.0).kind == NoiseKind.RADEMACHER
        assert subgauss_params("uniform", 1.0).kind == NoiseKind.UNIFORM
        with pytest.raises(ValueError):
            subgauss_params("cauchy", 1.0)

    def test_samplers(self, rng):
        u = RademacherSampler(0.7).sample(rng, 1000)
        assert set(np.unique(u)) == {-0.7, 0.7}
        v = UniformSampler(2.0).sample(rng, 1000)
        assert np.all(np.abs(v) <= 2.0)
        assert UniformSampler(2.0).variance == pytest.approx(4.0 / 3.0)
        assert GaussianSampler(3.0).variance == pytest.approx(9.0)

    def test_tail_range(self):
        spec = gaussian_subgauss_params(1.0)
        with pytest.raises(ValueError):
            subgaussian_tail(spec.gamma_sq, 10, spec.K, spec.gamma)
        assert 0.0 < subgaussian_tail(2.0 * spec.gamma_sq, 10, spec.K, spec.gamma) < 1.0

    def test_tail_monte_carlo(self):
        spec = gaussian_subgauss_params(1.0)
        rng = np.random.default_rng(7)
        n, v = 5, 3.5
        means = np.mean(rng.standard_normal((20000, n)) ** 2, axis=1)
        assert np.mean(means >= v) <= subgaussian_tail(v, n, spec.K, spec.gamma)


class TestBoundReport:

    def test_example_row(self):
        report = build_bound_report(100, 2, 1, 1.0, 1.0, r_grid=[4.0])
        assert report.lambda_theoretical == pytest.approx(LAMBDA_EXAMPLE)
        assert report.c_lip1 == pytest.approx(4.0)
        assert report.delta == pytest.approx(4.0)
        assert report.dudley == pytest.approx(27.06, abs=1e-2)
        assert report.entropy_at[0][1] == pytest.approx(6.0 * np.log(2.0 * np.e))
        assert report.parametric_bound(2.0) == pytest.approx(4.0 * LAMBDA_EXAMPLE)

    def test_frame(self):
        reports = [build_bound_report(n, 2, 1, 1.0, 1.0) for n in (100, 1000)]
        frame = reports_to_frame(reports)
        assert list(frame.columns) == BOUND_COLUMNS
        assert frame["lambda"].iloc[0] > frame["lambda"].iloc[1]
