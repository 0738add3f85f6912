"""Objective, scale step, alternating fit and evaluation"""

from dataclasses import replace

import numpy as np
import pytest

from src.config.schema import FitOptions
from src.estimator import (
    fit,
    objective,
    optimal_scale,
    oracle_bound,
    prediction_error,
    risk_estimate,
)
from src.estimator.projected import projected_descent
from src.models.activations import ActivationKind, ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams, ScaledNetwork
from src.network.forward import forward_batch
from src.regularizers.l1 import RegularizerKind, project_l1_ball, value
from src.utils.errors import DimensionMismatchError

FAST = FitOptions(max_outer_iters=40, max_inner_iters=10, restarts=3, seed=11)


@pytest.fixture
def teacher_data(rng):
    """Noisy sample of a 2-3-1 relu teacher"""
    arch = Architecture((2, 3, 1))
    relu = ActivationSpec(ActivationKind.RELU)
    omega = NetworkParams.random_normal(arch, rng)
    omega = omega.scaled(1.0 / value(RegularizerKind.SUM_L1, omega))
    teacher = ScaledNetwork(3.0, omega)
    X = rng.standard_normal((60, 2))
    truth = teacher.kappa * forward_batch(omega, relu, X)
    return arch, relu, teacher, Dataset(X, truth + 0.1 * rng.standard_normal(60), truth)


class TestObjective:

    def test_known_value(self, example_theta, relu):
        data = Dataset(np.array([[1.0], [-1.0]]), np.array([6.0, 1.0]))
        net = ScaledNetwork(1.0, example_theta)
        # residuals 0 and 1
        assert objective(net, relu, data, lam=0.5) == pytest.approx(0.5 + 0.5)

    def test_scale_formula(self, example_theta, relu):
        data = Dataset(np.array([[1.0], [2.0]]), np.array([3.0, 6.0]))
        # g = (6, 12): ((2/n) sum y g - lam) / ((2/n) sum g^2)
        expected = (90.0 - 0.5) / 180.0
        assert optimal_scale(example_theta, relu, data, lam=0.5) == pytest.approx(expected)

    def test_scale_clipped_at_zero(self, example_theta, relu):
        data = Dataset(np.array([[1.0]]), np.array([-1.0]))
        assert optimal_scale(example_theta, relu, data, lam=0.0) == 0.0

    def test_zero_outputs(self, example_theta, relu):
        data = Dataset(np.array([[-1.0], [-2.0]]), np.array([1.0, 1.0]))
        assert optimal_scale(example_theta, relu, data, lam=0.1) == 0.0

    def test_negative_lambda(self, example_theta, relu):
        data = Dataset(np.array([[1.0]]), np.array([1.0]))
        with pytest.raises(ValueError):
            objective(ScaledNetwork(1.0, example_theta), relu, data, lam=-1.0)
        with pytest.raises(ValueError):
            optimal_scale(example_theta, relu, data, lam=-1.0)

    def test_scale_beats_grid(self, small_arch, relu, rng):
        for _ in range(100):
            omega = NetworkParams.random_normal(small_arch, rng)
            omega = omega.scaled(1.0 / value(RegularizerKind.SUM_L1, omega))
            data = Dataset(rng.standard_normal((20, 3)), rng.standard_normal(20))
            lam = rng.uniform(0.0, 0.5)
            k = optimal_scale(omega, relu, data, lam)
            best = objective(ScaledNetwork(k, omega), relu, data, lam)
            grid = np.arange(0.0, max(3.0 * k, 1.0), 1e-2)
            values = [objective(ScaledNetwork(c, omega), relu, data, lam) for c in grid]
            assert best <= min(values) + 1e-12


class TestProjectedDescent:

    def test_quadratic_on_l1_ball(self):
        target = np.array([2.0, 0.5, -0.1])
        f = lambda w: float(np.sum((w - target) ** 2))
        fg = lambda w: (f(w), 2.0 * (w - target))
        w, _, decrease = projected_descent(
            fg, f, project_l1_ball, np.zeros(3), 1.0,
            max_iters=200, backtracking=0.5, armijo=1e-4, abs_tol=1e-14, rel_tol=1e-14,
        )
        np.testing.assert_allclose(w, project_l1_ball(target), atol=1e-8)
        assert decrease > 0


class TestFit:

    def test_trace_monotone_and_feasible(self, teacher_data):
        arch, relu, _, data = teacher_data
        result = fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.05, opts=FAST)
        trace = np.array(result.trace)
        assert np.all(np.diff(trace) <= 1e-12)
        assert result.kappa >= 0
        assert value(RegularizerKind.SUM_L1, result.net.omega) <= 1.0 + 1e-9
        assert result.objective == pytest.approx(objective(result.net, relu, data, 0.05), rel=1e-12)

    def test_winner_is_best_restart(self, teacher_data):
        arch, relu, _, data = teacher_data
        result = fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.05, opts=FAST)
        finite = [o for o in result.restart_objectives if np.isfinite(o)]
        assert result.objective == min(finite)
        assert result.restart_objectives[result.restart_index] == result.objective

    def test_not_worse_than_zero_network(self, teacher_data):
        arch, relu, _, data = teacher_data
        result = fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.01, opts=FAST)
        assert result.objective <= np.mean(data.responses ** 2)
        assert result.trace[0] >= result.trace[-1]

    def test_huge_lambda_gives_zero_scale(self, teacher_data):
        arch, relu, _, data = teacher_data
        result = fit(data, arch, relu, RegularizerKind.SUM_L1, lam=1e6, opts=FAST)
        assert result.kappa == 0.0
        assert result.objective == pytest.approx(np.mean(data.responses ** 2))

    def test_max_layer_regularizer(self, teacher_data):
        arch, relu, _, data = teacher_data
        result = fit(data, arch, relu, "max_layer_l1", lam=0.05, opts=FAST)
        assert value(RegularizerKind.MAX_LAYER_L1, result.net.omega) <= 1.0 + 1e-9

    def test_deterministic_across_workers(self, teacher_data):
        arch, relu, _, data = teacher_data
        serial = fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.05, opts=FAST)
        parallel = fit(
            data, arch, relu, RegularizerKind.SUM_L1, lam=0.05,
            opts=replace(FAST, n_jobs=2),
        )
        assert serial.objective == parallel.objective
        assert serial.restart_index == parallel.restart_index
        np.testing.assert_array_equal(serial.net.omega.flatten(), parallel.net.omega.flatten())

    def test_noiseless_teacher_recovered(self, rng):
        arch = Architecture((2, 2, 1))
        act = ActivationSpec(ActivationKind.LEAKY_RELU, 0.1)
        omega = NetworkParams(arch, (np.array([[0.3, -0.1], [0.1, 0.2]]), np.array([[0.2, -0.1]])))
        X = rng.standard_normal((40, 2))
        truth = 2.0 * forward_batch(omega, act, X)
        data = Dataset(X, truth, truth)
        opts = FitOptions(max_outer_iters=2000, max_inner_iters=100, restarts=16, seed=3)
        result = fit(data, arch, act, RegularizerKind.SUM_L1, lam=0.0, opts=opts)
        assert prediction_error(result.net, act, data) ** 2 <= 1e-4 * np.var(truth)

    def test_low_signal_responses_keep_iterating(self, teacher_data):
        arch, relu, _, data = teacher_data
        tiny = Dataset(data.inputs, 1e-4 * data.responses, 1e-4 * data.truth)
        result = fit(tiny, arch, relu, RegularizerKind.SUM_L1, lam=0.0, opts=FAST)
        assert result.iterations > 1
        assert result.objective < np.mean(tiny.responses ** 2)

    def test_starting_direction_must_be_feasible(self, teacher_data):
        arch, relu, _, data = teacher_data
        with pytest.raises(ValueError, match="init_scale"):
            fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.1, opts=replace(FAST, init_scale=1.5))
        result = fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.1, opts=replace(FAST, init_scale=0.5))
        assert value(RegularizerKind.SUM_L1, result.net.omega) <= 1.0 + 1e-9

    def test_validation(self, teacher_data):
        arch, relu, _, data = teacher_data
        with pytest.raises(ValueError):
            fit(data, arch, relu, RegularizerKind.SUM_L1, lam=-0.1, opts=FAST)
        with pytest.raises(DimensionMismatchError):
            fit(data, Architecture((3, 2, 1)), relu, RegularizerKind.SUM_L1, lam=0.1, opts=FAST)
        with pytest.raises(ValueError):
            fit(data, arch, relu, RegularizerKind.SUM_L1, lam=0.1, opts=FitOptions(restarts=0))


class TestEvaluation:

    def test_prediction_error(self, example_theta, relu):
        data = Dataset(np.array([[1.0], [2.0]]), np.zeros(2), truth=np.array([6.0, 10.0]))
        net = ScaledNetwork(1.0, example_theta)
        assert prediction_error(net, relu, data) == pytest.approx(np.sqrt(2.0))

    def test_prediction_error_needs_truth(self, example_theta, relu):
        data = Dataset(np.array([[1.0]]), np.zeros(1))
        with pytest.raises(ValueError):
            prediction_error(ScaledNetwork(1.0, example_theta), relu, data)

    def test_oracle_bound(self, tiny_arch, relu):
        omega = NetworkParams(tiny_arch, (np.array([[0.5]]), np.array([[0.5]])))
        data = Dataset(np.array([[1.0]]), np.zeros(1), truth=np.array([6.0]))
        # g_Omega(1) = 0.25, so kappa = 24 reproduces the truth
        exact = ScaledNetwork(24.0, omega)
        zero = ScaledNetwork(0.0, omega)
        assert oracle_bound([exact, zero], relu, data, lam=0.1) == pytest.approx(4.8)
        assert oracle_bound([exact, zero], relu, data, lam=1.0) == pytest.approx(36.0)
        with pytest.raises(ValueError):
            oracle_bound([], relu, data, lam=1.0)

    def test_oracle_bound_rejects_outside_ball(self, example_theta, relu):
        data = Dataset(np.array([[1.0]]), np.zeros(1), truth=np.array([6.0]))
        # h(([2],[3])) = 5
        with pytest.raises(ValueError, match="unit ball"):
            oracle_bound([ScaledNetwork(1.0, example_theta)], relu, data, lam=1.0)
        # under max_layer_l1 the value is 3, still outside
        with pytest.raises(ValueError):
            oracle_bound([ScaledNetwork(1.0, example_theta)], relu, data, lam=1.0, h="max_layer_l1")
        # zero scale computes the zero function whatever the direction
        assert oracle_bound([ScaledNetwork(0.0, example_theta)], relu, data, lam=1.0) == pytest.approx(36.0)

    def test_risk_estimate(self, example_theta, relu):
        holdout = Dataset(np.array([[1.0], [-1.0]]), np.array([5.0, 1.0]))
        assert risk_estimate(ScaledNetwork(1.0, example_theta), relu, holdout) == pytest.approx(1.0)
