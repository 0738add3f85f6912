"""
Full-size statistical checks

Deselected by default; run with `pytest -m slow`.
"""

from pathlib import Path

import numpy as np
import pytest

from src.bounds import c_lip1, gaussian_subgauss_params, lipschitz_pointwise, subgaussian_tail
from src.config import load_config
from src.config.schema import NoiseSearchOptions
from src.effective_noise import brute_force_sup_tiny, grid_slack, maximize_inner_product
from src.estimator import objective, optimal_scale
from src.experiments import run_coverage_experiment, run_packing_from_config, run_rate_experiment
from src.experiments.writers import write_coverage
from src.models.activations import ActivationKind, ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams, ScaledNetwork
from src.network.forward import forward, forward_batch
from src.network.gradient import gradient
from src.regularizers.l1 import RegularizerKind, get_regularizer, project_l1_ball
from src.reparam import check_equivalence

pytestmark = pytest.mark.slow

CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"


def _random_arch(rng, max_depth=3, max_width=8):
    L = int(rng.integers(1, max_depth + 1))
    return Architecture(tuple(int(rng.integers(1, max_width + 1)) for _ in range(L + 1)) + (1,))


def test_reparametrization(rng):
    for kind in (ActivationKind.RELU, ActivationKind.LEAKY_RELU):
        act = ActivationSpec(kind)
        for _ in range(500):
            theta = NetworkParams.random_normal(_random_arch(rng), rng)
            probes = rng.standard_normal((100, theta.arch.input_dim))
            scale = max(1.0, float(np.max(np.abs(forward_batch(theta, act, probes)))))
            assert check_equivalence(theta, act, RegularizerKind.SUM_L1, probes) <= 1e-9 * scale


def test_lipschitz_all_activations(rng):
    for kind in ActivationKind:
        act = ActivationSpec(kind)
        for _ in range(2000):
            arch = _random_arch(rng)
            theta = NetworkParams.random_normal(arch, rng)
            gamma = NetworkParams.random_normal(arch, rng)
            x = rng.standard_normal(arch.input_dim)
            lhs = abs(forward(theta, act, x) - forward(gamma, act, x))
            rhs = lipschitz_pointwise(theta, gamma, act, x) * np.linalg.norm((theta - gamma).flatten())
            assert lhs <= rhs * (1.0 + 1e-9)


def test_unit_ball_boundedness(rng):
    reg = get_regularizer(RegularizerKind.SUM_L1)
    arch = Architecture((4, 4, 3, 1))
    X = rng.standard_normal((50, 4))
    data = Dataset.design_only(X)
    act = ActivationSpec(ActivationKind.RELU)
    c = c_lip1(act.a_lip, arch.depth, data.inputs_norm)
    for _ in range(10_000):
        omega = reg.random_direction(arch, rng, radius=rng.uniform(0.0, 1.0))
        assert np.sqrt(np.mean(forward_batch(omega, act, X) ** 2)) <= c


def test_gradient_finite_differences(rng):
    eps = 1e-6
    kinds = (ActivationKind.TANH, ActivationKind.SILU, ActivationKind.ELU)
    for i in range(500):
        act = ActivationSpec(kinds[i % 3])
        arch = _random_arch(rng, max_depth=2, max_width=4)
        net = ScaledNetwork(rng.uniform(0.5, 2.0), NetworkParams.random_normal(arch, rng, scale=0.5))
        data = Dataset(rng.standard_normal((10, arch.input_dim)), rng.standard_normal(10))
        _, d_omega = gradient(net, act, data, lam=0.1)
        flat = net.omega.flatten()
        numeric = np.empty_like(flat)
        for j in range(flat.size):
            up, down = flat.copy(), flat.copy()
            up[j] += eps
            down[j] -= eps
            f_up = objective(ScaledNetwork(net.kappa, NetworkParams.from_flat(arch, up)), act, data, 0.1)
            f_down = objective(ScaledNetwork(net.kappa, NetworkParams.from_flat(arch, down)), act, data, 0.1)
            numeric[j] = (f_up - f_down) / (2 * eps)
        np.testing.assert_allclose(d_omega.flatten(), numeric, rtol=1e-5, atol=1e-7)


def test_scale_step_optimality(rng):
    act = ActivationSpec(ActivationKind.RELU)
    arch = Architecture((3, 4, 2, 1))
    reg = get_regularizer(RegularizerKind.SUM_L1)
    for _ in range(1000):
        omega = reg.random_direction(arch, rng)
        X = rng.standard_normal((20, 3))
        y = rng.standard_normal(20)
        lam = rng.uniform(0.0, 0.5)
        data = Dataset(X, y)
        k = optimal_scale(omega, act, data, lam)
        best = objective(ScaledNetwork(k, omega), act, data, lam)
        g = forward_batch(omega, act, X)
        grid = np.arange(0.0, 2.0 * k + 1.0, 1e-4)
        values = np.mean((y[None, :] - grid[:, None] * g[None, :]) ** 2, axis=1) + lam * grid
        assert best <= values.min() + 1e-4


def test_projection_optimality(rng):
    np.testing.assert_array_equal(project_l1_ball(np.array([3.0, 1.0])), [1.0, 0.0])
    np.testing.assert_allclose(project_l1_ball(np.array([0.8, -0.8])), [0.5, -0.5], atol=1e-15)
    for _ in range(10_000):
        size = int(rng.integers(1, 10))
        v = rng.standard_normal(size) * rng.uniform(0.1, 5.0)
        p = project_l1_ball(v)
        feasible = rng.dirichlet(np.ones(size), 100) * rng.choice([-1.0, 1.0], (100, size))
        feasible *= rng.uniform(0.0, 1.0, (100, 1))
        assert np.all(np.linalg.norm(v - p) <= np.linalg.norm(feasible - v, axis=1) + 1e-12)


def test_effective_noise_oracle():
    rng = np.random.default_rng(99)
    opts = NoiseSearchOptions(restarts=32, max_iters=200)
    act = ActivationSpec(ActivationKind.RELU)
    tiny = Architecture((1, 1, 1))
    _, z = maximize_inner_product(Dataset.design_only(np.ones((1, 1))), np.ones(1), tiny, act, "sum_l1", opts)
    assert z == pytest.approx(0.5, abs=1e-3)

    for i in range(100):
        arch = tiny if i % 2 == 0 else Architecture((2, 1, 1))
        n = int(rng.integers(5, 30))
        data = Dataset.design_only(rng.standard_normal((n, arch.input_dim)))
        u = rng.standard_normal(n)
        brute = brute_force_sup_tiny(data, u, arch, act, grid_resolution=61)
        _, z = maximize_inner_product(data, u, arch, act, "sum_l1", opts, seed=i)
        assert abs(z - brute) <= grid_slack(arch, act, data, u, 61) + 1e-9


def test_subgaussian_tail():
    spec = gaussian_subgauss_params(1.0)
    assert spec.K == pytest.approx(2.0)
    assert spec.gamma_sq == pytest.approx(4.0 * (np.sqrt(2.0) - 1.0))
    rng = np.random.default_rng(5)
    for n in (10, 50):
        means = np.mean(rng.standard_normal((100_000, n)) ** 2, axis=1)
        for mult in (2.0, 3.0, 4.0):
            v = mult * spec.gamma_sq
            assert np.mean(means >= v) <= subgaussian_tail(v, n, spec.K, spec.gamma)


def test_coverage_desk_teacher():
    config = load_config(CONFIG_DIR / "coverage.yaml")
    result = run_coverage_experiment(config)
    assert result.summary["frequency"].iloc[0] >= 0.90


def test_rate_desk_teacher():
    config = load_config(CONFIG_DIR / "desk.yaml")
    result = run_rate_experiment(config)
    assert result.slope <= -0.35
    assert np.all(result.rows["err"].dropna() >= 0)


def test_packing_single_input():
    config = load_config(CONFIG_DIR / "packing.yaml")
    result = run_packing_from_config(config)
    assert result.ok
    assert np.all(np.diff(result.rows["packing_2r"].to_numpy()) <= 0)


def test_coverage_csv_independent_of_workers(config_factory, tmp_path):
    paths = []
    for jobs in (1, 3):
        result = run_coverage_experiment(config_factory(n_jobs=jobs))
        paths.append(write_coverage(tmp_path / str(jobs), result))
    for a, b in zip(*paths):
        assert a.read_bytes() == b.read_bytes()
