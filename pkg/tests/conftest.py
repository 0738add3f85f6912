"""Shared fixtures"""

import numpy as np
import pytest

from src.config.schema import (
    DataConfig,
    ExperimentConfig,
    ExperimentSection,
    FitOptions,
    LambdaRuleConfig,
    NetworkConfig,
    NoiseConfig,
    NoiseSearchOptions,
)
from src.models.activations import ActivationKind, ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def relu():
    return ActivationSpec(ActivationKind.RELU)


@pytest.fixture
def tanh():
    return ActivationSpec(ActivationKind.TANH)


@pytest.fixture
def tiny_arch():
    """1-1-1 network (P = 2)"""
    return Architecture((1, 1, 1))


@pytest.fixture
def small_arch():
    return Architecture((3, 4, 2, 1))


@pytest.fixture
def small_dataset(rng):
    X = rng.standard_normal((40, 3))
    y = rng.standard_normal(40)
    return Dataset(X, y)


@pytest.fixture
def example_theta(tiny_arch):
    """W^0 = [2], W^1 = [3]"""
    return NetworkParams(tiny_arch, (np.array([[2.0]]), np.array([[3.0]])))


def make_tiny_config(**overrides) -> ExperimentConfig:
    """Reduced-size experiment config for fast end-to-end tests"""
    config = ExperimentConfig(
        seed=3,
        n_jobs=1,
        network=NetworkConfig(widths=[2, 3, 1], activation="relu", regularizer="sum_l1"),
        data=DataConfig(
            input_distribution="gaussian_sphere",
            sample_sizes=[24, 48],
            holdout_size=30,
            noise=NoiseConfig(kind="gaussian", scale=0.3),
        ),
        experiment=ExperimentSection(
            replicates=3,
            level=0.1,
            lambda_rule=LambdaRuleConfig(kind="monte_carlo_quantile", reps=10, safety_factor=1.2),
        ),
        fit=FitOptions(max_outer_iters=15, max_inner_iters=5, restarts=2),
        noise_search=NoiseSearchOptions(restarts=2, max_iters=15),
    )
    for key, value in overrides.items():
        setattr(config, key, value)
    return config


@pytest.fixture
def tiny_config():
    return make_tiny_config()


TINY_CONFIG_YAML = """
seed: 3
network:
  widths: [2, 3, 1]
  activation: relu
data:
  sample_sizes: [24, 48]
  holdout_size: 30
  noise:
    kind: gaussian
    scale: 0.3
experiment:
  replicates: 3
  level: 0.1
  lambda_rule:
    kind: monte_carlo_quantile
    reps: 10
fit:
  restarts: 2
  max_outer_iters: 15
  max_inner_iters: 5
noise_search:
  restarts: 2
  max_iters: 15
"""


@pytest.fixture
def tiny_config_file(tmp_path):
    path = tmp_path / "tiny.yaml"
    path.write_text(TINY_CONFIG_YAML, encoding="utf-8")
    return path


@pytest.fixture
def config_factory():
    """make_tiny_config with keyword overrides"""
    return make_tiny_config
