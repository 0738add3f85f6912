"""
Tuning-parameter rules of the experiment drivers

- theoretical: a (c / 2) sqrt(log(2P)) log(2n) / sqrt(n), c the unit-ball
  envelope of h (equal to the closed-form tuning_lambda for sum_l1)
- monte_carlo_quantile: safety_factor * lambda_hat, lambda_hat the
  Monte Carlo (1 - t) quantile of the effective noise on the design
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from src.bounds.lipschitz import unit_ball_envelope
from src.bounds.subgaussian import SubGaussianSpec
from src.config.schema import ExperimentConfig
from src.effective_noise.quantile import NoiseQuantileReport, estimate_quantile
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset
from src.regularizers.l1 import RegularizerLike


class LambdaRuleKind(Enum):
    THEORETICAL = "theoretical"
    MONTE_CARLO_QUANTILE = "monte_carlo_quantile"


@dataclass(frozen=True, eq=False)
class LambdaChoice:
    """lambda for one sample size"""
    n: int
    lam: float
    rule: LambdaRuleKind
    quantile: Optional[NoiseQuantileReport] = None

    @property
    def lambda_hat(self) -> float:
        return self.quantile.lambda_hat if self.quantile is not None else float("nan")

    def journal_details(self) -> Dict[str, Any]:
        if self.quantile is None:
            return {}
        return {
            "lambda_hat": self.quantile.lambda_hat,
            "ci_low": self.quantile.ci_low,
            "ci_high": self.quantile.ci_high,
            "reps": self.quantile.reps,
            "t": self.quantile.t,
        }


def theoretical_lambda(
    arch: Architecture,
    act: ActivationSpec,
    h: RegularizerLike,
    n: int,
    x_norm_n: float,
    a: float = 1.0,
) -> float:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    envelope = unit_ball_envelope(h, act, arch.depth, x_norm_n)
    return float(
        a * 0.5 * envelope * np.sqrt(np.log(2.0 * arch.param_count)) * np.log(2.0 * n) / np.sqrt(n)
    )


def select_lambda(
    config: ExperimentConfig,
    design: Dataset,
    noise_model: SubGaussianSpec,
    seed: int,
    n_jobs: int = 1,
) -> LambdaChoice:
    """
    lambda for the design of one grid point

    Args:
        config: run configuration (network, lambda rule, level, search options)
        design: fixed inputs of this sample size
        noise_model: noise law of the run
        seed: seed of the Monte Carlo quantile
        n_jobs: workers for the quantile replicates

    Returns:
        LambdaChoice
    """
    rule = config.experiment.lambda_rule
    kind = LambdaRuleKind(rule.kind)
    arch, act, h = config.arch, config.activation, config.network.regularizer

    if kind == LambdaRuleKind.THEORETICAL:
        lam = theoretical_lambda(arch, act, h, design.n, design.inputs_norm, rule.a)
        return LambdaChoice(design.n, lam, kind)

    report = estimate_quantile(
        design,
        noise_model,
        arch,
        act,
        h,
        t=config.experiment.level,
        reps=rule.reps,
        opts=replace(config.noise_search, n_jobs=n_jobs),
        seed=seed,
    )
    return LambdaChoice(design.n, rule.safety_factor * report.lambda_hat, kind, report)
