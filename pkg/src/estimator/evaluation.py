"""
Prediction error, oracle bound and risk
"""

from typing import Sequence

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import Dataset, ScaledNetwork
from src.network.forward import predict
from src.regularizers.l1 import RegularizerKind, RegularizerLike, get_regularizer

BALL_TOL = 1e-9


def prediction_error(net: ScaledNetwork, act: ActivationSpec, dataset: Dataset) -> float:
    """
    In-sample prediction (denoising) error

    sqrt((1/n) sum_i (kappa g_Omega(x_i) - g*(x_i))^2)

    Raises:
        ValueError: dataset has no truth values
    """
    if not dataset.has_truth:
        raise ValueError("prediction_error requires truth values g*(x_i)")
    diff = predict(net, act, dataset.inputs) - dataset.truth
    return float(np.sqrt(np.mean(diff * diff)))


def oracle_bound(
    candidates: Sequence[ScaledNetwork],
    act: ActivationSpec,
    dataset: Dataset,
    lam: float,
    h: RegularizerLike = RegularizerKind.SUM_L1,
) -> float:
    """
    min over candidates of err^2 + 2 lam kappa

    Candidates with kappa > 0 must have h(Omega) <= 1; zero-scale and
    degenerate candidates compute the zero function and are not checked.

    Raises:
        ValueError: empty candidate list, a candidate outside the unit
            ball of h, or missing truth
    """
    if len(candidates) == 0:
        raise ValueError("oracle_bound needs at least one candidate")
    if not lam >= 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    reg = get_regularizer(h)
    for i, c in enumerate(candidates):
        if c.kappa > 0.0 and not c.degenerate and not reg.in_unit_ball(c.omega, BALL_TOL):
            raise ValueError(
                f"Candidate {i} is outside the unit ball: {reg.name}(omega) = {reg.value(c.omega):.6g}"
            )
    return min(
        prediction_error(c, act, dataset) ** 2 + 2.0 * lam * c.kappa
        for c in candidates
    )


def risk_estimate(net: ScaledNetwork, act: ActivationSpec, holdout: Dataset) -> float:
    """
    Holdout estimate of the generalization error

    (1/m) sum_j (kappa g_Omega(x_j) - y_j)^2
    """
    if holdout is None or holdout.n == 0:
        raise ValueError("risk_estimate needs a nonempty holdout sample")
    diff = predict(net, act, holdout.inputs) - holdout.responses
    return float(np.mean(diff * diff))
