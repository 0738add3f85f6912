"""
Scale-regularized least-squares objective

    F(kappa, Omega) = (1/n) sum_i (y_i - kappa g_Omega(x_i))^2 + lam * kappa
"""

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import Dataset, NetworkParams, ScaledNetwork
from src.network.forward import forward_batch


def _check_lambda(lam: float) -> None:
    if not lam >= 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")


def objective_from_outputs(g: np.ndarray, y: np.ndarray, kappa: float, lam: float) -> float:
    """F evaluated from precomputed direction outputs g_Omega(x_i)"""
    r = y - kappa * g
    return float(np.mean(r * r) + lam * kappa)


def scale_from_outputs(g: np.ndarray, y: np.ndarray, lam: float) -> float:
    """Minimizer over kappa >= 0 of F for fixed outputs g"""
    n = g.shape[0]
    denom = 2.0 / n * float(np.dot(g, g))
    if denom == 0.0:
        return 0.0
    num = 2.0 / n * float(np.dot(y, g)) - lam
    return max(0.0, num / denom)


def objective(net: ScaledNetwork, act: ActivationSpec, dataset: Dataset, lam: float) -> float:
    """
    Objective value

    Args:
        net: (kappa, Omega)
        act: activation
        dataset: sample
        lam: tuning parameter (>= 0)

    Returns:
        (1/n) sum_i (y_i - kappa g_Omega(x_i))^2 + lam * kappa
    """
    _check_lambda(lam)
    g = forward_batch(net.omega, act, dataset.inputs)
    return objective_from_outputs(g, dataset.responses, net.kappa, lam)


def optimal_scale(omega: NetworkParams, act: ActivationSpec, dataset: Dataset, lam: float) -> float:
    """
    Exact scale step

    max(0, ((2/n) sum y_i g_i - lam) / ((2/n) sum g_i^2)), and 0 when g = 0.
    """
    _check_lambda(lam)
    g = forward_batch(omega, act, dataset.inputs)
    return scale_from_outputs(g, dataset.responses, lam)
