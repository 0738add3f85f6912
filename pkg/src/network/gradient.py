"""
Reverse-mode gradients

Derivatives at activation kinks use ActivationSpec.derivative
(relu'(0) = 0), so gradients are deterministic.
"""

from typing import List, Sequence, Tuple

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import Dataset, NetworkParams, ScaledNetwork
from src.network.forward import as_batch, forward_layers
from src.utils.errors import DimensionMismatchError


def backprop_layers(
    layers: Sequence[np.ndarray],
    act: ActivationSpec,
    X: np.ndarray,
    weights: np.ndarray,
) -> Tuple[np.ndarray, List[np.ndarray]]:
    """
    Gradient of sum_i weights_i * g(x_i) with respect to every W^l

    Returns:
        (outputs g(x_i), per-layer gradients in layer order)
    """
    out, activations, pre = forward_layers(layers, act, X)
    return out, backprop_from_forward(layers, act, activations, pre, weights)


def backprop_from_forward(
    layers: Sequence[np.ndarray],
    act: ActivationSpec,
    activations: Sequence[np.ndarray],
    pre: Sequence[np.ndarray],
    weights: np.ndarray,
) -> List[np.ndarray]:
    """Backward pass reusing the intermediates of forward_layers"""
    L = len(layers) - 1
    grads: List[np.ndarray] = [None] * (L + 1)

    delta = weights.reshape(-1, 1)
    grads[L] = delta.T @ activations[L]
    back = delta @ layers[L]
    for l in range(L - 1, -1, -1):
        dZ = back * act.derivative(pre[l])
        grads[l] = dZ.T @ activations[l]
        if l > 0:
            back = dZ @ layers[l]
    return grads


def weighted_output_gradient(
    omega: NetworkParams,
    act: ActivationSpec,
    X: np.ndarray,
    weights: np.ndarray,
) -> Tuple[np.ndarray, NetworkParams]:
    """Outputs and gradient of sum_i weights_i g_Omega(x_i) as a parameter object"""
    X = as_batch(omega.arch.input_dim, X)
    weights = np.asarray(weights, dtype=float).ravel()
    if weights.shape[0] != X.shape[0]:
        raise DimensionMismatchError(
            f"{X.shape[0]} inputs but {weights.shape[0]} weights"
        )
    out, grads = backprop_layers(omega.layers, act, X, weights)
    return out, NetworkParams(omega.arch, tuple(grads))


def gradient(
    net: ScaledNetwork,
    act: ActivationSpec,
    dataset: Dataset,
    lam: float,
) -> Tuple[float, NetworkParams]:
    """
    Gradient of (1/n) sum_i (y_i - kappa g_Omega(x_i))^2 + lam * kappa

    Args:
        net: current (kappa, Omega)
        act: activation
        dataset: sample
        lam: tuning parameter

    Returns:
        (d/dkappa, d/dOmega)
    """
    n = dataset.n
    X = as_batch(net.arch.input_dim, dataset.inputs)
    g, activations, pre = forward_layers(net.omega.layers, act, X)
    residual = dataset.responses - net.kappa * g
    dkappa = float(-2.0 / n * np.dot(residual, g) + lam)
    grads = backprop_from_forward(
        net.omega.layers, act, activations, pre, (-2.0 / n) * net.kappa * residual
    )
    return dkappa, NetworkParams(net.arch, tuple(grads))
