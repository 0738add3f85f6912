"""
Forward evaluation

g_Theta(x) = W^L phi(... W^1 phi(W^0 x)), evaluated for a batch of inputs
at once (rows of X are the x_i).
"""

from typing import List, Sequence, Tuple, Union

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import Dataset, NetworkParams, ScaledNetwork
from src.utils.errors import DimensionMismatchError

Network = Union[NetworkParams, ScaledNetwork]


def as_batch(input_dim: int, X: np.ndarray) -> np.ndarray:
    """Coerce inputs to an (n, d) array and check d"""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        if input_dim == 1:
            X = X.reshape(-1, 1)
        elif X.size == input_dim:
            X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != input_dim:
        raise DimensionMismatchError(
            f"Inputs have shape {X.shape}, expected (n, {input_dim})"
        )
    return X


def forward_layers(
    layers: Sequence[np.ndarray],
    act: ActivationSpec,
    X: np.ndarray,
) -> Tuple[np.ndarray, List[np.ndarray], List[np.ndarray]]:
    """
    Forward pass keeping intermediates

    Returns:
        (outputs (n,), activations A_0..A_L, pre-activations Z_0..Z_{L-1})
        with A_0 = X, Z_l = A_l W_l^T and A_{l+1} = phi(Z_l)
    """
    activations = [X]
    pre = []
    H = X
    for W in layers[:-1]:
        Z = H @ W.T
        pre.append(Z)
        H = act.apply(Z)
        activations.append(H)
    out = (H @ layers[-1].T)[:, 0]
    return out, activations, pre


def forward_batch(theta: NetworkParams, act: ActivationSpec, X: np.ndarray) -> np.ndarray:
    """g_Theta(x_i) for every row of X"""
    X = as_batch(theta.arch.input_dim, X)
    H = X
    for W in theta.layers[:-1]:
        H = act.apply(H @ W.T)
    return (H @ theta.layers[-1].T)[:, 0]


def forward(theta: NetworkParams, act: ActivationSpec, x: np.ndarray) -> float:
    """
    g_Theta(x) for a single input

    Args:
        theta: network parameters
        act: activation
        x: vector of dimension p_0

    Returns:
        network output
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != theta.arch.input_dim:
        raise DimensionMismatchError(
            f"Input has dimension {x.shape[0]}, expected {theta.arch.input_dim}"
        )
    return float(forward_batch(theta, act, x.reshape(1, -1))[0])


def forward_scaled(net: ScaledNetwork, act: ActivationSpec, x: np.ndarray) -> float:
    """kappa * g_Omega(x)"""
    return net.kappa * forward(net.omega, act, x)


def predict(net: Network, act: ActivationSpec, X: np.ndarray) -> np.ndarray:
    """Network outputs for a batch; accepts plain or scaled networks"""
    if isinstance(net, ScaledNetwork):
        return net.kappa * forward_batch(net.omega, act, X)
    return forward_batch(net, act, X)


def empirical_norm(net: Network, act: ActivationSpec, dataset: Dataset) -> float:
    """||g||_n = sqrt(sum_i g(x_i)^2 / n)"""
    g = predict(net, act, dataset.inputs)
    return float(np.sqrt(np.mean(g * g)))


def pred_distance(a: Network, b: Network, act: ActivationSpec, dataset: Dataset) -> float:
    """
    Prediction distance ||g_a - g_b||_n on the inputs of dataset
    """
    diff = predict(a, act, dataset.inputs) - predict(b, act, dataset.inputs)
    return float(np.sqrt(np.mean(diff * diff)))
