"""
Inner and outer subnetworks

S_l g(x) = phi^l(W^{l-1} ... phi^1(W^0 x)), with S_0 g(x) = x
S^l g(z) = W^L phi^L(... W^l phi^l(W^{l-1} z)), with S^{L+1} g(z) = W^L z

For every split 1 <= l <= L+1: g(x) = S^l g(S_{l-1} g(x)).
"""

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import NetworkParams
from src.utils.errors import DimensionMismatchError


def inner_subnetwork(theta: NetworkParams, act: ActivationSpec, l: int, x: np.ndarray) -> np.ndarray:
    """S_l g_Theta(x) in R^{p_l}, 0 <= l <= L"""
    L = theta.depth
    if not (0 <= l <= L):
        raise IndexError(f"Inner split index must be in [0, {L}], got {l}")
    h = np.asarray(x, dtype=float).ravel()
    if h.shape[0] != theta.arch.input_dim:
        raise DimensionMismatchError(
            f"Input has dimension {h.shape[0]}, expected {theta.arch.input_dim}"
        )
    for j in range(l):
        h = act.apply(theta.layers[j] @ h)
    return h


def outer_subnetwork(theta: NetworkParams, act: ActivationSpec, l: int, z: np.ndarray) -> float:
    """S^l g_Theta(z) for z in R^{p_{l-1}}, 1 <= l <= L+1"""
    L = theta.depth
    if not (1 <= l <= L + 1):
        raise IndexError(f"Outer split index must be in [1, {L + 1}], got {l}")
    h = np.asarray(z, dtype=float).ravel()
    expected = theta.arch.widths[l - 1] if l <= L else theta.arch.widths[L]
    if h.shape[0] != expected:
        raise DimensionMismatchError(
            f"Outer input has dimension {h.shape[0]}, expected {expected}"
        )
    start = l - 1 if l <= L else L
    for j in range(start, L + 1):
        if j > start:
            h = act.apply(h)
        h = theta.layers[j] @ h
    return float(h[0])
