"""
Scale/direction reparametrization

For a regularizer h homogeneous of degree k and activations that are
nonnegative homogeneous of degree 1:

    kappa = h(Theta)^{(L+1)/k},  Omega = Theta / kappa^{1/(L+1)}
    g_Theta(x) = kappa * g_Omega(x),  h(Omega) = 1
"""

from dataclasses import dataclass

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import NetworkParams, ScaledNetwork
from src.network.forward import as_batch, forward_batch
from src.regularizers.l1 import RegularizerLike, get_regularizer


@dataclass(frozen=True)
class HomogeneitySpec:
    """Homogeneity degree k of a regularizer"""
    degree: float = 1.0

    def __post_init__(self):
        if not self.degree > 0:
            raise ValueError(f"Homogeneity degree must be > 0, got {self.degree}")


def layer_factor(kappa: float, depth: int) -> float:
    """kappa^{1/(L+1)}, with 0 for kappa = 0"""
    if kappa == 0.0:
        return 0.0
    return float(np.exp(np.log(kappa) / (depth + 1)))


def decompose(theta: NetworkParams, h: RegularizerLike) -> ScaledNetwork:
    """
    Split Theta into (kappa, Omega)

    A parameter with an all-zero layer computes the zero function; it is
    returned as kappa = 0 with omega = theta flagged degenerate.

    Raises:
        ValueError: h(theta) is not finite
    """
    reg = get_regularizer(h)
    if theta.has_zero_layer():
        return ScaledNetwork(0.0, theta, degenerate=True)
    hv = reg.value(theta)
    if not np.isfinite(hv):
        raise ValueError(f"Regularizer value is not finite: {hv}")
    spec = HomogeneitySpec(reg.degree)
    log_h = np.log(hv)
    kappa = float(np.exp((theta.depth + 1) / spec.degree * log_h))
    omega = theta.scaled(float(np.exp(-log_h / spec.degree)))
    return ScaledNetwork(kappa, omega)


def compose(net: ScaledNetwork) -> NetworkParams:
    """Theta = kappa^{1/(L+1)} * Omega"""
    if net.kappa == 0.0:
        return NetworkParams.zeros(net.arch)
    if net.kappa == 1.0:
        return net.omega
    return net.omega.scaled(layer_factor(net.kappa, net.omega.depth))


def check_equivalence(
    theta: NetworkParams,
    act: ActivationSpec,
    h: RegularizerLike,
    probes: np.ndarray,
) -> float:
    """
    Max over probes of |g_Theta(x) - kappa g_Omega(x)| for (kappa, Omega) = decompose(theta)

    Raises:
        ValueError: act is not nonnegative homogeneous
    """
    if not act.homogeneous:
        raise ValueError(
            f"equivalence requires homogeneous activation (got {act.name})"
        )
    X = as_batch(theta.arch.input_dim, probes)
    if X.shape[0] == 0:
        return 0.0
    net = decompose(theta, h)
    direct = forward_batch(theta, act, X)
    scaled = net.kappa * forward_batch(net.omega, act, X)
    return float(np.max(np.abs(direct - scaled)))
