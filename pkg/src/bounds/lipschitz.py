"""
Lipschitz constants of networks in their parameters

For Theta, Gamma with the same architecture:

    |g_Theta(x) - g_Gamma(x)| <= c_Lip(x) * ||Theta - Gamma||_F
    c_Lip(x) = 2 a^L sqrt(L) ||x|| max_l prod_{j != l} (||W^j|| v ||V^j||)

On the sum-l1 unit ball the constant reduces to
c_Lip1 = 2 (2a/L)^L sqrt(L) ||x||_n.
"""

from typing import Union

import numpy as np

from src.models.activations import ActivationSpec
from src.models.network import Dataset, NetworkParams, check_same_arch
from src.network.norms import spectral_norms
from src.regularizers.l1 import RegularizerKind, RegularizerLike, get_regularizer
from src.utils.errors import DimensionMismatchError


def max_excluded_product(theta: NetworkParams, gamma: NetworkParams) -> float:
    """max over l of prod_{j != l} max(||W^j||, ||V^j||)"""
    check_same_arch(theta, gamma)
    m = np.maximum(spectral_norms(theta), spectral_norms(gamma))
    return float(max(np.prod(np.delete(m, l)) for l in range(m.size)))


def _lipschitz_prefactor(act: ActivationSpec, L: int) -> float:
    return 2.0 * act.a_lip ** L * np.sqrt(L)


def lipschitz_pointwise(
    theta: NetworkParams,
    gamma: NetworkParams,
    act: ActivationSpec,
    x: np.ndarray,
) -> float:
    """
    c_Lip(x)

    Example: 1-1-1 relu, Theta=([2],[3]), Gamma=([1],[1]), x=1 gives 6.
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.shape[0] != theta.arch.input_dim:
        raise DimensionMismatchError(
            f"Input has dimension {x.shape[0]}, expected {theta.arch.input_dim}"
        )
    L = theta.depth
    return float(
        _lipschitz_prefactor(act, L) * np.linalg.norm(x) * max_excluded_product(theta, gamma)
    )


def lipschitz_empirical(
    theta: NetworkParams,
    gamma: NetworkParams,
    act: ActivationSpec,
    dataset: Dataset,
) -> float:
    """c_Lip with ||x|| replaced by ||x||_n; bounds ||g_Theta - g_Gamma||_n / ||Theta - Gamma||_F"""
    if dataset.dim != theta.arch.input_dim:
        raise DimensionMismatchError(
            f"Dataset has dimension {dataset.dim}, expected {theta.arch.input_dim}"
        )
    L = theta.depth
    return float(
        _lipschitz_prefactor(act, L) * dataset.inputs_norm * max_excluded_product(theta, gamma)
    )


def c_lip1(a_lip: float, L: int, x_norm_n: float) -> float:
    """2 (2 a_lip / L)^L sqrt(L) ||x||_n"""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    return float(2.0 * (2.0 * a_lip / L) ** L * np.sqrt(L) * x_norm_n)


def lipschitz_unit_ball(act: ActivationSpec, L: int, dataset: Union[Dataset, float]) -> float:
    """
    c_Lip1 for the sum-l1 unit ball

    Args:
        act: activation (supplies a_lip)
        L: depth
        dataset: sample, or ||x||_n directly

    Returns:
        Lipschitz and boundedness constant of {g_Omega : ||Omega||_1 <= 1}
    """
    x_norm_n = dataset.inputs_norm if isinstance(dataset, Dataset) else float(dataset)
    return c_lip1(act.a_lip, L, x_norm_n)


def unit_ball_envelope(h: RegularizerLike, act: ActivationSpec, L: int, x_norm_n: float) -> float:
    """
    Upper bound on ||g_Omega||_n over the unit ball of h

    The max-layer ball has every ||W^l|| <= 1, so the excluded-layer
    product is at most 1.
    """
    if RegularizerKind(get_regularizer(h).name) == RegularizerKind.SUM_L1:
        return c_lip1(act.a_lip, L, x_norm_n)
    return float(2.0 * act.a_lip ** L * np.sqrt(L) * x_norm_n)
