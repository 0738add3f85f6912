"""
Parameter norms

Spectral norms use power iteration on W^T W (or W W^T, whichever is
smaller) from the all-ones start vector.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from src.models.network import NetworkParams
from src.utils.errors import PowerIterationError

POWER_TOL = 1e-10
POWER_MAX_ITER = 10000


@dataclass(frozen=True)
class ParamNorms:
    """
    Norms of a parameter

    operator_path: spectral norms of W^0, ..., W^L (layer order)
    param_op: sqrt(sum_l ||W^l||^2)
    """
    l1: float
    frobenius: float
    operator_path: Tuple[float, ...]
    param_op: float


def _power_iteration(B: np.ndarray, v: np.ndarray, tol: float, max_iter: int) -> Tuple[float, int]:
    """Largest eigenvalue of a symmetric PSD matrix; returns (eigenvalue, iterations)"""
    v = v / np.linalg.norm(v)
    mu_prev = 0.0
    residual = np.inf
    for it in range(1, max_iter + 1):
        y = B @ v
        mu = float(v @ y)
        norm_y = float(np.linalg.norm(y))
        if norm_y == 0.0:
            return 0.0, it
        residual = float(np.linalg.norm(y - mu * v))
        scale = max(1.0, abs(mu))
        if residual <= tol * scale or (it > 1 and abs(mu - mu_prev) <= tol * scale):
            return mu, it
        mu_prev = mu
        v = y / norm_y
    raise PowerIterationError(residual=residual, iterations=max_iter)


def spectral_norm(
    W: np.ndarray,
    tol: float = POWER_TOL,
    max_iter: int = POWER_MAX_ITER,
    layer: Optional[int] = None,
) -> float:
    """
    Largest singular value of W

    Args:
        W: matrix
        tol: relative tolerance on the eigen-residual of W^T W
        max_iter: iteration cap
        layer: layer index reported on failure

    Returns:
        sigma_max(W)

    Raises:
        PowerIterationError: no convergence within max_iter
    """
    W = np.asarray(W, dtype=float)
    if W.ndim == 1:
        W = W.reshape(1, -1)
    if not np.any(W):
        return 0.0
    B = W.T @ W if W.shape[1] <= W.shape[0] else W @ W.T
    m = B.shape[0]
    if m == 1:
        return float(np.sqrt(B[0, 0]))
    try:
        mu, iterations = _power_iteration(B, np.ones(m), tol, max_iter)
        if mu == 0.0 or iterations <= 2:
            # all-ones may be an eigenvector of a smaller eigenvalue
            alt, _ = _power_iteration(B, np.random.default_rng(0).standard_normal(m), tol, max_iter)
            mu = max(mu, alt)
    except PowerIterationError as e:
        raise PowerIterationError(e.residual, e.iterations, layer=layer) from None
    return float(np.sqrt(max(mu, 0.0)))


def spectral_norms(theta: NetworkParams) -> Tuple[float, ...]:
    """Spectral norms of W^0, ..., W^L"""
    return tuple(spectral_norm(W, layer=l) for l, W in enumerate(theta.layers))


def norms(theta: NetworkParams) -> ParamNorms:
    """
    l1, Frobenius and operator norms of a parameter

    Example: W^0=[2], W^1=[3] gives l1=5, frobenius=sqrt(13),
    operator_path=(2, 3).
    """
    flat = theta.flatten()
    path = spectral_norms(theta)
    return ParamNorms(
        l1=float(np.abs(flat).sum()),
        frobenius=float(np.sqrt(np.dot(flat, flat))),
        operator_path=path,
        param_op=float(np.sqrt(sum(s * s for s in path))),
    )
