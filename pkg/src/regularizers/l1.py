"""
l1 regularizers

- sum_l1: h(Theta) = sum over all layers and entries of |W^l_kj|
- max_layer_l1: h(Theta) = max_l sum_kj |W^l_kj|

Both are nonnegative homogeneous of degree 1 and positive definite.
"""

from enum import Enum
from typing import Union

import numpy as np

from src.interfaces import IRegularizer
from src.models.network import Architecture, NetworkParams


class RegularizerKind(Enum):
    """Regularizer name as used in config files"""
    SUM_L1 = "sum_l1"
    MAX_LAYER_L1 = "max_layer_l1"

    @property
    def degree(self) -> float:
        return 1.0


def project_l1_ball(vector: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """
    Euclidean projection of a vector onto {v : ||v||_1 <= radius}

    Sort-and-threshold: with u the sorted magnitudes, the threshold is
    tau = (sum_{j<=rho} u_j - radius) / rho for the largest rho with
    u_rho > tau. Ties are ordered stably by position.

    Args:
        vector: flat vector
        radius: ball radius (>= 0)

    Returns:
        projected vector (same shape)
    """
    v = np.asarray(vector, dtype=float)
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    magnitudes = np.abs(v)
    if magnitudes.sum() <= radius:
        return v.copy()
    if radius == 0:
        return np.zeros_like(v)
    flat = magnitudes.ravel()
    u = flat[np.argsort(-flat, kind="stable")]
    cssv = np.cumsum(u)
    j = np.arange(1, u.size + 1)
    rho = int(np.nonzero(u - (cssv - radius) / j > 0)[0][-1]) + 1
    tau = (cssv[rho - 1] - radius) / rho
    return np.sign(v) * np.maximum(magnitudes - tau, 0.0)


def _random_l1_sphere(rng: np.random.Generator, size: int, radius: float) -> np.ndarray:
    """Random signs times Dirichlet(1, ..., 1) magnitudes, scaled to radius"""
    magnitudes = rng.dirichlet(np.ones(size)) if size > 1 else np.ones(1)
    signs = rng.choice(np.array([-1.0, 1.0]), size=size)
    return radius * signs * magnitudes


class SumL1Regularizer(IRegularizer):
    """Total entrywise l1 norm over the concatenated parameter vector"""

    @property
    def name(self) -> str:
        return RegularizerKind.SUM_L1.value

    @property
    def degree(self) -> float:
        return 1.0

    def value(self, theta: NetworkParams) -> float:
        return float(sum(np.abs(W).sum() for W in theta.layers))

    def project_unit_ball(self, theta: NetworkParams) -> NetworkParams:
        if self.value(theta) <= 1.0:
            return theta
        return NetworkParams.from_flat(theta.arch, project_l1_ball(theta.flatten(), 1.0))

    def random_direction(
        self,
        arch: Architecture,
        rng: np.random.Generator,
        radius: float = 1.0,
    ) -> NetworkParams:
        return NetworkParams.from_flat(arch, _random_l1_sphere(rng, arch.param_count, radius))


class MaxLayerL1Regularizer(IRegularizer):
    """Largest per-layer l1 norm; its unit ball is a product of per-layer l1 balls"""

    @property
    def name(self) -> str:
        return RegularizerKind.MAX_LAYER_L1.value

    @property
    def degree(self) -> float:
        return 1.0

    def value(self, theta: NetworkParams) -> float:
        return float(max(np.abs(W).sum() for W in theta.layers))

    def project_unit_ball(self, theta: NetworkParams) -> NetworkParams:
        if self.value(theta) <= 1.0:
            return theta
        return theta.map(lambda W: project_l1_ball(W, 1.0))

    def random_direction(
        self,
        arch: Architecture,
        rng: np.random.Generator,
        radius: float = 1.0,
    ) -> NetworkParams:
        layers = []
        for l in range(arch.n_layers):
            shape = arch.layer_shape(l)
            layers.append(_random_l1_sphere(rng, shape[0] * shape[1], radius).reshape(shape))
        return NetworkParams(arch, tuple(layers))


_REGISTRY = {
    RegularizerKind.SUM_L1: SumL1Regularizer(),
    RegularizerKind.MAX_LAYER_L1: MaxLayerL1Regularizer(),
}

RegularizerLike = Union[RegularizerKind, str, IRegularizer]


def get_regularizer(h: RegularizerLike) -> IRegularizer:
    """Resolve a kind, config name or instance to a regularizer"""
    if isinstance(h, IRegularizer):
        return h
    if isinstance(h, str):
        try:
            h = RegularizerKind(h)
        except ValueError:
            known = ", ".join(k.value for k in RegularizerKind)
            raise ValueError(f"Unknown regularizer '{h}' (known: {known})") from None
    return _REGISTRY[h]


def value(h: RegularizerLike, theta: NetworkParams) -> float:
    """h(theta)"""
    return get_regularizer(h).value(theta)


def project_unit_ball(h: RegularizerLike, theta: NetworkParams) -> NetworkParams:
    """Euclidean projection of theta onto {h <= 1}"""
    return get_regularizer(h).project_unit_ball(theta)


def in_unit_ball(h: RegularizerLike, theta: NetworkParams, tol: float = 0.0) -> bool:
    """h(theta) <= 1 + tol"""
    return get_regularizer(h).in_unit_ball(theta, tol)
