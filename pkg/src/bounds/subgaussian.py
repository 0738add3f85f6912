"""
Sub-Gaussian noise

A noise law is sub-Gaussian with constants (K, gamma) when
K^2 (E exp(u^2 / K^2) - 1) <= gamma^2. The three supported samplers
have closed-form E exp(u^2 / K^2); K = 2 * scale throughout.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import erfi

from src.interfaces import INoiseSampler

GAMMA_REL_TOL = 1e-12


class NoiseKind(Enum):
    """Noise family"""
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    UNIFORM = "uniform"


class GaussianSampler(INoiseSampler):
    """N(0, sigma^2)"""

    def __init__(self, sigma: float):
        if sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {sigma}")
        self.sigma = float(sigma)

    @property
    def name(self) -> str:
        return NoiseKind.GAUSSIAN.value

    @property
    def variance(self) -> float:
        return self.sigma ** 2

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.sigma * rng.standard_normal(n)

    def square_mgf(self, K: float) -> float:
        t = 2.0 * self.sigma ** 2 / K ** 2
        if t >= 1.0:
            return float("inf")
        return float((1.0 - t) ** -0.5)


class RademacherSampler(INoiseSampler):
    """+-scale with equal probability"""

    def __init__(self, scale: float):
        if scale < 0:
            raise ValueError(f"scale must be >= 0, got {scale}")
        self.scale = float(scale)

    @property
    def name(self) -> str:
        return NoiseKind.RADEMACHER.value

    @property
    def variance(self) -> float:
        return self.scale ** 2

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.scale * rng.choice(np.array([-1.0, 1.0]), size=n)

    def square_mgf(self, K: float) -> float:
        return float(np.exp(self.scale ** 2 / K ** 2))


class UniformSampler(INoiseSampler):
    """U(-half_width, half_width)"""

    def __init__(self, half_width: float):
        if half_width < 0:
            raise ValueError(f"half_width must be >= 0, got {half_width}")
        self.half_width = float(half_width)

    @property
    def name(self) -> str:
        return NoiseKind.UNIFORM.value

    @property
    def variance(self) -> float:
        return self.half_width ** 2 / 3.0

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(-self.half_width, self.half_width, size=n)

    def square_mgf(self, K: float) -> float:
        # (1/2a) int_{-a}^{a} exp(u^2/K^2) du = sqrt(pi) erfi(sqrt(c)) / (2 sqrt(c)), c = a^2/K^2
        c = self.half_width ** 2 / K ** 2
        if c == 0.0:
            return 1.0
        s = np.sqrt(c)
        return float(np.sqrt(np.pi) * erfi(s) / (2.0 * s))


@dataclass(frozen=True, eq=False)
class SubGaussianSpec:
    """
    Sub-Gaussian constants with the sampler they certify

    The defining inequality is checked analytically at construction.
    """
    K: float
    gamma: float
    sampler: INoiseSampler

    def __post_init__(self):
        if not self.K > 0:
            raise ValueError(f"K must be > 0, got {self.K}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        required = self.K ** 2 * (self.sampler.square_mgf(self.K) - 1.0)
        if not required <= self.gamma ** 2 * (1.0 + GAMMA_REL_TOL):
            raise ValueError(
                f"{self.sampler.name} noise is not sub-Gaussian with K={self.K}, gamma={self.gamma}: "
                f"K^2 (E exp(u^2/K^2) - 1) = {required}"
            )

    @property
    def kind(self) -> NoiseKind:
        return NoiseKind(self.sampler.name)

    @property
    def gamma_sq(self) -> float:
        return self.gamma ** 2

    @property
    def variance(self) -> float:
        return self.sampler.variance

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return self.sampler.sample(rng, n)


def _spec_for(sampler: INoiseSampler, scale: float) -> SubGaussianSpec:
    # zero noise is sub-Gaussian for any K; K = 1 keeps the spec well defined
    K = 2.0 * scale if scale > 0 else 1.0
    gamma_sq = K ** 2 * (sampler.square_mgf(K) - 1.0)
    return SubGaussianSpec(K=K, gamma=float(np.sqrt(max(gamma_sq, 0.0))), sampler=sampler)


def gaussian_subgauss_params(sigma: float) -> SubGaussianSpec:
    """
    K = 2 sigma, gamma^2 = K^2 ((1 - 2 sigma^2 / K^2)^{-1/2} - 1)

    Example: sigma = 1 gives K = 2, gamma^2 = 4 (sqrt(2) - 1).
    """
    return _spec_for(GaussianSampler(sigma), sigma)


def rademacher_subgauss_params(scale: float) -> SubGaussianSpec:
    """K = 2 scale, gamma^2 = K^2 (exp(scale^2 / K^2) - 1)"""
    return _spec_for(RademacherSampler(scale), scale)


def uniform_subgauss_params(half_width: float) -> SubGaussianSpec:
    """K = 2 half_width, gamma^2 from the imaginary error function"""
    return _spec_for(UniformSampler(half_width), half_width)


def subgauss_params(kind: str, scale: float) -> SubGaussianSpec:
    """Build from a config noise section"""
    try:
        kind = NoiseKind(kind)
    except ValueError:
        known = ", ".join(k.value for k in NoiseKind)
        raise ValueError(f"Unknown noise kind '{kind}' (known: {known})") from None
    if kind == NoiseKind.GAUSSIAN:
        return gaussian_subgauss_params(scale)
    if kind == NoiseKind.RADEMACHER:
        return rademacher_subgauss_params(scale)
    return uniform_subgauss_params(scale)


def subgaussian_tail(v: float, n: int, K: float, gamma: float) -> float:
    """
    Tail bound P((1/n) sum u_i^2 >= v) <= exp(-n v / (12 K^2)), valid for v >= 2 gamma^2

    Raises:
        ValueError: v below 2 gamma^2
    """
    threshold = 2.0 * gamma ** 2
    if v < threshold * (1.0 - GAMMA_REL_TOL):
        raise ValueError(f"v must be >= 2 gamma^2 = {threshold}, got {v}")
    if not K > 0:
        raise ValueError(f"K must be > 0, got {K}")
    return float(np.exp(-n * v / (12.0 * K ** 2)))
