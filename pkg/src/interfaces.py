"""
Core interfaces

Regularizers and noise samplers are pluggable; the estimator, the
effective-noise search and the experiment drivers depend only on these.
"""

from abc import ABC, abstractmethod

import numpy as np

from src.models.network import Architecture, NetworkParams


class IRegularizer(ABC):
    """
    Regularizer h on parameter space

    Implementations:
    - SumL1Regularizer: total entrywise l1 norm
    - MaxLayerL1Regularizer: largest per-layer l1 norm
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Config name"""
        pass

    @property
    @abstractmethod
    def degree(self) -> float:
        """Homogeneity degree k"""
        pass

    @abstractmethod
    def value(self, theta: NetworkParams) -> float:
        """h(theta)"""
        pass

    @abstractmethod
    def project_unit_ball(self, theta: NetworkParams) -> NetworkParams:
        """Euclidean projection onto {h <= 1}"""
        pass

    @abstractmethod
    def random_direction(
        self,
        arch: Architecture,
        rng: np.random.Generator,
        radius: float = 1.0,
    ) -> NetworkParams:
        """Random parameter with h = radius"""
        pass

    def in_unit_ball(self, theta: NetworkParams, tol: float = 0.0) -> bool:
        """h(theta) <= 1 + tol"""
        if tol < 0:
            raise ValueError(f"tol must be >= 0, got {tol}")
        return self.value(theta) <= 1.0 + tol

    def normalize(self, theta: NetworkParams) -> NetworkParams:
        """theta / h(theta), a point on the unit sphere {h = 1}"""
        h = self.value(theta)
        if h == 0.0:
            raise ValueError("Cannot normalize the zero parameter")
        return theta.scaled(1.0 / h)


class INoiseSampler(ABC):
    """
    Noise distribution with closed-form moments

    Implementations:
    - GaussianSampler: N(0, sigma^2)
    - RademacherSampler: +-scale with equal probability
    - UniformSampler: U(-a, a)
    """

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @property
    @abstractmethod
    def variance(self) -> float:
        """E u^2"""
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n i.i.d. values"""
        pass

    @abstractmethod
    def square_mgf(self, K: float) -> float:
        """E exp(u^2 / K^2), +inf where it does not exist"""
        pass
