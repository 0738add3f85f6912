"""
Activation functions

All kinds satisfy phi(0) = 0 and act coordinatewise. Lipschitz constants
follow the usual feasible values: 1.1 for SiL/Swish, 1 for the others.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.special import expit


class ActivationKind(Enum):
    """Activation family"""
    RELU = "relu"
    LEAKY_RELU = "leaky_relu"
    ELU = "elu"
    TANH = "tanh"
    SILU = "silu"


# Default shape parameters
DEFAULT_SHAPE_PARAM = {
    ActivationKind.LEAKY_RELU: 0.01,
    ActivationKind.ELU: 1.0,
}

SILU_LIPSCHITZ = 1.1


@dataclass(frozen=True)
class ActivationSpec:
    """
    Activation kind and its parameter

    kind: activation family
    shape_param: c for leaky_relu (slope on the negative side) and elu
    """
    kind: ActivationKind = ActivationKind.RELU
    shape_param: Optional[float] = None

    def __post_init__(self):
        if self.kind in DEFAULT_SHAPE_PARAM:
            if self.shape_param is None:
                object.__setattr__(self, "shape_param", DEFAULT_SHAPE_PARAM[self.kind])
            c = self.shape_param
            if self.kind == ActivationKind.LEAKY_RELU and not (0.0 < c < 1.0):
                raise ValueError(f"leaky_relu parameter must be in (0, 1), got {c}")
            if self.kind == ActivationKind.ELU and not (0.0 < c <= 1.0):
                raise ValueError(f"elu parameter must be in (0, 1], got {c}")
        elif self.shape_param is not None:
            raise ValueError(f"{self.kind.value} takes no shape parameter")

    @classmethod
    def from_name(cls, name: str, shape_param: Optional[float] = None) -> "ActivationSpec":
        """Build from a config name such as "relu" or "leaky_relu" """
        try:
            kind = ActivationKind(name)
        except ValueError:
            known = ", ".join(k.value for k in ActivationKind)
            raise ValueError(f"Unknown activation '{name}' (known: {known})") from None
        return cls(kind=kind, shape_param=shape_param)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def a_lip(self) -> float:
        """Lipschitz constant"""
        if self.kind == ActivationKind.SILU:
            return SILU_LIPSCHITZ
        return 1.0

    @property
    def homogeneous(self) -> bool:
        """Nonnegative homogeneous of degree 1"""
        return self.kind in (ActivationKind.RELU, ActivationKind.LEAKY_RELU)

    def apply(self, z: np.ndarray) -> np.ndarray:
        """Evaluate phi coordinatewise"""
        z = np.asarray(z, dtype=float)
        kind = self.kind
        if kind == ActivationKind.RELU:
            return np.maximum(z, 0.0)
        if kind == ActivationKind.LEAKY_RELU:
            return np.where(z >= 0.0, z, self.shape_param * z)
        if kind == ActivationKind.ELU:
            return np.where(z > 0.0, z, self.shape_param * np.expm1(np.minimum(z, 0.0)))
        if kind == ActivationKind.TANH:
            return np.tanh(z)
        return z * expit(z)

    def derivative(self, z: np.ndarray) -> np.ndarray:
        """
        Evaluate phi' coordinatewise

        At the kink of relu/leaky_relu the value for z > 0 is not used:
        relu'(0) = 0 and leaky_relu'(0) = c.
        """
        z = np.asarray(z, dtype=float)
        kind = self.kind
        if kind == ActivationKind.RELU:
            return (z > 0.0).astype(float)
        if kind == ActivationKind.LEAKY_RELU:
            return np.where(z > 0.0, 1.0, self.shape_param)
        if kind == ActivationKind.ELU:
            return np.where(z > 0.0, 1.0, self.shape_param * np.exp(np.minimum(z, 0.0)))
        if kind == ActivationKind.TANH:
            t = np.tanh(z)
            return 1.0 - t * t
        s = expit(z)
        return s * (1.0 + z * (1.0 - s))
