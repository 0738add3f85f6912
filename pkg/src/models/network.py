"""
Network parameter and data models

Conventions:
- layers[l] is the weight matrix W^l of shape (p_{l+1}, p_l), input side first
- a network with depth L has L hidden layers and L + 1 weight matrices
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from src.utils.errors import DimensionMismatchError


@dataclass(frozen=True)
class Architecture:
    """
    Network architecture

    widths: (p_0, ..., p_{L+1}), p_0 = d and p_{L+1} = 1
    """
    widths: Tuple[int, ...]

    def __post_init__(self):
        widths = tuple(int(w) for w in self.widths)
        object.__setattr__(self, "widths", widths)
        if len(widths) < 3:
            raise ValueError(f"Need at least one hidden layer, got widths {widths}")
        if any(w < 1 for w in widths):
            raise ValueError(f"All widths must be >= 1, got {widths}")
        if widths[-1] != 1:
            raise ValueError(f"Output width must be 1, got {widths[-1]}")

    @property
    def depth(self) -> int:
        """Number of hidden layers L"""
        return len(self.widths) - 2

    @property
    def input_dim(self) -> int:
        return self.widths[0]

    @property
    def n_layers(self) -> int:
        """Number of weight matrices (L + 1)"""
        return len(self.widths) - 1

    def layer_shape(self, l: int) -> Tuple[int, int]:
        """Shape of W^l"""
        return (self.widths[l + 1], self.widths[l])

    @property
    def param_count(self) -> int:
        """Total number of parameters P"""
        return param_count(self)


def param_count(arch: Architecture) -> int:
    """
    Total number of parameters P = sum_l p_{l+1} p_l

    Example: L=10, p_0=100, p_1..p_10=50 gives 27550.
    """
    w = arch.widths
    return sum(w[l + 1] * w[l] for l in range(len(w) - 1))


@dataclass(frozen=True, eq=False)
class NetworkParams:
    """
    Network parameters (one matrix per layer)

    The same type holds standard parameters Theta and directions Omega.
    """
    arch: Architecture
    layers: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.layers) != self.arch.n_layers:
            raise DimensionMismatchError(
                f"Expected {self.arch.n_layers} layers, got {len(self.layers)}"
            )
        layers = []
        for l, W in enumerate(self.layers):
            W = np.array(W, dtype=float)
            if W.ndim == 1 and self.arch.layer_shape(l)[0] == 1:
                W = W.reshape(1, -1)
            if W.shape != self.arch.layer_shape(l):
                raise DimensionMismatchError(
                    f"Layer {l}: expected shape {self.arch.layer_shape(l)}, got {W.shape}"
                )
            if not np.all(np.isfinite(W)):
                raise ValueError(f"Layer {l} has non-finite entries")
            W.setflags(write=False)
            layers.append(W)
        object.__setattr__(self, "layers", tuple(layers))

    @classmethod
    def zeros(cls, arch: Architecture) -> "NetworkParams":
        return cls(arch, tuple(np.zeros(arch.layer_shape(l)) for l in range(arch.n_layers)))

    @classmethod
    def from_flat(cls, arch: Architecture, vector: np.ndarray) -> "NetworkParams":
        """Rebuild from a flat vector ordered by (layer, row, column)"""
        vector = np.asarray(vector, dtype=float).ravel()
        if vector.size != arch.param_count:
            raise DimensionMismatchError(
                f"Expected {arch.param_count} parameters, got {vector.size}"
            )
        layers = []
        offset = 0
        for l in range(arch.n_layers):
            rows, cols = arch.layer_shape(l)
            layers.append(vector[offset:offset + rows * cols].reshape(rows, cols))
            offset += rows * cols
        return cls(arch, tuple(layers))

    @classmethod
    def random_normal(cls, arch: Architecture, rng: np.random.Generator, scale: float = 1.0) -> "NetworkParams":
        return cls(arch, tuple(scale * rng.standard_normal(arch.layer_shape(l)) for l in range(arch.n_layers)))

    @property
    def depth(self) -> int:
        return self.arch.depth

    def flatten(self) -> np.ndarray:
        """Concatenate all entries in (layer, row, column) order"""
        return np.concatenate([W.ravel() for W in self.layers])

    def map(self, fn: Callable[[np.ndarray], np.ndarray]) -> "NetworkParams":
        """Apply fn to every layer"""
        return NetworkParams(self.arch, tuple(fn(W) for W in self.layers))

    def scaled(self, factor: float) -> "NetworkParams":
        """Multiply every layer by factor"""
        return self.map(lambda W: factor * W)

    def __add__(self, other: "NetworkParams") -> "NetworkParams":
        check_same_arch(self, other)
        return NetworkParams(self.arch, tuple(a + b for a, b in zip(self.layers, other.layers)))

    def __sub__(self, other: "NetworkParams") -> "NetworkParams":
        check_same_arch(self, other)
        return NetworkParams(self.arch, tuple(a - b for a, b in zip(self.layers, other.layers)))

    def has_zero_layer(self) -> bool:
        """True when some W^l is entirely zero (the network is then identically 0)"""
        return any(not np.any(W) for W in self.layers)

    def allclose(self, other: "NetworkParams", atol: float = 0.0, rtol: float = 1e-12) -> bool:
        if self.arch != other.arch:
            return False
        return all(np.allclose(a, b, atol=atol, rtol=rtol) for a, b in zip(self.layers, other.layers))


def check_same_arch(a: NetworkParams, b: NetworkParams) -> None:
    """Raise if two parameters have different architectures"""
    if a.arch != b.arch:
        raise DimensionMismatchError(
            f"Architecture mismatch: {a.arch.widths} vs {b.arch.widths}"
        )


@dataclass(frozen=True, eq=False)
class ScaledNetwork:
    """
    Scale/direction network kappa * g_Omega

    degenerate: set by decompose when Theta had an all-zero layer; omega then
    is the original parameter and need not lie in the unit ball.
    """
    kappa: float
    omega: NetworkParams
    degenerate: bool = False

    def __post_init__(self):
        kappa = float(self.kappa)
        if not np.isfinite(kappa) or kappa < 0.0:
            raise ValueError(f"kappa must be finite and >= 0, got {self.kappa}")
        object.__setattr__(self, "kappa", kappa)

    @property
    def arch(self) -> Architecture:
        return self.omega.arch

    def with_kappa(self, kappa: float) -> "ScaledNetwork":
        return ScaledNetwork(kappa, self.omega, self.degenerate)


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Regression sample

    inputs: (n, d) array of x_i
    responses: (n,) array of y_i
    truth: optional (n,) array of g*(x_i)
    """
    inputs: np.ndarray
    responses: np.ndarray
    truth: Optional[np.ndarray] = None

    def __post_init__(self):
        inputs = np.array(self.inputs, dtype=float)
        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        responses = np.array(self.responses, dtype=float).ravel()
        if inputs.ndim != 2 or inputs.shape[0] < 1:
            raise DimensionMismatchError(f"inputs must be an (n, d) array with n >= 1, got {inputs.shape}")
        if responses.shape[0] != inputs.shape[0]:
            raise DimensionMismatchError(
                f"{inputs.shape[0]} inputs but {responses.shape[0]} responses"
            )
        truth = self.truth
        if truth is not None:
            truth = np.array(truth, dtype=float).ravel()
            if truth.shape[0] != inputs.shape[0]:
                raise DimensionMismatchError(
                    f"{inputs.shape[0]} inputs but {truth.shape[0]} truth values"
                )
            truth.setflags(write=False)
        inputs.setflags(write=False)
        responses.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "responses", responses)
        object.__setattr__(self, "truth", truth)

    @property
    def n(self) -> int:
        return self.inputs.shape[0]

    @property
    def dim(self) -> int:
        return self.inputs.shape[1]

    @property
    def has_truth(self) -> bool:
        return self.truth is not None

    @property
    def inputs_norm(self) -> float:
        """||x||_n = sqrt(sum_i ||x_i||^2 / n)"""
        return float(np.sqrt(np.mean(np.sum(self.inputs ** 2, axis=1))))

    def with_responses(self, responses: Sequence[float]) -> "Dataset":
        return Dataset(self.inputs, responses, self.truth)

    @classmethod
    def design_only(cls, inputs: np.ndarray) -> "Dataset":
        """Inputs with zero responses (for quantities that only use the design)"""
        inputs = np.asarray(inputs, dtype=float)
        if inputs.ndim == 1:
            inputs = inputs.reshape(-1, 1)
        return cls(inputs, np.zeros(inputs.shape[0]))
