"""
Teacher networks and synthetic regression data

y_i = kappa* g_{Omega*}(x_i) + u_i with Omega* on the unit sphere of h.
"""

from enum import Enum
from typing import List, Union

import numpy as np

from src.bounds.subgaussian import SubGaussianSpec
from src.interfaces import IRegularizer
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams, ScaledNetwork
from src.network.forward import as_batch, predict
from src.regularizers.l1 import RegularizerKind, RegularizerLike, get_regularizer
from src.utils.rng import STREAM_DESIGN, STREAM_NOISE, STREAM_TEACHER, derive_rng


class InputDistribution(Enum):
    """Input law"""
    GAUSSIAN_SPHERE = "gaussian_sphere"  # uniform on the sphere of radius sqrt(d)
    UNIFORM_CUBE = "uniform_cube"        # U[-1, 1]^d

    @classmethod
    def parse(cls, name: Union[str, "InputDistribution"]) -> "InputDistribution":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(d.value for d in cls)
            raise ValueError(f"Unknown input distribution '{name}' (known: {known})") from None


InputLike = Union[str, InputDistribution]


# share of each layer's l1 mass carried by the teacher's active path
PATH_SHARE = 0.9


def _layer_masses(reg: IRegularizer, arch: Architecture) -> List[float]:
    """Per-layer l1 mass of a teacher direction with h = 1"""
    if reg.name == RegularizerKind.MAX_LAYER_L1.value:
        return [1.0] * arch.n_layers
    return [1.0 / arch.n_layers] * arch.n_layers


def gen_teacher(
    arch: Architecture,
    act: ActivationSpec,
    h: RegularizerLike,
    kappa_star: float,
    seed: int,
) -> ScaledNetwork:
    """
    Random teacher (kappa*, Omega*) with h(Omega*) = 1

    Every layer gets the same l1 mass (1/(L+1) under sum_l1, 1 under
    max_layer_l1). PATH_SHARE of it sits on one random input-to-output
    path, the rest is a standard normal background. Signs on the path are
    random at the first and last layer and positive in between, so the
    path stays active under relu. The draw depends only on the seed.
    """
    if not kappa_star >= 0:
        raise ValueError(f"kappa_star must be >= 0, got {kappa_star}")
    reg = get_regularizer(h)
    rng = derive_rng(seed, STREAM_TEACHER)
    path = [int(rng.integers(width)) for width in arch.widths]
    last = arch.n_layers - 1

    layers = []
    for l, mass in enumerate(_layer_masses(reg, arch)):
        W = rng.standard_normal(arch.layer_shape(l))
        row, col = path[l + 1], path[l]
        W[row, col] = 0.0
        background = float(np.abs(W).sum())
        share = 1.0
        if background > 0:
            W *= (1.0 - PATH_SHARE) * mass / background
            share = PATH_SHARE
        sign = float(rng.choice((-1.0, 1.0))) if l in (0, last) else 1.0
        W[row, col] = sign * share * mass
        layers.append(W)
    return ScaledNetwork(kappa_star, reg.normalize(NetworkParams(arch, tuple(layers))))


def sample_inputs(dist: InputLike, n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an (n, d) design"""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    dist = InputDistribution.parse(dist)
    if dist == InputDistribution.UNIFORM_CUBE:
        return rng.uniform(-1.0, 1.0, size=(n, d))
    z = rng.standard_normal((n, d))
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    # a zero draw has probability 0; map it to the first axis
    z = np.where(norms > 0, z, np.eye(1, d))
    norms = np.where(norms > 0, norms, 1.0)
    return np.sqrt(d) * z / norms


def gen_design(dist: InputLike, n: int, d: int, seed: int) -> np.ndarray:
    return sample_inputs(dist, n, d, derive_rng(seed, STREAM_DESIGN))


def gen_responses(
    teacher: ScaledNetwork,
    act: ActivationSpec,
    inputs: np.ndarray,
    noise: SubGaussianSpec,
    seed: int,
) -> Dataset:
    """Responses on a fixed design; truth holds the teacher values"""
    X = as_batch(teacher.arch.input_dim, inputs)
    truth = predict(teacher, act, X)
    u = noise.sample(derive_rng(seed, STREAM_NOISE), X.shape[0])
    return Dataset(X, truth + u, truth)


def gen_dataset(
    teacher: ScaledNetwork,
    act: ActivationSpec,
    input_dist: InputLike,
    noise: SubGaussianSpec,
    n: int,
    seed: int,
) -> Dataset:
    """
    Fresh sample of size n

    Args:
        teacher: regression function
        act: activation
        input_dist: input law
        noise: noise law
        n: sample size (>= 1)
        seed: seed of the design and noise streams

    Returns:
        Dataset with truth values
    """
    X = gen_design(input_dist, n, teacher.arch.input_dim, seed)
    return gen_responses(teacher, act, X, noise, seed)
