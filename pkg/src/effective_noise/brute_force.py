"""
Dense-grid oracle for tiny networks (P <= 3)

The grid has `resolution` equally spaced points per axis on [-1, 1];
points outside the unit ball of h are dropped. Refining from resolution
m to 2m - 1 keeps every old point, so the grid sup is monotone under
that refinement.
"""

from typing import Iterator

import numpy as np

from src.bounds.lipschitz import c_lip1
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams
from src.network.forward import as_batch
from src.regularizers.l1 import RegularizerKind, RegularizerLike, get_regularizer
from src.utils.errors import DimensionMismatchError

MAX_TINY_PARAMS = 3
CHUNK_ENTRIES = 2_000_000


def check_tiny(arch: Architecture) -> None:
    if arch.param_count > MAX_TINY_PARAMS:
        raise ValueError(
            f"Grid search needs P <= {MAX_TINY_PARAMS}, architecture {arch.widths} has P={arch.param_count}"
        )


def grid_spacing(resolution: int) -> float:
    if resolution < 2:
        raise ValueError(f"grid_resolution must be >= 2, got {resolution}")
    return 2.0 / (resolution - 1)


def unit_ball_grid(arch: Architecture, h: RegularizerLike, resolution: int) -> np.ndarray:
    """Grid points (M, P) inside {h <= 1}, in lexicographic order"""
    check_tiny(arch)
    grid_spacing(resolution)
    axis = np.linspace(-1.0, 1.0, resolution)
    P = arch.param_count
    points = np.stack(np.meshgrid(*([axis] * P), indexing="ij"), axis=-1).reshape(-1, P)
    reg = get_regularizer(h)
    if RegularizerKind(reg.name) == RegularizerKind.SUM_L1:
        mask = np.abs(points).sum(axis=1) <= 1.0 + 1e-12
    else:
        mask = np.array([reg.value(NetworkParams.from_flat(arch, p)) <= 1.0 + 1e-12 for p in points])
    return points[mask]


def batched_outputs(points: np.ndarray, arch: Architecture, act: ActivationSpec, X: np.ndarray) -> np.ndarray:
    """g_w(x_i) for every grid point w; shape (M, n)"""
    return np.concatenate(list(_iter_batched_outputs(points, arch, act, X)), axis=0)


def _iter_batched_outputs(points, arch, act, X) -> Iterator[np.ndarray]:
    n = X.shape[0]
    chunk = max(1, CHUNK_ENTRIES // max(n, 1))
    shapes = [arch.layer_shape(l) for l in range(arch.n_layers)]
    splits = np.cumsum([r * c for r, c in shapes])[:-1]
    for start in range(0, points.shape[0], chunk):
        block = points[start:start + chunk]
        mats = [
            part.reshape(-1, *shape)
            for part, shape in zip(np.split(block, splits, axis=1), shapes)
        ]
        H = np.broadcast_to(X, (block.shape[0],) + X.shape)
        for W in mats[:-1]:
            H = act.apply(np.einsum("mij,mnj->mni", W, H))
        yield np.einsum("mij,mnj->mni", mats[-1], H)[:, :, 0]


def brute_force_sup_tiny(
    dataset: Dataset,
    noise: np.ndarray,
    arch: Architecture,
    act: ActivationSpec,
    grid_resolution: int,
    h: RegularizerLike = RegularizerKind.SUM_L1,
) -> float:
    """
    max over grid points of |(2/n) sum_i g_w(x_i) u_i|

    Raises:
        ValueError: P > 3
    """
    check_tiny(arch)
    X = as_batch(arch.input_dim, dataset.inputs)
    u = np.asarray(noise, dtype=float).ravel()
    if u.shape[0] != X.shape[0]:
        raise DimensionMismatchError(f"{X.shape[0]} inputs but {u.shape[0]} noise values")
    if not np.any(u):
        return 0.0
    points = unit_ball_grid(arch, h, grid_resolution)
    weights = 2.0 / u.shape[0] * u
    best = 0.0
    for G in _iter_batched_outputs(points, arch, act, X):
        best = max(best, float(np.max(np.abs(G @ weights))))
    return best


def grid_slack(arch: Architecture, act: ActivationSpec, dataset: Dataset, noise: np.ndarray, grid_resolution: int) -> float:
    """
    Lipschitz slack of the grid sup: 2 c_Lip1 ||u||_n spacing sqrt(P)

    Every unit-ball point lies within spacing * sqrt(P) of a grid point
    inside the ball (round each coordinate toward zero).
    """
    u = np.asarray(noise, dtype=float).ravel()
    u_norm_n = float(np.sqrt(np.mean(u * u)))
    c = c_lip1(act.a_lip, arch.depth, dataset.inputs_norm)
    return 2.0 * c * u_norm_n * grid_spacing(grid_resolution) * np.sqrt(arch.param_count)
