"""
Effective-noise maximization

z_h = sup over {h(Omega) <= 1} of |(2/n) sum_i g_Omega(x_i) u_i|

The search runs on the normalized noise u / ||u|| and rescales at the
end, so the returned value is linear in the noise scale. Restarts
alternate the sign of the correlation being ascended; the best value
found is a lower bound on z_h.
"""

from typing import Optional, Tuple

import numpy as np

from src.config.schema import NoiseSearchOptions
from src.estimator.projected import NonFiniteStep, projected_descent
from src.interfaces import IRegularizer
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams
from src.network.forward import as_batch, forward_layers
from src.network.gradient import backprop_from_forward
from src.regularizers.l1 import RegularizerLike, get_regularizer
from src.utils.errors import DimensionMismatchError
from src.utils.rng import STREAM_SEARCH, derive_rng


class _CorrelationProblem:
    """c(w) = (2/n) sum_i g_w(x_i) v_i for a fixed unit-norm v"""

    def __init__(self, X: np.ndarray, v: np.ndarray, arch: Architecture, act: ActivationSpec, reg: IRegularizer):
        self.arch = arch
        self.act = act
        self.reg = reg
        self.X = X
        self.weights = 2.0 / v.shape[0] * v
        self._shapes = [arch.layer_shape(l) for l in range(arch.n_layers)]
        self._splits = np.cumsum([r * c for r, c in self._shapes])[:-1]

    def layers(self, w: np.ndarray):
        return [part.reshape(shape) for part, shape in zip(np.split(w, self._splits), self._shapes)]

    def correlation(self, w: np.ndarray) -> float:
        g = forward_layers(self.layers(w), self.act, self.X)[0]
        return float(np.dot(self.weights, g))

    def neg_value(self, w: np.ndarray, sign: float) -> float:
        return -sign * self.correlation(w)

    def neg_value_and_grad(self, w: np.ndarray, sign: float) -> Tuple[float, np.ndarray]:
        layers = self.layers(w)
        g, activations, pre = forward_layers(layers, self.act, self.X)
        grads = backprop_from_forward(layers, self.act, activations, pre, -sign * self.weights)
        return -sign * float(np.dot(self.weights, g)), np.concatenate([G.ravel() for G in grads])

    def project(self, w: np.ndarray) -> np.ndarray:
        return self.reg.project_unit_ball(NetworkParams.from_flat(self.arch, w)).flatten()


def maximize_inner_product(
    dataset: Dataset,
    noise: np.ndarray,
    arch: Architecture,
    act: ActivationSpec,
    h: RegularizerLike,
    opts: Optional[NoiseSearchOptions] = None,
    seed: int = 0,
    key: int = 0,
    init: Optional[NetworkParams] = None,
) -> Tuple[NetworkParams, float]:
    """
    Multistart projected gradient ascent for the effective noise

    Args:
        dataset: design (responses unused)
        noise: u_1..u_n
        arch: architecture
        act: activation
        h: regularizer
        opts: search options
        seed: master seed
        key: stream key (replicate index) so different calls draw different starts
        init: warm start, used as restart 0 (projected into the ball)

    Returns:
        (best direction found, |(2/n) sum g u| at that direction)
    """
    opts = opts or NoiseSearchOptions()
    reg = get_regularizer(h)
    X = as_batch(arch.input_dim, dataset.inputs)
    u = np.asarray(noise, dtype=float).ravel()
    if u.shape[0] != X.shape[0]:
        raise DimensionMismatchError(f"{X.shape[0]} inputs but {u.shape[0]} noise values")
    u_norm = float(np.linalg.norm(u))
    if u_norm == 0.0:
        start = reg.project_unit_ball(init) if init is not None else NetworkParams.zeros(arch)
        return start, 0.0

    problem = _CorrelationProblem(X, u / u_norm, arch, act, reg)
    best_w: Optional[np.ndarray] = None
    best_corr = -1.0

    for r in range(opts.restarts):
        if r == 0 and init is not None:
            w = problem.project(init.flatten())
            sign = 1.0 if problem.correlation(w) >= 0 else -1.0
        else:
            rng = derive_rng(seed, STREAM_SEARCH, key, r)
            w = reg.random_direction(arch, rng).flatten()
            sign = 1.0 if r % 2 == 0 else -1.0
        try:
            w, _, _ = projected_descent(
                lambda v: problem.neg_value_and_grad(v, sign),
                lambda v: problem.neg_value(v, sign),
                problem.project,
                w,
                opts.step_init,
                max_iters=opts.max_iters,
                backtracking=opts.backtracking,
                armijo=opts.armijo,
                abs_tol=opts.abs_tol,
                rel_tol=opts.rel_tol,
            )
        except NonFiniteStep:
            continue
        corr = abs(problem.correlation(w))
        if corr > best_corr:
            best_w, best_corr = w, corr

    if best_w is None:
        return NetworkParams.zeros(arch), 0.0
    return NetworkParams.from_flat(arch, best_w), best_corr * u_norm
