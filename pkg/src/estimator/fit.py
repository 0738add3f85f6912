"""
Alternating fit of the scale-regularized estimator

Each restart alternates
- a direction step: projected gradient descent on Omega over {h <= 1}
  with Armijo backtracking (kappa fixed; while kappa = 0 the step ascends
  the correlation (2/n) sum y_i g_Omega(x_i) instead)
- a scale step: the exact minimizer in kappa

Restarts are independent (own RNG stream) and may run in parallel; the
winner is the lexicographic minimum of (objective, restart index).
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from src.config.schema import FitOptions
from src.interfaces import IRegularizer
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams, ScaledNetwork
from src.network.forward import as_batch, forward_layers
from src.network.gradient import backprop_from_forward
from src.network.serialization import read_network, write_network
from src.regularizers.l1 import RegularizerLike, get_regularizer
from src.estimator.objective import objective_from_outputs, scale_from_outputs
from src.estimator.projected import NonFiniteStep, projected_descent
from src.utils.errors import DimensionMismatchError, FitDivergedError
from src.utils.rng import STREAM_RESTART, derive_rng


@dataclass(frozen=True)
class RestartFailure:
    """A restart aborted on a non-finite objective"""
    restart_index: int
    iteration: int
    reason: str


@dataclass(frozen=True, eq=False)
class FitResult:
    """
    Fitted (kappa, Omega)

    trace: objective after initialization and after every outer iteration
           of the winning restart (nonincreasing)
    restart_objectives: final objective per restart, nan for failed ones
    """
    net: ScaledNetwork
    objective: float
    trace: Tuple[float, ...]
    restart_index: int
    lam: float
    iterations: int
    restart_objectives: Tuple[float, ...] = ()
    failures: Tuple[RestartFailure, ...] = ()

    @property
    def kappa(self) -> float:
        return self.net.kappa

    def metadata(self) -> Dict[str, Union[int, float]]:
        return {
            "kappa": self.net.kappa,
            "lambda": self.lam,
            "objective": self.objective,
            "iterations": self.iterations,
            "restart_index": self.restart_index,
        }


class _Diverged(Exception):
    def __init__(self, iteration: int, reason: str):
        self.iteration = iteration
        self.reason = reason
        super().__init__(reason)


@dataclass
class _RestartOutcome:
    index: int
    omega: Optional[np.ndarray] = None
    kappa: float = 0.0
    objective: float = float("nan")
    trace: Tuple[float, ...] = ()
    iterations: int = 0
    failure: Optional[RestartFailure] = None


class _DirectionProblem:
    """Direction subproblem on the flat parameter vector"""

    def __init__(self, dataset: Dataset, arch: Architecture, act: ActivationSpec, reg: IRegularizer):
        self.arch = arch
        self.act = act
        self.reg = reg
        self.X = as_batch(arch.input_dim, dataset.inputs)
        self.y = dataset.responses
        self.n = self.y.shape[0]
        # tolerances are relative to the zero-predictor objective
        self.y_scale = float(np.mean(self.y * self.y))
        self._shapes = [arch.layer_shape(l) for l in range(arch.n_layers)]
        self._splits = np.cumsum([r * c for r, c in self._shapes])[:-1]

    def layers(self, w: np.ndarray) -> List[np.ndarray]:
        return [part.reshape(shape) for part, shape in zip(np.split(w, self._splits), self._shapes)]

    def outputs(self, w: np.ndarray) -> np.ndarray:
        return forward_layers(self.layers(w), self.act, self.X)[0]

    def project(self, w: np.ndarray) -> np.ndarray:
        return self.reg.project_unit_ball(NetworkParams.from_flat(self.arch, w)).flatten()

    def surrogate(self, g: np.ndarray, kappa: float) -> float:
        """Direction-step criterion: squared loss for kappa > 0, negative correlation at 0"""
        if kappa > 0.0:
            r = self.y - kappa * g
            return float(np.mean(r * r))
        return float(-2.0 / self.n * np.dot(self.y, g))

    def value(self, w: np.ndarray, kappa: float) -> float:
        return self.surrogate(self.outputs(w), kappa)

    def value_and_grad(self, w: np.ndarray, kappa: float) -> Tuple[float, np.ndarray]:
        layers = self.layers(w)
        g, activations, pre = forward_layers(layers, self.act, self.X)
        if kappa > 0.0:
            weights = (-2.0 / self.n) * kappa * (self.y - kappa * g)
        else:
            weights = (-2.0 / self.n) * self.y
        grads = backprop_from_forward(layers, self.act, activations, pre, weights)
        return self.surrogate(g, kappa), np.concatenate([G.ravel() for G in grads])


def _direction_step(
    problem: _DirectionProblem,
    w: np.ndarray,
    kappa: float,
    step: float,
    opts: FitOptions,
    abs_tol: float,
) -> Tuple[np.ndarray, float, float]:
    """Projected gradient iterations on Omega at fixed kappa"""
    try:
        return projected_descent(
            lambda v: problem.value_and_grad(v, kappa),
            lambda v: problem.value(v, kappa),
            problem.project,
            w,
            step,
            max_iters=opts.max_inner_iters,
            backtracking=opts.backtracking,
            armijo=opts.armijo,
            abs_tol=abs_tol,
            rel_tol=opts.rel_tol,
        )
    except NonFiniteStep:
        raise _Diverged(0, "non-finite gradient in direction step") from None


def _run_restart(
    problem: _DirectionProblem,
    lam: float,
    opts: FitOptions,
    index: int,
) -> _RestartOutcome:
    """One restart; failures are returned, not raised"""
    rng = derive_rng(opts.seed, STREAM_RESTART, index)
    w = problem.reg.random_direction(problem.arch, rng, radius=opts.init_scale).flatten()
    y = problem.y
    abs_tol = opts.abs_tol * problem.y_scale
    it = 0
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            g = problem.outputs(w)
            kappa = scale_from_outputs(g, y, lam)
            obj = objective_from_outputs(g, y, kappa, lam)
            if not np.isfinite(obj):
                raise _Diverged(0, "non-finite objective at initialization")
            trace = [obj]
            step = opts.step_init

            for it in range(1, opts.max_outer_iters + 1):
                kappa_before = kappa
                w, step, direction_decrease = _direction_step(problem, w, kappa, step, opts, abs_tol)

                g = problem.outputs(w)
                obj_direction = objective_from_outputs(g, y, kappa, lam)
                kappa_new = scale_from_outputs(g, y, lam)
                obj_new = objective_from_outputs(g, y, kappa_new, lam)
                if obj_new <= obj_direction:
                    kappa, obj = kappa_new, obj_new
                else:
                    obj = obj_direction
                if not np.isfinite(obj):
                    raise _Diverged(it, "non-finite objective")

                prev = trace[-1]
                trace.append(obj)
                improvement = prev - obj
                stalled = improvement <= abs_tol or improvement <= opts.rel_tol * abs(prev)
                if stalled and (kappa_before > 0.0 or direction_decrease <= abs_tol):
                    break
    except _Diverged as e:
        return _RestartOutcome(
            index=index,
            failure=RestartFailure(index, e.iteration or it, e.reason),
        )
    return _RestartOutcome(
        index=index,
        omega=w,
        kappa=kappa,
        objective=obj,
        trace=tuple(trace),
        iterations=len(trace) - 1,
    )


def fit(
    dataset: Dataset,
    arch: Architecture,
    act: ActivationSpec,
    h: RegularizerLike,
    lam: float,
    opts: Optional[FitOptions] = None,
) -> FitResult:
    """
    Fit the scale-regularized least-squares estimator

    Args:
        dataset: sample
        arch: architecture (input dimension must match the dataset)
        act: activation
        h: regularizer defining the direction ball
        lam: tuning parameter (>= 0)
        opts: optimization options

    Returns:
        FitResult of the best restart

    Raises:
        FitDivergedError: every restart diverged
    """
    opts = opts or FitOptions()
    if not lam >= 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if arch.input_dim != dataset.dim:
        raise DimensionMismatchError(
            f"Architecture expects input dimension {arch.input_dim}, dataset has {dataset.dim}"
        )
    if opts.restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {opts.restarts}")
    if not (0 < opts.init_scale <= 1):
        raise ValueError(f"init_scale must be in (0, 1], got {opts.init_scale}")
    problem = _DirectionProblem(dataset, arch, act, get_regularizer(h))

    outcomes = Parallel(n_jobs=opts.n_jobs, prefer="threads")(
        delayed(_run_restart)(problem, lam, opts, idx) for idx in range(opts.restarts)
    )

    failures = tuple(o.failure for o in outcomes if o.failure is not None)
    successes = [o for o in outcomes if o.failure is None]
    if not successes:
        raise FitDivergedError(list(failures))
    best = min(successes, key=lambda o: (o.objective, o.index))

    return FitResult(
        net=ScaledNetwork(best.kappa, NetworkParams.from_flat(arch, best.omega)),
        objective=best.objective,
        trace=best.trace,
        restart_index=best.index,
        lam=float(lam),
        iterations=best.iterations,
        restart_objectives=tuple(o.objective for o in outcomes),
        failures=failures,
    )


def write_fit_result(path: Union[str, Path], result: FitResult) -> Path:
    """Write the fitted direction with a metadata block"""
    return write_network(path, result.net.omega, result.metadata())


def read_fit_result(path: Union[str, Path]) -> Tuple[ScaledNetwork, Dict[str, Union[int, float, str]]]:
    """Read a file written by write_fit_result"""
    omega, metadata = read_network(path)
    if "kappa" not in metadata:
        raise ValueError(f"{path} has no kappa in its metadata block")
    return ScaledNetwork(float(metadata["kappa"]), omega), metadata
