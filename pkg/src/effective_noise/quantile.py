"""
Monte Carlo quantile of the effective noise

lambda_hat is the ceil((1 - t) reps)-th order statistic of the
replicate suprema. Each replicate r draws its noise from its own stream
(seed, NOISE, r), so results do not depend on the number of workers.
With warm starts, replicate 0 runs first and its argmax seeds the
search of every other replicate.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from scipy.stats import binom

from src.bounds.lipschitz import unit_ball_envelope
from src.bounds.subgaussian import SubGaussianSpec
from src.config.schema import NoiseSearchOptions
from src.effective_noise.search import maximize_inner_product
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset, NetworkParams
from src.regularizers.l1 import RegularizerLike
from src.utils.rng import STREAM_QUANTILE, derive_rng

DEFAULT_CONFIDENCE = 0.95


@dataclass(frozen=True, eq=False)
class NoiseQuantileReport:
    """
    Effective-noise quantile estimate

    z_values: per-replicate suprema (lower-bound estimates of z_h)
    envelopes: per-replicate analytic upper brackets 2 c ||u||_n
    ci_low, ci_high: order-statistic confidence interval for lambda_{h,t}
    """
    t: float
    reps: int
    z_values: Tuple[float, ...]
    lambda_hat: float
    envelopes: Tuple[float, ...] = ()
    ci_low: float = float("nan")
    ci_high: float = float("nan")
    confidence: float = DEFAULT_CONFIDENCE
    seed: int = 0
    opts: NoiseSearchOptions = field(default_factory=NoiseSearchOptions)


def quantile_rank(t: float, reps: int) -> int:
    """1-based rank ceil((1 - t) reps), clamped to [1, reps]"""
    k = math.ceil((1.0 - t) * reps - 1e-9)
    return min(max(k, 1), reps)


def empirical_quantile(z_values: Sequence[float], t: float) -> float:
    """Upper empirical (1 - t) quantile"""
    z = np.sort(np.asarray(z_values, dtype=float))
    if z.size == 0:
        raise ValueError("empirical_quantile needs at least one value")
    return float(z[quantile_rank(t, z.size) - 1])


def quantile_confidence_interval(
    z_values: Sequence[float],
    t: float,
    confidence: float = DEFAULT_CONFIDENCE,
) -> Tuple[float, float]:
    """
    Distribution-free interval for the (1 - t) quantile

    Uses order statistics X_(j) <= xi <= X_(k) with j, k from the
    Binomial(reps, 1 - t) quantiles at (1 -/+ confidence) / 2.
    """
    if not 0 < confidence < 1:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    z = np.sort(np.asarray(z_values, dtype=float))
    m = z.size
    if m == 0:
        raise ValueError("quantile_confidence_interval needs at least one value")
    q = 1.0 - t
    alpha = 1.0 - confidence
    j = int(binom.ppf(alpha / 2.0, m, q))
    k = int(binom.ppf(1.0 - alpha / 2.0, m, q)) + 1
    j = min(max(j, 1), m)
    k = min(max(k, j), m)
    return float(z[j - 1]), float(z[k - 1])


def draw_noise(noise_model: SubGaussianSpec, n: int, seed: int, rep: int) -> np.ndarray:
    """Noise vector of replicate rep"""
    return noise_model.sample(derive_rng(seed, STREAM_QUANTILE, rep), n)


def _replicate(
    dataset: Dataset,
    noise_model: SubGaussianSpec,
    arch: Architecture,
    act: ActivationSpec,
    h: RegularizerLike,
    opts: NoiseSearchOptions,
    seed: int,
    rep: int,
    init: Optional[NetworkParams],
) -> Tuple[NetworkParams, float, float]:
    u = draw_noise(noise_model, dataset.n, seed, rep)
    omega, value = maximize_inner_product(
        dataset, u, arch, act, h, opts, seed=seed, key=rep, init=init,
    )
    envelope = 2.0 * unit_ball_envelope(h, act, arch.depth, dataset.inputs_norm) * float(np.sqrt(np.mean(u * u)))
    return omega, value, envelope


def estimate_quantile(
    dataset: Dataset,
    noise_model: SubGaussianSpec,
    arch: Architecture,
    act: ActivationSpec,
    h: RegularizerLike,
    t: float,
    reps: int,
    opts: Optional[NoiseSearchOptions] = None,
    seed: int = 0,
    confidence: float = DEFAULT_CONFIDENCE,
) -> NoiseQuantileReport:
    """
    Estimate lambda_{h,t} for a fixed design

    Args:
        dataset: design (responses unused)
        noise_model: noise law
        arch: architecture
        act: activation
        h: regularizer
        t: level in (0, 1)
        reps: number of noise replicates (>= 1/t)
        opts: search options
        seed: master seed
        confidence: level of the reported interval

    Returns:
        NoiseQuantileReport
    """
    opts = opts or NoiseSearchOptions()
    if not 0 < t < 1:
        raise ValueError(f"t must be in (0, 1), got {t}")
    if reps < 1 or reps * t < 1 - 1e-9:
        raise ValueError(f"reps must be >= 1/t = {1 / t:.6g}, got {reps}")

    def run(rep: int, init: Optional[NetworkParams]):
        return _replicate(dataset, noise_model, arch, act, h, opts, seed, rep, init)

    if opts.warm_start:
        pilot = run(0, None)
        rest = Parallel(n_jobs=opts.n_jobs, prefer="threads")(
            delayed(run)(rep, pilot[0]) for rep in range(1, reps)
        )
        results = [pilot] + list(rest)
    else:
        results = Parallel(n_jobs=opts.n_jobs, prefer="threads")(
            delayed(run)(rep, None) for rep in range(reps)
        )

    z_values = tuple(r[1] for r in results)
    ci_low, ci_high = quantile_confidence_interval(z_values, t, confidence)
    return NoiseQuantileReport(
        t=float(t),
        reps=int(reps),
        z_values=z_values,
        lambda_hat=empirical_quantile(z_values, t),
        envelopes=tuple(r[2] for r in results),
        ci_low=ci_low,
        ci_high=ci_high,
        confidence=confidence,
        seed=seed,
        opts=opts,
    )
