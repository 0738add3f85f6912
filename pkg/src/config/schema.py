"""
Config data structures

Every YAML section maps to one dataclass; omitted keys take the defaults
below.
"""

from dataclasses import dataclass, field
from typing import List, Optional

from src.models.activations import ActivationSpec
from src.models.network import Architecture


@dataclass
class NetworkConfig:
    """Network architecture and regularizer"""
    widths: List[int] = field(default_factory=lambda: [4, 4, 3, 1])
    activation: str = "relu"
    activation_param: Optional[float] = None
    regularizer: str = "sum_l1"


@dataclass
class TeacherConfig:
    """Realizable teacher network"""
    kappa_star: float = 2.0


@dataclass
class NoiseConfig:
    """
    Noise distribution

    kind: gaussian (scale = sigma), rademacher (+-scale), uniform (U(-scale, scale))
    """
    kind: str = "gaussian"
    scale: float = 0.5


@dataclass
class DataConfig:
    """Design and noise"""
    input_distribution: str = "gaussian_sphere"
    sample_sizes: List[int] = field(default_factory=lambda: [128, 256, 512, 1024])
    holdout_size: int = 1000
    noise: NoiseConfig = field(default_factory=NoiseConfig)


@dataclass
class LambdaRuleConfig:
    """
    Tuning-parameter rule

    kind: monte_carlo_quantile (safety_factor * lambda_hat from reps replicates)
          or theoretical (closed form with constant a)
    """
    kind: str = "monte_carlo_quantile"
    reps: int = 200
    safety_factor: float = 1.2
    a: float = 1.0


@dataclass
class ExperimentSection:
    """Replication settings"""
    replicates: int = 20
    level: float = 0.05
    lambda_rule: LambdaRuleConfig = field(default_factory=LambdaRuleConfig)


@dataclass
class FitOptions:
    """
    Estimator optimization options

    The direction step is projected gradient descent with Armijo
    backtracking; the scale step is exact. abs_tol is in units of
    (1/n) sum y_i^2, the objective of the zero predictor; init_scale is
    the h-value of the starting directions and must lie in (0, 1].
    """
    max_outer_iters: int = 200
    max_inner_iters: int = 20
    step_init: float = 1.0
    backtracking: float = 0.5
    armijo: float = 1e-4
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    restarts: int = 8
    init_scale: float = 1.0
    seed: int = 0
    n_jobs: int = 1


@dataclass
class NoiseSearchOptions:
    """Effective-noise maximization options"""
    restarts: int = 32
    max_iters: int = 200
    step_init: float = 1.0
    backtracking: float = 0.5
    armijo: float = 1e-4
    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    warm_start: bool = True
    n_jobs: int = 1


@dataclass
class PackingConfig:
    """Entropy-vs-packing check (tiny networks only)"""
    r_grid: List[float] = field(default_factory=lambda: [0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5])
    grid_resolution: int = 201
    inputs: List[List[float]] = field(default_factory=lambda: [[1.0]])


@dataclass
class BoundsConfig:
    """
    Closed-form bound inputs

    delta: Dudley lower limit, defaults to c_lip1 * sigma
    r_grid: radii at which the entropy bound is reported
    """
    n: List[int] = field(default_factory=lambda: [100])
    x_norm_n: float = 1.0
    a: float = 1.0
    sigma: float = 1.0
    delta: Optional[float] = None
    r_grid: List[float] = field(default_factory=lambda: [0.5, 1.0, 2.0, 4.0])


@dataclass
class OutputConfig:
    """Output location; dir falls back to SCALEREG_OUTPUT_DIR, then ./output"""
    dir: Optional[str] = None
    plots: bool = False


@dataclass
class ExperimentConfig:
    """Complete run configuration"""
    seed: int = 0
    n_jobs: int = 1
    network: NetworkConfig = field(default_factory=NetworkConfig)
    teacher: TeacherConfig = field(default_factory=TeacherConfig)
    data: DataConfig = field(default_factory=DataConfig)
    experiment: ExperimentSection = field(default_factory=ExperimentSection)
    fit: FitOptions = field(default_factory=FitOptions)
    noise_search: NoiseSearchOptions = field(default_factory=NoiseSearchOptions)
    packing: PackingConfig = field(default_factory=PackingConfig)
    bounds: BoundsConfig = field(default_factory=BoundsConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @property
    def arch(self) -> Architecture:
        return Architecture(tuple(self.network.widths))

    @property
    def activation(self) -> ActivationSpec:
        return ActivationSpec.from_name(self.network.activation, self.network.activation_param)
