"""
Closed-form bounds

Contains:
- lipschitz: parameter-Lipschitz constants c_Lip(x), c_Lip1
- complexity: entropy and Dudley-integral bounds
- tuning: theoretical lambda, parametric and generalization bounds
- subgaussian: samplers and sub-Gaussian constants (K, gamma)
- report: BoundReport rows
"""

from src.bounds.lipschitz import (
    lipschitz_pointwise,
    lipschitz_empirical,
    lipschitz_unit_ball,
    c_lip1,
    unit_ball_envelope,
)
from src.bounds.complexity import entropy_bound, dudley_bound
from src.bounds.tuning import (
    depth_factor,
    tuning_lambda,
    parametric_bound,
    generalization_bound,
)
from src.bounds.subgaussian import (
    NoiseKind,
    GaussianSampler,
    RademacherSampler,
    UniformSampler,
    SubGaussianSpec,
    gaussian_subgauss_params,
    rademacher_subgauss_params,
    uniform_subgauss_params,
    subgauss_params,
    subgaussian_tail,
)
from src.bounds.report import BOUND_COLUMNS, BoundReport, build_bound_report, reports_to_frame

__all__ = [
    # Lipschitz
    "lipschitz_pointwise",
    "lipschitz_empirical",
    "lipschitz_unit_ball",
    "c_lip1",
    "unit_ball_envelope",
    # Complexity
    "entropy_bound",
    "dudley_bound",
    # Tuning
    "depth_factor",
    "tuning_lambda",
    "parametric_bound",
    "generalization_bound",
    # Sub-Gaussian
    "NoiseKind",
    "GaussianSampler",
    "RademacherSampler",
    "UniformSampler",
    "SubGaussianSpec",
    "gaussian_subgauss_params",
    "rademacher_subgauss_params",
    "uniform_subgauss_params",
    "subgauss_params",
    "subgaussian_tail",
    # Report
    "BOUND_COLUMNS",
    "BoundReport",
    "build_bound_report",
    "reports_to_frame",
]
