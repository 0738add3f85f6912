"""
Scale-regularized least-squares estimator

Contains:
- objective: objective value and exact scale step
- fit: alternating multistart fit, FitResult and its text format
- evaluation: prediction error, oracle bound, holdout risk
"""

from src.estimator.objective import objective, optimal_scale
from src.estimator.fit import (
    FitResult,
    RestartFailure,
    fit,
    write_fit_result,
    read_fit_result,
)
from src.estimator.evaluation import prediction_error, oracle_bound, risk_estimate

__all__ = [
    "objective",
    "optimal_scale",
    "FitResult",
    "RestartFailure",
    "fit",
    "write_fit_result",
    "read_fit_result",
    "prediction_error",
    "oracle_bound",
    "risk_estimate",
]
