"""
Effective noise

Contains:
- search: multistart projected gradient ascent for z_h
- brute_force: dense-grid oracle for tiny networks
- quantile: Monte Carlo quantile lambda_hat and its confidence interval
"""

from src.effective_noise.search import maximize_inner_product
from src.effective_noise.brute_force import (
    brute_force_sup_tiny,
    unit_ball_grid,
    batched_outputs,
    grid_spacing,
    grid_slack,
)
from src.effective_noise.quantile import (
    NoiseQuantileReport,
    estimate_quantile,
    empirical_quantile,
    quantile_rank,
    quantile_confidence_interval,
    draw_noise,
)

__all__ = [
    "maximize_inner_product",
    "brute_force_sup_tiny",
    "unit_ball_grid",
    "batched_outputs",
    "grid_spacing",
    "grid_slack",
    "NoiseQuantileReport",
    "estimate_quantile",
    "empirical_quantile",
    "quantile_rank",
    "quantile_confidence_interval",
    "draw_noise",
]
