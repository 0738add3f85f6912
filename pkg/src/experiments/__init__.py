"""
Experiments

Contains:
- generators: teacher networks and synthetic data
- lambda_rule: theoretical and Monte Carlo tuning parameters
- cells: shared per-(n, replicate) work
- rate, coverage, packing: experiment drivers
- writers: CSV outputs
- plots: optional SVG figures (import src.experiments.plots directly)
"""

from src.experiments.generators import (
    InputDistribution,
    gen_teacher,
    gen_design,
    gen_responses,
    gen_dataset,
    sample_inputs,
)
from src.experiments.lambda_rule import LambdaRuleKind, LambdaChoice, select_lambda, theoretical_lambda
from src.experiments.cells import ExperimentSetup, CellOutcome, prepare, run_cell, run_cells
from src.experiments.rate import RateResult, run_rate_experiment, loglog_slope
from src.experiments.coverage import CoverageResult, run_coverage_experiment, clopper_pearson
from src.experiments.packing import (
    PackingResult,
    run_packing_experiment,
    run_packing_from_config,
    greedy_packing,
    class_outputs,
)

__all__ = [
    # Generators
    "InputDistribution",
    "gen_teacher",
    "gen_design",
    "gen_responses",
    "gen_dataset",
    "sample_inputs",
    # Lambda
    "LambdaRuleKind",
    "LambdaChoice",
    "select_lambda",
    "theoretical_lambda",
    # Cells
    "ExperimentSetup",
    "CellOutcome",
    "prepare",
    "run_cell",
    "run_cells",
    # Drivers
    "RateResult",
    "run_rate_experiment",
    "loglog_slope",
    "CoverageResult",
    "run_coverage_experiment",
    "clopper_pearson",
    "PackingResult",
    "run_packing_experiment",
    "run_packing_from_config",
    "greedy_packing",
    "class_outputs",
]
