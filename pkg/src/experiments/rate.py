"""
Rate experiment

Median in-sample prediction error over replicates for every n of the
grid, and the slope of log median err against log n.
"""

import warnings
from dataclasses import dataclass
from datetime import datetime
from typing import List, Optional

import numpy as np
import pandas as pd

from src.audit.events import RunEvent
from src.audit.journal import IRunJournal, NullRunJournal
from src.bounds.tuning import generalization_bound, parametric_bound
from src.config.schema import ExperimentConfig
from src.experiments.cells import CellOutcome, ExperimentSetup, prepare, run_cells
from src.models.network import Dataset

RATE_COLUMNS = ["n", "rep", "err", "err_sq", "lambda", "oracle_bound"]
RATE_SUMMARY_COLUMNS = [
    "n", "median_err", "median_err_sq", "median_risk", "median_lambda", "parametric_bound", "generalization_bound",
]


@dataclass(frozen=True, eq=False)
class RateResult:
    rows: pd.DataFrame
    summary: pd.DataFrame
    slope: float
    failures: int = 0


def loglog_slope(n: np.ndarray, values: np.ndarray) -> float:
    """Least-squares slope of log(values) on log(n); nan with fewer than two usable points"""
    n = np.asarray(n, dtype=float)
    values = np.asarray(values, dtype=float)
    ok = np.isfinite(values) & (values > 0) & (n > 0)
    if np.count_nonzero(ok) < 2:
        return float("nan")
    return float(np.polyfit(np.log(n[ok]), np.log(values[ok]), 1)[0])


def rate_rows(outcomes: List[CellOutcome]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "n": o.n,
                "rep": o.rep,
                "err": o.err,
                "err_sq": o.err_sq,
                "lambda": o.lam,
                "oracle_bound": o.bound,
            }
            for o in outcomes
        ],
        columns=RATE_COLUMNS,
    )


def rate_summary(setup: ExperimentSetup, outcomes: List[CellOutcome]) -> pd.DataFrame:
    config = setup.config
    arch, act = config.arch, config.activation
    rows = []
    for n_idx, n in enumerate(setup.sample_sizes):
        cell = [o for o in outcomes if o.n_index == n_idx]
        err = np.array([o.err for o in cell], dtype=float)
        design = setup.designs[n_idx]
        x_norm_n = Dataset.design_only(design).inputs_norm
        x_fourth_sum = float(np.sum(np.sum(design ** 2, axis=1) ** 2))
        a = config.experiment.lambda_rule.a
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            rows.append({
                "n": n,
                "median_err": float(np.nanmedian(err)),
                "median_err_sq": float(np.nanmedian(err * err)),
                "median_risk": float(np.nanmedian([o.risk for o in cell])),
                "median_lambda": float(np.median([o.lam for o in cell])),
                "parametric_bound": parametric_bound(
                    config.teacher.kappa_star, n, arch.param_count, arch.depth, act.a_lip, x_norm_n, a,
                ),
                # the teacher is in the class, so the oracle risk is zero
                "generalization_bound": generalization_bound(
                    0.0, config.teacher.kappa_star, n, arch.param_count, arch.depth, act.a_lip,
                    x_norm_n, x_fourth_sum, a,
                ),
            })
    return pd.DataFrame(rows, columns=RATE_SUMMARY_COLUMNS)


def run_rate_experiment(
    config: ExperimentConfig,
    journal: Optional[IRunJournal] = None,
    verbose: bool = False,
) -> RateResult:
    """
    Run the rate experiment

    Args:
        config: run configuration
        journal: run journal (lambda choices, fit failures, summary)
        verbose: print progress lines

    Returns:
        RateResult with per-cell rows, per-n summary and the fitted slope
    """
    journal = journal or NullRunJournal()
    setup = prepare(config, journal, verbose, tag="RATE")
    outcomes = run_cells(setup, journal)

    rows = rate_rows(outcomes)
    summary = rate_summary(setup, outcomes)
    slope = loglog_slope(summary["n"].to_numpy(), summary["median_err"].to_numpy())
    failures = sum(o.failure is not None for o in outcomes)

    journal.write(RunEvent.summary(
        journal.run_id, datetime.now(), "experiment rate",
        {"slope": slope, "failures": failures, "median_err": summary["median_err"].tolist()},
    ))
    if verbose:
        for _, r in summary.iterrows():
            print(f"[RATE] n={int(r['n'])}: median err={r['median_err']:.6g}")
        print(f"[RATE] slope of log median err vs log n: {slope:.4f} ({failures} failed fits)")

    return RateResult(rows=rows, summary=summary, slope=slope, failures=failures)
