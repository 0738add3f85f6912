"""
Coverage experiment

Per replicate, checks err^2(fit) <= min over {teacher, zero network} of
err^2 + 2 lambda kappa, and reports the frequency with a Clopper-Pearson
interval for every n of the grid.
"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Optional, Tuple

import pandas as pd
from scipy.stats import beta

from src.audit.events import RunEvent
from src.audit.journal import IRunJournal, NullRunJournal
from src.config.schema import ExperimentConfig
from src.effective_noise.quantile import DEFAULT_CONFIDENCE
from src.experiments.cells import CellOutcome, ExperimentSetup, prepare, run_cells
from src.experiments.lambda_rule import LambdaRuleKind

COVERAGE_COLUMNS = ["rep", "err_sq", "bound", "covered"]
COVERAGE_SUMMARY_COLUMNS = ["n", "lambda", "lambda_hat", "frequency", "ci_low", "ci_high"]


@dataclass(frozen=True, eq=False)
class CoverageResult:
    """
    rows: indicator table per sample size
    summary: one row per sample size
    """
    rows: Dict[int, pd.DataFrame]
    summary: pd.DataFrame
    failures: int = 0
    below_target: List[int] = field(default_factory=list)


def clopper_pearson(k: int, m: int, confidence: float = DEFAULT_CONFIDENCE) -> Tuple[float, float]:
    """Exact binomial interval for k successes in m trials"""
    if m < 1 or not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m and m >= 1, got k={k}, m={m}")
    alpha = 1.0 - confidence
    low = 0.0 if k == 0 else float(beta.ppf(alpha / 2.0, k, m - k + 1))
    high = 1.0 if k == m else float(beta.ppf(1.0 - alpha / 2.0, k + 1, m - k))
    return low, high


def coverage_rows(outcomes: List[CellOutcome]) -> pd.DataFrame:
    # a diverged fit counts as not covered
    return pd.DataFrame(
        [
            {"rep": o.rep, "err_sq": o.err_sq, "bound": o.bound, "covered": int(o.covered)}
            for o in outcomes
        ],
        columns=COVERAGE_COLUMNS,
    )


def coverage_summary(setup: ExperimentSetup, rows: Dict[int, pd.DataFrame]) -> pd.DataFrame:
    records = []
    for n_idx, n in enumerate(setup.sample_sizes):
        covered = rows[n]["covered"]
        k, m = int(covered.sum()), len(covered)
        ci_low, ci_high = clopper_pearson(k, m)
        choice = setup.lambdas[n_idx]
        records.append({
            "n": n,
            "lambda": choice.lam,
            "lambda_hat": choice.lambda_hat,
            "frequency": k / m,
            "ci_low": ci_low,
            "ci_high": ci_high,
        })
    return pd.DataFrame(records, columns=COVERAGE_SUMMARY_COLUMNS)


def run_coverage_experiment(
    config: ExperimentConfig,
    journal: Optional[IRunJournal] = None,
    verbose: bool = False,
) -> CoverageResult:
    """
    Run the coverage experiment over the sample-size grid

    Raises:
        ValueError: lambda rule is not monte_carlo_quantile
    """
    if LambdaRuleKind(config.experiment.lambda_rule.kind) != LambdaRuleKind.MONTE_CARLO_QUANTILE:
        raise ValueError(
            "coverage experiment requires the monte_carlo_quantile lambda rule, "
            f"got '{config.experiment.lambda_rule.kind}'"
        )
    journal = journal or NullRunJournal()
    setup = prepare(config, journal, verbose, tag="COVERAGE")
    outcomes = run_cells(setup, journal)

    rows = {
        n: coverage_rows([o for o in outcomes if o.n_index == n_idx])
        for n_idx, n in enumerate(setup.sample_sizes)
    }
    summary = coverage_summary(setup, rows)
    target = 1.0 - config.experiment.level

    below = []
    for _, r in summary.iterrows():
        if r["ci_high"] < target:
            below.append(int(r["n"]))
            journal.write(RunEvent.bound_violation(
                journal.run_id, datetime.now(), "coverage", target, float(r["ci_high"]),
                cell={"n": int(r["n"])},
            ))
        if verbose:
            print(
                f"[COVERAGE] n={int(r['n'])}: frequency={r['frequency']:.3f} "
                f"[{r['ci_low']:.3f}, {r['ci_high']:.3f}] target={target:.3f}"
            )

    failures = sum(o.failure is not None for o in outcomes)
    journal.write(RunEvent.summary(
        journal.run_id, datetime.now(), "experiment coverage",
        {"frequency": summary["frequency"].tolist(), "target": target, "failures": failures},
    ))
    return CoverageResult(rows=rows, summary=summary, failures=failures, below_target=below)
