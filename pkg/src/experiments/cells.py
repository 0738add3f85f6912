"""
Shared setup and per-cell work of the rate and coverage drivers

A cell is one (sample size, replicate) pair. The design of each sample
size is drawn once and shared by its replicates; noise, holdout and fit
restarts are drawn per cell from streams keyed by (n index, replicate),
so a cell's result does not depend on scheduling.
"""

from dataclasses import dataclass, replace
from datetime import datetime
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from src.audit.events import RunEvent
from src.audit.journal import IRunJournal, NullRunJournal
from src.bounds.subgaussian import SubGaussianSpec, subgauss_params
from src.config.schema import ExperimentConfig
from src.estimator.evaluation import oracle_bound, prediction_error, risk_estimate
from src.estimator.fit import fit
from src.experiments.generators import gen_dataset, gen_design, gen_responses, gen_teacher
from src.experiments.lambda_rule import LambdaChoice, select_lambda
from src.models.network import Dataset, ScaledNetwork
from src.utils.errors import FitDivergedError
from src.utils.rng import (
    STREAM_CELL,
    STREAM_DESIGN,
    STREAM_FIT,
    STREAM_HOLDOUT,
    STREAM_QUANTILE,
    derive_seed,
)


@dataclass(frozen=True, eq=False)
class ExperimentSetup:
    """Teacher, designs and lambdas shared by all cells of a run"""
    config: ExperimentConfig
    teacher: ScaledNetwork
    noise_model: SubGaussianSpec
    designs: List[np.ndarray]
    lambdas: List[LambdaChoice]

    @property
    def sample_sizes(self) -> List[int]:
        return list(self.config.data.sample_sizes)

    def zero_network(self) -> ScaledNetwork:
        return ScaledNetwork(0.0, self.teacher.omega)


@dataclass(frozen=True)
class CellOutcome:
    """Result of one cell; numeric fields are nan when the fit diverged"""
    n_index: int
    n: int
    rep: int
    lam: float
    err: float = float("nan")
    bound: float = float("nan")
    risk: float = float("nan")
    kappa: float = float("nan")
    failure: Optional[str] = None

    @property
    def err_sq(self) -> float:
        return self.err * self.err

    @property
    def covered(self) -> bool:
        return self.failure is None and self.err_sq <= self.bound


def prepare(
    config: ExperimentConfig,
    journal: Optional[IRunJournal] = None,
    verbose: bool = False,
    tag: str = "RUN",
) -> ExperimentSetup:
    """Draw the teacher and the designs, and select lambda per sample size"""
    journal = journal or NullRunJournal()
    arch, act = config.arch, config.activation
    noise_model = subgauss_params(config.data.noise.kind, config.data.noise.scale)
    teacher = gen_teacher(arch, act, config.network.regularizer, config.teacher.kappa_star, config.seed)

    designs, lambdas = [], []
    for n_idx, n in enumerate(config.data.sample_sizes):
        X = gen_design(
            config.data.input_distribution, n, arch.input_dim,
            derive_seed(config.seed, STREAM_DESIGN, n_idx),
        )
        choice = select_lambda(
            config,
            Dataset.design_only(X),
            noise_model,
            derive_seed(config.seed, STREAM_QUANTILE, n_idx),
            n_jobs=config.n_jobs,
        )
        designs.append(X)
        lambdas.append(choice)
        journal.write(RunEvent.lambda_selected(
            journal.run_id, datetime.now(), n, choice.lam, choice.rule.value, choice.journal_details(),
        ))
        if verbose:
            print(f"[{tag}] n={n}: lambda={choice.lam:.6g} ({choice.rule.value})")

    return ExperimentSetup(config, teacher, noise_model, designs, lambdas)


def run_cell(setup: ExperimentSetup, n_idx: int, rep: int) -> CellOutcome:
    """Fit one replicate and evaluate it"""
    config = setup.config
    act = config.activation
    lam = setup.lambdas[n_idx].lam
    n = setup.sample_sizes[n_idx]
    cell_seed = derive_seed(config.seed, STREAM_CELL, n_idx, rep)

    data = gen_responses(setup.teacher, act, setup.designs[n_idx], setup.noise_model, cell_seed)
    opts = replace(config.fit, seed=derive_seed(cell_seed, STREAM_FIT), n_jobs=1)
    try:
        result = fit(data, config.arch, act, config.network.regularizer, lam, opts)
    except FitDivergedError as e:
        return CellOutcome(n_idx, n, rep, lam, failure=str(e))

    holdout = gen_dataset(
        setup.teacher, act, config.data.input_distribution, setup.noise_model,
        config.data.holdout_size, derive_seed(cell_seed, STREAM_HOLDOUT),
    )
    return CellOutcome(
        n_index=n_idx,
        n=n,
        rep=rep,
        lam=lam,
        err=prediction_error(result.net, act, data),
        bound=oracle_bound(
            [setup.teacher, setup.zero_network(), result.net], act, data, lam, config.network.regularizer,
        ),
        risk=risk_estimate(result.net, act, holdout),
        kappa=result.kappa,
    )


def run_cells(setup: ExperimentSetup, journal: Optional[IRunJournal] = None) -> List[CellOutcome]:
    """All (n, replicate) cells in row order, failures journaled"""
    journal = journal or NullRunJournal()
    cells = [
        (n_idx, rep)
        for n_idx in range(len(setup.sample_sizes))
        for rep in range(setup.config.experiment.replicates)
    ]
    outcomes = Parallel(n_jobs=setup.config.n_jobs, prefer="threads")(
        delayed(run_cell)(setup, n_idx, rep) for n_idx, rep in cells
    )
    for o in outcomes:
        if o.failure is not None:
            journal.write(RunEvent.fit_failure(
                journal.run_id, datetime.now(), o.failure, cell={"n": o.n, "rep": o.rep},
            ))
    return outcomes
