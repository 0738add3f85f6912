"""
Command-line interface

Usage:
    python run_experiments.py fit --config config/desk.yaml
    python run_experiments.py noise-quantile --config config/desk.yaml --jobs 4
    python run_experiments.py bounds --config config/bounds.yaml
    python run_experiments.py experiment rate --config config/desk.yaml --plot
    python run_experiments.py teacher --config config/desk.yaml

Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.
"""

import argparse
import sys
from dataclasses import replace
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import pandas as pd

from src.audit.events import RunEvent, RunEventType
from src.audit.journal import DEFAULT_FILENAME, IRunJournal, RunJournal
from src.bounds.report import build_bound_report
from src.bounds.tuning import depth_factor
from src.bounds.subgaussian import subgauss_params
from src.config.loader import (
    ConfigError,
    compute_config_hash,
    load_config,
    resolve_output_dir,
    save_config_snapshot,
)
from src.config.schema import ExperimentConfig
from src.config.validator import ConfigValidationError, ConfigValidator
from src.effective_noise.quantile import estimate_quantile
from src.estimator.evaluation import prediction_error
from src.estimator.fit import fit, write_fit_result
from src.experiments.coverage import run_coverage_experiment
from src.experiments.generators import gen_dataset, gen_design, gen_teacher
from src.experiments.lambda_rule import select_lambda
from src.experiments.packing import run_packing_from_config
from src.experiments.rate import run_rate_experiment
from src.experiments import writers
from src.models.network import Dataset
from src.network.serialization import write_network
from src.utils.errors import NumericalFailure
from src.utils.rng import STREAM_CELL, STREAM_DESIGN, STREAM_FIT, STREAM_QUANTILE, derive_seed
from src.utils.timeutils import generate_run_id

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2

FIT_COLUMNS = ["n", "lambda", "kappa", "objective", "iterations", "restart_index", "err"]


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors map to exit code 1"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise UsageError(message)


class PackingViolation(NumericalFailure):
    """log packing size exceeded the entropy bound"""


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="YAML config file (defaults when omitted)")
    common.add_argument("--output-dir", type=str, default=None, help="Output directory (overrides config and env)")
    common.add_argument("--jobs", type=int, default=None, help="Parallel workers (overrides n_jobs)")
    common.add_argument("--plot", action="store_true", help="Also write SVG plots")
    common.add_argument("--quiet", action="store_true", help="No progress lines")

    parser = _ArgumentParser(prog="scalereg", description="Scale-regularized neural network estimation")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    sub.required = True

    p = sub.add_parser("fit", parents=[common], help="Fit the estimator on a teacher sample")
    p.add_argument("--n", type=int, default=None, help="Sample size (default: first of data.sample_sizes)")

    p = sub.add_parser("noise-quantile", parents=[common], help="Monte Carlo quantile of the effective noise")
    p.add_argument("--n", type=int, default=None, help="Sample size (default: first of data.sample_sizes)")

    sub.add_parser("bounds", parents=[common], help="Closed-form tuning parameter and bounds")
    sub.add_parser("teacher", parents=[common], help="Write the teacher network")

    p = sub.add_parser("experiment", parents=[common], help="Run an experiment")
    p.add_argument("kind", choices=["rate", "coverage", "packing"])

    return parser


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _first_n(config: ExperimentConfig, n: Optional[int]) -> int:
    n = n if n is not None else config.data.sample_sizes[0]
    if n < 1:
        raise ConfigError(f"--n must be >= 1, got {n}")
    return n


def cmd_fit(config: ExperimentConfig, args, output_dir: Path, journal: IRunJournal, verbose: bool) -> List[Path]:
    n = _first_n(config, args.n)
    arch, act, h = config.arch, config.activation, config.network.regularizer
    noise_model = subgauss_params(config.data.noise.kind, config.data.noise.scale)
    teacher = gen_teacher(arch, act, h, config.teacher.kappa_star, config.seed)
    data = gen_dataset(
        teacher, act, config.data.input_distribution, noise_model, n,
        derive_seed(config.seed, STREAM_CELL, 0, 0),
    )
    choice = select_lambda(
        config, data, noise_model, derive_seed(config.seed, STREAM_QUANTILE, 0), n_jobs=config.n_jobs,
    )
    journal.write(RunEvent.lambda_selected(
        journal.run_id, datetime.now(), n, choice.lam, choice.rule.value, choice.journal_details(),
    ))
    opts = replace(config.fit, seed=derive_seed(config.seed, STREAM_FIT), n_jobs=config.n_jobs)
    result = fit(data, arch, act, h, choice.lam, opts)
    for failure in result.failures:
        journal.write(RunEvent.fit_failure(
            journal.run_id, datetime.now(), failure.reason,
            restart=failure.restart_index, iteration=failure.iteration,
        ))
    err = prediction_error(result.net, act, data)
    if verbose:
        print(
            f"[FIT] n={n} lambda={choice.lam:.6g} kappa={result.kappa:.6g} "
            f"objective={result.objective:.6g} err={err:.6g}"
        )

    summary = pd.DataFrame([{
        "n": n,
        "lambda": choice.lam,
        "kappa": result.kappa,
        "objective": result.objective,
        "iterations": result.iterations,
        "restart_index": result.restart_index,
        "err": err,
    }], columns=FIT_COLUMNS)
    return [
        write_fit_result(output_dir / "fit_network.txt", result),
        writers.write_table(output_dir / "fit.csv", summary),
    ]


def cmd_noise_quantile(config: ExperimentConfig, args, output_dir: Path, journal: IRunJournal, verbose: bool) -> List[Path]:
    n = _first_n(config, args.n)
    arch = config.arch
    noise_model = subgauss_params(config.data.noise.kind, config.data.noise.scale)
    design = Dataset.design_only(gen_design(
        config.data.input_distribution, n, arch.input_dim, derive_seed(config.seed, STREAM_DESIGN, 0),
    ))
    report = estimate_quantile(
        design, noise_model, arch, config.activation, config.network.regularizer,
        t=config.experiment.level,
        reps=config.experiment.lambda_rule.reps,
        opts=replace(config.noise_search, n_jobs=config.n_jobs),
        seed=derive_seed(config.seed, STREAM_QUANTILE, 0),
    )
    journal.write(RunEvent.summary(journal.run_id, datetime.now(), "noise-quantile", {
        "n": n, "t": report.t, "reps": report.reps, "lambda_hat": report.lambda_hat,
        "ci_low": report.ci_low, "ci_high": report.ci_high,
    }))
    if verbose:
        print(
            f"[NOISE] n={n} t={report.t:g} reps={report.reps}: lambda_hat={report.lambda_hat:.6g} "
            f"[{report.ci_low:.6g}, {report.ci_high:.6g}]"
        )
    return writers.write_noise_quantile(output_dir, report)


def cmd_bounds(config: ExperimentConfig, args, output_dir: Path, journal: IRunJournal, verbose: bool) -> List[Path]:
    arch, act, b = config.arch, config.activation, config.bounds
    reports = [
        build_bound_report(
            n, arch.param_count, arch.depth, act.a_lip, b.x_norm_n, b.a, b.sigma, b.delta, b.r_grid,
        )
        for n in b.n
    ]
    journal.write(RunEvent.summary(journal.run_id, datetime.now(), "bounds", {
        "lambda": [r.lambda_theoretical for r in reports],
        "depth_factor": depth_factor(arch.depth, act.a_lip),
        "parametric_bound": [r.parametric_bound(config.teacher.kappa_star) for r in reports],
        "entropy": [list(r.entropy_at) for r in reports],
    }))
    if verbose:
        for r in reports:
            print(f"[BOUNDS] n={r.n} P={r.P} L={r.L}: lambda={r.lambda_theoretical:.6g} c_lip1={r.c_lip1:.6g}")
    return writers.write_bounds(output_dir, reports)


def cmd_teacher(config: ExperimentConfig, args, output_dir: Path, journal: IRunJournal, verbose: bool) -> List[Path]:
    teacher = gen_teacher(
        config.arch, config.activation, config.network.regularizer, config.teacher.kappa_star, config.seed,
    )
    path = write_network(output_dir / "teacher.txt", teacher.omega, {"kappa": teacher.kappa, "seed": config.seed})
    return [path]


def cmd_experiment(config: ExperimentConfig, args, output_dir: Path, journal: IRunJournal, verbose: bool) -> List[Path]:
    plots = config.output.plots
    if args.kind == "rate":
        result = run_rate_experiment(config, journal, verbose)
        paths = writers.write_rate(output_dir, result)
        if plots:
            from src.experiments.plots import plot_rate
            paths += plot_rate(result, output_dir)
        return paths

    if args.kind == "coverage":
        result = run_coverage_experiment(config, journal, verbose)
        paths = writers.write_coverage(output_dir, result)
        if plots:
            from src.experiments.plots import plot_coverage
            paths += plot_coverage(result, output_dir, config.experiment.level)
        return paths

    result = run_packing_from_config(config, journal, verbose)
    paths = writers.write_packing(output_dir, result)
    if plots:
        from src.experiments.plots import plot_packing
        paths += plot_packing(result, output_dir)
    if not result.ok:
        _write_outputs(journal, paths)
        for path in paths:
            print(f"[OUTPUT] {path}")
        raise PackingViolation(f"entropy bound violated at r in {result.violations}")
    return paths


COMMANDS: Dict[str, Callable] = {
    "fit": cmd_fit,
    "noise-quantile": cmd_noise_quantile,
    "bounds": cmd_bounds,
    "teacher": cmd_teacher,
    "experiment": cmd_experiment,
}


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _command_name(args) -> str:
    return f"experiment {args.kind}" if args.command == "experiment" else args.command


def _write_outputs(journal: IRunJournal, paths: Sequence[Path]) -> None:
    for path in paths:
        journal.write(RunEvent.output_written(journal.run_id, datetime.now(), str(path)))


def _finish(journal: IRunJournal, command: str, exit_code: int, reason: str = "", verbose: bool = False) -> int:
    """Close the run with a RUN_END carrying its event tally"""
    counts = journal.counts(journal.run_id)
    failures = counts.get(RunEventType.FIT_FAILURE.name, 0)
    if verbose and failures:
        print(f"[WARN] {command}: {failures} fit failures, see {DEFAULT_FILENAME}", file=sys.stderr)
    journal.write(RunEvent.run_end(journal.run_id, datetime.now(), command, exit_code, reason, counts))
    return exit_code


def _load(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    if args.jobs is not None:
        config = replace(config, n_jobs=args.jobs)
    if args.plot:
        config = replace(config, output=replace(config.output, plots=True))
    return config


def cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command

    Args:
        argv: arguments without the program name (default sys.argv[1:])

    Returns:
        exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_CONFIG
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    command = _command_name(args)
    verbose = not args.quiet

    try:
        config = _load(args)
    except (FileNotFoundError, ConfigError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_CONFIG

    output_dir = resolve_output_dir(config, args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    run_id = generate_run_id()
    config_hash = compute_config_hash(config)

    with RunJournal(str(output_dir), run_id=run_id) as journal:
        try:
            ConfigValidator().validate_or_raise(config, command)
        except ConfigValidationError as e:
            journal.write(RunEvent.config_invalid(run_id, datetime.now(), e.violations, config_hash))
            for v in e.violations:
                print(f"[ERROR] {v}", file=sys.stderr)
            return EXIT_CONFIG

        journal.write(RunEvent.run_start(run_id, datetime.now(), command, config_hash))
        try:
            paths = COMMANDS[args.command](config, args, output_dir, journal, verbose)
        except (ConfigError, ValueError) as e:
            print(f"[ERROR] {e}", file=sys.stderr)
            return _finish(journal, command, EXIT_CONFIG, str(e))
        except NumericalFailure as e:
            print(f"[ERROR] {e}", file=sys.stderr)
            return _finish(journal, command, EXIT_NUMERICAL, str(e), verbose)

        paths.append(save_config_snapshot(config, output_dir))
        _write_outputs(journal, paths)
        for path in paths:
            print(f"[OUTPUT] {path}")
        print(output_dir)
        return _finish(journal, command, EXIT_OK, verbose=verbose)


def main() -> None:
    sys.exit(cli())
