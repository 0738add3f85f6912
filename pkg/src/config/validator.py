"""
Config validator

Implements:
- invariant checks (violations reject the config)
- recommended ranges (warnings)
- command-specific combinations (violations)
"""

from dataclasses import dataclass
from datetime import datetime
from typing import List, Optional

from src.audit.events import RunEvent
from src.bounds.subgaussian import NoiseKind
from src.config.schema import ExperimentConfig
from src.effective_noise.brute_force import MAX_TINY_PARAMS
from src.experiments.generators import InputDistribution
from src.experiments.lambda_rule import LambdaRuleKind
from src.models.activations import ActivationKind
from src.regularizers.l1 import RegularizerKind


class ConfigValidationError(Exception):
    """Config validation error"""

    def __init__(self, violations: List[str]):
        self.violations = violations
        super().__init__(f"Config validation failed: {violations}")


@dataclass
class ValidationResult:
    """Validation result"""
    is_valid: bool
    violations: List[str]
    warnings: List[str]


def _names(enum_cls) -> List[str]:
    return [e.value for e in enum_cls]


class ConfigValidator:
    """
    Config validator

    Three layers:
    1. invariants (violation rejects the run)
    2. recommended ranges (warning only)
    3. command-specific combinations (violation rejects the run)
    """

    RECOMMENDED_RANGES = {
        "param_count": (1, 100_000),
        "fit.restarts": (4, None),
        "noise_search.restarts": (8, None),
        "sample_size": (1, 100_000),
    }

    def validate(self, config: ExperimentConfig, command: Optional[str] = None) -> ValidationResult:
        """
        Run all checks

        Args:
            config: config instance
            command: subcommand the config is used for ("experiment coverage", ...)

        Returns:
            ValidationResult
        """
        violations = []
        warnings = []

        # 1. invariants
        violations.extend(self._check_invariants(config))

        # 2. recommended ranges (only meaningful on a valid architecture)
        if not violations:
            warnings.extend(self._check_ranges(config))

        # 3. command-specific combinations
        if command and not violations:
            violations.extend(self._check_command(config, command))

        return ValidationResult(
            is_valid=len(violations) == 0,
            violations=violations,
            warnings=warnings,
        )

    def validate_or_raise(self, config: ExperimentConfig, command: Optional[str] = None) -> None:
        """
        Validate, raising on violations

        Raises:
            ConfigValidationError: invalid config
        """
        result = self.validate(config, command)

        if not result.is_valid:
            raise ConfigValidationError(result.violations)

        for warning in result.warnings:
            print(f"[CONFIG WARNING] {warning}")

    def _check_invariants(self, config: ExperimentConfig) -> List[str]:
        violations = []

        # architecture
        widths = config.network.widths
        if not isinstance(widths, list) or not all(isinstance(w, int) and not isinstance(w, bool) for w in widths):
            violations.append(f"Invariant violated: network.widths must be a list of integers, got {widths}")
        else:
            if len(widths) < 3:
                violations.append(f"Invariant violated: network.widths needs at least one hidden layer, got {widths}")
            if any(w < 1 for w in widths):
                violations.append(f"Invariant violated: all widths >= 1, got {widths}")
            if widths and widths[-1] != 1:
                violations.append(f"Invariant violated: last width must be 1, got {widths[-1]}")

        # names
        for section, name, known in [
            ("network.activation", config.network.activation, _names(ActivationKind)),
            ("network.regularizer", config.network.regularizer, _names(RegularizerKind)),
            ("data.noise.kind", config.data.noise.kind, _names(NoiseKind)),
            ("data.input_distribution", config.data.input_distribution, _names(InputDistribution)),
            ("experiment.lambda_rule.kind", config.experiment.lambda_rule.kind, _names(LambdaRuleKind)),
        ]:
            if name not in known:
                violations.append(f"Invariant violated: {section} '{name}' not in {known}")

        # activation shape parameter
        param = config.network.activation_param
        if param is not None:
            if config.network.activation == ActivationKind.ELU.value and not (0 < param <= 1):
                violations.append(f"Invariant violated: elu parameter ({param}) must be in (0, 1]")
            if config.network.activation == ActivationKind.LEAKY_RELU.value and not (0 < param < 1):
                violations.append(f"Invariant violated: leaky_relu parameter ({param}) must be in (0, 1)")

        # data
        sizes = config.data.sample_sizes
        if not sizes or any(n < 1 for n in sizes):
            violations.append(f"Invariant violated: data.sample_sizes must be nonempty and >= 1, got {sizes}")
        elif any(b <= a for a, b in zip(sizes, sizes[1:])):
            violations.append(f"Invariant violated: data.sample_sizes must be strictly increasing, got {sizes}")
        if config.data.holdout_size < 1:
            violations.append(f"Invariant violated: data.holdout_size ({config.data.holdout_size}) >= 1")
        if config.data.noise.scale < 0:
            violations.append(f"Invariant violated: data.noise.scale ({config.data.noise.scale}) >= 0")
        if config.teacher.kappa_star < 0:
            violations.append(f"Invariant violated: teacher.kappa_star ({config.teacher.kappa_star}) >= 0")

        # experiment
        exp = config.experiment
        if exp.replicates < 1:
            violations.append(f"Invariant violated: experiment.replicates ({exp.replicates}) >= 1")
        if not (0 < exp.level < 1):
            violations.append(f"Invariant violated: experiment.level ({exp.level}) must be in (0, 1)")
        rule = exp.lambda_rule
        if rule.kind == LambdaRuleKind.MONTE_CARLO_QUANTILE.value and 0 < exp.level < 1:
            if rule.reps < 1 or rule.reps * exp.level < 1 - 1e-9:
                violations.append(
                    f"Invariant violated: lambda_rule.reps ({rule.reps}) must be >= 1/level ({1 / exp.level:.6g})"
                )
        if rule.safety_factor <= 0:
            violations.append(f"Invariant violated: lambda_rule.safety_factor ({rule.safety_factor}) > 0")
        if rule.a <= 0:
            violations.append(f"Invariant violated: lambda_rule.a ({rule.a}) > 0")

        # optimizer options
        for section, opts in (("fit", config.fit), ("noise_search", config.noise_search)):
            if not (0 < opts.backtracking < 1):
                violations.append(f"Invariant violated: {section}.backtracking ({opts.backtracking}) must be in (0, 1)")
            if not (0 < opts.armijo < 1):
                violations.append(f"Invariant violated: {section}.armijo ({opts.armijo}) must be in (0, 1)")
            for name in ("restarts", "step_init", "abs_tol", "rel_tol", "n_jobs"):
                value = getattr(opts, name)
                if not value > 0 and not (name == "n_jobs" and value == -1):
                    violations.append(f"Invariant violated: {section}.{name} ({value}) > 0")
        for name in ("max_outer_iters", "max_inner_iters"):
            value = getattr(config.fit, name)
            if not value > 0:
                violations.append(f"Invariant violated: fit.{name} ({value}) > 0")
        if not (0 < config.fit.init_scale <= 1):
            violations.append(f"Invariant violated: fit.init_scale ({config.fit.init_scale}) must be in (0, 1]")
        if not config.noise_search.max_iters > 0:
            violations.append(f"Invariant violated: noise_search.max_iters ({config.noise_search.max_iters}) > 0")
        if not (config.n_jobs > 0 or config.n_jobs == -1):
            violations.append(f"Invariant violated: n_jobs ({config.n_jobs}) must be > 0 or -1")
        if config.seed < 0:
            violations.append(f"Invariant violated: seed ({config.seed}) >= 0")

        # packing and bounds
        if config.packing.grid_resolution < 2:
            violations.append(f"Invariant violated: packing.grid_resolution ({config.packing.grid_resolution}) >= 2")
        if any(not r > 0 for r in config.packing.r_grid + config.bounds.r_grid):
            violations.append("Invariant violated: all radii in packing.r_grid and bounds.r_grid must be > 0")
        if any(n < 1 for n in config.bounds.n):
            violations.append(f"Invariant violated: bounds.n entries >= 1, got {config.bounds.n}")
        if config.bounds.x_norm_n <= 0 or config.bounds.sigma <= 0 or config.bounds.a <= 0:
            violations.append("Invariant violated: bounds.x_norm_n, bounds.sigma and bounds.a must be > 0")

        return violations

    def _check_ranges(self, config: ExperimentConfig) -> List[str]:
        warnings = []

        P = config.arch.param_count
        lo, hi = self.RECOMMENDED_RANGES["param_count"]
        if P > hi:
            warnings.append(f"Parameter count P ({P}) is above the recommended maximum {hi}")

        for name, value in (
            ("fit.restarts", config.fit.restarts),
            ("noise_search.restarts", config.noise_search.restarts),
        ):
            lo, _ = self.RECOMMENDED_RANGES[name]
            if value < lo:
                warnings.append(f"Parameter {name} ({value}) is below the recommended minimum {lo}")

        _, hi = self.RECOMMENDED_RANGES["sample_size"]
        if max(config.data.sample_sizes) > hi:
            warnings.append(f"Largest sample size ({max(config.data.sample_sizes)}) is above the recommended maximum {hi}")

        return warnings

    def _check_command(self, config: ExperimentConfig, command: str) -> List[str]:
        violations = []

        if command == "experiment coverage" and (
            config.experiment.lambda_rule.kind != LambdaRuleKind.MONTE_CARLO_QUANTILE.value
        ):
            violations.append(
                "Invalid combination: experiment coverage requires lambda_rule.kind "
                f"'{LambdaRuleKind.MONTE_CARLO_QUANTILE.value}', got '{config.experiment.lambda_rule.kind}'"
            )

        if command == "experiment packing" and config.arch.param_count > MAX_TINY_PARAMS:
            violations.append(
                f"Invalid combination: experiment packing needs P <= {MAX_TINY_PARAMS}, "
                f"got P={config.arch.param_count}"
            )
        if command == "experiment packing" and any(
            len(x) != config.arch.input_dim for x in config.packing.inputs
        ):
            violations.append(
                f"Invalid combination: packing.inputs must have dimension {config.arch.input_dim}"
            )

        return violations

    def create_invalid_config_event(
        self,
        run_id: str,
        timestamp: datetime,
        violations: List[str],
        config_hash: str,
    ) -> RunEvent:
        return RunEvent.config_invalid(run_id, timestamp, violations, config_hash)
