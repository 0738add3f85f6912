"""
Configuration

Contains:
- schema: config data structures
- loader: YAML loading, hashing, snapshots
- validator: config checks
"""

from src.config.schema import (
    ExperimentConfig,
    FitOptions,
    NoiseSearchOptions,
)
from src.config.loader import (
    ConfigError,
    load_config,
    parse_config,
    resolve_output_dir,
    compute_config_hash,
    save_config_snapshot,
)

__all__ = [
    "ExperimentConfig",
    "FitOptions",
    "NoiseSearchOptions",
    "ConfigError",
    "load_config",
    "parse_config",
    "resolve_output_dir",
    "compute_config_hash",
    "save_config_snapshot",
]
