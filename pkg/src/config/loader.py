"""
Config loader
"""

import dataclasses
import hashlib
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union, get_type_hints

import yaml
from dotenv import load_dotenv

from src.config.schema import ExperimentConfig
from src.utils.types import ConfigHash

OUTPUT_DIR_ENV = "SCALEREG_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = "output"
SNAPSHOT_FILENAME = "config_snapshot.yaml"


class ConfigError(Exception):
    """Config file cannot be read or has keys outside the schema"""


def load_config(config_path: Union[str, Path]) -> ExperimentConfig:
    """
    Load a YAML config file

    Args:
        config_path: config file path

    Returns:
        ExperimentConfig (omitted keys take their defaults)

    Raises:
        FileNotFoundError: missing file
        ConfigError: YAML syntax error or unknown key
    """
    path = Path(config_path)

    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigError(f"Cannot parse {config_path}: {e}") from None

    return parse_config(data or {})


def parse_config(data: Dict[str, Any]) -> ExperimentConfig:
    """Build an ExperimentConfig from a nested dict"""
    unknown: List[str] = []
    config = _parse_section(data, ExperimentConfig, "", unknown)
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")
    return config


def _parse_section(data: Any, cls: type, prefix: str, unknown: List[str]) -> Any:
    """Parse one section; nested dataclass fields recurse"""
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigError(f"Section '{prefix or '<root>'}' must be a mapping, got {type(data).__name__}")

    hints = get_type_hints(cls)
    fields = {f.name for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, value in data.items():
        name = f"{prefix}{key}"
        if key not in fields:
            unknown.append(name)
            continue
        hint = hints[key]
        if dataclasses.is_dataclass(hint):
            kwargs[key] = _parse_section(value, hint, f"{name}.", unknown)
        else:
            kwargs[key] = value
    return cls(**kwargs)


def resolve_output_dir(config: ExperimentConfig, override: Optional[str] = None) -> Path:
    """
    Output directory

    Precedence: override (CLI flag), config output.dir, SCALEREG_OUTPUT_DIR
    (also read from .env), ./output.
    """
    if override:
        return Path(override)
    if config.output.dir:
        return Path(config.output.dir)
    load_dotenv()
    return Path(os.getenv(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR)


def compute_config_hash(config: ExperimentConfig) -> ConfigHash:
    """
    Config hash

    Recorded in the run journal to trace which config produced an output.

    Returns:
        first 8 hex chars of the SHA256
    """
    config_dict = dataclasses.asdict(config)
    config_str = json.dumps(config_dict, sort_keys=True, default=str)
    hash_obj = hashlib.sha256(config_str.encode())
    return ConfigHash(hash_obj.hexdigest()[:8])


def save_config_snapshot(config: ExperimentConfig, output_path: Union[str, Path]) -> Path:
    """
    Save the resolved config

    Args:
        config: config instance
        output_path: output file (or directory, then config_snapshot.yaml inside it)
    """
    path = Path(output_path)
    if path.is_dir():
        path = path / SNAPSHOT_FILENAME
    path.parent.mkdir(parents=True, exist_ok=True)

    config_dict = dataclasses.asdict(config)

    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(config_dict, f, allow_unicode=True, default_flow_style=False, sort_keys=False)
    return path
