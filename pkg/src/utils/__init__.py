"""
Utilities
"""

from src.utils.types import RunId, ConfigHash
from src.utils.timeutils import generate_run_id
from src.utils.rng import derive_rng, derive_seed
from src.utils.errors import (
    DimensionMismatchError,
    NumericalFailure,
    PowerIterationError,
    FitDivergedError,
)

__all__ = [
    "RunId",
    "ConfigHash",
    "generate_run_id",
    "derive_rng",
    "derive_seed",
    "DimensionMismatchError",
    "NumericalFailure",
    "PowerIterationError",
    "FitDivergedError",
]
