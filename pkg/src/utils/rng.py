"""
Seeded random streams

Every stochastic step draws from its own stream derived from
(master seed, purpose, indices), so results never depend on the order
in which parallel work finishes.
"""

from typing import Union

import numpy as np

# Purpose keys for derived streams
STREAM_TEACHER = 1
STREAM_DESIGN = 2
STREAM_NOISE = 3
STREAM_HOLDOUT = 4
STREAM_RESTART = 5
STREAM_QUANTILE = 6
STREAM_FIT = 7
STREAM_SEARCH = 8
STREAM_CELL = 9


def derive_rng(seed: int, *keys: Union[int, np.integer]) -> np.random.Generator:
    """
    Build an independent generator for (seed, *keys)

    Args:
        seed: master seed (any non-negative 64-bit integer)
        keys: purpose and index keys

    Returns:
        numpy Generator
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF] + [int(k) for k in keys]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def derive_seed(seed: int, *keys: Union[int, np.integer]) -> int:
    """Integer seed for a sub-task, drawn from the stream (seed, *keys)"""
    return int(derive_rng(seed, *keys).integers(0, 2**63 - 1))
