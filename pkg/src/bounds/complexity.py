"""
Metric entropy and Dudley integral of the unit-ball network class
"""

import numpy as np


def _log_term(P: int) -> float:
    return float(np.log(max(np.e * P, 2.0 * np.e)))


def entropy_bound(r: float, c_lip1: float, P: int) -> float:
    """
    Bound on log N(r) under ||.||_n

        6 c^2 / r^2 * log(e P r^2 / c^2 v 2e), and 0 when c = 0

    Example: c=4, P=2, r=4 gives 6 log(2e).
    """
    if not r > 0:
        raise ValueError(f"r must be > 0, got {r}")
    if c_lip1 < 0:
        raise ValueError(f"c_lip1 must be >= 0, got {c_lip1}")
    if c_lip1 == 0:
        return 0.0
    ratio = r * r / (c_lip1 * c_lip1)
    return float(6.0 / ratio * np.log(max(np.e * P * ratio, 2.0 * np.e)))


def dudley_bound(delta: float, sigma: float, c_lip1: float, P: int) -> float:
    """
    Bound on the Dudley integral J(delta, sigma)

        (5c/2) sqrt(log(eP v 2e)) log(8 sigma c / delta),  0 < delta <= 8 sigma c

    Raises:
        ValueError: delta out of range
    """
    if c_lip1 < 0:
        raise ValueError(f"c_lip1 must be >= 0, got {c_lip1}")
    if c_lip1 == 0:
        return 0.0
    upper = 8.0 * sigma * c_lip1
    if not (0 < delta <= upper):
        raise ValueError(f"delta must be in (0, {upper:.6g}], got {delta}")
    return float(2.5 * c_lip1 * np.sqrt(_log_term(P)) * np.log(upper / delta))
