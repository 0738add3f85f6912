"""
Bound report

One row per configuration with the closed-form quantities.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.bounds.complexity import dudley_bound, entropy_bound
from src.bounds.lipschitz import c_lip1
from src.bounds.tuning import parametric_bound, tuning_lambda

BOUND_COLUMNS = ["n", "P", "L", "a_lip", "x_norm_n", "a", "lambda", "c_lip1", "dudley"]


@dataclass(frozen=True)
class BoundReport:
    """
    Closed-form quantities for one configuration

    entropy_at: (r, entropy bound) pairs
    delta: Dudley lower limit used (c_lip1 * sigma unless given)
    """
    n: int
    P: int
    L: int
    a_lip: float
    inputs_norm: float
    constant_a: float
    c_lip1: float
    lambda_theoretical: float
    dudley: float
    sigma: float
    delta: float
    entropy_at: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)

    def to_row(self) -> Dict[str, float]:
        return {
            "n": self.n,
            "P": self.P,
            "L": self.L,
            "a_lip": self.a_lip,
            "x_norm_n": self.inputs_norm,
            "a": self.constant_a,
            "lambda": self.lambda_theoretical,
            "c_lip1": self.c_lip1,
            "dudley": self.dudley,
        }

    def parametric_bound(self, kappa_star: float) -> float:
        return parametric_bound(
            kappa_star, self.n, self.P, self.L, self.a_lip, self.inputs_norm, self.constant_a
        )


def build_bound_report(
    n: int,
    P: int,
    L: int,
    a_lip: float,
    x_norm_n: float,
    a: float = 1.0,
    sigma: float = 1.0,
    delta: Optional[float] = None,
    r_grid: Sequence[float] = (),
) -> BoundReport:
    """
    Evaluate every closed-form bound for one configuration

    Args:
        n, P, L, a_lip, x_norm_n, a: tuning-parameter inputs
        sigma: Dudley upper scale
        delta: Dudley lower limit, defaults to c_lip1 * sigma
        r_grid: radii for the entropy bound
    """
    c = c_lip1(a_lip, L, x_norm_n)
    if delta is None:
        delta = c * sigma
    return BoundReport(
        n=int(n),
        P=int(P),
        L=int(L),
        a_lip=float(a_lip),
        inputs_norm=float(x_norm_n),
        constant_a=float(a),
        c_lip1=c,
        lambda_theoretical=tuning_lambda(n, P, L, a_lip, x_norm_n, a),
        dudley=dudley_bound(delta, sigma, c, P),
        sigma=float(sigma),
        delta=float(delta),
        entropy_at=tuple((float(r), entropy_bound(r, c, P)) for r in r_grid),
    )


def reports_to_frame(reports: List[BoundReport]) -> pd.DataFrame:
    """Rows in BOUND_COLUMNS order"""
    return pd.DataFrame([r.to_row() for r in reports], columns=BOUND_COLUMNS)
