"""
Tuning parameter and derived guarantees for l1 regularization
"""

import numpy as np


def depth_factor(L: int, a_lip: float) -> float:
    """(2 a_lip / L)^L sqrt(L); shrinks super-exponentially in L for a_lip = 1"""
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    return float((2.0 * a_lip / L) ** L * np.sqrt(L))


def tuning_lambda(n: int, P: int, L: int, a_lip: float, x_norm_n: float, a: float = 1.0) -> float:
    """
    Theoretical tuning parameter

        a (2 a_lip / L)^L ||x||_n sqrt(L log(2P)) log(2n) / sqrt(n)

    Args:
        n: sample size
        P: number of parameters
        L: depth
        a_lip: activation Lipschitz constant
        x_norm_n: ||x||_n
        a: constant depending on the noise (unknown in practice)

    Returns:
        lambda
    """
    for name, val in (("n", n), ("P", P), ("L", L), ("a_lip", a_lip), ("x_norm_n", x_norm_n), ("a", a)):
        if not val > 0:
            raise ValueError(f"{name} must be > 0, got {val}")
    return float(
        a * (2.0 * a_lip / L) ** L * x_norm_n
        * np.sqrt(L * np.log(2.0 * P)) * np.log(2.0 * n) / np.sqrt(n)
    )


def parametric_bound(
    kappa_star: float,
    n: int,
    P: int,
    L: int,
    a_lip: float,
    x_norm_n: float,
    a: float = 1.0,
) -> float:
    """err^2 guarantee for a realizable teacher: 2 kappa* lambda"""
    if kappa_star < 0:
        raise ValueError(f"kappa_star must be >= 0, got {kappa_star}")
    return 2.0 * kappa_star * tuning_lambda(n, P, L, a_lip, x_norm_n, a)


def generalization_bound(
    risk_oracle: float,
    kappa_star: float,
    n: int,
    P: int,
    L: int,
    a_lip: float,
    x_norm_n: float,
    x_fourth_sum: float,
    a: float = 1.0,
) -> float:
    """
    Risk bound for random inputs (descriptive; a is not known)

        1.01 risk_oracle + kappa* lambda
        + a kappa*^2 (2a_lip/L)^{2L} sqrt(L^2 log(2P) sum_i ||x_i||^4) log(2n) / n

    x_fourth_sum is sum_i ||x_i||^4.
    """
    lam = tuning_lambda(n, P, L, a_lip, x_norm_n, a)
    quad = (
        a * kappa_star ** 2 * (2.0 * a_lip / L) ** (2 * L)
        * np.sqrt(L * L * np.log(2.0 * P) * x_fourth_sum) * np.log(2.0 * n) / n
    )
    return float(1.01 * risk_oracle + kappa_star * lam + quad)
