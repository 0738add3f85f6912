"""
Projected gradient descent with Armijo backtracking

Accepts x' = proj(x - s g) when f(x') <= f(x) + c <g, x' - x>; the step
shrinks by beta on rejection and grows by 1/beta after each accepted
iteration.
"""

from typing import Callable, Tuple

import numpy as np

MAX_BACKTRACKS = 60
MAX_STEP = 1e12


class NonFiniteStep(ArithmeticError):
    """Objective or gradient became non-finite at the current iterate"""


def projected_descent(
    value_and_grad: Callable[[np.ndarray], Tuple[float, np.ndarray]],
    value: Callable[[np.ndarray], float],
    project: Callable[[np.ndarray], np.ndarray],
    w: np.ndarray,
    step: float,
    max_iters: int,
    backtracking: float,
    armijo: float,
    abs_tol: float,
    rel_tol: float,
) -> Tuple[np.ndarray, float, float]:
    """
    Minimize f over the feasible set from a feasible w

    Args:
        value_and_grad: f and its gradient
        value: f alone (used in the line search)
        project: Euclidean projection onto the feasible set
        w: feasible start
        step: initial step size
        max_iters: iteration cap
        backtracking: step shrink factor beta in (0, 1)
        armijo: sufficient-decrease constant c
        abs_tol, rel_tol: stop when one decrease falls below either

    Returns:
        (final iterate, step size to reuse, total decrease of f)

    Raises:
        NonFiniteStep: f or its gradient is not finite at an iterate
    """
    total = 0.0
    for _ in range(max_iters):
        f0, grad = value_and_grad(w)
        if not np.isfinite(f0) or not np.all(np.isfinite(grad)):
            raise NonFiniteStep("non-finite objective or gradient")
        accepted = False
        for _ in range(MAX_BACKTRACKS):
            trial = w - step * grad
            if np.all(np.isfinite(trial)):
                candidate = project(trial)
                f1 = value(candidate)
                if np.isfinite(f1) and f1 <= f0 + armijo * float(np.dot(grad, candidate - w)):
                    accepted = True
                    break
            step *= backtracking
        if not accepted:
            break
        decrease = f0 - f1
        w = candidate
        total += decrease
        step = min(step / backtracking, MAX_STEP)
        if decrease <= abs_tol or decrease <= rel_tol * abs(f0):
            break
    return w, step, total
