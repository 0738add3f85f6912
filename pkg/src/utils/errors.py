"""
Error types shared across packages
"""

from typing import Optional


class DimensionMismatchError(ValueError):
    """Shapes or dimensions of inputs disagree"""


class NumericalFailure(RuntimeError):
    """A numerical routine failed to produce a usable result"""


class PowerIterationError(NumericalFailure):
    """Power iteration did not reach its tolerance"""

    def __init__(self, residual: float, iterations: int, layer: Optional[int] = None):
        self.residual = residual
        self.iterations = iterations
        self.layer = layer
        where = f" (layer {layer})" if layer is not None else ""
        super().__init__(
            f"Power iteration did not converge{where}: "
            f"residual={residual:.3e} after {iterations} iterations"
        )


class FitDivergedError(NumericalFailure):
    """Every restart of a fit diverged"""

    def __init__(self, failures: list):
        self.failures = failures
        super().__init__(f"All {len(failures)} restarts diverged: {failures}")
