"""
Reparametrization between Theta and (kappa, Omega)
"""

from src.reparam.equivalence import (
    HomogeneitySpec,
    layer_factor,
    decompose,
    compose,
    check_equivalence,
)

__all__ = [
    "HomogeneitySpec",
    "layer_factor",
    "decompose",
    "compose",
    "check_equivalence",
]
