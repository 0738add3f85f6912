"""
Data models

Contains:
- network: architecture, parameters, scale/direction networks, datasets
- activations: activation families and their Lipschitz/homogeneity properties
"""

from src.models.network import (
    Architecture,
    NetworkParams,
    ScaledNetwork,
    Dataset,
    param_count,
    check_same_arch,
)
from src.models.activations import ActivationKind, ActivationSpec

__all__ = [
    # Network
    "Architecture",
    "NetworkParams",
    "ScaledNetwork",
    "Dataset",
    "param_count",
    "check_same_arch",
    # Activations
    "ActivationKind",
    "ActivationSpec",
]
