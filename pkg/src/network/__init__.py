"""
Network evaluation

Contains:
- forward: forward passes, prediction distance, empirical norm
- gradient: reverse-mode gradients of the scale-regularized objective
- subnetworks: inner/outer subnetwork decomposition
- norms: l1, Frobenius and spectral norms
- serialization: network text format
"""

from src.network.forward import (
    forward,
    forward_batch,
    forward_scaled,
    predict,
    empirical_norm,
    pred_distance,
)
from src.network.gradient import gradient, weighted_output_gradient
from src.network.subnetworks import inner_subnetwork, outer_subnetwork
from src.network.norms import ParamNorms, norms, spectral_norm, spectral_norms
from src.network.serialization import (
    format_network,
    parse_network,
    write_network,
    read_network,
)

__all__ = [
    # Forward
    "forward",
    "forward_batch",
    "forward_scaled",
    "predict",
    "empirical_norm",
    "pred_distance",
    # Gradient
    "gradient",
    "weighted_output_gradient",
    # Subnetworks
    "inner_subnetwork",
    "outer_subnetwork",
    # Norms
    "ParamNorms",
    "norms",
    "spectral_norm",
    "spectral_norms",
    # Serialization
    "format_network",
    "parse_network",
    "write_network",
    "read_network",
]
