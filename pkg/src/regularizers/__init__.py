"""
Regularizers

Contains:
- l1: sum_l1 and max_layer_l1 regularizers, exact l1-ball projection
"""

from src.regularizers.l1 import (
    RegularizerKind,
    SumL1Regularizer,
    MaxLayerL1Regularizer,
    RegularizerLike,
    get_regularizer,
    project_l1_ball,
    value,
    project_unit_ball,
    in_unit_ball,
)

__all__ = [
    "RegularizerKind",
    "SumL1Regularizer",
    "MaxLayerL1Regularizer",
    "RegularizerLike",
    "get_regularizer",
    "project_l1_ball",
    "value",
    "project_unit_ball",
    "in_unit_ball",
]
