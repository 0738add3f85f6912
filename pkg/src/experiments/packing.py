"""
Entropy-vs-packing check for tiny networks

A maximal 2r-packing of the unit-ball class under ||.||_n has at most
N(r) elements, so log(packing size at 2r) must stay below the entropy
bound at r. The class is represented by its outputs on a dense grid of
the sum-l1 unit ball; packings are greedy over the distinct output
vectors in lexicographic order.
"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from src.audit.events import RunEvent
from src.audit.journal import IRunJournal, NullRunJournal
from src.bounds.complexity import entropy_bound
from src.bounds.lipschitz import c_lip1
from src.config.schema import ExperimentConfig
from src.effective_noise.brute_force import batched_outputs, check_tiny, unit_ball_grid
from src.models.activations import ActivationSpec
from src.models.network import Architecture, Dataset
from src.network.forward import as_batch
from src.regularizers.l1 import RegularizerKind

PACKING_COLUMNS = ["r", "packing_2r", "log_packing", "entropy_bound"]
VIOLATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PackingResult:
    rows: pd.DataFrame
    violations: List[float] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def class_outputs(arch: Architecture, act: ActivationSpec, dataset: Dataset, grid_resolution: int) -> np.ndarray:
    """Distinct output vectors (g_w(x_1), ..., g_w(x_n)) over the grid, sorted"""
    check_tiny(arch)
    X = as_batch(arch.input_dim, dataset.inputs)
    points = unit_ball_grid(arch, RegularizerKind.SUM_L1, grid_resolution)
    return np.unique(batched_outputs(points, arch, act, X), axis=0)


def greedy_packing(outputs: np.ndarray, separation: float) -> int:
    """
    Size of a greedy maximal packing with pairwise ||.||_n distance > separation

    Args:
        outputs: (M, n) output vectors, scanned in row order
        separation: required distance

    Returns:
        number of packing centers
    """
    if outputs.shape[0] == 0:
        return 0
    nearest = np.full(outputs.shape[0], np.inf)
    size = 0
    while True:
        candidates = np.flatnonzero(nearest > separation)
        if candidates.size == 0:
            return size
        center = outputs[candidates[0]]
        size += 1
        dist = np.sqrt(np.mean((outputs - center) ** 2, axis=1))
        np.minimum(nearest, dist, out=nearest)


def run_packing_experiment(
    arch: Architecture,
    act: ActivationSpec,
    dataset: Dataset,
    r_grid: Sequence[float],
    grid_resolution: int = 201,
) -> PackingResult:
    """
    Compare greedy 2r-packings with the entropy bound at r

    Raises:
        ValueError: P > 3 or a radius <= 0
    """
    check_tiny(arch)
    if any(not r > 0 for r in r_grid):
        raise ValueError(f"all radii must be > 0, got {list(r_grid)}")
    outputs = class_outputs(arch, act, dataset, grid_resolution)
    c = c_lip1(act.a_lip, arch.depth, dataset.inputs_norm)

    rows, violations = [], []
    for r in r_grid:
        size = greedy_packing(outputs, 2.0 * r)
        log_size = float(np.log(size))
        bound = entropy_bound(r, c, arch.param_count)
        if log_size > bound + VIOLATION_TOL:
            violations.append(float(r))
        rows.append({"r": float(r), "packing_2r": size, "log_packing": log_size, "entropy_bound": bound})
    return PackingResult(pd.DataFrame(rows, columns=PACKING_COLUMNS), violations)


def run_packing_from_config(
    config: ExperimentConfig,
    journal: Optional[IRunJournal] = None,
    verbose: bool = False,
) -> PackingResult:
    """Packing check on the inputs and radii of the packing section"""
    journal = journal or NullRunJournal()
    section = config.packing
    dataset = Dataset.design_only(np.asarray(section.inputs, dtype=float))
    result = run_packing_experiment(
        config.arch, config.activation, dataset, section.r_grid, section.grid_resolution,
    )
    for _, row in result.rows.iterrows():
        if row["r"] in result.violations:
            journal.write(RunEvent.bound_violation(
                journal.run_id, datetime.now(), "packing",
                float(row["log_packing"]), float(row["entropy_bound"]), cell={"r": float(row["r"])},
            ))
        if verbose:
            print(
                f"[PACKING] r={row['r']:g}: packing(2r)={int(row['packing_2r'])} "
                f"log={row['log_packing']:.4f} bound={row['entropy_bound']:.4f}"
            )
    journal.write(RunEvent.summary(
        journal.run_id, datetime.now(), "experiment packing",
        {"violations": result.violations, "radii": len(result.rows)},
    ))
    return result
