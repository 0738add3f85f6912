"""
Optional SVG plots (CSV files are the primary output)
"""

from pathlib import Path
from typing import List, Union

import matplotlib as mpl
mpl.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from src.experiments.coverage import CoverageResult
from src.experiments.packing import PackingResult
from src.experiments.rate import RateResult

PathLike = Union[str, Path]

# deterministic svg element ids
mpl.rcParams["svg.hashsalt"] = "scalereg"
mpl.rcParams["svg.fonttype"] = "none"


def savefig(fig, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def plot_rate(result: RateResult, output_dir: PathLike) -> List[Path]:
    """Median err against n on log-log axes with the fitted slope"""
    summary = result.summary
    n = summary["n"].to_numpy(dtype=float)
    med = summary["median_err"].to_numpy(dtype=float)

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(n, med, "o-", label="median err")
    ok = np.isfinite(med) & (med > 0)
    if np.isfinite(result.slope) and np.count_nonzero(ok) >= 2:
        intercept = np.mean(np.log(med[ok]) - result.slope * np.log(n[ok]))
        ax.loglog(n, np.exp(intercept) * n ** result.slope, "--", label=f"slope {result.slope:.3f}")
    ax.set_xlabel("n")
    ax.set_ylabel("prediction error")
    ax.legend()
    return [savefig(fig, Path(output_dir) / "rate.svg")]


def plot_coverage(result: CoverageResult, output_dir: PathLike, level: float) -> List[Path]:
    """Coverage frequency against n with Clopper-Pearson bars and the 1 - t target"""
    summary = result.summary
    n = summary["n"].to_numpy(dtype=float)
    freq = summary["frequency"].to_numpy(dtype=float)
    err = np.vstack([freq - summary["ci_low"].to_numpy(), summary["ci_high"].to_numpy() - freq])

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.errorbar(n, freq, yerr=err, fmt="o", capsize=3, label="frequency")
    ax.axhline(1.0 - level, linestyle="--", color="gray", label=f"target {1.0 - level:g}")
    ax.set_xscale("log")
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("n")
    ax.set_ylabel("coverage")
    ax.legend(loc="lower right")
    return [savefig(fig, Path(output_dir) / "coverage.svg")]


def plot_packing(result: PackingResult, output_dir: PathLike) -> List[Path]:
    """log packing size at 2r and the entropy bound at r"""
    rows = result.rows
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.plot(rows["r"], rows["log_packing"], "o-", label="log packing(2r)")
    ax.plot(rows["r"], rows["entropy_bound"], "s--", label="entropy bound(r)")
    ax.set_xscale("log")
    ax.set_yscale("symlog")
    ax.set_xlabel("r")
    ax.legend()
    return [savefig(fig, Path(output_dir) / "packing.svg")]
