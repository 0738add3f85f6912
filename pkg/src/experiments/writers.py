"""
CSV outputs

Every table is written with full float precision ("%.17g") and "nan"
for missing values, so identical inputs give byte-identical files.
"""

import io
from pathlib import Path
from typing import List, Tuple, Union

import pandas as pd

from src.bounds.report import BOUND_COLUMNS, BoundReport, reports_to_frame
from src.effective_noise.quantile import NoiseQuantileReport
from src.experiments.coverage import COVERAGE_COLUMNS, COVERAGE_SUMMARY_COLUMNS, CoverageResult
from src.experiments.packing import PACKING_COLUMNS, PackingResult
from src.experiments.rate import RATE_COLUMNS, RATE_SUMMARY_COLUMNS, RateResult

PathLike = Union[str, Path]

FLOAT_FORMAT = "%.17g"
NA_REP = "nan"

NOISE_COLUMNS = ["rep", "z_value"]
NOISE_SUMMARY_COLUMNS = ["t", "reps", "lambda_hat"]

RATE_FILE = "rate.csv"
RATE_SUMMARY_FILE = "rate_summary.csv"
COVERAGE_SUMMARY_FILE = "coverage_summary.csv"
PACKING_FILE = "packing.csv"
NOISE_FILE = "noise_quantile.csv"
BOUNDS_FILE = "bounds.csv"


def coverage_file(n: int) -> str:
    return f"coverage_n{n}.csv"


def _to_csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep=NA_REP, lineterminator="\n")


def write_table(path: PathLike, frame: pd.DataFrame) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_to_csv_text(frame), encoding="utf-8")
    return path


def read_table(path: PathLike, columns: List[str]) -> pd.DataFrame:
    """
    Read a table and check its header

    Raises:
        ValueError: header differs from columns
    """
    frame = pd.read_csv(path)
    if list(frame.columns) != list(columns):
        raise ValueError(f"{path}: expected header {','.join(columns)}, got {','.join(frame.columns)}")
    return frame


def write_rate(output_dir: PathLike, result: RateResult) -> List[Path]:
    output_dir = Path(output_dir)
    return [
        write_table(output_dir / RATE_FILE, result.rows),
        write_table(output_dir / RATE_SUMMARY_FILE, result.summary),
    ]


def read_rate(output_dir: PathLike) -> Tuple[pd.DataFrame, pd.DataFrame]:
    output_dir = Path(output_dir)
    return (
        read_table(output_dir / RATE_FILE, RATE_COLUMNS),
        read_table(output_dir / RATE_SUMMARY_FILE, RATE_SUMMARY_COLUMNS),
    )


def write_coverage(output_dir: PathLike, result: CoverageResult) -> List[Path]:
    output_dir = Path(output_dir)
    paths = [write_table(output_dir / coverage_file(n), rows) for n, rows in result.rows.items()]
    paths.append(write_table(output_dir / COVERAGE_SUMMARY_FILE, result.summary))
    return paths


def read_coverage(output_dir: PathLike, n: int) -> pd.DataFrame:
    return read_table(Path(output_dir) / coverage_file(n), COVERAGE_COLUMNS)


def read_coverage_summary(output_dir: PathLike) -> pd.DataFrame:
    return read_table(Path(output_dir) / COVERAGE_SUMMARY_FILE, COVERAGE_SUMMARY_COLUMNS)


def write_packing(output_dir: PathLike, result: PackingResult) -> List[Path]:
    return [write_table(Path(output_dir) / PACKING_FILE, result.rows)]


def read_packing(output_dir: PathLike) -> pd.DataFrame:
    return read_table(Path(output_dir) / PACKING_FILE, PACKING_COLUMNS)


def write_bounds(output_dir: PathLike, reports: List[BoundReport]) -> List[Path]:
    return [write_table(Path(output_dir) / BOUNDS_FILE, reports_to_frame(reports))]


def read_bounds(output_dir: PathLike) -> pd.DataFrame:
    return read_table(Path(output_dir) / BOUNDS_FILE, BOUND_COLUMNS)


def write_noise_quantile(output_dir: PathLike, report: NoiseQuantileReport) -> List[Path]:
    """
    Two blocks in one file:

        rep,z_value
        0,...
        t,reps,lambda_hat
        0.05,200,...
    """
    values = pd.DataFrame(
        {"rep": range(len(report.z_values)), "z_value": list(report.z_values)},
        columns=NOISE_COLUMNS,
    )
    summary = pd.DataFrame(
        [{"t": report.t, "reps": report.reps, "lambda_hat": report.lambda_hat}],
        columns=NOISE_SUMMARY_COLUMNS,
    )
    path = Path(output_dir) / NOISE_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_to_csv_text(values) + _to_csv_text(summary), encoding="utf-8")
    return [path]


def read_noise_quantile(path: PathLike) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Read both blocks of a noise-quantile file

    Raises:
        ValueError: a block header is missing
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    summary_header = ",".join(NOISE_SUMMARY_COLUMNS)
    if not lines or lines[0] != ",".join(NOISE_COLUMNS) or summary_header not in lines:
        raise ValueError(f"{path} is not a noise-quantile file")
    split = lines.index(summary_header)
    values = pd.read_csv(io.StringIO("\n".join(lines[:split])))
    summary = pd.read_csv(io.StringIO("\n".join(lines[split:])))
    return values, summary
