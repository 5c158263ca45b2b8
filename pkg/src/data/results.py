"""Tabular results: per-run rows, aggregates, LoS maps and traces as CSV.

CSV is the canonical results format; every plot is re-rendered from these
tables alone.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import numpy as np
import pandas as pd
import structlog

from src.dissemination.models import Mode
from src.engine.metrics import Metrics, RunReport, observables
from src.losmap.models import LosMap, LosTrace

logger = structlog.get_logger(__name__)

PathLike = Union[str, Path]

RUN_COLUMNS = [
    "strategy",
    "interarrival_ms",
    "run",
    "seed",
    "n_generated",
    "n_delivered",
    "drop_blockage",
    "drop_rate",
    "mean_delay_ms",
    "n_censored",
    "delivered_direct",
    "delivered_store",
    "delivered_forward",
]

AGGREGATE_COLUMNS = [
    "strategy",
    "interarrival_ms",
    "runs",
    "drop_blockage_mean",
    "drop_blockage_ci95",
    "drop_rate_mean",
    "drop_rate_ci95",
    "drop_total_mean",
    "drop_total_ci95",
    "mean_delay_ms_mean",
    "mean_delay_ms_ci95",
]


def runs_to_frame(runs: Sequence[Metrics]) -> pd.DataFrame:
    """One row per run; `run` numbers the runs of each (strategy, interarrival) point."""
    rows = []
    for metrics in runs:
        values = observables(metrics)
        rows.append(
            {
                "strategy": metrics.strategy,
                "interarrival_ms": metrics.interarrival_s * 1e3,
                "seed": metrics.seed,
                "n_generated": metrics.n_generated,
                "n_delivered": metrics.n_delivered,
                "drop_blockage": values.drop_blockage,
                "drop_rate": values.drop_rate,
                "mean_delay_ms": values.mean_delay_s * 1e3,
                "n_censored": metrics.n_censored,
                "delivered_direct": metrics.delivered_by_mode[Mode.DIRECT_PUSH.value],
                "delivered_store": metrics.delivered_by_mode[Mode.STORE_AND_PUSH.value],
                "delivered_forward": metrics.delivered_by_mode[Mode.FORWARD_AND_PUSH.value],
            }
        )
    df = pd.DataFrame(rows, columns=[c for c in RUN_COLUMNS if c != "run"])
    df.insert(2, "run", df.groupby(["strategy", "interarrival_ms"], sort=False).cumcount())
    return df


def aggregate_to_frame(reports: Sequence[RunReport]) -> pd.DataFrame:
    rows = []
    for report in reports:
        total = report.drop_total
        rows.append(
            {
                "strategy": report.strategy,
                "interarrival_ms": report.interarrival_s * 1e3,
                "runs": len(report.runs),
                "drop_blockage_mean": report.drop_blockage.mean,
                "drop_blockage_ci95": report.drop_blockage.ci95,
                "drop_rate_mean": report.drop_rate.mean,
                "drop_rate_ci95": report.drop_rate.ci95,
                "drop_total_mean": total.mean,
                "drop_total_ci95": total.ci95,
                "mean_delay_ms_mean": report.mean_delay_s.mean * 1e3,
                "mean_delay_ms_ci95": report.mean_delay_s.ci95 * 1e3,
            }
        )
    return pd.DataFrame(rows, columns=AGGREGATE_COLUMNS)


def losmap_to_frame(losmap: LosMap) -> pd.DataFrame:
    """Long format: one row per cell with its center coordinates."""
    n_rows, n_cols = losmap.shape
    rows, cols = np.meshgrid(np.arange(n_rows), np.arange(n_cols), indexing="ij")
    return pd.DataFrame(
        {
            "row": rows.ravel(),
            "col": cols.ravel(),
            "x_m": losmap.origin[0] + (cols.ravel() + 0.5) * losmap.grid_res,
            "y_m": losmap.origin[1] + (rows.ravel() + 0.5) * losmap.grid_res,
            "p_los": losmap.cells.ravel(),
        }
    )


def trace_to_frame(trace: LosTrace) -> pd.DataFrame:
    a, b = trace.link_id
    n = trace.samples.size
    return pd.DataFrame(
        {
            "link": [f"{a}-{b}"] * n,
            "t_s": np.arange(n) * trace.dt,
            "p_los": trace.samples,
        }
    )


def traces_to_frame(traces: Sequence[LosTrace]) -> pd.DataFrame:
    if not traces:
        return pd.DataFrame(columns=["link", "t_s", "p_los"])
    return pd.concat([trace_to_frame(t) for t in traces], ignore_index=True)


def write_csv(df: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False)
    logger.info("csv_written", path=str(path), rows=len(df))
    return path


def read_aggregate_csv(path: PathLike) -> pd.DataFrame:
    """Load an aggregate CSV, checking that every expected column is present."""
    df = pd.read_csv(path)
    missing = [c for c in AGGREGATE_COLUMNS if c not in df.columns]
    if missing:
        raise ValueError(f"Aggregate CSV {path} lacks columns: {', '.join(missing)}")
    return df
