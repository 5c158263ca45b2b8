"""Tests for result tables and CSV files."""
import math

import numpy as np
import pandas as pd
import pytest

from src.data.results import (
    AGGREGATE_COLUMNS,
    RUN_COLUMNS,
    aggregate_to_frame,
    losmap_to_frame,
    read_aggregate_csv,
    runs_to_frame,
    traces_to_frame,
    write_csv,
)
from src.engine.metrics import Metrics, aggregate
from src.losmap.models import LosMap, LosTrace, infra_link


def _metrics(strategy: str, interarrival_s: float, seed: int, delays=(0.004,)) -> Metrics:
    m = Metrics(strategy=strategy, interarrival_s=interarrival_s, seed=seed)
    m.n_generated = 10
    m.n_delivered = len(delays)
    m.n_dropped_blockage = 1
    m.delay_samples = list(delays)
    m.delivered_by_mode["forward"] = len(delays)
    return m


class TestRunsFrame:
    def test_columns_and_run_numbers(self):
        """Test: Runs are numbered within each (strategy, interarrival) point"""
        runs = [
            _metrics("direct", 0.01, 0),
            _metrics("direct", 0.01, 1),
            _metrics("predictive", 0.01, 0),
        ]

        df = runs_to_frame(runs)

        assert list(df.columns) == RUN_COLUMNS
        assert df["run"].tolist() == [0, 1, 0]
        assert df["interarrival_ms"].tolist() == pytest.approx([10.0, 10.0, 10.0])
        assert df["delivered_forward"].tolist() == [1, 1, 1]

    def test_observables_in_milliseconds(self):
        """Test: Drop proportions over resolved contents, delay in ms"""
        df = runs_to_frame([_metrics("storage", 0.02, 4, delays=(0.004, 0.006))])

        row = df.iloc[0]
        assert row["drop_blockage"] == pytest.approx(1 / 3)
        assert row["mean_delay_ms"] == pytest.approx(5.0)

    def test_missing_delay_written_empty(self, tmp_path):
        """Test: A run without deliveries has an empty delay field in the CSV"""
        df = runs_to_frame([_metrics("direct", 0.01, 0, delays=())])

        path = write_csv(df, tmp_path / "runs.csv")

        line = path.read_text(encoding="utf-8").splitlines()[1]
        assert ",," in line
        assert math.isnan(pd.read_csv(path)["mean_delay_ms"].iloc[0])


class TestAggregateFrame:
    def test_columns(self):
        """Test: One row per report with mean and CI columns"""
        reports = [
            aggregate([_metrics("direct", 0.01, 0), _metrics("direct", 0.01, 1)]),
            aggregate([_metrics("predictive", 0.01, 0)]),
        ]

        df = aggregate_to_frame(reports)

        assert list(df.columns) == AGGREGATE_COLUMNS
        assert df["strategy"].tolist() == ["direct", "predictive"]
        assert df["runs"].tolist() == [2, 1]
        assert df["mean_delay_ms_mean"].tolist() == pytest.approx([4.0, 4.0])
        assert df["drop_blockage_ci95"].tolist() == pytest.approx([0.0, 0.0])

    def test_csv_round_trip(self, tmp_path):
        """Test: The aggregate CSV is readable for re-plotting"""
        df = aggregate_to_frame([aggregate([_metrics("direct", 0.005, 0)])])
        path = write_csv(df, tmp_path / "out" / "aggregate.csv")

        loaded = read_aggregate_csv(path)

        assert loaded["interarrival_ms"].tolist() == pytest.approx([5.0])
        assert loaded["strategy"].tolist() == ["direct"]

    def test_missing_columns_rejected(self, tmp_path):
        """Test: Arbitrary CSVs are not accepted as aggregates"""
        path = tmp_path / "other.csv"
        pd.DataFrame({"strategy": ["direct"]}).to_csv(path, index=False)

        with pytest.raises(ValueError, match="lacks columns"):
            read_aggregate_csv(path)


class TestLosTables:
    def test_losmap_long_format(self):
        """Test: One row per cell, centers from origin and resolution"""
        losmap = LosMap(
            grid_res=0.5,
            plane_height=1.0,
            origin=(0.0, 0.0),
            cells=np.array([[1.0, 0.5, 0.0], [0.25, 1.0, 1.0]]),
        )

        df = losmap_to_frame(losmap)

        assert list(df.columns) == ["row", "col", "x_m", "y_m", "p_los"]
        assert len(df) == 6
        first = df.iloc[1]
        assert (first["row"], first["col"]) == (0, 1)
        assert first["x_m"] == pytest.approx(0.75)
        assert first["y_m"] == pytest.approx(0.25)
        assert first["p_los"] == 0.5
        assert df.iloc[3]["y_m"] == pytest.approx(0.75)

    def test_traces_frame(self):
        """Test: Traces stack with a link label and sample times"""
        traces = [
            LosTrace(link_id=infra_link(0), dt=0.1, samples=np.array([1.0, 0.0])),
            LosTrace(link_id=infra_link(1), dt=0.1, samples=np.array([0.5, 0.5, 1.0])),
        ]

        df = traces_to_frame(traces)

        assert df["link"].tolist() == ["bs-0"] * 2 + ["bs-1"] * 3
        assert df["t_s"].tolist() == pytest.approx([0.0, 0.1, 0.0, 0.1, 0.2])

    def test_no_traces(self):
        """Test: An empty trace list gives an empty table with the columns"""
        df = traces_to_frame([])

        assert df.empty
        assert list(df.columns) == ["link", "t_s", "p_los"]
