"""Discrete-event simulation core: traffic, links, content progression, metrics."""
from src.engine.config import Prediction, SimConfig
from src.engine.events import Event, EventKind, EventQueue
from src.engine.links import LinkArrays, LinkTables, share_uplink
from src.engine.metrics import (
    DeviceMetrics,
    Estimate,
    Metrics,
    Observables,
    RunReport,
    aggregate,
    estimate,
    observables,
)
from src.engine.replication import SweepResult, run_replications, run_sweep
from src.engine.simulator import Simulator, randomize_start_positions, run
from src.engine.traffic import generate_traffic, traffic_phases

__all__ = [
    "DeviceMetrics",
    "Estimate",
    "Event",
    "EventKind",
    "EventQueue",
    "LinkArrays",
    "LinkTables",
    "Metrics",
    "Observables",
    "Prediction",
    "RunReport",
    "SimConfig",
    "Simulator",
    "SweepResult",
    "aggregate",
    "estimate",
    "generate_traffic",
    "observables",
    "randomize_start_positions",
    "run",
    "run_replications",
    "run_sweep",
    "share_uplink",
    "traffic_phases",
]
