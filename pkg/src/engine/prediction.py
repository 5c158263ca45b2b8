"""LoS outlook providers used by the dissemination strategies during a run."""
from __future__ import annotations

from typing import Protocol

from src.engine.config import Prediction, SimConfig
from src.engine.links import LinkTables
from src.losmap.models import LosPrediction, LosTrace, infra_link
from src.losmap.traces import learning_prior, predict_los, update_trace_from_observations
from src.scene import Scene, scene_period, trajectory_period


class Predictor(Protocol):
    def predict(self, device_id: int, t: float) -> LosPrediction: ...

    def observe(self, device_id: int, t: float, los: bool) -> None: ...


class OraclePredictor:
    """Exact uplink traces of the run: all trajectories and phases are known."""

    def __init__(self, tables: LinkTables, horizon_s: float):
        self.horizon_s = horizon_s
        self._traces = {d: tables.infra_trace(d) for d in tables.device_ids}

    def predict(self, device_id: int, t: float) -> LosPrediction:
        return predict_los(self._traces[device_id], t, self.horizon_s)

    def observe(self, device_id: int, t: float, los: bool) -> None:
        return None


class LearnedPredictor:
    """Per-device periodic traces learned on site from the device's own observations.

    Every trace starts uninformed (p = p0 everywhere) over one mobility
    period: the common scene period, or the device's own trajectory period.
    """

    def __init__(
        self,
        scene: Scene,
        dt: float,
        horizon_s: float,
        alpha: float = 0.2,
        p0: float = 0.5,
    ):
        self.horizon_s = horizon_s
        self.alpha = alpha
        common = scene_period(scene)
        self._traces: dict[int, LosTrace] = {}
        for device in scene.devices:
            period = common or trajectory_period(scene.trajectories[device.trajectory_id])
            self._traces[device.device_id] = learning_prior(
                infra_link(device.device_id), dt, period, p0
            )

    def trace(self, device_id: int) -> LosTrace:
        return self._traces[device_id]

    def predict(self, device_id: int, t: float) -> LosPrediction:
        return predict_los(self._traces[device_id], t, self.horizon_s)

    def observe(self, device_id: int, t: float, los: bool) -> None:
        self._traces[device_id] = update_trace_from_observations(
            self._traces[device_id], [(t, los)], self.alpha
        )


def make_predictor(config: SimConfig, scene: Scene, tables: LinkTables) -> Predictor:
    if config.prediction is Prediction.LEARNED:
        return LearnedPredictor(scene, config.learned_trace_dt_s, config.thresholds.horizon_s)
    return OraclePredictor(tables, config.thresholds.horizon_s)
