"""Simulation configuration."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from src.dissemination.models import PolicyThresholds, StrategyKind
from src.exceptions import SimulationConfigError
from src.radio.models import RadioParams
from src.scene.models import Scene

BITS_PER_MEGABYTE = 8e6


class Prediction(str, Enum):
    """Where the LoS outlook used by the strategies comes from.

    oracle: exact traces of the run's known trajectories
    learned: each device learns its own periodic trace from observations
    """

    ORACLE = "oracle"
    LEARNED = "learned"


@dataclass(frozen=True)
class SimConfig:
    """Everything that determines a run, apart from its seed."""

    scene: Scene
    radio_infra: RadioParams
    radio_d2d: RadioParams
    strategy: StrategyKind = StrategyKind.PREDICTIVE
    interarrival_s: float = 0.01
    bitrate_bps: float = 300e6
    sim_duration_s: float = 60.0
    tick_s: float = 1e-3
    deadline_s: float = 0.1
    n_runs: int = 1
    base_seed: int = 0
    thresholds: PolicyThresholds = field(default_factory=PolicyThresholds)
    cache_capacity_bits: float = 256 * BITS_PER_MEGABYTE
    prediction: Prediction = Prediction.ORACLE
    learned_trace_dt_s: float = 0.01
    randomize_start_positions: bool = True
    n_traffic_devices: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "strategy", StrategyKind(self.strategy))
        object.__setattr__(self, "prediction", Prediction(self.prediction))

    @property
    def content_bits(self) -> float:
        return self.bitrate_bps * self.interarrival_s

    @property
    def traffic_devices(self) -> list[int]:
        """Ids of the devices that generate traffic (the first n in declaration order)."""
        ids = self.scene.device_ids
        if self.n_traffic_devices is None:
            return ids
        return ids[: self.n_traffic_devices]

    def seeds(self) -> list[int]:
        return [self.base_seed + r for r in range(self.n_runs)]

    def validate(self) -> None:
        """Check cross-field invariants.

        Raises:
            SimulationConfigError: First violated invariant
        """
        errors = []
        if not self.tick_s > 0:
            errors.append(f"tick_s must be > 0, got {self.tick_s}")
        elif self.interarrival_s < self.tick_s:
            errors.append(
                f"interarrival_s ({self.interarrival_s}) must be >= tick_s ({self.tick_s})"
            )
        if self.sim_duration_s < self.tick_s:
            errors.append(f"sim_duration_s must cover at least one tick, got {self.sim_duration_s}")
        if self.n_runs < 1:
            errors.append(f"n_runs must be >= 1, got {self.n_runs}")
        if self.bitrate_bps <= 0:
            errors.append(f"bitrate_bps must be > 0, got {self.bitrate_bps}")
        if self.deadline_s <= 0:
            errors.append(f"deadline_s must be > 0, got {self.deadline_s}")
        if self.cache_capacity_bits < 0:
            errors.append(f"cache_capacity_bits must be >= 0, got {self.cache_capacity_bits}")
        if self.learned_trace_dt_s <= 0:
            errors.append(f"learned_trace_dt_s must be > 0, got {self.learned_trace_dt_s}")
        if not self.scene.devices:
            errors.append("scene must contain at least one device")
        if self.n_traffic_devices is not None and not (
            0 <= self.n_traffic_devices <= len(self.scene.devices)
        ):
            errors.append(
                f"n_traffic_devices must lie within [0, {len(self.scene.devices)}], "
                f"got {self.n_traffic_devices}"
            )
        if errors:
            raise SimulationConfigError("; ".join(errors))
