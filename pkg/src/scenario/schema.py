"""Scenario file schema.

A scenario is one JSON document holding the scene, both radio parameter
sets, the policy thresholds and the simulation settings. Every model rejects
unknown keys and every numeric field name carries its unit.
"""
from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.dissemination.models import PolicyThresholds, StrategyKind
from src.engine.config import Prediction, SimConfig
from src.radio.models import NlosMode, RadioParams
from src.scene.models import DeviceSpec, Motion, Obstacle, Point3, Rect, Scene, Trajectory

SCHEMA_VERSION = 1


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class FloorModel(_Strict):
    width_m: float = Field(gt=0)
    depth_m: float = Field(gt=0)


class PointModel(_Strict):
    x_m: float
    y_m: float
    z_m: float = 0.0


class RectModel(_Strict):
    x_min_m: float
    y_min_m: float
    x_max_m: float
    y_max_m: float


class TrajectoryModel(_Strict):
    waypoints_m: list[tuple[float, float]] = Field(min_length=2)
    speed_mps: float = Field(gt=0)
    motion: Motion = Motion.BACK_AND_FORTH
    phase_offset_s: float = 0.0


class ObstacleModel(_Strict):
    """Static obstacle (placed footprint) or mobile obstacle (footprint gives the size)."""

    footprint_m: RectModel
    height_m: float = Field(gt=0)
    trajectory: Optional[str] = None


class BlockerModel(_Strict):
    width_m: float = Field(gt=0)
    depth_m: float = Field(gt=0)
    height_m: float = Field(gt=0)


class DeviceModel(_Strict):
    device_id: int = Field(ge=0)
    trajectory: str
    antenna_height_m: float = Field(default=1.0, gt=0)
    blocker: BlockerModel = BlockerModel(width_m=0.5, depth_m=0.5, height_m=1.0)


class SceneModel(_Strict):
    floor: FloorModel
    base_station: PointModel
    trajectories: dict[str, TrajectoryModel] = Field(default_factory=dict)
    obstacles: list[ObstacleModel] = Field(default_factory=list)
    devices: list[DeviceModel] = Field(default_factory=list)

    def to_domain(self) -> Scene:
        return Scene(
            floor_w_m=self.floor.width_m,
            floor_d_m=self.floor.depth_m,
            base_station=Point3(self.base_station.x_m, self.base_station.y_m, self.base_station.z_m),
            obstacles=tuple(
                Obstacle(
                    footprint=Rect(
                        o.footprint_m.x_min_m,
                        o.footprint_m.y_min_m,
                        o.footprint_m.x_max_m,
                        o.footprint_m.y_max_m,
                    ),
                    height_m=o.height_m,
                    trajectory_id=o.trajectory,
                )
                for o in self.obstacles
            ),
            trajectories={
                name: Trajectory(
                    waypoints=tuple(t.waypoints_m),
                    speed_mps=t.speed_mps,
                    motion=t.motion,
                    phase_offset_s=t.phase_offset_s,
                )
                for name, t in self.trajectories.items()
            },
            devices=tuple(
                DeviceSpec(
                    device_id=d.device_id,
                    trajectory_id=d.trajectory,
                    antenna_height_m=d.antenna_height_m,
                    blocker_width_m=d.blocker.width_m,
                    blocker_depth_m=d.blocker.depth_m,
                    blocker_height_m=d.blocker.height_m,
                )
                for d in self.devices
            ),
        )

    @classmethod
    def from_domain(cls, scene: Scene) -> SceneModel:
        return cls(
            floor=FloorModel(width_m=scene.floor_w_m, depth_m=scene.floor_d_m),
            base_station=PointModel(
                x_m=scene.base_station.x, y_m=scene.base_station.y, z_m=scene.base_station.z
            ),
            trajectories={
                name: TrajectoryModel(
                    waypoints_m=list(t.waypoints),
                    speed_mps=t.speed_mps,
                    motion=t.motion,
                    phase_offset_s=t.phase_offset_s,
                )
                for name, t in scene.trajectories.items()
            },
            obstacles=[
                ObstacleModel(
                    footprint_m=RectModel(
                        x_min_m=o.footprint.x_min,
                        y_min_m=o.footprint.y_min,
                        x_max_m=o.footprint.x_max,
                        y_max_m=o.footprint.y_max,
                    ),
                    height_m=o.height_m,
                    trajectory=o.trajectory_id,
                )
                for o in scene.obstacles
            ],
            devices=[
                DeviceModel(
                    device_id=d.device_id,
                    trajectory=d.trajectory_id,
                    antenna_height_m=d.antenna_height_m,
                    blocker=BlockerModel(
                        width_m=d.blocker_width_m,
                        depth_m=d.blocker_depth_m,
                        height_m=d.blocker_height_m,
                    ),
                )
                for d in scene.devices
            ],
        )


class RadioModel(_Strict):
    carrier_ghz: float = Field(gt=0)
    bandwidth_hz: float = Field(gt=0)
    tx_power_dbm: float
    tx_gain_dbi: float = 0.0
    rx_gain_dbi: float = 0.0
    noise_figure_db: float = 7.0
    rate_cap_bps: Optional[float] = Field(default=None, gt=0)
    max_range_m: Optional[float] = Field(default=None, gt=0)
    setup_time_s: float = Field(default=0.0, ge=0)
    nlos_mode: NlosMode = NlosMode.SOFT
    blockage_loss_db: float = Field(default=0.0, ge=0)
    min_snr_db: float = -10.0

    def to_domain(self) -> RadioParams:
        return RadioParams(**self.model_dump())

    @classmethod
    def from_domain(cls, params: RadioParams) -> RadioModel:
        return cls(
            carrier_ghz=params.carrier_ghz,
            bandwidth_hz=params.bandwidth_hz,
            tx_power_dbm=params.tx_power_dbm,
            tx_gain_dbi=params.tx_gain_dbi,
            rx_gain_dbi=params.rx_gain_dbi,
            noise_figure_db=params.noise_figure_db,
            rate_cap_bps=params.rate_cap_bps,
            max_range_m=params.max_range_m,
            setup_time_s=params.setup_time_s,
            nlos_mode=params.nlos_mode,
            blockage_loss_db=params.blockage_loss_db,
            min_snr_db=params.min_snr_db,
        )


class RadioBlockModel(_Strict):
    infra: RadioModel
    d2d: RadioModel
    # Downlink power of the base station; the simulated system is uplink only.
    bs_tx_power_dbm: Optional[float] = None


class ThresholdsModel(_Strict):
    push: float = Field(default=0.9, ge=0, le=1)
    delta: float = Field(default=0.2, ge=0, le=1)
    horizon_s: float = Field(default=0.05, gt=0)
    block: float = Field(default=0.5, ge=0, le=1)
    redecision_s: float = Field(default=0.005, gt=0)

    def to_domain(self) -> PolicyThresholds:
        return PolicyThresholds(**self.model_dump())

    @classmethod
    def from_domain(cls, thresholds: PolicyThresholds) -> ThresholdsModel:
        return cls(
            push=thresholds.push,
            delta=thresholds.delta,
            horizon_s=thresholds.horizon_s,
            block=thresholds.block,
            redecision_s=thresholds.redecision_s,
        )


class SimulationModel(_Strict):
    strategy: StrategyKind = StrategyKind.PREDICTIVE
    interarrival_s: float = Field(default=0.01, gt=0)
    bitrate_bps: float = Field(default=300e6, gt=0)
    sim_duration_s: float = Field(default=60.0, gt=0)
    tick_s: float = Field(default=1e-3, gt=0)
    deadline_s: float = Field(default=0.1, gt=0)
    n_runs: int = Field(default=1, ge=1)
    base_seed: int = 0
    cache_capacity_bits: float = Field(default=256 * 8e6, ge=0)
    prediction: Prediction = Prediction.ORACLE
    learned_trace_dt_s: float = Field(default=0.01, gt=0)
    randomize_start_positions: bool = True
    n_traffic_devices: Optional[int] = Field(default=None, ge=0)


class ScenarioFile(_Strict):
    """Root document of a scenario file."""

    schema_version: Literal[1] = SCHEMA_VERSION
    scene: SceneModel
    radio: RadioBlockModel
    thresholds: ThresholdsModel = ThresholdsModel()
    simulation: SimulationModel = SimulationModel()

    def to_domain(self) -> SimConfig:
        """Frozen simulation configuration (scene and radio invariants are checked here)."""
        return SimConfig(
            scene=self.scene.to_domain(),
            radio_infra=self.radio.infra.to_domain(),
            radio_d2d=self.radio.d2d.to_domain(),
            thresholds=self.thresholds.to_domain(),
            **self.simulation.model_dump(),
        )

    @classmethod
    def from_domain(cls, config: SimConfig, bs_tx_power_dbm: Optional[float] = None) -> ScenarioFile:
        return cls(
            scene=SceneModel.from_domain(config.scene),
            radio=RadioBlockModel(
                infra=RadioModel.from_domain(config.radio_infra),
                d2d=RadioModel.from_domain(config.radio_d2d),
                bs_tx_power_dbm=bs_tx_power_dbm,
            ),
            thresholds=ThresholdsModel.from_domain(config.thresholds),
            simulation=SimulationModel(
                strategy=config.strategy,
                interarrival_s=config.interarrival_s,
                bitrate_bps=config.bitrate_bps,
                sim_duration_s=config.sim_duration_s,
                tick_s=config.tick_s,
                deadline_s=config.deadline_s,
                n_runs=config.n_runs,
                base_seed=config.base_seed,
                cache_capacity_bits=config.cache_capacity_bits,
                prediction=config.prediction,
                learned_trace_dt_s=config.learned_trace_dt_s,
                randomize_start_positions=config.randomize_start_positions,
                n_traffic_devices=config.n_traffic_devices,
            ),
        )
