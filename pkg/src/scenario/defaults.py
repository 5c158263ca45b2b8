"""Built-in scenarios: the factory deployment and the three-sensor LoS scene."""
from __future__ import annotations

from enum import Enum

from src.dissemination.models import StrategyKind
from src.engine.config import SimConfig
from src.radio.models import NlosMode, RadioParams
from src.scenario.schema import ScenarioFile
from src.scene.models import DeviceSpec, Motion, Obstacle, Point3, Rect, Scene, Trajectory

FLOOR_W_M = 18.0
FLOOR_D_M = 10.0
BASE_STATION = Point3(9.0, 0.0, 3.0)

ROBOT_SPEED_MPS = 3.0 / 3.6
ROBOT_LANES_Y_M = (1.25, 3.75, 6.25, 8.75)
ROBOTS_PER_LANE = 4
LANE_X_M = (1.5, 16.5)

CONVEYOR_X_M = (3.0, 15.0)
CONVEYOR_Y_M = ((2.0, 3.0), (7.0, 8.0))
CONVEYOR_HEIGHT_M = 1.1
LOAD_SIZE_M = 0.8
LOAD_HEIGHT_M = 2.2
LOAD_SPEED_MPS = 0.5

BS_TX_POWER_DBM = 20.0


class Variant(str, Enum):
    FACTORY = "factory"
    SENSORS = "sensors"


def infra_radio() -> RadioParams:
    """28 GHz uplink to the serving base station."""
    return RadioParams(
        carrier_ghz=28.0,
        bandwidth_hz=800e6,
        tx_power_dbm=23.0,
        tx_gain_dbi=5.0,
        rx_gain_dbi=15.0,
        noise_figure_db=7.0,
        nlos_mode=NlosMode.SOFT,
        blockage_loss_db=50.0,
    )


def d2d_radio() -> RadioParams:
    """60 GHz WiGig sidelink between machines."""
    return RadioParams(
        carrier_ghz=60.0,
        bandwidth_hz=2.16e9,
        tx_power_dbm=23.0,
        tx_gain_dbi=10.0,
        rx_gain_dbi=10.0,
        noise_figure_db=7.0,
        rate_cap_bps=10e9,
        max_range_m=100.0,
        setup_time_s=1e-4,
        nlos_mode=NlosMode.HARD,
    )


def factory_scene() -> Scene:
    """18 x 10 m floor: two conveyor belts carrying tall loads, 16 robots on four lanes."""
    trajectories: dict[str, Trajectory] = {}
    obstacles: list[Obstacle] = []

    for index, (y_min, y_max) in enumerate(CONVEYOR_Y_M):
        obstacles.append(
            Obstacle(Rect(CONVEYOR_X_M[0], y_min, CONVEYOR_X_M[1], y_max), CONVEYOR_HEIGHT_M)
        )
        y_mid = (y_min + y_max) / 2.0
        start = CONVEYOR_X_M[0] + LOAD_SIZE_M / 2.0
        end = CONVEYOR_X_M[1] - LOAD_SIZE_M / 2.0
        # Belts run in opposite directions.
        waypoints = ((start, y_mid), (end, y_mid)) if index == 0 else ((end, y_mid), (start, y_mid))
        trajectory_id = f"load_{index}"
        trajectories[trajectory_id] = Trajectory(waypoints, LOAD_SPEED_MPS, Motion.BACK_AND_FORTH)
        obstacles.append(
            Obstacle(Rect.from_center(0.0, 0.0, LOAD_SIZE_M, LOAD_SIZE_M), LOAD_HEIGHT_M, trajectory_id)
        )

    devices: list[DeviceSpec] = []
    segment = (LANE_X_M[1] - LANE_X_M[0]) / ROBOTS_PER_LANE
    for lane, y in enumerate(ROBOT_LANES_Y_M):
        for slot in range(ROBOTS_PER_LANE):
            device_id = lane * ROBOTS_PER_LANE + slot
            x0 = LANE_X_M[0] + slot * segment
            trajectory_id = f"robot_{device_id:02d}"
            trajectories[trajectory_id] = Trajectory(
                ((x0, y), (x0 + segment, y)), ROBOT_SPEED_MPS, Motion.BACK_AND_FORTH
            )
            devices.append(DeviceSpec(device_id=device_id, trajectory_id=trajectory_id))

    return Scene(
        floor_w_m=FLOOR_W_M,
        floor_d_m=FLOOR_D_M,
        base_station=BASE_STATION,
        obstacles=tuple(obstacles),
        trajectories=trajectories,
        devices=tuple(devices),
    )


def sensors_scene() -> Scene:
    """Three sensor machines on equal-length paths with two tall mobile blockers in front.

    Every path (sensors and blockers) shares the same 20 s period. The sensors
    are spread along their lanes so a blocker rarely shadows more than one.
    """
    sensor_speed = 1.0
    trajectories: dict[str, Trajectory] = {}
    devices = []
    for device_id, y in enumerate((3.5, 5.5, 7.5)):
        trajectory_id = f"sensor_{device_id}"
        trajectories[trajectory_id] = Trajectory(
            ((4.0, y), (14.0, y)),
            sensor_speed,
            Motion.BACK_AND_FORTH,
            phase_offset_s=device_id * 20.0 / 3.0,
        )
        devices.append(DeviceSpec(device_id=device_id, trajectory_id=trajectory_id))

    obstacles = []
    for index, (y, offset) in enumerate(((1.5, 0.0), (2.5, 10.0))):
        trajectory_id = f"blocker_{index}"
        trajectories[trajectory_id] = Trajectory(
            ((2.0, y), (16.0, y)), 1.4, Motion.BACK_AND_FORTH, phase_offset_s=offset
        )
        obstacles.append(Obstacle(Rect.from_center(0.0, 0.0, 1.0, 0.6), 2.5, trajectory_id))

    return Scene(
        floor_w_m=FLOOR_W_M,
        floor_d_m=FLOOR_D_M,
        base_station=BASE_STATION,
        obstacles=tuple(obstacles),
        trajectories=trajectories,
        devices=tuple(devices),
    )


def default_config(variant: Variant = Variant.FACTORY) -> SimConfig:
    scene = factory_scene() if Variant(variant) is Variant.FACTORY else sensors_scene()
    return SimConfig(
        scene=scene,
        radio_infra=infra_radio(),
        radio_d2d=d2d_radio(),
        strategy=StrategyKind.PREDICTIVE,
        interarrival_s=0.01,
        bitrate_bps=300e6,
        sim_duration_s=60.0,
        tick_s=1e-3,
        deadline_s=0.1,
        n_runs=50,
    )


def default_scenario(variant: Variant = Variant.FACTORY) -> ScenarioFile:
    return ScenarioFile.from_domain(default_config(variant), bs_tx_power_dbm=BS_TX_POWER_DBM)
