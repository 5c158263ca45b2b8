"""Tests for the built-in factory and sensors scenarios."""
import pytest

from src.dissemination.models import StrategyKind
from src.radio.models import NlosMode
from src.scenario import Variant, default_config, default_scenario
from src.scene import scene_period


class TestFactoryDefaults:
    def test_sixteen_robots(self):
        """Test: Sixteen devices with ids 0..15"""
        scene = default_config().scene

        assert scene.device_ids == list(range(16))

    def test_floor_and_base_station(self):
        """Test: 18 x 10 m floor with the base station on the south wall at 3 m"""
        scene = default_config().scene

        assert (scene.floor_w_m, scene.floor_d_m) == (18.0, 10.0)
        assert (scene.base_station.x, scene.base_station.y, scene.base_station.z) == (9.0, 0.0, 3.0)

    def test_conveyors_and_loads(self):
        """Test: Two static conveyor belts, each carrying one taller mobile load"""
        obstacles = default_config().scene.obstacles

        static = [o for o in obstacles if not o.is_mobile]
        mobile = [o for o in obstacles if o.is_mobile]
        assert len(static) == 2
        assert len(mobile) == 2
        assert all(m.height_m > s.height_m for m in mobile for s in static)

    def test_robot_speed(self):
        """Test: Robots move at 3 km/h"""
        trajectories = default_config().scene.trajectories

        assert trajectories["robot_00"].speed_mps == pytest.approx(3.0 / 3.6)

    def test_radios(self):
        """Test: 28 GHz / 800 MHz uplink and 60 GHz capped sidelink"""
        config = default_config()

        assert config.radio_infra.carrier_ghz == 28.0
        assert config.radio_infra.bandwidth_hz == 800e6
        assert config.radio_infra.tx_power_dbm == 23.0
        assert config.radio_infra.nlos_mode is NlosMode.SOFT
        assert config.radio_d2d.carrier_ghz == 60.0
        assert config.radio_d2d.rate_cap_bps == 10e9
        assert config.radio_d2d.nlos_mode is NlosMode.HARD

    def test_simulation_settings(self):
        """Test: 300 Mb/s video, 100 ms deadline, 1 ms ticks, 60 s runs, 50 runs"""
        config = default_config()

        assert config.strategy is StrategyKind.PREDICTIVE
        assert config.bitrate_bps == 300e6
        assert config.deadline_s == 0.1
        assert config.tick_s == 1e-3
        assert config.sim_duration_s == 60.0
        assert config.n_runs == 50
        config.validate()

    def test_scenario_carries_bs_power(self):
        """Test: The scenario file records the base station transmit power"""
        assert default_scenario().radio.bs_tx_power_dbm == 20.0


class TestSensorsDefaults:
    def test_three_sensors(self):
        """Test: Three sensor devices and two mobile blockers"""
        scene = default_config(Variant.SENSORS).scene

        assert scene.device_ids == [0, 1, 2]
        assert len(scene.obstacles) == 2
        assert all(o.is_mobile for o in scene.obstacles)

    def test_common_period(self):
        """Test: Sensors and blockers repeat together every 20 s"""
        assert scene_period(default_config(Variant.SENSORS).scene) == pytest.approx(20.0)

    def test_variant_from_string(self):
        """Test: Variants accept their command-line names"""
        assert default_config("sensors").scene.device_ids == [0, 1, 2]
