"""Tests for SimConfig derived values and validation."""
from dataclasses import replace

import pytest

from src.dissemination.models import StrategyKind
from src.engine.config import Prediction, SimConfig
from src.exceptions import SimulationConfigError
from src.scene.models import Point3, Scene


@pytest.fixture
def config(two_device_scene, infra_params, d2d_params) -> SimConfig:
    return SimConfig(scene=two_device_scene, radio_infra=infra_params, radio_d2d=d2d_params)


class TestDerivedValues:
    def test_content_bits(self, config):
        """Test: Default content is 300 Mb/s for 10 ms, i.e. 3 Mb"""
        assert config.content_bits == pytest.approx(3e6)

    def test_seeds(self, config):
        """Test: Run r uses base_seed + r"""
        assert replace(config, base_seed=7, n_runs=3).seeds() == [7, 8, 9]

    def test_traffic_devices(self, config):
        """Test: All devices generate traffic unless limited"""
        assert config.traffic_devices == [0, 1]
        assert replace(config, n_traffic_devices=1).traffic_devices == [0]
        assert replace(config, n_traffic_devices=0).traffic_devices == []

    def test_enum_coercion(self, two_device_scene, infra_params, d2d_params):
        """Test: Strategy and prediction accept their string values"""
        config = SimConfig(
            scene=two_device_scene,
            radio_infra=infra_params,
            radio_d2d=d2d_params,
            strategy="storage",
            prediction="learned",
        )

        assert config.strategy is StrategyKind.DIRECT_WITH_STORAGE
        assert config.prediction is Prediction.LEARNED


class TestValidate:
    def test_defaults_valid(self, config):
        """Test: Default configuration passes validation"""
        config.validate()

    @pytest.mark.parametrize(
        "overrides,message",
        [
            ({"tick_s": 0.0}, "tick_s"),
            ({"interarrival_s": 5e-4}, "interarrival_s"),
            ({"sim_duration_s": 1e-4}, "sim_duration_s"),
            ({"n_runs": 0}, "n_runs"),
            ({"bitrate_bps": -1.0}, "bitrate_bps"),
            ({"deadline_s": 0.0}, "deadline_s"),
            ({"cache_capacity_bits": -1.0}, "cache_capacity_bits"),
            ({"learned_trace_dt_s": 0.0}, "learned_trace_dt_s"),
            ({"n_traffic_devices": 3}, "n_traffic_devices"),
        ],
    )
    def test_invalid_fields(self, config, overrides, message):
        """Test: Each violated invariant is reported by name"""
        with pytest.raises(SimulationConfigError, match=message):
            replace(config, **overrides).validate()

    def test_scene_without_devices(self, config):
        """Test: A run needs at least one device"""
        empty = Scene(floor_w_m=10.0, floor_d_m=10.0, base_station=Point3(5.0, 0.0, 3.0))

        with pytest.raises(SimulationConfigError, match="at least one device"):
            replace(config, scene=empty).validate()

    def test_all_errors_reported(self, config):
        """Test: Several violations are joined in one message"""
        with pytest.raises(SimulationConfigError) as exc_info:
            replace(config, n_runs=0, deadline_s=-1.0).validate()

        assert "n_runs" in str(exc_info.value)
        assert "deadline_s" in str(exc_info.value)
