"""Tests for constant-bit-rate traffic generation."""
import numpy as np
import pytest

from src.engine.config import SimConfig
from src.engine.traffic import generate_traffic, traffic_phases


@pytest.fixture
def config(two_device_scene, infra_params, d2d_params) -> SimConfig:
    return SimConfig(
        scene=two_device_scene,
        radio_infra=infra_params,
        radio_d2d=d2d_params,
        interarrival_s=0.01,
        sim_duration_s=0.05,
    )


class TestTrafficPhases:
    def test_phases_within_one_interarrival(self, config):
        """Test: Every traffic device starts within [0, interarrival)"""
        phases = traffic_phases(config, np.random.default_rng(1))

        assert sorted(phases) == [0, 1]
        assert all(0.0 <= p < config.interarrival_s for p in phases.values())

    def test_phases_reproducible(self, config):
        """Test: The same seed gives the same phases"""
        a = traffic_phases(config, np.random.default_rng(5))
        b = traffic_phases(config, np.random.default_rng(5))

        assert a == b

    def test_only_traffic_devices(self, two_device_scene, infra_params, d2d_params):
        """Test: n_traffic_devices keeps the first devices in declaration order"""
        config = SimConfig(
            scene=two_device_scene,
            radio_infra=infra_params,
            radio_d2d=d2d_params,
            n_traffic_devices=1,
        )

        assert list(traffic_phases(config, np.random.default_rng(0))) == [0]


class TestGenerateTraffic:
    def test_contents_in_time_order(self, config):
        """Test: Contents interleave by creation instant and ids count up"""
        # Given: device 0 starts at 0, device 1 half an interarrival later
        phases = {0: 0.0, 1: 0.005}

        # When
        contents = list(generate_traffic(config, np.random.default_rng(0), phases))

        # Then: 5 contents per device before the 50 ms end
        assert len(contents) == 10
        assert [c.content_id for c in contents] == list(range(10))
        assert [c.origin_device for c in contents] == [0, 1] * 5
        created = [c.created_at for c in contents]
        assert created == sorted(created)
        assert created[:4] == pytest.approx([0.0, 0.005, 0.01, 0.015])

    def test_content_size_and_deadline(self, config):
        """Test: Size is bitrate * interarrival and the deadline follows creation"""
        contents = list(generate_traffic(config, np.random.default_rng(0), {0: 0.002, 1: 0.004}))

        for content in contents:
            assert content.size_bits == pytest.approx(3e6)
            assert content.deadline_at == pytest.approx(content.created_at + 0.1)
            assert content.holder == content.origin_device

    def test_no_content_at_or_after_end(self, config):
        """Test: Nothing is created at or after sim_duration_s"""
        contents = list(generate_traffic(config, np.random.default_rng(3)))

        assert contents
        assert all(c.created_at < config.sim_duration_s for c in contents)
