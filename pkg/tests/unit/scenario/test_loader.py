"""Tests for scenario parsing, validation diagnostics and file I/O."""
import json

import pytest

from src.exceptions import ScenarioValidationError
from src.scenario import (
    Variant,
    default_config,
    default_scenario,
    dump_scenario,
    load_config,
    load_scenario,
    parse_scenario,
    to_config,
    write_scenario,
)


@pytest.fixture
def payload() -> dict:
    """The default factory scenario as a plain JSON object."""
    return json.loads(dump_scenario(default_scenario()))


def _diagnostics(payload: dict) -> list[tuple[str, str]]:
    with pytest.raises(ScenarioValidationError) as exc_info:
        to_config(parse_scenario(json.dumps(payload)))
    return exc_info.value.diagnostics


class TestRoundTrip:
    def test_default_round_trip(self, tmp_path):
        """Test: Writing then loading the default scenario gives the same configuration"""
        path = write_scenario(default_scenario(), tmp_path / "scenario.json")

        assert load_config(path) == default_config()

    def test_sensors_round_trip(self, tmp_path):
        """Test: The sensors variant survives the file format too"""
        path = write_scenario(default_scenario(Variant.SENSORS), tmp_path / "sensors.json")

        assert load_config(path) == default_config(Variant.SENSORS)

    def test_write_creates_parent(self, tmp_path):
        """Test: Missing output directories are created"""
        path = write_scenario(default_scenario(), tmp_path / "nested" / "dir" / "s.json")

        assert path.exists()
        assert load_scenario(path) == default_scenario()

    def test_dump_is_indented_json(self):
        """Test: Scenario files are human-readable JSON with a schema version"""
        text = dump_scenario(default_scenario())

        assert text.endswith("\n")
        assert '\n  "schema_version": 1' in text


class TestSyntaxErrors:
    def test_line_and_column(self):
        """Test: JSON syntax errors point at line and column"""
        text = '{\n  "scene": ,\n  "radio": {}\n}'

        with pytest.raises(ScenarioValidationError) as exc_info:
            parse_scenario(text, path="broken.json")

        location, message = exc_info.value.diagnostics[0]
        assert location.startswith("line 2 column ")
        assert message
        assert exc_info.value.path == "broken.json"
        assert "broken.json" in str(exc_info.value)

    def test_missing_file(self, tmp_path):
        """Test: A missing file is a scenario error, not a crash"""
        path = tmp_path / "absent.json"

        with pytest.raises(ScenarioValidationError) as exc_info:
            load_config(path)

        assert exc_info.value.diagnostics == [("file", "not found")]
        assert exc_info.value.path == str(path)


class TestSchemaErrors:
    def test_unknown_key_rejected(self, payload):
        """Test: Unknown keys are reported with their dotted path"""
        payload["scene"]["color"] = "grey"

        locations = [loc for loc, _ in _diagnostics(payload)]

        assert "scene.color" in locations

    def test_unknown_top_level_key(self, payload):
        """Test: The root document is strict as well"""
        payload["extras"] = {}

        assert "extras" in [loc for loc, _ in _diagnostics(payload)]

    def test_field_path_into_collections(self, payload):
        """Test: Errors inside mappings and lists carry keys and indices"""
        payload["scene"]["trajectories"]["robot_00"]["speed_mps"] = -1.0
        payload["scene"]["devices"][3]["antenna_height_m"] = 0.0

        locations = [loc for loc, _ in _diagnostics(payload)]

        assert "scene.trajectories.robot_00.speed_mps" in locations
        assert "scene.devices.3.antenna_height_m" in locations

    def test_threshold_range(self, payload):
        """Test: Thresholds outside [0, 1] are rejected"""
        payload["thresholds"]["push"] = 1.5

        assert "thresholds.push" in [loc for loc, _ in _diagnostics(payload)]

    def test_schema_version(self, payload):
        """Test: Only schema version 1 is accepted"""
        payload["schema_version"] = 2

        assert "schema_version" in [loc for loc, _ in _diagnostics(payload)]

    def test_unknown_strategy(self, payload):
        """Test: Strategy names are checked against the known strategies"""
        payload["simulation"]["strategy"] = "flooding"

        assert "simulation.strategy" in [loc for loc, _ in _diagnostics(payload)]


class TestDomainErrors:
    def test_unknown_trajectory_reference(self, payload):
        """Test: Scene invariants are reported under 'scene'"""
        payload["scene"]["devices"][0]["trajectory"] = "nowhere"

        diagnostics = _diagnostics(payload)

        assert diagnostics[0][0] == "scene"
        assert "nowhere" in diagnostics[0][1]

    def test_obstacle_outside_floor(self, payload):
        """Test: A static obstacle must lie on the floor"""
        payload["scene"]["obstacles"][0]["footprint_m"]["x_max_m"] = 25.0

        assert _diagnostics(payload)[0][0] == "scene"

    def test_interarrival_below_tick(self, payload):
        """Test: Cross-field simulation checks are reported under 'simulation'"""
        payload["simulation"]["interarrival_s"] = 1e-4

        diagnostics = _diagnostics(payload)

        assert diagnostics[0][0] == "simulation"
        assert "interarrival_s" in diagnostics[0][1]

    def test_negative_blockage_loss(self, payload):
        """Test: Radio parameter errors never reach the simulator"""
        payload["radio"]["infra"]["blockage_loss_db"] = -3.0

        assert "radio.infra.blockage_loss_db" in [loc for loc, _ in _diagnostics(payload)]
