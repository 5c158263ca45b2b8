"""Read, validate and write scenario files."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

import structlog
from pydantic import ValidationError

from src.engine.config import SimConfig
from src.exceptions import (
    InvalidSceneError,
    RadioParameterError,
    ScenarioValidationError,
    SimulationConfigError,
)
from src.scenario.schema import ScenarioFile

logger = structlog.get_logger(__name__)

PathLike = Union[str, Path]


def _field_path(loc: tuple) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def parse_scenario(text: str, path: Optional[str] = None) -> ScenarioFile:
    """Parse and schema-validate scenario JSON.

    Raises:
        ScenarioValidationError: With "line N column M" diagnostics for JSON
            syntax errors and dotted field paths for schema errors
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioValidationError(
            [(f"line {e.lineno} column {e.colno}", e.msg)], path=path
        ) from e

    try:
        return ScenarioFile.model_validate(payload)
    except ValidationError as e:
        diagnostics = [(_field_path(err["loc"]), err["msg"]) for err in e.errors()]
        raise ScenarioValidationError(diagnostics, path=path) from e


def to_config(scenario: ScenarioFile, path: Optional[str] = None) -> SimConfig:
    """Domain configuration of a parsed scenario, with cross-field checks applied."""
    try:
        config = scenario.to_domain()
    except InvalidSceneError as e:
        raise ScenarioValidationError([("scene", str(e))], path=path) from e
    except RadioParameterError as e:
        raise ScenarioValidationError([("radio", str(e))], path=path) from e
    except ValueError as e:
        raise ScenarioValidationError([("thresholds", str(e))], path=path) from e

    try:
        config.validate()
    except SimulationConfigError as e:
        raise ScenarioValidationError([("simulation", str(e))], path=path) from e
    return config


def load_scenario(path: PathLike) -> ScenarioFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ScenarioValidationError([("file", "not found")], path=str(path)) from e
    return parse_scenario(text, path=str(path))


def load_config(path: PathLike) -> SimConfig:
    """Load a scenario file straight into a validated SimConfig."""
    scenario = load_scenario(path)
    config = to_config(scenario, path=str(path))
    logger.info(
        "scenario_loaded",
        path=str(path),
        devices=len(config.scene.devices),
        obstacles=len(config.scene.obstacles),
    )
    return config


def dump_scenario(scenario: ScenarioFile) -> str:
    return json.dumps(scenario.model_dump(mode="json"), indent=2) + "\n"


def write_scenario(scenario: ScenarioFile, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_scenario(scenario), encoding="utf-8")
    logger.info("scenario_written", path=str(path))
    return path
