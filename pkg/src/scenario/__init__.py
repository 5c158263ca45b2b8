"""Scenario files: schema, built-in defaults and loading."""
from src.scenario.defaults import Variant, default_config, default_scenario
from src.scenario.loader import (
    dump_scenario,
    load_config,
    load_scenario,
    parse_scenario,
    to_config,
    write_scenario,
)
from src.scenario.schema import ScenarioFile

__all__ = [
    "ScenarioFile",
    "Variant",
    "default_config",
    "default_scenario",
    "dump_scenario",
    "load_config",
    "load_scenario",
    "parse_scenario",
    "to_config",
    "write_scenario",
]
