"""Tests for logging configuration."""
import json

import structlog

from src.core.logging import setup_logging


def test_setup_logging_completes_successfully():
    """Test: setup_logging() completes without exceptions."""
    # When: Setting up logging
    # Then: No exception is raised
    setup_logging()


def test_json_events_on_stderr(capsys):
    """Test: Events are JSON lines on stderr, stdout stays empty."""
    # Given: JSON logging
    setup_logging(level="INFO", json=True)

    # When: Logging an event with fields
    structlog.get_logger().info("run_started", seed=3)

    # Then: One parseable JSON line carries the event, level and fields
    captured = capsys.readouterr()
    assert captured.out == ""
    event = json.loads(captured.err.strip().splitlines()[-1])
    assert event["event"] == "run_started"
    assert event["level"] == "info"
    assert event["seed"] == 3
    assert "timestamp" in event


def test_level_filters_events(capsys):
    """Test: Events below the configured level are dropped."""
    # Given: WARNING level
    setup_logging(level="warning")

    # When
    logger = structlog.get_logger()
    logger.info("hidden")
    logger.warning("shown")

    # Then
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "shown" in err


def test_console_renderer(capsys):
    """Test: json=False renders human-readable lines."""
    # Given
    setup_logging(level="INFO", json=False)

    # When
    structlog.get_logger().info("sweep_point_done", strategy="direct")

    # Then
    err = capsys.readouterr().err
    assert "sweep_point_done" in err
    assert "strategy=direct" in err
    assert not err.lstrip().startswith("{")
