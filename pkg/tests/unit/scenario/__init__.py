"""Scenario file unit tests."""
