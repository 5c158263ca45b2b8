"""Shared test helpers for the simulator test suite."""
