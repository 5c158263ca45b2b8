"""Simulation engine unit tests."""
