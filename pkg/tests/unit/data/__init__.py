"""Data layer unit tests."""
