"""Dissemination unit tests."""
