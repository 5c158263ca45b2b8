"""Test suite for the factory D2D caching simulator."""
