"""Scene geometry unit tests."""
