"""Script tests."""
