"""Chart unit tests."""
