"""LoS map and trace unit tests."""
