"""Radio link budget unit tests."""
