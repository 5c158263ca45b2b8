"""Tests for configuration."""
from src.data.config import Settings


def test_settings_load_from_env(monkeypatch):
    """Test: Settings load from FACTORYSIM_ environment variables."""
    # Given: Environment variables set
    monkeypatch.setenv("FACTORYSIM_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("FACTORYSIM_LOG_JSON", "false")
    monkeypatch.setenv("FACTORYSIM_DEFAULT_THREADS", "4")

    # When: Creating settings
    settings = Settings()

    # Then: Settings are loaded from environment
    assert settings.log_level == "DEBUG"
    assert settings.log_json is False
    assert settings.default_threads == 4


def test_settings_defaults():
    """Test: Settings use default values when env vars not set."""
    # Given: No FACTORYSIM_ variables (cleared by the autouse fixture)
    settings = Settings(_env_file=None)

    # Then: Default values are used
    assert settings.log_level == "INFO"
    assert settings.log_json is True
    assert settings.default_threads == 1


def test_unprefixed_variables_ignored(monkeypatch):
    """Test: Only prefixed variables are read."""
    # Given: A bare LOG_LEVEL variable
    monkeypatch.setenv("LOG_LEVEL", "ERROR")

    # When
    settings = Settings(_env_file=None)

    # Then
    assert settings.log_level == "INFO"
