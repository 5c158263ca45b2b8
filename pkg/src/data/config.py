from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings. None of these change simulation results."""

    model_config = SettingsConfigDict(env_file=".env", env_prefix="FACTORYSIM_")

    # Logging
    log_level: str = "INFO"
    log_json: bool = True

    # Cross-run worker processes used when --threads is not given
    default_threads: int = 1


settings = Settings()
