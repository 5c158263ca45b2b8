"""Link-budget abstraction for the 28 GHz uplink and the 60 GHz D2D link."""
from src.radio.link_budget import (
    achievable_rate,
    link_rates,
    link_state,
    noise_floor_dbm,
    pathloss_db,
    snr_db,
)
from src.radio.models import LinkState, NlosMode, RadioParams

__all__ = [
    "LinkState",
    "NlosMode",
    "RadioParams",
    "achievable_rate",
    "link_rates",
    "link_state",
    "noise_floor_dbm",
    "pathloss_db",
    "snr_db",
]
