"""Radio parameter and link state models."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from src.exceptions import RadioParameterError


class NlosMode(str, Enum):
    """How a blocked (NLoS) link is treated.

    soft: NLoS pathloss formula (plus blockage loss) and a degraded rate
    hard: NLoS forces rate 0 and the link is unusable
    """

    SOFT = "soft"
    HARD = "hard"


@dataclass(frozen=True)
class RadioParams:
    """Link-budget parameters of one radio technology."""

    carrier_ghz: float
    bandwidth_hz: float
    tx_power_dbm: float
    tx_gain_dbi: float = 0.0
    rx_gain_dbi: float = 0.0
    noise_figure_db: float = 7.0
    rate_cap_bps: Optional[float] = None
    max_range_m: Optional[float] = None
    setup_time_s: float = 0.0
    nlos_mode: NlosMode = NlosMode.SOFT
    blockage_loss_db: float = 0.0
    min_snr_db: float = -10.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "nlos_mode", NlosMode(self.nlos_mode))
        if not (self.bandwidth_hz > 0 and math.isfinite(self.bandwidth_hz)):
            raise RadioParameterError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        if not (self.carrier_ghz > 0 and math.isfinite(self.carrier_ghz)):
            raise RadioParameterError(f"carrier_ghz must be > 0, got {self.carrier_ghz}")
        if self.setup_time_s < 0:
            raise RadioParameterError(f"setup_time_s must be >= 0, got {self.setup_time_s}")
        if self.rate_cap_bps is not None and self.rate_cap_bps <= 0:
            raise RadioParameterError(f"rate_cap_bps must be > 0, got {self.rate_cap_bps}")
        if self.max_range_m is not None and self.max_range_m <= 0:
            raise RadioParameterError(f"max_range_m must be > 0, got {self.max_range_m}")
        if self.blockage_loss_db < 0:
            raise RadioParameterError(f"blockage_loss_db must be >= 0, got {self.blockage_loss_db}")


@dataclass(frozen=True)
class LinkState:
    """Instantaneous state of one radio link."""

    los: bool
    distance_m: float
    pathloss_db: float
    snr_db: float
    rate_bps: float
    usable: bool

    def __post_init__(self) -> None:
        if self.rate_bps < 0:
            raise RadioParameterError(f"rate_bps must be >= 0, got {self.rate_bps}")
        if self.usable and self.rate_bps <= 0:
            raise RadioParameterError("A usable link must have a positive rate")
