"""Pathloss, SNR and achievable-rate chain.

Pathloss follows the 3GPP indoor-factory sparse-clutter / low-antenna form:

    LoS:  PL = 31.84 + 21.5 log10(d) + 19 log10(f_GHz)
    NLoS: PL = max(PL_LoS, 33 + 25.5 log10(d) + 20 log10(f_GHz))

All functions accept scalars or numpy arrays; scalar inputs return floats.
"""
from __future__ import annotations

from typing import Union

import numpy as np

from src.exceptions import RadioParameterError
from src.radio.models import LinkState, NlosMode, RadioParams
from src.scene.blockage import BoxesLike, segment_blocked
from src.scene.models import Point3

ArrayLike = Union[float, np.ndarray]

THERMAL_NOISE_DBM_PER_HZ = -174.0
MIN_DISTANCE_M = 1.0


def _scalar_or_array(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def pathloss_db(params: RadioParams, distance_m: ArrayLike, los: Union[bool, np.ndarray]) -> ArrayLike:
    """Pathloss in dB. Distances below 1 m are clamped to 1 m."""
    distance = np.asarray(distance_m, dtype=float)
    if np.any(~(distance > 0)):
        raise RadioParameterError(f"distance_m must be > 0, got {distance_m}")
    distance = np.maximum(distance, MIN_DISTANCE_M)
    log_f = np.log10(params.carrier_ghz)
    pl_los = 31.84 + 21.5 * np.log10(distance) + 19.0 * log_f
    pl_nlos = np.maximum(pl_los, 33.0 + 25.5 * np.log10(distance) + 20.0 * log_f)
    return _scalar_or_array(np.where(np.asarray(los, dtype=bool), pl_los, pl_nlos))


def noise_floor_dbm(params: RadioParams) -> float:
    return THERMAL_NOISE_DBM_PER_HZ + 10.0 * float(np.log10(params.bandwidth_hz)) + params.noise_figure_db


def snr_db(params: RadioParams, pathloss_db: ArrayLike) -> ArrayLike:
    """SNR = tx power + gains - pathloss - noise floor."""
    budget = params.tx_power_dbm + params.tx_gain_dbi + params.rx_gain_dbi
    return _scalar_or_array(budget - np.asarray(pathloss_db, dtype=float) - noise_floor_dbm(params))


def achievable_rate(params: RadioParams, snr_db: ArrayLike) -> ArrayLike:
    """Shannon rate in bit/s, clamped to rate_cap_bps; 0 below min_snr_db."""
    snr = np.asarray(snr_db, dtype=float)
    rate = params.bandwidth_hz * np.log2(1.0 + np.power(10.0, snr / 10.0))
    if params.rate_cap_bps is not None:
        rate = np.minimum(rate, params.rate_cap_bps)
    rate = np.where(snr < params.min_snr_db, 0.0, rate)
    return _scalar_or_array(rate)


def link_rates(
    params: RadioParams,
    distance_m: np.ndarray,
    los: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Array form of the link chain: (rate_bps, usable) for each link.

    Applies blockage loss and the hard/soft NLoS rule the same way link_state does.
    """
    distance = np.asarray(distance_m, dtype=float)
    los = np.asarray(los, dtype=bool)
    loss = np.asarray(pathloss_db(params, distance, los), dtype=float)
    loss = loss + np.where(los, 0.0, params.blockage_loss_db)
    rate = np.asarray(achievable_rate(params, snr_db(params, loss)), dtype=float)
    if params.nlos_mode is NlosMode.HARD:
        rate = np.where(los, rate, 0.0)
    if params.max_range_m is not None:
        rate = np.where(distance <= params.max_range_m, rate, 0.0)
    return rate, rate > 0.0


def link_state(
    scene_boxes: BoxesLike,
    tx: Point3,
    rx: Point3,
    params: RadioParams,
) -> LinkState:
    """Evaluate one link against the placed boxes (endpoint bodies already removed)."""
    if tx == rx:
        raise RadioParameterError("Link endpoints coincide")
    los = not segment_blocked(scene_boxes, tx, rx)
    distance = tx.distance_to(rx)

    loss = float(pathloss_db(params, distance, los))
    if not los:
        loss += params.blockage_loss_db
    snr = float(snr_db(params, loss))
    rate = float(achievable_rate(params, snr))

    in_range = params.max_range_m is None or distance <= params.max_range_m
    if not in_range or (not los and params.nlos_mode is NlosMode.HARD):
        rate = 0.0

    return LinkState(
        los=los,
        distance_m=distance,
        pathloss_db=loss,
        snr_db=snr,
        rate_bps=rate,
        usable=in_range and rate > 0.0,
    )