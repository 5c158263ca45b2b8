"""Tests for the pathloss, SNR and rate chain."""
import math
from dataclasses import replace

import numpy as np
import pytest

from src.exceptions import RadioParameterError
from src.radio import (
    NlosMode,
    RadioParams,
    achievable_rate,
    link_rates,
    link_state,
    noise_floor_dbm,
    pathloss_db,
    snr_db,
)
from src.scene import Box, Point3


def test_pathloss_los_at_one_meter(infra_params):
    """Test: At 1 m only the frequency term remains."""
    expected = 31.84 + 19.0 * math.log10(28.0)
    assert pathloss_db(infra_params, 1.0, True) == pytest.approx(expected, rel=1e-9)
    assert expected == pytest.approx(59.34, abs=0.01)


def test_pathloss_los_and_nlos_at_ten_meters(infra_params):
    """Test: 10 m LoS and NLoS values from the closed form."""
    los = pathloss_db(infra_params, 10.0, True)
    nlos = pathloss_db(infra_params, 10.0, False)

    assert los == pytest.approx(31.84 + 21.5 + 19.0 * math.log10(28.0), rel=1e-9)
    assert los == pytest.approx(80.84, abs=0.01)
    assert nlos == pytest.approx(33.0 + 25.5 + 20.0 * math.log10(28.0), rel=1e-9)
    assert nlos == pytest.approx(87.44, abs=0.01)


def test_pathloss_clamps_below_one_meter(infra_params):
    """Test: Distances under 1 m use the 1 m value."""
    assert pathloss_db(infra_params, 0.2, True) == pathloss_db(infra_params, 1.0, True)


@pytest.mark.parametrize("distance", [0.0, -1.0])
def test_pathloss_rejects_non_positive_distance(infra_params, distance):
    """Test: Distance must be > 0."""
    with pytest.raises(RadioParameterError):
        pathloss_db(infra_params, distance, True)


def test_pathloss_monotone_and_nlos_above_los(infra_params):
    """Test: Pathloss grows with distance and NLoS is never below LoS."""
    distances = np.linspace(1.0, 200.0, 400)
    los = pathloss_db(infra_params, distances, True)
    nlos = pathloss_db(infra_params, distances, False)

    assert np.all(np.diff(los) > 0)
    assert np.all(np.diff(nlos) > 0)
    assert np.all(nlos >= los)


def test_snr_example(infra_params):
    """Test: 23 dBm, 5 + 15 dBi, 80.84 dB pathloss, 800 MHz, NF 7 dB -> 40.13 dB."""
    noise = noise_floor_dbm(infra_params)
    snr = snr_db(infra_params, 80.84)

    assert noise == pytest.approx(-174.0 + 10.0 * math.log10(800e6) + 7.0, rel=1e-9)
    assert noise == pytest.approx(-77.97, abs=0.01)
    assert snr == pytest.approx(23.0 + 5.0 + 15.0 - 80.84 - noise, rel=1e-9)
    assert snr == pytest.approx(40.13, abs=0.01)


def test_snr_zero_when_pathloss_uses_whole_budget(infra_params):
    """Test: Pathloss equal to the budget gives 0 dB."""
    budget = 23.0 + 5.0 + 15.0 - noise_floor_dbm(infra_params)
    assert snr_db(infra_params, budget) == pytest.approx(0.0, abs=1e-9)


def test_snr_linear_in_tx_power(infra_params):
    """Test: +3 dB transmit power is +3 dB SNR."""
    louder = replace(infra_params, tx_power_dbm=26.0)
    assert snr_db(louder, 90.0) - snr_db(infra_params, 90.0) == pytest.approx(3.0)


def test_rate_at_zero_db(infra_params):
    """Test: log2(1 + 1) = 1 bit/s/Hz."""
    assert achievable_rate(infra_params, 0.0) == pytest.approx(800e6, rel=1e-9)


def test_rate_uncapped_example(infra_params):
    """Test: 40.13 dB over 800 MHz is about 10.66 Gbps."""
    rate = achievable_rate(infra_params, 40.13)
    assert rate == pytest.approx(800e6 * math.log2(1.0 + 10.0 ** 4.013), rel=1e-9)
    assert rate == pytest.approx(10.66e9, rel=1e-3)


def test_rate_cap_is_tight(d2d_params):
    """Test: A high-SNR WiGig link gets exactly the 10 Gbps cap."""
    assert achievable_rate(d2d_params, 60.0) == 10e9


def test_rate_zero_below_outage_threshold(infra_params):
    """Test: Below -10 dB SNR there is no rate."""
    assert achievable_rate(infra_params, -10.5) == 0.0
    assert achievable_rate(infra_params, -10.0) > 0.0


def test_rate_monotone_in_snr(d2d_params):
    """Test: Rate never decreases with SNR and never exceeds the cap."""
    rates = achievable_rate(d2d_params, np.linspace(-20.0, 60.0, 500))
    assert np.all(np.diff(rates) >= 0)
    assert rates.max() == 10e9


def test_link_state_out_of_range(d2d_params):
    """Test: A pair 120 m apart is beyond the 100 m WiGig radius."""
    state = link_state([], Point3(0.0, 0.0, 1.0), Point3(120.0, 0.0, 1.0), d2d_params)
    assert state.usable is False
    assert state.rate_bps == 0.0


def test_link_state_clear_link(infra_params):
    """Test: A clear 10 m link composes pathloss, SNR and rate."""
    state = link_state([], Point3(0.0, 0.0, 1.0), Point3(10.0, 0.0, 1.0), infra_params)

    expected_pl = pathloss_db(infra_params, 10.0, True)
    expected_rate = achievable_rate(infra_params, snr_db(infra_params, expected_pl))
    assert state.los is True
    assert state.usable is True
    assert state.distance_m == pytest.approx(10.0)
    assert state.pathloss_db == pytest.approx(expected_pl)
    assert state.rate_bps == pytest.approx(expected_rate)


def test_link_state_hard_mode_blocked(infra_params):
    """Test: Under hard NLoS a blocked link carries nothing."""
    wall = [Box(4.0, -1.0, 5.0, 1.0, 3.0)]
    state = link_state(wall, Point3(0.0, 0.0, 1.0), Point3(10.0, 0.0, 1.0), infra_params)
    assert state.los is False
    assert state.rate_bps == 0.0
    assert state.usable is False


def test_link_state_soft_mode_adds_blockage_loss():
    """Test: Under soft NLoS the NLoS pathloss plus blockage loss applies."""
    params = RadioParams(
        carrier_ghz=28.0,
        bandwidth_hz=800e6,
        tx_power_dbm=23.0,
        tx_gain_dbi=5.0,
        rx_gain_dbi=15.0,
        nlos_mode=NlosMode.SOFT,
        blockage_loss_db=30.0,
    )
    wall = [Box(4.0, -1.0, 5.0, 1.0, 3.0)]
    state = link_state(wall, Point3(0.0, 0.0, 1.0), Point3(10.0, 0.0, 1.0), params)

    assert state.los is False
    assert state.pathloss_db == pytest.approx(pathloss_db(params, 10.0, False) + 30.0)
    assert state.usable is True
    assert 0.0 < state.rate_bps < achievable_rate(params, snr_db(params, pathloss_db(params, 10.0, True)))


def test_link_rates_matches_link_state(d2d_params):
    """Test: The array chain agrees with link_state."""
    distances = np.array([5.0, 50.0, 120.0, 20.0])
    los = np.array([True, True, True, False])
    rates, usable = link_rates(d2d_params, distances, los)

    for d, l, r, u in zip(distances, los, rates, usable):
        boxes = [] if l else [Box(2.0, -1.0, 3.0, 1.0, 3.0)]
        state = link_state(boxes, Point3(0.0, 0.0, 1.0), Point3(float(d), 0.0, 1.0), d2d_params)
        assert r == pytest.approx(state.rate_bps)
        assert u == state.usable


def test_radio_params_validation():
    """Test: Bandwidth, carrier and setup time are validated."""
    with pytest.raises(RadioParameterError):
        RadioParams(carrier_ghz=28.0, bandwidth_hz=0.0, tx_power_dbm=23.0)
    with pytest.raises(RadioParameterError):
        RadioParams(carrier_ghz=0.0, bandwidth_hz=1e6, tx_power_dbm=23.0)
    with pytest.raises(RadioParameterError):
        RadioParams(carrier_ghz=28.0, bandwidth_hz=1e6, tx_power_dbm=23.0, setup_time_s=-1.0)


def test_taller_obstacle_never_raises_rate():
    """Test: Raising a box never increases a link's rate (soft and hard mode)."""
    rng = np.random.default_rng(8)
    for mode in NlosMode:
        params = RadioParams(
            carrier_ghz=28.0,
            bandwidth_hz=800e6,
            tx_power_dbm=23.0,
            tx_gain_dbi=5.0,
            rx_gain_dbi=15.0,
            nlos_mode=mode,
            blockage_loss_db=20.0,
        )
        for _ in range(100):
            tx = Point3(*rng.uniform([0, 0, 0.5], [18, 10, 3]))
            rx = Point3(*rng.uniform([0, 0, 0.5], [18, 10, 3]))
            rates = [
                link_state([Box(7.0, 3.0, 11.0, 7.0, h)], tx, rx, params).rate_bps
                for h in (0.5, 1.5, 2.5, 3.5)
            ]
            assert rates == sorted(rates, reverse=True)
