"""Common pytest fixtures for test suite."""
from pathlib import Path

import plotly.graph_objects as go
import pytest
import structlog

from src.radio.models import NlosMode, RadioParams
from src.scene.models import DeviceSpec, Obstacle, Point3, Rect, Scene, Trajectory


@pytest.fixture(autouse=True)
def setup_test_env(monkeypatch):
    """Keep runtime settings independent of the developer's environment."""
    for name in ("FACTORYSIM_LOG_LEVEL", "FACTORYSIM_LOG_JSON", "FACTORYSIM_DEFAULT_THREADS"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop logging configuration bound to a test's captured streams."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def empty_scene() -> Scene:
    """18 x 10 m floor with the base station mid south wall and nothing else."""
    return Scene(floor_w_m=18.0, floor_d_m=10.0, base_station=Point3(9.0, 0.0, 3.0))


@pytest.fixture
def mobile_box_scene() -> Scene:
    """One 1 x 1 x 5 m box shuttling along y=3 between x=1 and x=17 at 1 m/s (32 s period)."""
    return Scene(
        floor_w_m=18.0,
        floor_d_m=10.0,
        base_station=Point3(9.0, 0.0, 3.0),
        obstacles=(Obstacle(Rect.from_center(0.0, 0.0, 1.0, 1.0), 5.0, "shuttle"),),
        trajectories={"shuttle": Trajectory(((1.0, 3.0), (17.0, 3.0)), 1.0)},
    )


@pytest.fixture
def two_device_scene() -> Scene:
    """Two static-ish devices (slow, short paths) with a clear path to the base station."""
    return Scene(
        floor_w_m=18.0,
        floor_d_m=10.0,
        base_station=Point3(9.0, 0.0, 3.0),
        trajectories={
            "a": Trajectory(((4.0, 5.0), (4.5, 5.0)), 0.1),
            "b": Trajectory(((14.0, 5.0), (14.5, 5.0)), 0.1),
        },
        devices=(
            DeviceSpec(device_id=0, trajectory_id="a"),
            DeviceSpec(device_id=1, trajectory_id="b"),
        ),
    )


@pytest.fixture
def infra_params() -> RadioParams:
    """28 GHz uplink radio with hard NLoS, so blockage means zero rate."""
    return RadioParams(
        carrier_ghz=28.0,
        bandwidth_hz=800e6,
        tx_power_dbm=23.0,
        tx_gain_dbi=5.0,
        rx_gain_dbi=15.0,
        noise_figure_db=7.0,
        nlos_mode=NlosMode.HARD,
    )


@pytest.fixture
def d2d_params() -> RadioParams:
    """60 GHz sidelink radio."""
    return RadioParams(
        carrier_ghz=60.0,
        bandwidth_hz=2.16e9,
        tx_power_dbm=23.0,
        tx_gain_dbi=10.0,
        rx_gain_dbi=10.0,
        noise_figure_db=7.0,
        rate_cap_bps=10e9,
        max_range_m=100.0,
        setup_time_s=1e-4,
        nlos_mode=NlosMode.HARD,
    )


@pytest.fixture
def fake_svg_export(monkeypatch):
    """Replace kaleido rendering by a stub that writes a minimal SVG file."""
    written: list[Path] = []

    def write_image(self, path, format=None, **kwargs):
        Path(path).write_text("<svg xmlns='http://www.w3.org/2000/svg'/>", encoding="utf-8")
        written.append(Path(path))

    monkeypatch.setattr(go.Figure, "write_image", write_image)
    return written
