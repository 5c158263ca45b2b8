"""Geometry models for the factory floor.

Coordinates are meters in a right-handed frame: floor plane z=0, origin at the
south-west floor corner, x along the long (south) wall, y towards north.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

import numpy as np

from src.exceptions import InvalidSceneError


def _require_finite(name: str, *values: float) -> None:
    if not all(math.isfinite(v) for v in values):
        raise InvalidSceneError(f"{name} must be finite, got {values}")


@dataclass(frozen=True)
class Point3:
    """A point in world coordinates (meters)."""

    x: float
    y: float
    z: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("Point3", self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def distance_to(self, other: Point3) -> float:
        return math.dist((self.x, self.y, self.z), (other.x, other.y, other.z))


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in floor coordinates (meters)."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def __post_init__(self) -> None:
        _require_finite("Rect", self.x_min, self.y_min, self.x_max, self.y_max)
        if self.x_max <= self.x_min or self.y_max <= self.y_min:
            raise InvalidSceneError(
                f"Rect needs positive width and depth, got {self}"
            )

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def depth(self) -> float:
        return self.y_max - self.y_min

    @property
    def center(self) -> tuple[float, float]:
        return ((self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0)

    @classmethod
    def from_center(cls, cx: float, cy: float, width: float, depth: float) -> Rect:
        return cls(cx - width / 2.0, cy - depth / 2.0, cx + width / 2.0, cy + depth / 2.0)

    def centered_at(self, cx: float, cy: float) -> Rect:
        return Rect.from_center(cx, cy, self.width, self.depth)

    def within(self, other: Rect) -> bool:
        return (
            self.x_min >= other.x_min
            and self.y_min >= other.y_min
            and self.x_max <= other.x_max
            and self.y_max <= other.y_max
        )


class Motion(str, Enum):
    """How a trajectory continues past its last waypoint."""

    BACK_AND_FORTH = "back-and-forth"
    LOOP = "loop"


@dataclass(frozen=True)
class Trajectory:
    """Piecewise-linear constant-speed motion along a polyline.

    Loop trajectories are closed: the last waypoint connects back to the first.
    """

    waypoints: tuple[tuple[float, float], ...]
    speed_mps: float
    motion: Motion = Motion.BACK_AND_FORTH
    phase_offset_s: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "waypoints", tuple((float(x), float(y)) for x, y in self.waypoints)
        )
        object.__setattr__(self, "motion", Motion(self.motion))
        if len(self.waypoints) < 2:
            raise InvalidSceneError("Trajectory needs at least 2 waypoints")
        _require_finite("Trajectory waypoints", *(c for p in self.waypoints for c in p))
        _require_finite("Trajectory speed/phase", self.speed_mps, self.phase_offset_s)
        if self.speed_mps <= 0:
            raise InvalidSceneError(f"Trajectory speed must be > 0, got {self.speed_mps}")

        points = list(self.waypoints)
        if self.motion is Motion.LOOP:
            points.append(points[0])
        for p, q in zip(points, points[1:]):
            if p == q:
                raise InvalidSceneError(f"Consecutive waypoints coincide at {p}")


@dataclass(frozen=True)
class Obstacle:
    """An extruded box {footprint x (0, height)}.

    Static obstacles use the footprint as placed. Mobile obstacles only take
    their width and depth from it; the box is centered on the trajectory pose.
    """

    footprint: Rect
    height_m: float
    trajectory_id: Optional[str] = None

    def __post_init__(self) -> None:
        _require_finite("Obstacle height", self.height_m)
        if self.height_m <= 0:
            raise InvalidSceneError(f"Obstacle height must be > 0, got {self.height_m}")

    @property
    def is_mobile(self) -> bool:
        return self.trajectory_id is not None


@dataclass(frozen=True)
class DeviceSpec:
    """A moving IoT machine: radio antenna plus its own blocker body."""

    device_id: int
    trajectory_id: str
    antenna_height_m: float = 1.0
    blocker_width_m: float = 0.5
    blocker_depth_m: float = 0.5
    blocker_height_m: float = 1.0

    def __post_init__(self) -> None:
        _require_finite(
            "DeviceSpec",
            self.antenna_height_m,
            self.blocker_width_m,
            self.blocker_depth_m,
            self.blocker_height_m,
        )
        if min(self.blocker_width_m, self.blocker_depth_m, self.blocker_height_m) <= 0:
            raise InvalidSceneError(f"Device {self.device_id} blocker must have positive size")
        if self.device_id < 0:
            raise InvalidSceneError(f"Device id must be >= 0, got {self.device_id}")
        if self.antenna_height_m <= 0:
            raise InvalidSceneError(f"Device {self.device_id} antenna height must be > 0")

    @property
    def footprint(self) -> Rect:
        return Rect.from_center(0.0, 0.0, self.blocker_width_m, self.blocker_depth_m)


@dataclass(frozen=True)
class Box:
    """A placed 3D box at some instant; owner is the device id for device bodies."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float
    height_m: float
    owner: Optional[int] = None

    def as_row(self) -> tuple[float, float, float, float, float]:
        return (self.x_min, self.y_min, self.x_max, self.y_max, self.height_m)


@dataclass(frozen=True)
class Scene:
    """Factory floor geometry, motion and radio endpoints."""

    floor_w_m: float
    floor_d_m: float
    base_station: Point3
    obstacles: tuple[Obstacle, ...] = ()
    trajectories: Mapping[str, Trajectory] = field(default_factory=dict)
    devices: tuple[DeviceSpec, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "obstacles", tuple(self.obstacles))
        object.__setattr__(self, "devices", tuple(self.devices))
        object.__setattr__(self, "trajectories", dict(self.trajectories))

        if self.floor_w_m <= 0 or self.floor_d_m <= 0:
            raise InvalidSceneError("Floor must have positive width and depth")
        floor = self.floor
        bs = self.base_station
        if not (0 <= bs.x <= self.floor_w_m and 0 <= bs.y <= self.floor_d_m):
            raise InvalidSceneError(f"Base station {bs} lies outside the floor")

        for index, obstacle in enumerate(self.obstacles):
            if obstacle.is_mobile:
                self._check_moving_footprint(
                    f"obstacle[{index}]", obstacle.trajectory_id, obstacle.footprint
                )
            elif not obstacle.footprint.within(floor):
                raise InvalidSceneError(f"obstacle[{index}] footprint lies outside the floor")

        seen: set[int] = set()
        for device in self.devices:
            if device.device_id in seen:
                raise InvalidSceneError(f"Duplicate device id {device.device_id}")
            seen.add(device.device_id)
            self._check_moving_footprint(
                f"device {device.device_id}", device.trajectory_id, device.footprint
            )

    def _check_moving_footprint(self, name: str, trajectory_id: Optional[str], footprint: Rect) -> None:
        if trajectory_id not in self.trajectories:
            raise InvalidSceneError(f"{name} references unknown trajectory {trajectory_id!r}")
        # The floor is convex, so checking every waypoint covers the whole path.
        for x, y in self.trajectories[trajectory_id].waypoints:
            if not footprint.centered_at(x, y).within(self.floor):
                raise InvalidSceneError(f"{name} footprint leaves the floor at waypoint ({x}, {y})")

    @property
    def floor(self) -> Rect:
        return Rect(0.0, 0.0, self.floor_w_m, self.floor_d_m)

    @property
    def device_ids(self) -> list[int]:
        return [d.device_id for d in self.devices]

    def device(self, device_id: int) -> DeviceSpec:
        for d in self.devices:
            if d.device_id == device_id:
                return d
        raise KeyError(f"Unknown device id {device_id}")
