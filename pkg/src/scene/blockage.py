"""Placed boxes and exact segment/box blockage queries.

Box arrays use the column layout (x_min, y_min, x_max, y_max, height).
Order is always: scene obstacles in declaration order, then device bodies.
"""
from __future__ import annotations

from typing import Mapping, Optional, Sequence, Union

import numpy as np

from src.scene.models import Box, Point3, Scene
from src.scene.motion import poses_at

NO_OWNER = -1

BoxesLike = Union[Sequence[Box], np.ndarray]


def box_owners(scene: Scene) -> np.ndarray:
    """Owner device id per placed box (B,), NO_OWNER for obstacles."""
    owners = [NO_OWNER] * len(scene.obstacles) + [d.device_id for d in scene.devices]
    return np.asarray(owners, dtype=np.int64)


def placed_boxes_at(
    scene: Scene,
    times: Union[np.ndarray, Mapping[str, np.ndarray]],
) -> np.ndarray:
    """All placed boxes at each sample: (T, B, 5).

    times is either one (T,) array shared by every trajectory, or a mapping
    trajectory_id -> (T,) array giving each trajectory its own clock (used to
    sample blocker configurations with independent phases).
    """
    if isinstance(times, Mapping):
        per_trajectory = {k: np.atleast_1d(np.asarray(v, dtype=float)) for k, v in times.items()}
        n_samples = next(iter(per_trajectory.values())).shape[0] if per_trajectory else 1
    else:
        shared = np.atleast_1d(np.asarray(times, dtype=float))
        per_trajectory = {k: shared for k in scene.trajectories}
        n_samples = shared.shape[0]
    n_boxes = len(scene.obstacles) + len(scene.devices)
    boxes = np.empty((n_samples, n_boxes, 5), dtype=float)

    index = 0
    for obstacle in scene.obstacles:
        fp = obstacle.footprint
        if obstacle.is_mobile:
            centers = poses_at(
                scene.trajectories[obstacle.trajectory_id], per_trajectory[obstacle.trajectory_id]
            )
            _fill_centered(boxes[:, index], centers, fp.width, fp.depth, obstacle.height_m)
        else:
            boxes[:, index] = (fp.x_min, fp.y_min, fp.x_max, fp.y_max, obstacle.height_m)
        index += 1

    for device in scene.devices:
        centers = poses_at(scene.trajectories[device.trajectory_id], per_trajectory[device.trajectory_id])
        _fill_centered(
            boxes[:, index],
            centers,
            device.blocker_width_m,
            device.blocker_depth_m,
            device.blocker_height_m,
        )
        index += 1

    return boxes


def _fill_centered(out: np.ndarray, centers: np.ndarray, width: float, depth: float, height: float) -> None:
    out[:, 0] = centers[:, 0] - width / 2.0
    out[:, 1] = centers[:, 1] - depth / 2.0
    out[:, 2] = centers[:, 0] + width / 2.0
    out[:, 3] = centers[:, 1] + depth / 2.0
    out[:, 4] = height


def scene_state_at(scene: Scene, t: float) -> list[Box]:
    """Placed 3D boxes (static, mobile obstacles and device bodies) at time t."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    rows = placed_boxes_at(scene, np.array([t]))[0]
    owners = box_owners(scene)
    return [
        Box(*map(float, row), owner=None if owner == NO_OWNER else int(owner))
        for row, owner in zip(rows, owners)
    ]


def device_positions(scene: Scene, times: np.ndarray) -> np.ndarray:
    """Antenna positions of every device at each time: (T, N, 3)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    out = np.empty((times.shape[0], len(scene.devices), 3), dtype=float)
    for column, device in enumerate(scene.devices):
        out[:, column, :2] = poses_at(scene.trajectories[device.trajectory_id], times)
        out[:, column, 2] = device.antenna_height_m
    return out


def device_position(scene: Scene, device_id: int, t: float) -> Point3:
    device = scene.device(device_id)
    x, y = poses_at(scene.trajectories[device.trajectory_id], np.array([t]))[0]
    return Point3(float(x), float(y), device.antenna_height_m)


def segments_blocked(
    boxes: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
    active: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Vectorized slab test of open segments (a, b) against open box interiors.

    Args:
        boxes: (..., B, 5) box rows, broadcastable against the segment shape
        a, b: (..., 3) segment endpoints
        active: optional (..., B) mask; boxes with False never block

    Returns:
        (...) boolean array, True where the segment crosses a box interior.
        Touching a face (for example z exactly at the box top) is not a hit.
    """
    boxes = np.asarray(boxes, dtype=float)
    a = np.asarray(a, dtype=float)[..., None, :]
    b = np.asarray(b, dtype=float)[..., None, :]
    direction = b - a

    lower = np.stack(
        [boxes[..., 0], boxes[..., 1], np.zeros(boxes.shape[:-1])], axis=-1
    )
    upper = np.stack([boxes[..., 2], boxes[..., 3], boxes[..., 4]], axis=-1)

    with np.errstate(divide="ignore", invalid="ignore"):
        t0 = (lower - a) / direction
        t1 = (upper - a) / direction
    s_low = np.minimum(t0, t1)
    s_high = np.maximum(t0, t1)

    # Axis-parallel segments: the slab is either all-pass or empty.
    parallel = direction == 0.0
    inside = (a > lower) & (a < upper)
    s_low = np.where(parallel, np.where(inside, -np.inf, np.inf), s_low)
    s_high = np.where(parallel, np.where(inside, np.inf, -np.inf), s_high)

    enter = np.maximum(s_low.max(axis=-1), 0.0)
    leave = np.minimum(s_high.min(axis=-1), 1.0)
    hit = enter < leave
    if active is not None:
        hit = hit & np.asarray(active, dtype=bool)
    return hit.any(axis=-1)


def _as_box_array(boxes: BoxesLike) -> np.ndarray:
    if isinstance(boxes, np.ndarray):
        return boxes.reshape(-1, 5)
    if len(boxes) == 0:
        return np.empty((0, 5), dtype=float)
    return np.asarray([box.as_row() for box in boxes], dtype=float)


def segment_blocked(boxes: BoxesLike, a: Point3, b: Point3) -> bool:
    """True iff the open segment (a, b) crosses the interior of any box.

    The caller removes the endpoints' own blocker boxes beforehand.
    """
    if a == b:
        raise ValueError("Segment endpoints coincide")
    array = _as_box_array(boxes)
    if array.shape[0] == 0:
        return False
    return bool(segments_blocked(array, a.as_array(), b.as_array()))


def boxes_excluding(boxes: Sequence[Box], *owners: int) -> list[Box]:
    """Drop the bodies of the given devices from a placed-box list."""
    skip = set(owners)
    return [box for box in boxes if box.owner is None or box.owner not in skip]
