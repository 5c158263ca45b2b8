"""Trajectory kinematics: arc-length parameterized polyline motion."""
from __future__ import annotations

from dataclasses import replace
from typing import Mapping, Optional

import numpy as np

from src.scene.models import Motion, Scene, Trajectory

PERIOD_TOLERANCE_S = 1e-9


def _polyline(trajectory: Trajectory) -> np.ndarray:
    points = np.asarray(trajectory.waypoints, dtype=float)
    if trajectory.motion is Motion.LOOP:
        points = np.vstack([points, points[:1]])
    return points


def _cumulative_length(points: np.ndarray) -> np.ndarray:
    segments = np.linalg.norm(np.diff(points, axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(segments)])


def trajectory_length(trajectory: Trajectory) -> float:
    """Polyline length in meters (closed polygon for loop motion)."""
    return float(_cumulative_length(_polyline(trajectory))[-1])


def trajectory_period(trajectory: Trajectory) -> float:
    """Seconds until the pose repeats: 2L/speed back-and-forth, L/speed loop."""
    length = trajectory_length(trajectory)
    if trajectory.motion is Motion.BACK_AND_FORTH:
        return 2.0 * length / trajectory.speed_mps
    return length / trajectory.speed_mps


def poses_at(trajectory: Trajectory, times: np.ndarray) -> np.ndarray:
    """Vectorized pose: floor positions (T, 2) at the given times (T,)."""
    points = _polyline(trajectory)
    cumulative = _cumulative_length(points)
    length = cumulative[-1]

    travelled = trajectory.speed_mps * (np.asarray(times, dtype=float) + trajectory.phase_offset_s)
    if trajectory.motion is Motion.BACK_AND_FORTH:
        u = np.mod(travelled, 2.0 * length)
        u = np.where(u > length, 2.0 * length - u, u)
    else:
        u = np.mod(travelled, length)

    x = np.interp(u, cumulative, points[:, 0])
    y = np.interp(u, cumulative, points[:, 1])
    return np.stack([x, y], axis=-1)


def pose_at(trajectory: Trajectory, t: float) -> tuple[float, float]:
    """Floor position of a trajectory at time t >= 0."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    x, y = poses_at(trajectory, np.array([t]))[0]
    return (float(x), float(y))


def scene_period(scene: Scene) -> Optional[float]:
    """Common mobility period, or None when there is none (no motion / mixed periods)."""
    periods = [trajectory_period(t) for t in scene.trajectories.values()]
    if not periods:
        return None
    first = periods[0]
    if all(abs(p - first) <= PERIOD_TOLERANCE_S for p in periods):
        return first
    return None


def with_phase_offsets(scene: Scene, offsets: Mapping[str, float]) -> Scene:
    """Copy of the scene with some trajectory phase offsets replaced."""
    trajectories = {
        trajectory_id: (
            replace(trajectory, phase_offset_s=float(offsets[trajectory_id]))
            if trajectory_id in offsets
            else trajectory
        )
        for trajectory_id, trajectory in scene.trajectories.items()
    }
    return replace(scene, trajectories=trajectories)
