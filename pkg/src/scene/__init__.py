"""Factory geometry, motion and blockage queries."""
from src.scene.blockage import (
    NO_OWNER,
    box_owners,
    boxes_excluding,
    device_position,
    device_positions,
    placed_boxes_at,
    scene_state_at,
    segment_blocked,
    segments_blocked,
)
from src.scene.models import Box, DeviceSpec, Motion, Obstacle, Point3, Rect, Scene, Trajectory
from src.scene.motion import (
    pose_at,
    poses_at,
    scene_period,
    trajectory_length,
    trajectory_period,
    with_phase_offsets,
)

__all__ = [
    "NO_OWNER",
    "Box",
    "DeviceSpec",
    "Motion",
    "Obstacle",
    "Point3",
    "Rect",
    "Scene",
    "Trajectory",
    "box_owners",
    "boxes_excluding",
    "device_position",
    "device_positions",
    "placed_boxes_at",
    "pose_at",
    "poses_at",
    "scene_period",
    "scene_state_at",
    "segment_blocked",
    "segments_blocked",
    "trajectory_length",
    "trajectory_period",
    "with_phase_offsets",
]
