"""Probabilistic LoS maps (stage 1) and dual-mobility D2D LoS (stage 2).

A map cell value is the fraction of sampled blocker configurations in which
the straight path from the cell center to the anchor is clear. With a common
mobility period a configuration is one uniform instant of that period;
otherwise every trajectory gets its own uniform phase.
"""
from __future__ import annotations

from typing import Collection, Mapping

import numpy as np
import structlog

from src.losmap.models import LosMap
from src.scene import (
    Point3,
    Scene,
    box_owners,
    placed_boxes_at,
    poses_at,
    scene_period,
    segments_blocked,
    trajectory_period,
)

logger = structlog.get_logger(__name__)

DEFAULT_GRID_RES_M = 0.25
DEFAULT_PLANE_HEIGHT_M = 1.0
DEFAULT_SAMPLES = 1000

# Upper bound on (cells x samples) segments evaluated per vectorized batch.
_SEGMENTS_PER_BATCH = 20_000


def has_motion(scene: Scene) -> bool:
    return bool(scene.devices) or any(o.is_mobile for o in scene.obstacles)


def grid_centers(scene: Scene, grid_res: float) -> tuple[np.ndarray, np.ndarray]:
    """Cell center x (C,) and y (R,) coordinates covering the whole floor."""
    n_cols = int(np.ceil(scene.floor_w_m / grid_res - 1e-9))
    n_rows = int(np.ceil(scene.floor_d_m / grid_res - 1e-9))
    xs = np.minimum((np.arange(n_cols) + 0.5) * grid_res, scene.floor_w_m)
    ys = np.minimum((np.arange(n_rows) + 0.5) * grid_res, scene.floor_d_m)
    return xs, ys


def sample_configurations(scene: Scene, rng: np.random.Generator, n_samples: int) -> Mapping[str, np.ndarray]:
    """Per-trajectory clocks for n_samples random blocker configurations."""
    period = scene_period(scene)
    if period is not None:
        t = rng.uniform(0.0, period, n_samples)
        return {trajectory_id: t for trajectory_id in scene.trajectories}
    return {
        trajectory_id: rng.uniform(0.0, trajectory_period(trajectory), n_samples)
        for trajectory_id, trajectory in sorted(scene.trajectories.items())
    }


def build_point_los_map(
    scene: Scene,
    anchor: Point3,
    grid_res: float = DEFAULT_GRID_RES_M,
    n_samples: int = DEFAULT_SAMPLES,
    rng_seed: int = 0,
    plane_height: float = DEFAULT_PLANE_HEIGHT_M,
    exclude: Collection[int] = (),
) -> LosMap:
    """LoS probability map from every grid cell (at plane_height) to an anchor point.

    Args:
        scene: Scene to evaluate
        anchor: Far endpoint of every path (base station, or a D2D partner position)
        grid_res: Cell size in meters
        n_samples: Blocker configurations per cell
        rng_seed: Seed; cell (row, col) draws from default_rng([rng_seed, row, col])
        plane_height: Height of the grid plane
        exclude: Device ids whose bodies never block (e.g. the anchor device)
    """
    if grid_res <= 0:
        raise ValueError(f"grid_res must be > 0, got {grid_res}")
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")

    xs, ys = grid_centers(scene, grid_res)
    grid_x, grid_y = np.meshgrid(xs, ys)
    points = np.stack(
        [grid_x.ravel(), grid_y.ravel(), np.full(grid_x.size, plane_height)], axis=-1
    )
    active = ~np.isin(box_owners(scene), np.asarray(list(exclude), dtype=np.int64))
    target = anchor.as_array()

    if not has_motion(scene):
        # Nothing moves: one exact evaluation is the probability.
        boxes = placed_boxes_at(scene, np.array([0.0]))[0]
        blocked = segments_blocked(boxes, points, target, active)
        cells = 1.0 - blocked.astype(float)
    else:
        cells = np.empty(points.shape[0], dtype=float)
        n_cols = xs.size
        per_batch = max(1, _SEGMENTS_PER_BATCH // n_samples)
        for start in range(0, points.shape[0], per_batch):
            indices = range(start, min(start + per_batch, points.shape[0]))
            draws = [
                sample_configurations(
                    scene, np.random.default_rng([rng_seed, i // n_cols, i % n_cols]), n_samples
                )
                for i in indices
            ]
            clocks = {
                trajectory_id: np.concatenate([d[trajectory_id] for d in draws])
                for trajectory_id in scene.trajectories
            }
            boxes = placed_boxes_at(scene, clocks).reshape(len(indices), n_samples, -1, 5)
            blocked = segments_blocked(boxes, points[start:start + len(indices), None, :], target, active)
            cells[start:start + len(indices)] = 1.0 - blocked.mean(axis=1)

    logger.debug(
        "losmap_built",
        rows=ys.size,
        cols=xs.size,
        n_samples=n_samples,
        mean_p=float(cells.mean()),
    )
    return LosMap(
        grid_res=grid_res,
        plane_height=plane_height,
        origin=(0.0, 0.0),
        cells=cells.reshape(ys.size, xs.size),
    )


def build_infra_los_map(
    scene: Scene,
    grid_res: float = DEFAULT_GRID_RES_M,
    n_samples: int = DEFAULT_SAMPLES,
    rng_seed: int = 0,
    plane_height: float = DEFAULT_PLANE_HEIGHT_M,
) -> LosMap:
    """LoS probability map towards the base station."""
    return build_point_los_map(
        scene,
        scene.base_station,
        grid_res=grid_res,
        n_samples=n_samples,
        rng_seed=rng_seed,
        plane_height=plane_height,
    )


def _box_trajectory(scene: Scene, box_index: int):
    n_obstacles = len(scene.obstacles)
    if box_index < n_obstacles:
        trajectory_id = scene.obstacles[box_index].trajectory_id
    else:
        trajectory_id = scene.devices[box_index - n_obstacles].trajectory_id
    return None if trajectory_id is None else scene.trajectories[trajectory_id]


def box_clear_probability(
    scene: Scene,
    box_index: int,
    a: Point3,
    b: Point3,
    n_samples: int = DEFAULT_SAMPLES,
    rng_seed: int = 0,
) -> float:
    """Marginal probability that placed box `box_index` alone leaves (a, b) clear."""
    rows = placed_boxes_at(scene, np.array([0.0]))[0, box_index:box_index + 1]
    trajectory = _box_trajectory(scene, box_index)
    if trajectory is None:
        return float(not segments_blocked(rows, a.as_array(), b.as_array()))

    rng = np.random.default_rng([rng_seed, box_index])
    clocks = rng.uniform(0.0, trajectory_period(trajectory), n_samples)
    width = rows[0, 2] - rows[0, 0]
    depth = rows[0, 3] - rows[0, 1]
    centers = poses_at(trajectory, clocks)
    sampled = np.empty((n_samples, 1, 5), dtype=float)
    sampled[:, 0, 0] = centers[:, 0] - width / 2.0
    sampled[:, 0, 1] = centers[:, 1] - depth / 2.0
    sampled[:, 0, 2] = centers[:, 0] + width / 2.0
    sampled[:, 0, 3] = centers[:, 1] + depth / 2.0
    sampled[:, 0, 4] = rows[0, 4]
    blocked = segments_blocked(sampled, a.as_array(), b.as_array())
    return float(1.0 - blocked.mean())


def los_probability_d2d(
    scene: Scene,
    a: Point3,
    b: Point3,
    rng_seed: int = 0,
    n_samples: int = DEFAULT_SAMPLES,
    exclude: Collection[int] = (),
) -> float:
    """LoS probability between two points as the product of per-object marginals.

    Blockers are assumed independent; static obstacles contribute a 0/1
    indicator. Bodies of the devices in `exclude` (the endpoints) are ignored.
    """
    if a == b:
        raise ValueError("Segment endpoints coincide")

    owners = box_owners(scene)
    static_rows = [
        i for i, obstacle in enumerate(scene.obstacles) if not obstacle.is_mobile
    ]
    if static_rows:
        boxes = placed_boxes_at(scene, np.array([0.0]))[0, static_rows]
        if segments_blocked(boxes, a.as_array(), b.as_array()):
            return 0.0

    probability = 1.0
    skip = set(exclude)
    for box_index, owner in enumerate(owners):
        if box_index in static_rows or int(owner) in skip:
            continue
        probability *= box_clear_probability(scene, box_index, a, b, n_samples, rng_seed)
    return probability
