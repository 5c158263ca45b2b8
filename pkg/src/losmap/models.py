"""LoS map, trace and prediction models."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

# A link endpoint is the base station or a device id.
BASE_STATION = "bs"
Endpoint = Union[str, int]
LinkId = tuple[Endpoint, Endpoint]

LOS_THRESHOLD = 0.5


def infra_link(device_id: int) -> LinkId:
    return (BASE_STATION, device_id)


@dataclass(frozen=True)
class LosMap:
    """Probability of an unobstructed path from each grid cell to an anchor point.

    cells[row, col] holds the value for the cell centered at
    origin + ((col + 0.5) * grid_res, (row + 0.5) * grid_res), clipped to the floor.
    """

    grid_res: float
    plane_height: float
    origin: tuple[float, float]
    cells: np.ndarray

    def __post_init__(self) -> None:
        if self.grid_res <= 0:
            raise ValueError(f"grid_res must be > 0, got {self.grid_res}")
        cells = np.asarray(self.cells, dtype=float)
        if cells.ndim != 2:
            raise ValueError("LosMap cells must be a 2D array")
        if np.any((cells < 0.0) | (cells > 1.0)):
            raise ValueError("LosMap cells must lie within [0, 1]")
        object.__setattr__(self, "cells", cells)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape  # type: ignore[return-value]

    def value_at(self, x: float, y: float) -> float:
        """Value of the cell containing floor point (x, y)."""
        col = int(np.clip((x - self.origin[0]) // self.grid_res, 0, self.shape[1] - 1))
        row = int(np.clip((y - self.origin[1]) // self.grid_res, 0, self.shape[0] - 1))
        return float(self.cells[row, col])


@dataclass(frozen=True)
class LosTrace:
    """Time-indexed LoS probability of one link, periodic with period len(samples) * dt."""

    link_id: LinkId
    dt: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        samples = np.asarray(self.samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("LosTrace samples must be a non-empty 1D array")
        if np.any((samples < 0.0) | (samples > 1.0)):
            raise ValueError("LosTrace samples must lie within [0, 1]")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def period(self) -> float:
        return self.samples.size * self.dt

    def index_at(self, t: float) -> int:
        """Absolute (not wrapped) sample index at or before time t."""
        return int(np.floor(t / self.dt + 1e-9))

    @cached_property
    def prefix_sums(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.samples)])

    @cached_property
    def change_points(self) -> np.ndarray:
        """Indices j in [1, 2n) of the doubled state sequence where the state flips."""
        states = self.samples >= LOS_THRESHOLD
        doubled = np.concatenate([states, states])
        return np.flatnonzero(doubled[1:] != doubled[:-1]) + 1


@dataclass(frozen=True)
class LosPrediction:
    """Short-horizon LoS outlook of one link at one instant."""

    p_now: float
    p_horizon: float
    residual_los_s: float
    horizon_s: float

    def __post_init__(self) -> None:
        for name in ("p_now", "p_horizon"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie within [0, 1], got {value}")
        if self.residual_los_s < 0:
            raise ValueError(f"residual_los_s must be >= 0, got {self.residual_los_s}")

    @property
    def in_los(self) -> bool:
        return self.p_now >= LOS_THRESHOLD
