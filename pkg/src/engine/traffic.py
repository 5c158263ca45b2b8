"""Constant-bit-rate video traffic."""
from __future__ import annotations

import heapq
import itertools
from typing import Iterator, Mapping, Optional

import numpy as np

from src.dissemination.models import Content
from src.engine.config import SimConfig


def traffic_phases(config: SimConfig, rng: np.random.Generator) -> dict[int, float]:
    """First-content instant per traffic device, uniform in [0, interarrival)."""
    return {
        device_id: float(rng.uniform(0.0, config.interarrival_s))
        for device_id in config.traffic_devices
    }


def _device_arrivals(device_id: int, phase: float, config: SimConfig) -> Iterator[tuple[float, int]]:
    for k in itertools.count():
        t = phase + k * config.interarrival_s
        if t >= config.sim_duration_s:
            return
        yield (t, device_id)


def generate_traffic(
    config: SimConfig,
    rng: np.random.Generator,
    phases: Optional[Mapping[int, float]] = None,
) -> Iterator[Content]:
    """Contents of every traffic device in (created_at, device) order.

    Each device emits one content of bitrate * interarrival bits every
    interarrival seconds, starting at its phase. Content ids count up from 0
    in emission order.
    """
    if phases is None:
        phases = traffic_phases(config, rng)
    streams = [_device_arrivals(d, phases[d], config) for d in sorted(phases)]
    for content_id, (created_at, device_id) in enumerate(heapq.merge(*streams)):
        yield Content(
            content_id=content_id,
            origin_device=device_id,
            created_at=created_at,
            size_bits=config.content_bits,
            deadline_at=created_at + config.deadline_s,
        )
