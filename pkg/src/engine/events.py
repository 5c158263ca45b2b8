"""Simulation events and the time-ordered event queue."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Optional

NO_DEVICE = -1


class EventKind(IntEnum):
    """Event kinds; the value is the tie-break rank at equal times.

    A tick event fires when its interval closes, so at a boundary instant the
    interval that just ended is settled before decisions taken at that instant.
    """

    CONTENT_ARRIVAL = 0
    TICK = 1
    DECISION_EPOCH = 2
    SIM_END = 3


@dataclass(frozen=True, order=True)
class Event:
    """A scheduled event. Ordering is (time, kind, device), a total order."""

    time: float
    kind: EventKind
    device: int = NO_DEVICE
    payload: Any = field(default=None, compare=False)


class EventQueue:
    """Min-heap of events popped in (time, kind, device) order."""

    def __init__(self) -> None:
        self._heap: list[Event] = []

    def push(self, event: Event) -> None:
        heapq.heappush(self._heap, event)

    def pop(self) -> Event:
        return heapq.heappop(self._heap)

    def peek(self) -> Optional[Event]:
        return self._heap[0] if self._heap else None

    def __len__(self) -> int:
        return len(self._heap)
