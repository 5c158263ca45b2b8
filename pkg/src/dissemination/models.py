"""Content lifecycle, caches and mode-decision models."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from src.losmap.models import LosPrediction
from src.radio.models import LinkState


class ContentState(str, Enum):
    """Where a content is in its dissemination lifecycle."""

    QUEUED = "queued"
    UPLOADING = "uploading"
    FORWARDING = "forwarding"
    FORWARDED_TO = "forwarded_to"
    STORED_LOCAL = "stored_local"
    DELIVERED = "delivered"
    DROPPED = "dropped"


TERMINAL_STATES = frozenset({ContentState.DELIVERED, ContentState.DROPPED})


class DropCause(str, Enum):
    BLOCKAGE = "blockage"
    INSUFFICIENT_RATE = "insufficient_rate"


class Mode(str, Enum):
    """Data dissemination modes."""

    DIRECT_PUSH = "direct"
    STORE_AND_PUSH = "store"
    FORWARD_AND_PUSH = "forward"


class StrategyKind(str, Enum):
    """Dissemination strategies; values are the command-line names."""

    DIRECT = "direct"
    DIRECT_WITH_STORAGE = "storage"
    PREDICTIVE = "predictive"


@dataclass
class Content:
    """A generated video chunk travelling towards the edge network.

    holder is the device currently keeping the content (the origin until a
    successful D2D handoff); target is the helper during and after a handoff.
    remaining_bits counts what is left on the current hop, which cannot make
    progress before available_at.
    """

    content_id: int
    origin_device: int
    created_at: float
    size_bits: float
    deadline_at: float
    state: ContentState = ContentState.QUEUED
    holder: Optional[int] = None
    target: Optional[int] = None
    remaining_bits: Optional[float] = None
    mode: Mode = Mode.DIRECT_PUSH
    setup_remaining_s: float = 0.0
    outage_s: float = 0.0
    uploaded_bits: float = 0.0
    was_stored: bool = False
    forwarded: bool = False
    delivered_at: Optional[float] = None
    delivered_mode: Optional[Mode] = None
    drop_cause: Optional[DropCause] = None
    ready_at: float = 0.0

    def __post_init__(self) -> None:
        if self.size_bits <= 0:
            raise ValueError(f"size_bits must be > 0, got {self.size_bits}")
        if self.deadline_at <= self.created_at:
            raise ValueError(
                f"deadline_at must follow created_at, got {self.deadline_at} <= {self.created_at}"
            )
        if self.holder is None:
            self.holder = self.origin_device
        if self.remaining_bits is None:
            self.remaining_bits = self.size_bits

    @property
    def is_terminal(self) -> bool:
        return self.state in TERMINAL_STATES

    @property
    def available_at(self) -> float:
        """Earliest instant the current hop may progress (creation or handoff completion)."""
        return max(self.created_at, self.ready_at)

    @property
    def lifetime_s(self) -> float:
        return self.deadline_at - self.created_at

    @property
    def delay_s(self) -> Optional[float]:
        if self.delivered_at is None:
            return None
        return self.delivered_at - self.created_at

    @property
    def is_relayed(self) -> bool:
        return self.holder != self.origin_device


@dataclass(frozen=True)
class CacheEntry:
    content_id: int
    size_bits: float
    accepted_at: float


@dataclass
class CacheState:
    """In-device cache holding contents relayed on behalf of other devices."""

    capacity_bits: float
    entries: list[CacheEntry] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.capacity_bits < 0:
            raise ValueError(f"capacity_bits must be >= 0, got {self.capacity_bits}")

    @property
    def used_bits(self) -> float:
        return sum(entry.size_bits for entry in self.entries)

    @property
    def headroom_bits(self) -> float:
        return self.capacity_bits - self.used_bits

    def __contains__(self, content_id: object) -> bool:
        return any(entry.content_id == content_id for entry in self.entries)


@dataclass(frozen=True)
class ModeDecision:
    mode: Mode
    decided_at: float
    helper_id: Optional[int] = None
    scores: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.mode is Mode.FORWARD_AND_PUSH) != (self.helper_id is not None):
            raise ValueError("A helper is given exactly for forward-and-push decisions")
        object.__setattr__(self, "scores", dict(self.scores))


@dataclass(frozen=True)
class Neighbor:
    """One candidate helper as seen from the deciding device."""

    device_id: int
    d2d: LinkState
    helper_prediction: LosPrediction
    headroom_bits: float


@dataclass(frozen=True)
class DecisionContext:
    """Network-assistance information available to a device when it decides."""

    device_id: int
    now: float
    infra: LinkState
    infra_prediction: LosPrediction
    neighbors: tuple[Neighbor, ...] = ()
    content_bits: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "neighbors", tuple(self.neighbors))
        if any(n.device_id == self.device_id for n in self.neighbors):
            raise ValueError(f"Device {self.device_id} cannot be its own helper")


@dataclass(frozen=True)
class PolicyThresholds:
    """Decision thresholds shared by every strategy.

    Attributes:
        push: Minimum predicted LoS over the horizon to push directly
        delta: Helper advantage needed before forwarding (hysteresis)
        horizon_s: Prediction horizon
        block: Outage fraction above which a drop is blamed on blockage
        redecision_s: Re-evaluation cadence for waiting contents
    """

    push: float = 0.9
    delta: float = 0.2
    horizon_s: float = 0.05
    block: float = 0.5
    redecision_s: float = 0.005

    def __post_init__(self) -> None:
        for name in ("push", "delta", "block"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} threshold must lie within [0, 1], got {value}")
        if self.horizon_s <= 0 or self.redecision_s <= 0:
            raise ValueError("horizon_s and redecision_s must be > 0")
