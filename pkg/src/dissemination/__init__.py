"""Dissemination modes, strategies, in-device caching and content progression."""
from src.dissemination.caching import cache_insert, cache_release
from src.dissemination.models import (
    TERMINAL_STATES,
    CacheEntry,
    CacheState,
    Content,
    ContentState,
    DecisionContext,
    DropCause,
    Mode,
    ModeDecision,
    Neighbor,
    PolicyThresholds,
    StrategyKind,
)
from src.dissemination.policy import can_push, helper_score, select_helper, select_mode
from src.dissemination.transfer import (
    advance_content,
    advance_handoff,
    begin_handoff,
    classify_drop,
    delivery_mode,
    outage_fraction,
)

__all__ = [
    "TERMINAL_STATES",
    "CacheEntry",
    "CacheState",
    "Content",
    "ContentState",
    "DecisionContext",
    "DropCause",
    "Mode",
    "ModeDecision",
    "Neighbor",
    "PolicyThresholds",
    "StrategyKind",
    "advance_content",
    "advance_handoff",
    "begin_handoff",
    "cache_insert",
    "cache_release",
    "can_push",
    "classify_drop",
    "delivery_mode",
    "helper_score",
    "outage_fraction",
    "select_helper",
    "select_mode",
]
