"""Mode selection for the three dissemination strategies.

All functions here are pure: they read a DecisionContext and return a
decision without touching simulation state.
"""
from __future__ import annotations

from typing import Iterable, Optional

from src.dissemination.models import (
    DecisionContext,
    Mode,
    ModeDecision,
    Neighbor,
    PolicyThresholds,
    StrategyKind,
)

DEFAULT_THRESHOLDS = PolicyThresholds()

# Absorbs float noise when a score difference sits exactly on delta.
_SCORE_TOLERANCE = 1e-12


def helper_score(neighbor: Neighbor) -> float:
    """Predicted LoS of the helper's own uplink, zero over an unusable D2D link."""
    if not neighbor.d2d.usable:
        return 0.0
    return neighbor.helper_prediction.p_horizon


def select_helper(neighbors: Iterable[Neighbor]) -> Optional[int]:
    """Best helper by score; ties go to the shorter D2D link, then the smaller id.

    Returns None when there is no neighbor with a positive score.
    """
    candidates = [n for n in neighbors if helper_score(n) > 0.0]
    if not candidates:
        return None
    best = min(candidates, key=lambda n: (-helper_score(n), n.d2d.distance_m, n.device_id))
    return best.device_id


def can_push(ctx: DecisionContext, thresholds: PolicyThresholds = DEFAULT_THRESHOLDS) -> bool:
    return ctx.infra.usable and ctx.infra_prediction.p_horizon >= thresholds.push


def select_mode(
    strategy: StrategyKind,
    ctx: DecisionContext,
    thresholds: PolicyThresholds = DEFAULT_THRESHOLDS,
) -> ModeDecision:
    """Choose how a waiting content proceeds.

    Direct always pushes. DirectWithStorage pushes only when the uplink is
    usable and predicted to stay in LoS, otherwise keeps the content.
    Predictive additionally hands the content to a clearly better helper
    (score advantage >= delta, usable D2D link, enough cache headroom)
    before falling back to local storage.
    """
    strategy = StrategyKind(strategy)
    own = ctx.infra_prediction.p_horizon
    scores = {"own": own}

    if strategy is StrategyKind.DIRECT:
        return ModeDecision(Mode.DIRECT_PUSH, ctx.now, scores=scores)

    if can_push(ctx, thresholds):
        return ModeDecision(Mode.DIRECT_PUSH, ctx.now, scores=scores)

    if strategy is StrategyKind.PREDICTIVE:
        eligible = [n for n in ctx.neighbors if n.headroom_bits >= ctx.content_bits]
        helper_id = select_helper(eligible)
        if helper_id is not None:
            best = next(n for n in eligible if n.device_id == helper_id)
            scores["helper"] = helper_score(best)
            if scores["helper"] - own >= thresholds.delta - _SCORE_TOLERANCE:
                return ModeDecision(
                    Mode.FORWARD_AND_PUSH, ctx.now, helper_id=helper_id, scores=scores
                )

    return ModeDecision(Mode.STORE_AND_PUSH, ctx.now, scores=scores)
