"""Per-content progress over one time window: uploads, D2D handoffs, deadlines."""
from __future__ import annotations

from typing import Optional

from src.dissemination.models import Content, ContentState, DropCause, Mode

DEFAULT_BLOCK_THRESHOLD = 0.5

# Comparison slack for completion instants that land on a window boundary.
_TIME_EPS_S = 1e-12

_UPLOAD_READY = frozenset(
    {ContentState.QUEUED, ContentState.STORED_LOCAL, ContentState.FORWARDED_TO}
)


def outage_fraction(content: Content) -> float:
    return min(1.0, content.outage_s / content.lifetime_s)


def classify_drop(content: Content, threshold: float = DEFAULT_BLOCK_THRESHOLD) -> DropCause:
    """Blame blockage when the serving link was out for more than `threshold` of the lifetime."""
    if outage_fraction(content) > threshold:
        return DropCause.BLOCKAGE
    return DropCause.INSUFFICIENT_RATE


def delivery_mode(content: Content) -> Mode:
    if content.forwarded:
        return Mode.FORWARD_AND_PUSH
    if content.was_stored:
        return Mode.STORE_AND_PUSH
    return Mode.DIRECT_PUSH


def _window(content: Content, now: float, elapsed: float) -> tuple[float, float]:
    """Start and length of the part of [now, now + elapsed) the content lives in."""
    if elapsed < 0:
        raise ValueError(f"elapsed must be >= 0, got {elapsed}")
    start = max(now, content.available_at)
    return start, max(0.0, min(elapsed - (start - now), content.deadline_at - start))


def _expire_if_due(content: Content, now: float, elapsed: float, threshold: float) -> None:
    if now + elapsed >= content.deadline_at - _TIME_EPS_S:
        content.state = ContentState.DROPPED
        content.drop_cause = classify_drop(content, threshold)


def advance_content(
    content: Content,
    now: float,
    elapsed: float,
    rate_bps: float,
    in_outage: Optional[bool] = None,
    block_threshold: float = DEFAULT_BLOCK_THRESHOLD,
) -> Content:
    """Advance a content over [now, now + elapsed) at the given uplink rate.

    A positive rate moves a waiting content into Uploading; reaching zero
    remaining bits delivers it at the exact completion instant. The window
    opens no earlier than content.available_at and is cut at the deadline,
    where an undelivered content is dropped with the cause from classify_drop.
    in_outage defaults to "rate is zero".

    The content is updated in place and returned.
    """
    if content.is_terminal:
        raise ValueError(f"Content {content.content_id} is already {content.state.value}")
    if content.state is ContentState.FORWARDING:
        raise ValueError(f"Content {content.content_id} is in a D2D handoff; use advance_handoff")
    if rate_bps < 0:
        raise ValueError(f"rate_bps must be >= 0, got {rate_bps}")

    outage = rate_bps <= 0 if in_outage is None else in_outage
    start, window = _window(content, now, elapsed)

    # A residue too small to move the clock still completes.
    if rate_bps > 0 and (window > 0 or content.remaining_bits <= rate_bps * _TIME_EPS_S):
        if content.state in _UPLOAD_READY:
            content.state = ContentState.UPLOADING
        need = content.remaining_bits / rate_bps
        if need <= window + _TIME_EPS_S:
            content.outage_s += need if outage else 0.0
            content.uploaded_bits += content.remaining_bits
            content.remaining_bits = 0.0
            content.state = ContentState.DELIVERED
            content.delivered_at = min(start + need, content.deadline_at)
            content.delivered_mode = delivery_mode(content)
            return content
        sent = rate_bps * window
        content.remaining_bits = max(0.0, content.remaining_bits - sent)
        content.uploaded_bits += sent

    if outage:
        content.outage_s += window
    _expire_if_due(content, now, elapsed, block_threshold)
    return content


def advance_handoff(
    content: Content,
    now: float,
    elapsed: float,
    rate_bps: float,
    usable: bool,
    in_outage: Optional[bool] = None,
    block_threshold: float = DEFAULT_BLOCK_THRESHOLD,
) -> Content:
    """Advance a D2D handoff over [now, now + elapsed).

    The link setup time is consumed first, then the content streams at
    rate_bps. On completion the helper becomes the holder with the full
    content left to upload, from the completion instant on. An unusable D2D
    link aborts the handoff without consuming the window: the content goes
    back to local storage at the origin. The content is updated in place and returned.
    """
    if content.state is not ContentState.FORWARDING or content.target is None:
        raise ValueError(f"Content {content.content_id} is not in a D2D handoff")

    if not usable or rate_bps <= 0:
        content.state = ContentState.STORED_LOCAL
        content.mode = Mode.STORE_AND_PUSH
        content.was_stored = True
        content.target = None
        content.setup_remaining_s = 0.0
        content.remaining_bits = content.size_bits
        return content

    outage = False if in_outage is None else in_outage
    start, window = _window(content, now, elapsed)

    setup = min(content.setup_remaining_s, window)
    content.setup_remaining_s -= setup
    available = window - setup

    if content.setup_remaining_s <= _TIME_EPS_S and available > 0:
        content.setup_remaining_s = 0.0
        need = content.remaining_bits / rate_bps
        if need <= available + _TIME_EPS_S:
            content.outage_s += (setup + need) if outage else 0.0
            content.state = ContentState.FORWARDED_TO
            content.holder = content.target
            content.ready_at = start + setup + need
            content.forwarded = True
            content.mode = Mode.DIRECT_PUSH
            content.remaining_bits = content.size_bits
            return content
        content.remaining_bits = max(0.0, content.remaining_bits - rate_bps * available)

    if outage:
        content.outage_s += window
    _expire_if_due(content, now, elapsed, block_threshold)
    return content


def begin_handoff(content: Content, helper_id: int, setup_time_s: float) -> Content:
    """Start a D2D handoff of a locally held content towards helper_id."""
    if content.is_relayed:
        raise ValueError(f"Content {content.content_id} was already relayed")
    if helper_id == content.origin_device:
        raise ValueError("A content cannot be handed off to its own origin")
    content.state = ContentState.FORWARDING
    content.mode = Mode.FORWARD_AND_PUSH
    content.target = helper_id
    content.setup_remaining_s = setup_time_s
    content.remaining_bits = content.size_bits
    content.uploaded_bits = 0.0
    return content
