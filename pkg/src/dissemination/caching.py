"""In-device cache bookkeeping for relayed contents."""
from __future__ import annotations

from typing import Optional

from src.dissemination.models import CacheEntry, CacheState, Content
from src.exceptions import DuplicateContentError


def cache_insert(cache: CacheState, content: Content, now: Optional[float] = None) -> bool:
    """Reserve room for a content. Never evicts; False when it does not fit.

    Raises:
        DuplicateContentError: The cache already holds this content id
    """
    if content.content_id in cache:
        raise DuplicateContentError(content.content_id)
    if content.size_bits > cache.headroom_bits:
        return False
    accepted_at = content.created_at if now is None else now
    cache.entries.append(CacheEntry(content.content_id, content.size_bits, accepted_at))
    return True


def cache_release(cache: CacheState, content_id: int) -> float:
    """Free a content's slot; returns the bits released (0 when absent)."""
    for index, entry in enumerate(cache.entries):
        if entry.content_id == content_id:
            del cache.entries[index]
            return entry.size_bits
    return 0.0
