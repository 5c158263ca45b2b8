"""Tests for in-device cache bookkeeping."""
import pytest

from src.dissemination import CacheState, Content, cache_insert, cache_release
from src.exceptions import DuplicateContentError

MB = 8e6


def _content(content_id: int, size_bits: float) -> Content:
    return Content(
        content_id=content_id,
        origin_device=0,
        created_at=0.5,
        size_bits=size_bits,
        deadline_at=0.6,
    )


def test_insert_into_empty_cache():
    """Test: A content smaller than the capacity is accepted."""
    cache = CacheState(capacity_bits=10 * MB)

    accepted = cache_insert(cache, _content(1, 3e6))

    assert accepted is True
    assert 1 in cache
    assert cache.used_bits == 3e6
    assert cache.entries[0].accepted_at == 0.5


def test_insert_larger_than_capacity_rejected():
    """Test: A content larger than the whole cache is rejected."""
    cache = CacheState(capacity_bits=1e6)

    assert cache_insert(cache, _content(1, 3e6)) is False
    assert cache.entries == []


def test_second_insert_rejected_when_headroom_exhausted():
    """Test: Two contents exceeding the capacity together: the second is rejected."""
    cache = CacheState(capacity_bits=5e6)

    assert cache_insert(cache, _content(1, 3e6), now=0.7) is True
    assert cache_insert(cache, _content(2, 3e6)) is False
    assert cache.headroom_bits == 2e6
    assert cache.entries[0].accepted_at == 0.7


def test_duplicate_insert_raises():
    """Test: The same content id cannot be cached twice."""
    cache = CacheState(capacity_bits=10 * MB)
    cache_insert(cache, _content(1, 3e6))

    with pytest.raises(DuplicateContentError) as exc:
        cache_insert(cache, _content(1, 3e6))
    assert exc.value.content_id == 1


def test_release_frees_headroom():
    """Test: Releasing returns the freed bits; unknown ids free nothing."""
    cache = CacheState(capacity_bits=10 * MB)
    cache_insert(cache, _content(1, 3e6))

    assert cache_release(cache, 1) == 3e6
    assert cache.headroom_bits == 10 * MB
    assert cache_release(cache, 1) == 0.0


def test_cache_capacity_non_negative():
    """Test: Negative capacity is rejected."""
    with pytest.raises(ValueError):
        CacheState(capacity_bits=-1.0)
