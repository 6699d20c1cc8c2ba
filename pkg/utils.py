"""
Bitmask helpers and timing utilities
Vertex subsets are plain ints: bit i set <=> vertex i in the set.
"""
import time
import itertools
from functools import wraps
from typing import Iterable, Iterator, List
from logger import debug


def popcount(mask: int) -> int:
    """Number of vertices in a vertex set"""
    return mask.bit_count()


def mask_from_ids(ids: Iterable[int]) -> int:
    """Create a vertex set from vertex ids"""
    mask = 0
    for i in ids:
        mask |= 1 << int(i)
    return mask


def ids_from_mask(mask: int) -> List[int]:
    """Vertex ids of a vertex set in ascending order"""
    ids = []
    bit = 0
    while mask:
        if mask & 1:
            ids.append(bit)
        mask >>= 1
        bit += 1
    return ids


def lowest_vertex(mask: int) -> int:
    """Smallest vertex id in a non-empty vertex set"""
    return (mask & -mask).bit_length() - 1


def full_mask(n: int) -> int:
    """Vertex set {0, ..., n-1}"""
    return (1 << n) - 1


def submasks_of_size(mask: int, k: int) -> Iterator[int]:
    """All k-subsets of a vertex set, in lexicographic order of their ids"""
    if k < 0:
        return
    for combo in itertools.combinations(ids_from_mask(mask), k):
        yield mask_from_ids(combo)


def iter_submasks(mask: int) -> Iterator[int]:
    """All subsets of a vertex set, including the empty set and the set itself"""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_mask(mask: int) -> str:
    """Human readable vertex set, e.g. {0,2,3}"""
    return '{' + ','.join(str(i) for i in ids_from_mask(mask)) + '}'


def antichain(masks: Iterable[int]) -> List[int]:
    """
    Keep only the inclusion-maximal members of a family of vertex sets.

    Returns:
        list: Maximal members in ascending bitmask order, duplicates removed
    """
    unique = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept = []
    for m in unique:
        if not any(m & ~other == 0 for other in kept):
            kept.append(m)
    return sorted(kept)


def log_timing(label=None):
    """
    Decorator that logs the wall time of an expensive operation at debug level.

    Example:
        @log_timing("leray sweep")
        def leray_number(K):
            ...
    """
    def decorator(func):
        name = label or func.__name__

        @wraps(func)
        def wrapper(*args, **kwargs):
            started = time.perf_counter()
            result = func(*args, **kwargs)
            debug("%s finished in %.3fs", name, time.perf_counter() - started)
            return result

        return wrapper
    return decorator
