"""
Leray numbers by exhaustive induced-subcomplex homology.

Subsets U are visited by descending size. A subset is skipped when K[U] is a
cone or when dim(K[U]) is too small to carry homology that would change the
answer. Vertices in no face never change K[U], so only K.vertices is swept.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from complex_core import SimplicialComplex, induced, is_cone
from config import get_setting
from errors import GuardRailError, InputError
from homology_engine import betti_numbers
from logger import debug
from utils import format_mask, log_timing, popcount, submasks_of_size


def check_vertex_cap(K: SimplicialComplex, force: bool = False):
    """
    Refuse sweeps above the configured vertex cap unless forced.

    Raises:
        GuardRailError: more vertices than leray_vertex_cap and force is off
    """
    cap = get_setting('leray_vertex_cap', 14)
    n = popcount(K.vertices)
    if n > cap and not force:
        raise GuardRailError(f"Leray sweep over {n} vertices exceeds the cap of {cap}; use --force")


def _first_homology_at_least(K: SimplicialComplex, U: int, floor: int) -> Optional[int]:
    """Smallest i >= floor with non-zero reduced homology of K[U], if any"""
    sub = induced(K, U)
    if sub.dim < floor or is_cone(sub) is not None:
        return None
    betti = betti_numbers(sub)
    for i in betti.nonzero_dimensions():
        if i >= floor:
            return i
    return None


def _top_homology(K: SimplicialComplex, U: int) -> int:
    """Largest i >= 0 with non-zero reduced homology of K[U], or -1"""
    sub = induced(K, U)
    if sub.dim < 0 or is_cone(sub) is not None:
        return -1
    top = betti_numbers(sub).top()
    return top if top is not None and top >= 0 else -1


@log_timing("Leray decision sweep")
def is_d_leray(K: SimplicialComplex, d: int, force: bool = False) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """
    Decide whether every induced subcomplex has vanishing homology in dimensions >= d.

    Returns:
        tuple: (verdict, witness) with witness (U, i) such that the reduced
        homology of K[U] in dimension i >= d is non-zero, else None
    """
    if K.is_void:
        raise InputError("is_d_leray is undefined for the void complex")
    if d < 0:
        raise InputError("d must be non-negative")
    check_vertex_cap(K, force)
    vertices = K.vertices
    for size in range(popcount(vertices), d, -1):
        for U in submasks_of_size(vertices, size):
            i = _first_homology_at_least(K, U, d)
            if i is not None:
                debug("Leray witness U=%s i=%d for d=%d", format_mask(U), i, d)
                return False, (U, i)
    return True, None


def _sweep_chunk(K: SimplicialComplex, subsets: Sequence[int], floor: int) -> Tuple[int, Optional[int]]:
    """Best (top dimension, U) found in one chunk, skipping dims below floor"""
    best, best_u = floor - 1, None
    for U in subsets:
        if popcount(U) - 1 <= best:
            continue
        top = _top_homology(K, U)
        if top > best:
            best, best_u = top, U
    return best, best_u


def leray_witness(K: SimplicialComplex, force: bool = False,
                  workers: Optional[int] = None) -> Tuple[int, Optional[int]]:
    """
    Leray number with a subset realizing it.

    Returns:
        tuple: (L, U) where U is None when L == 0, else the reduced homology
        of K[U] is non-zero in dimension L - 1
    """
    if K.is_void:
        raise InputError("leray_number is undefined for the void complex")
    check_vertex_cap(K, force)
    # Opt-in; rank work holds the GIL, so the pool bounds concurrency without adding throughput
    workers = workers or get_setting('leray_workers', 1)
    vertices = K.vertices
    best, best_u = -1, None
    for size in range(popcount(vertices), 0, -1):
        # K[U] with |U| = size has dimension below size
        if size - 1 <= best:
            break
        level: List[int] = list(submasks_of_size(vertices, size))
        if workers > 1 and len(level) > workers:
            chunks = [level[i::workers] for i in range(workers)]
            with ThreadPoolExecutor(max_workers=workers) as executor:
                results = list(executor.map(lambda c: _sweep_chunk(K, c, best + 1), chunks))
        else:
            results = [_sweep_chunk(K, level, best + 1)]
        for top, U in results:
            if U is not None and (top > best or (top == best and best_u is not None and U < best_u)):
                best, best_u = top, U
    debug("Leray number %d (witness %s)", best + 1, format_mask(best_u or 0))
    return best + 1, best_u


@log_timing("Leray number sweep")
def leray_number(K: SimplicialComplex, force: bool = False, workers: Optional[int] = None) -> int:
    """Least d such that K is d-Leray; homology in dimension -1 never counts"""
    return leray_witness(K, force=force, workers=workers)[0]
