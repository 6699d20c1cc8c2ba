"""
Bound functions and hypergraph covering machinery.

h(t, d): Leray bound for t-tolerance complexes of d-collapsible complexes.
eta(r, t): largest vertex count of an r-uniform t-critical hypergraph.
"""
import itertools
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from complex_core import SimplicialComplex
from config import get_setting
from errors import GuardRailError, InputError
from logger import debug
from utils import format_mask, full_mask, ids_from_mask, log_timing, mask_from_ids, popcount, submasks_of_size


class Hypergraph:
    """
    r-uniform hypergraph on vertices 0..n-1.

    Attributes:
        n: Vertex count
        edges: Edges as bitmasks, ascending, without duplicates
        r: Common edge size (None for the edgeless hypergraph unless given)
    """

    __slots__ = ('n', 'edges', 'r')

    def __init__(self, n: int, edges: Iterable[int], r: Optional[int] = None):
        if n < 0 or n > 64:
            raise InputError("hypergraph vertex count must lie in 0..64")
        edges = tuple(sorted(set(int(e) for e in edges)))
        sizes = {popcount(e) for e in edges}
        if len(sizes) > 1:
            raise InputError(f"hypergraph is not uniform: edge sizes {sorted(sizes)}")
        if sizes:
            size = sizes.pop()
            if r is not None and r != size:
                raise InputError(f"edges have size {size}, expected {r}")
            r = size
        for e in edges:
            if e == 0 or e & ~full_mask(n):
                raise InputError(f"edge {format_mask(e)} is empty or outside 0..{n - 1}")
        self.n = n
        self.edges = edges
        self.r = r

    @property
    def covered(self) -> int:
        """Vertices lying in some edge"""
        mask = 0
        for e in self.edges:
            mask |= e
        return mask

    def without_edge(self, edge: int) -> 'Hypergraph':
        return Hypergraph(self.n, [e for e in self.edges if e != edge], self.r)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.edges, self.r) == (other.n, other.edges, other.r)

    def __hash__(self):
        return hash((self.n, self.edges, self.r))

    def __repr__(self):
        return f"Hypergraph(n={self.n}, r={self.r}, edges=[{', '.join(format_mask(e) for e in self.edges)}])"


# ----------------------------------------------------------------------
# Bound functions
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _h(t: int, d: int) -> int:
    if t == 0:
        return d
    return sum(comb(d, s) * (_h(t - s, d) + 1) for s in range(1, min(t, d) + 1)) + d


def h_value(t: int, d: int) -> int:
    """
    h(0, d) = d and, for t > 0, h(t, d) = sum over 1 <= s <= min(t, d) of C(d, s)(h(t-s, d) + 1), plus d.

    Raises:
        InputError: negative t or d
    """
    if t < 0 or d < 0:
        raise InputError("h(t, d) needs t, d >= 0")
    return _h(t, d)


def h_table(t_max: int, d_max: int) -> Dict[Tuple[int, int], int]:
    """All h(t, d) for 0 <= t <= t_max, 0 <= d <= d_max"""
    return {(t, d): h_value(t, d) for t in range(t_max + 1) for d in range(d_max + 1)}


def _check_rt(r: int, t: int):
    if r < 2 or t < 1:
        raise InputError("eta(r, t) needs r >= 2 and t >= 1")


def eta_closed(r: int, t: int) -> Optional[int]:
    """
    Closed forms: eta(2, t) = 2t, eta(r, 2) = floor(((r + 2) / 2)^2), eta(r, 1) = r.

    Returns None where no closed form is known.
    """
    _check_rt(r, t)
    if r == 2:
        return 2 * t
    if t == 2:
        return (r + 2) ** 2 // 4
    if t == 1:
        return r
    return None


def tuza_upper(r: int, t: int) -> int:
    """Exclusive upper bound: eta(r, t) < C(r+t-1, r-1) + C(r+t-2, r-1)"""
    _check_rt(r, t)
    return comb(r + t - 1, r - 1) + comb(r + t - 2, r - 1)


def max_critical_edges(r: int, t: int) -> int:
    """A t-critical r-uniform hypergraph has at most C(r+t-1, r) edges"""
    _check_rt(r, t)
    return comb(r + t - 1, r)


# ----------------------------------------------------------------------
# Covering numbers and criticality
# ----------------------------------------------------------------------

def _covers(cover: int, edges: Sequence[int]) -> bool:
    return all(cover & e for e in edges)


def covering_number(H: Hypergraph) -> int:
    """Smallest vertex set meeting every edge, found by increasing size"""
    if not H.edges:
        return 0
    pool = H.covered
    for size in range(1, popcount(pool) + 1):
        for cover in submasks_of_size(pool, size):
            if _covers(cover, H.edges):
                return size
    # unreachable: pool itself meets every edge
    return popcount(pool)


def minimum_cover(H: Hypergraph) -> int:
    """A smallest cover (lowest in lexicographic id order)"""
    if not H.edges:
        return 0
    pool = H.covered
    for size in range(1, popcount(pool) + 1):
        for cover in submasks_of_size(pool, size):
            if _covers(cover, H.edges):
                return cover
    return pool


def is_t_critical(H: Hypergraph, t: int) -> bool:
    """tau(H) == t and deleting any edge lowers the covering number"""
    if t < 0:
        raise InputError("t must be non-negative")
    if covering_number(H) != t:
        return False
    return all(covering_number(H.without_edge(e)) < t for e in H.edges)


def _critical_by_small_sets(edges: Sequence[int], pool: int, t: int) -> bool:
    """
    Fast criticality test for a non-empty edge set.

    No (t-1)-subset may cover every edge, and every edge must be the only
    edge missed by some (t-1)-subset; together these give tau = t with every
    deletion dropping it.
    """
    sole_misses = set()
    for small in submasks_of_size(pool, t - 1):
        missed = [e for e in edges if not small & e]
        if not missed:
            return False
        if len(missed) == 1:
            sole_misses.add(missed[0])
    return len(sole_misses) == len(edges)


@log_timing("eta brute force")
def eta_bruteforce(r: int, t: int, n_max: int) -> int:
    """
    Largest n <= n_max carrying an r-uniform t-critical hypergraph with no isolated vertex.

    The search fixes the edge {0, .., r-1} up to symmetry and tries edge sets
    of size ceil(n / r) through C(r+t-1, r).

    Raises:
        GuardRailError: (r, t, n_max) outside the configured guard rails
    """
    _check_rt(r, t)
    rails = get_setting('eta_guard_rails', {}) or {}
    if r > rails.get('r_max', 2) or t > rails.get('t_max', 3) or n_max > rails.get('n_max', 8):
        raise GuardRailError(f"eta brute force refused for r={r}, t={t}, n_max={n_max}")
    edge_cap = max_critical_edges(r, t)
    for n in range(n_max, r - 1, -1):
        if _critical_exists(r, t, n, edge_cap):
            debug("eta(%d,%d) brute force: %d", r, t, n)
            return n
    return 0


def _critical_exists(r: int, t: int, n: int, edge_cap: int) -> bool:
    vertices = full_mask(n)
    first = full_mask(r)
    others = [e for e in submasks_of_size(vertices, r) if e != first]
    lowest = -(-n // r)
    for size in range(max(lowest, 1), edge_cap + 1):
        for rest in itertools.combinations(others, size - 1):
            edges = (first,) + rest
            covered = 0
            for e in edges:
                covered |= e
            if covered != vertices:
                continue
            if _critical_by_small_sets(edges, vertices, t):
                return True
    return False


def colorful_obstruction_hypergraph(nerve: SimplicialComplex, classes: Sequence[int]) -> Hypergraph:
    """
    Colorful transversals (one member per class) that are not faces of the nerve.

    Members are the nerve's vertex ids; the result is |classes|-uniform.
    """
    if not classes:
        raise InputError("at least one color class is needed")
    n = nerve.ambient.bit_length()
    edges = []
    for choice in itertools.product(*(ids_from_mask(c) for c in classes)):
        edge = mask_from_ids(choice)
        if not nerve.contains(edge):
            edges.append(edge)
    return Hypergraph(n, edges, len(classes))


def hypergraph_from_edges(edges: Iterable[Iterable[int]], n: Optional[int] = None) -> Hypergraph:
    """Build a hypergraph from vertex-id lists (n defaults to max id + 1)"""
    masks = [mask_from_ids(e) for e in edges]
    if n is None:
        n = max((m.bit_length() for m in masks), default=0)
    return Hypergraph(n, masks)


def critical_examples(r: int, t: int, n: int) -> List[Hypergraph]:
    """Hand-checkable t-critical graphs used by the bounds suite"""
    if r != 2:
        return []
    # t disjoint edges: tau = t on 2t vertices
    matching = Hypergraph(2 * t, [mask_from_ids((2 * i, 2 * i + 1)) for i in range(t)], 2)
    examples = [matching] if 2 * t <= n else []
    # odd cycle on 2t - 1 vertices has tau = t
    if t >= 2 and 2 * t - 1 <= n:
        m = 2 * t - 1
        examples.append(Hypergraph(m, [mask_from_ids((i, (i + 1) % m)) for i in range(m)], 2))
    return examples
