"""
Exact geometric and combinatorial instance generators.

Boxes are axis-parallel with Fraction endpoints, so every intersection test is
exact. Boxes are pairwise Helly, so the nerve of a box family is the clique
complex of its pairwise-intersection graph.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from complex_core import SimplicialComplex
from config import get_setting
from errors import GuardRailError, InputError
from logger import debug
from utils import antichain, full_mask, ids_from_mask, iter_submasks, mask_from_ids, popcount, submasks_of_size


class Box:
    """
    A d-dimensional closed box with exact rational bounds.

    Attributes:
        lows: Lower bound per axis
        highs: Upper bound per axis
    """

    __slots__ = ('lows', 'highs')

    def __init__(self, lows: Sequence, highs: Sequence):
        if len(lows) != len(highs) or not lows:
            raise InputError("a box needs the same positive number of lower and upper bounds")
        lows = tuple(Fraction(x) for x in lows)
        highs = tuple(Fraction(x) for x in highs)
        for lo, hi in zip(lows, highs):
            if lo > hi:
                raise InputError(f"box axis has lo {lo} > hi {hi}")
        self.lows = lows
        self.highs = highs

    @classmethod
    def from_intervals(cls, intervals: Iterable[Tuple]) -> 'Box':
        """Build from per-axis (lo, hi) pairs"""
        pairs = list(intervals)
        return cls([lo for lo, _ in pairs], [hi for _, hi in pairs])

    @property
    def dimension(self) -> int:
        return len(self.lows)

    def intervals(self) -> List[Tuple[Fraction, Fraction]]:
        return list(zip(self.lows, self.highs))

    def is_intersecting(self, other: 'Box') -> bool:
        """Closed boxes meet iff their ranges overlap on every axis"""
        self._check_dimension(other)
        return all(a_lo <= b_hi and b_lo <= a_hi
                   for a_lo, a_hi, b_lo, b_hi in zip(self.lows, self.highs, other.lows, other.highs))

    def intersect(self, other: 'Box') -> Optional['Box']:
        """The intersecting box, or None when the boxes are disjoint"""
        if not self.is_intersecting(other):
            return None
        return Box([max(a, b) for a, b in zip(self.lows, other.lows)],
                   [min(a, b) for a, b in zip(self.highs, other.highs)])

    def contains_point(self, point: Sequence) -> bool:
        if len(point) != self.dimension:
            raise InputError("point and box dimensions differ")
        return all(lo <= Fraction(x) <= hi for lo, x, hi in zip(self.lows, point, self.highs))

    def _check_dimension(self, other: 'Box'):
        if other.dimension != self.dimension:
            raise InputError(f"box dimensions differ: {self.dimension} vs {other.dimension}")

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        return self.lows == other.lows and self.highs == other.highs

    def __hash__(self):
        return hash((self.lows, self.highs))

    def __repr__(self):
        axes = ' x '.join(f"[{lo}, {hi}]" for lo, hi in self.intervals())
        return f"Box({axes})"


class BoxFamily:
    """Boxes of one dimension with optional color labels"""

    __slots__ = ('boxes', 'colors')

    def __init__(self, boxes: Sequence[Box], colors: Optional[Sequence[int]] = None):
        boxes = list(boxes)
        if boxes and len({b.dimension for b in boxes}) > 1:
            raise InputError("all boxes of a family must have the same dimension")
        if colors is not None:
            colors = [int(c) for c in colors]
            if len(colors) != len(boxes):
                raise InputError("one color label per box is required")
        self.boxes = boxes
        self.colors = colors

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(self.boxes)

    @property
    def dimension(self) -> Optional[int]:
        return self.boxes[0].dimension if self.boxes else None

    def color_classes(self) -> List[int]:
        """Member bitmask of each color, in increasing color order"""
        if self.colors is None:
            return [full_mask(len(self.boxes))] if self.boxes else []
        classes = {}
        for i, c in enumerate(self.colors):
            classes[c] = classes.get(c, 0) | (1 << i)
        return [classes[c] for c in sorted(classes)]

    def subfamily(self, members: int) -> List[Box]:
        return [self.boxes[i] for i in ids_from_mask(members)]


def common_intersection(boxes: Sequence[Box]) -> Optional[Box]:
    """Intersection of a non-empty list of boxes, or None when it is empty"""
    if not boxes:
        raise InputError("common_intersection of an empty list")
    current = boxes[0]
    for box in boxes[1:]:
        current = current.intersect(box)
        if current is None:
            return None
    return current


def _check_family_cap(F: BoxFamily):
    cap = get_setting('box_family_cap', 20)
    if len(F) > cap:
        raise GuardRailError(f"box family of size {len(F)} exceeds the cap of {cap}")


def intersection_graph(F: BoxFamily) -> nx.Graph:
    """Graph on member ids with an edge for every intersecting pair"""
    G = nx.Graph()
    G.add_nodes_from(range(len(F)))
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            if F.boxes[i].is_intersecting(F.boxes[j]):
                G.add_edge(i, j)
    return G


def nerve_of_boxes(F: BoxFamily) -> SimplicialComplex:
    """
    Nerve on member ids 0..|F|-1 via maximal cliques of the intersection graph.

    Raises:
        GuardRailError: family larger than box_family_cap
    """
    _check_family_cap(F)
    if not len(F):
        return SimplicialComplex.empty(0)
    cliques = [mask_from_ids(c) for c in nx.find_cliques(intersection_graph(F))]
    return SimplicialComplex(full_mask(len(F)), antichain(cliques))


def nerve_by_subsets(F: BoxFamily) -> SimplicialComplex:
    """Brute-force nerve: every subfamily with a common point (cross-check)"""
    n = len(F)
    faces = [0]
    for members in iter_submasks(full_mask(n)):
        if members and common_intersection(F.subfamily(members)) is not None:
            faces.append(members)
    return SimplicialComplex(full_mask(n), antichain(faces))


def has_common_point_with_tolerance(F, t: int) -> Tuple[bool, Optional[int]]:
    """
    Search for a subfamily missing at most t members with a common point.

    Removal sets are tried by increasing size, then lexicographically. The
    empty subfamily is never consulted; an empty family is trivially fine.

    Returns:
        tuple: (found, kept member bitmask or None)
    """
    boxes = F.boxes if isinstance(F, BoxFamily) else list(F)
    if t < 0:
        raise InputError("t must be non-negative")
    n = len(boxes)
    if n == 0:
        return True, 0
    everyone = full_mask(n)
    for size in range(0, min(t, n - 1) + 1):
        for removed in submasks_of_size(everyone, size):
            kept = everyone & ~removed
            if common_intersection([boxes[i] for i in ids_from_mask(kept)]) is not None:
                return True, kept
    return False, None


def tolerant_helly_premise(F: BoxFamily, t: int, size: int) -> bool:
    """Every subfamily of min(size, |F|) members has a point in common with tolerance t"""
    n = len(F)
    k = min(size, n)
    for members in submasks_of_size(full_mask(n), k):
        if not has_common_point_with_tolerance(F.subfamily(members), t)[0]:
            return False
    return True


# ----------------------------------------------------------------------
# Generators
# ----------------------------------------------------------------------

def two_block_complex(t: int) -> SimplicialComplex:
    """Maximal faces A = {0..t} and B = {t+1..2t+1} on 2t + 2 vertices"""
    if t < 1:
        raise InputError("two_block_complex needs t >= 1")
    block = full_mask(t + 1)
    return SimplicialComplex(full_mask(2 * t + 2), [block, block << (t + 1)])


def _rng(seed, rng):
    return rng if rng is not None else np.random.default_rng(seed)


def random_complex(n: int, density: float = 0.5, seed=None, rng: Optional[np.random.Generator] = None,
                   faces: Optional[int] = None) -> SimplicialComplex:
    """
    Random complex on vertices 0..n-1.

    Draws `faces` vertex sets (default: uniform in 2..n, one set below two
    vertices), each vertex kept with probability `density`, and keeps the
    inclusion-maximal ones.
    Deterministic for a fixed seed or generator state.
    """
    cap = get_setting('random_complex_cap', 12)
    if n < 0 or n > cap:
        raise GuardRailError(f"random_complex supports 0..{cap} vertices")
    if not 0.0 <= density <= 1.0:
        raise InputError("density must lie in [0, 1]")
    gen = _rng(seed, rng)
    count = faces if faces is not None else int(gen.integers(2, n + 1)) if n >= 2 else 1
    draws = gen.random((count, n)) < density
    masks = [mask_from_ids(np.flatnonzero(row).tolist()) for row in draws]
    return SimplicialComplex(full_mask(n), antichain(masks or [0]))


def random_boxes(d: int, n: int, seed=None, coord_range: int = 10,
                 rng: Optional[np.random.Generator] = None) -> BoxFamily:
    """n random boxes in dimension d with integer corners in [0, coord_range]"""
    if d < 1:
        raise InputError("box dimension must be at least 1")
    cap = get_setting('box_family_cap', 20)
    if n < 0 or n > cap:
        raise GuardRailError(f"random_boxes supports 0..{cap} boxes")
    gen = _rng(seed, rng)
    corners = np.sort(gen.integers(0, coord_range + 1, size=(n, d, 2)), axis=2)
    boxes = [Box(corners[i, :, 0].tolist(), corners[i, :, 1].tolist()) for i in range(n)]
    debug("Generated %d boxes in dimension %d", n, d)
    return BoxFamily(boxes)


def random_colored_boxes(d: int, n: int, classes: int, seed=None, coord_range: int = 10,
                         rng: Optional[np.random.Generator] = None) -> BoxFamily:
    """n random boxes colored round-robin with colors 0..classes-1"""
    if classes < 1:
        raise InputError("at least one color class is needed")
    family = random_boxes(d, n, seed=seed, coord_range=coord_range, rng=rng)
    return BoxFamily(family.boxes, [i % classes for i in range(n)])


def planted_colored_boxes(d: int, n: int, classes: int, seed=None, coord_range: int = 10, stray: float = 0.2,
                          rng: Optional[np.random.Generator] = None) -> BoxFamily:
    """
    n colored boxes most of which contain one planted integer point.

    Each box is, with probability 1 - stray, a box around the planted point
    and otherwise a uniform random box. Colors are round-robin.
    """
    if d < 1:
        raise InputError("box dimension must be at least 1")
    if classes < 1:
        raise InputError("at least one color class is needed")
    if not 0.0 <= stray <= 1.0:
        raise InputError("stray must lie in [0, 1]")
    cap = get_setting('box_family_cap', 20)
    if n < 0 or n > cap:
        raise GuardRailError(f"planted_colored_boxes supports 0..{cap} boxes")
    gen = _rng(seed, rng)
    point = gen.integers(0, coord_range + 1, size=d)
    boxes = []
    for _ in range(n):
        if gen.random() < stray:
            corners = np.sort(gen.integers(0, coord_range + 1, size=(d, 2)), axis=1)
            lows, highs = corners[:, 0], corners[:, 1]
        else:
            lows = np.maximum(point - gen.integers(0, coord_range // 2 + 1, size=d), 0)
            highs = np.minimum(point + gen.integers(0, coord_range // 2 + 1, size=d), coord_range)
        boxes.append(Box(lows.tolist(), highs.tolist()))
    debug("Planted %d boxes around %s", n, point.tolist())
    return BoxFamily(boxes, [i % classes for i in range(n)])


def random_subfamily_complexes(n: int, members: int, seed=None,
                               rng: Optional[np.random.Generator] = None) -> List[SimplicialComplex]:
    """Random simplices on a shared ambient, for nerve-theorem families"""
    gen = _rng(seed, rng)
    result = []
    for _ in range(members):
        row = gen.random(n) < 0.5
        verts = mask_from_ids(np.flatnonzero(row).tolist())
        if not verts:
            verts = 1 << int(gen.integers(0, n))
        result.append(SimplicialComplex(full_mask(n), [verts]))
    return result
