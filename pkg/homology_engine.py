"""
Exact reduced and relative homology over the rationals.

Chains live on faces in ascending bitmask order, oriented by ascending vertex
id. Absolute reduced homology is relative homology against the void
complex: the empty face is then a (-1)-cell and augmentation comes for free.
"""
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from complex_core import SimplicialComplex, intersection, is_subcomplex, link, costar, union
from errors import InputError
from logger import debug
from utils import antichain, format_mask, ids_from_mask, popcount


class BettiVector:
    """
    Reduced (or relative) Betti numbers indexed from dimension -1 upward.

    Missing dimensions read as 0, so b[k] is safe for any k.
    """

    __slots__ = ('_values',)

    def __init__(self, values: Dict[int, int]):
        self._values = {k: v for k, v in values.items() if v}

    def __getitem__(self, k: int) -> int:
        return self._values.get(k, 0)

    def __eq__(self, other):
        if isinstance(other, BettiVector):
            return self._values == other._values
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self):
        return f"BettiVector({self.as_dict()})"

    def nonzero_dimensions(self) -> List[int]:
        return sorted(self._values)

    def is_zero(self) -> bool:
        return not self._values

    def top(self) -> Optional[int]:
        """Largest dimension with non-zero rank, or None"""
        return max(self._values) if self._values else None

    def shifted(self, offset: int) -> 'BettiVector':
        """Vector w with w[k + offset] = self[k]"""
        return BettiVector({k + offset: v for k, v in self._values.items()})

    def __add__(self, other: 'BettiVector') -> 'BettiVector':
        merged = dict(self._values)
        for k, v in other._values.items():
            merged[k] = merged.get(k, 0) + v
        return BettiVector(merged)

    def as_dict(self, lowest: int = -1, highest: Optional[int] = None) -> Dict[str, int]:
        """JSON form {"-1": 0, "0": 1, ...} covering lowest..highest"""
        if highest is None:
            highest = max([lowest] + list(self._values))
        return {str(k): self[k] for k in range(lowest, highest + 1)}


class RelativePair:
    """A complex X with a subcomplex Y"""

    __slots__ = ('X', 'Y')

    def __init__(self, X: SimplicialComplex, Y: SimplicialComplex):
        if not is_subcomplex(Y, X):
            raise InputError("relative pair: Y is not a subcomplex of X")
        self.X = X
        self.Y = Y

    def cells(self) -> Dict[int, List[int]]:
        """Faces of X outside Y grouped by dimension"""
        return _relative_cells(self.X.maximal_faces, self.Y.maximal_faces)

    def __repr__(self):
        return f"RelativePair(X={self.X!r}, Y={self.Y!r})"


def _contained(face: int, maximal_faces: Sequence[int]) -> bool:
    return any(face & ~m == 0 for m in maximal_faces)


@lru_cache(maxsize=4096)
def _relative_cells(x_faces: Tuple[int, ...], y_faces: Tuple[int, ...]) -> Dict[int, List[int]]:
    cells: Dict[int, List[int]] = {}
    if not x_faces:
        return cells
    X = SimplicialComplex(0, x_faces)
    for k in range(-1, X.dim + 1):
        level = [f for f in X.faces_of_dim(k) if not _contained(f, y_faces)]
        if level:
            cells[k] = level
    return cells


def _boundary_entries(rows: Sequence[int], cols: Sequence[int]) -> Dict[int, Dict[int, int]]:
    """
    Sparse censored boundary: column j holds the facets of cols[j] that are rows.

    The facet dropping the i-th smallest vertex carries sign (-1)^i; facets
    outside the row index (faces of the censoring subcomplex) vanish.
    """
    row_index = {face: i for i, face in enumerate(rows)}
    entries: Dict[int, Dict[int, int]] = {}
    for j, face in enumerate(cols):
        for i, v in enumerate(ids_from_mask(face)):
            r = row_index.get(face & ~(1 << v))
            if r is None:
                continue
            entries.setdefault(r, {})[j] = -1 if i % 2 else 1
    return entries


def _rank(rows: Sequence[int], cols: Sequence[int]) -> int:
    if not rows or not cols:
        return 0
    entries = _boundary_entries(rows, cols)
    if not entries:
        return 0
    sparse = {r: {c: QQ(v) for c, v in row.items()} for r, row in entries.items()}
    return DomainMatrix(sparse, (len(rows), len(cols)), QQ).rank()


@lru_cache(maxsize=8192)
def _relative_betti_cached(x_faces: Tuple[int, ...], y_faces: Tuple[int, ...]) -> Tuple[Tuple[int, int], ...]:
    cells = _relative_cells(x_faces, y_faces)
    if not cells:
        return ()
    low, high = min(cells), max(cells)
    ranks = {k: _rank(cells.get(k - 1, []), cells.get(k, [])) for k in range(low, high + 1)}
    result = []
    for k in range(low, high + 1):
        value = len(cells.get(k, [])) - ranks[k] - ranks.get(k + 1, 0)
        if value:
            result.append((k, value))
    return tuple(result)


def boundary_matrix(target, k: int) -> DomainMatrix:
    """
    Exact matrix of the boundary map from k-chains to (k-1)-chains.

    Args:
        target: SimplicialComplex (augmented chain complex) or RelativePair
        k: Dimension of the source chains (k >= 0)

    Returns:
        DomainMatrix over QQ with rows indexed by (k-1)-cells and columns by
        k-cells, both in ascending bitmask order
    """
    if isinstance(target, RelativePair):
        cells = target.cells()
    else:
        if target.is_void:
            raise InputError("boundary_matrix of the void complex")
        cells = _relative_cells(target.maximal_faces, ())
    rows, cols = cells.get(k - 1, []), cells.get(k, [])
    entries = _boundary_entries(rows, cols)
    sparse = {r: {c: QQ(v) for c, v in row.items()} for r, row in entries.items()}
    return DomainMatrix(sparse, (len(rows), len(cols)), QQ)


def betti_numbers(K: SimplicialComplex) -> BettiVector:
    """
    Reduced Betti numbers of K over QQ.

    Raises:
        InputError: K is the void complex
    """
    if K.is_void:
        raise InputError("betti_numbers is undefined for the void complex")
    return BettiVector(dict(_relative_betti_cached(K.maximal_faces, ())))


def is_acyclic(K: SimplicialComplex) -> bool:
    """All reduced Betti numbers vanish; the void complex is not acyclic"""
    if K.is_void:
        return False
    return betti_numbers(K).is_zero()


def relative_betti(pair: RelativePair) -> BettiVector:
    """
    Ranks of H_k(X, Y), k >= -1.

    When Y is void the empty face is a cell of X outside Y, so the result
    equals the reduced Betti numbers of X.
    """
    return BettiVector(dict(_relative_betti_cached(pair.X.maximal_faces, pair.Y.maximal_faces)))


def clear_caches():
    """Drop memoized Betti results (tests and long suite runs)"""
    _relative_betti_cached.cache_clear()
    _relative_cells.cache_clear()


def reduced_betti_or_zero(K: SimplicialComplex) -> BettiVector:
    """Betti numbers with the void complex read as the zero chain complex"""
    if K.is_void:
        return BettiVector({})
    return betti_numbers(K)


# ----------------------------------------------------------------------
# Nerves
# ----------------------------------------------------------------------

def nerve(family: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """
    Nerve of a family of complexes on one ambient vertex set.

    I is a face iff the members indexed by I share at least one vertex; the
    empty index set is always a face.

    Raises:
        InputError: empty family or differing ambients
    """
    if not family:
        raise InputError("nerve of an empty family")
    ambient = family[0].ambient
    if any(X.ambient != ambient for X in family):
        raise InputError("nerve needs every member on the same ambient vertex set")
    m = len(family)
    if m > 64:
        raise InputError("nerve supports at most 64 members")
    member_vertices = [X.vertices for X in family]
    generators = []
    for v in ids_from_mask(ambient):
        bit = 1 << v
        index_set = 0
        for i, verts in enumerate(member_vertices):
            if verts & bit:
                index_set |= 1 << i
        if index_set:
            generators.append(index_set)
    generators = generators or [0]
    return SimplicialComplex((1 << m) - 1, antichain(generators))


# ----------------------------------------------------------------------
# Chain-level shift check and exact-sequence rank identities
# ----------------------------------------------------------------------

def _shuffle_sign(eta: int, sigma: int) -> int:
    """(-1) to the number of pairs (s, u), s in sigma, u in eta, s < u"""
    crossings = 0
    for u in ids_from_mask(eta):
        crossings += popcount(sigma & ((1 << u) - 1))
    return -1 if crossings % 2 else 1


def verify_shift_isomorphism(pair_xy: RelativePair, pair_zw: RelativePair, sigma: int) -> bool:
    """
    Check that eta | sigma -> sign(eta) * eta is a chain isomorphism
    C_k(X, Y) -> C_{k-|sigma|}(Z, W).

    Requires Z inside X restricted to the complement of sigma and
    X minus Y == {eta | sigma : eta in Z minus W}; then compares the two censored
    boundary maps cell by cell.
    """
    if sigma == 0:
        raise InputError("verify_shift_isomorphism needs a non-empty sigma")
    if any(m & sigma for m in pair_zw.X.maximal_faces):
        debug("Z meets sigma %s", format_mask(sigma))
        return False
    xy_cells = [c for level in pair_xy.cells().values() for c in level]
    zw_cells = [c for level in pair_zw.cells().values() for c in level]
    if sorted(xy_cells) != sorted(eta | sigma for eta in zw_cells):
        debug("Cell sets differ: %d vs %d", len(xy_cells), len(zw_cells))
        return False
    y_faces = pair_xy.Y.maximal_faces
    w_faces = pair_zw.Y.maximal_faces
    for eta in zw_cells:
        cell = eta | sigma
        image_of_boundary: Dict[int, int] = {}
        for i, v in enumerate(ids_from_mask(cell)):
            facet = cell & ~(1 << v)
            if _contained(facet, y_faces):
                continue
            if facet & sigma != sigma:
                # facets of a relative cell that miss sigma must lie in Y
                return False
            coeff = (-1 if i % 2 else 1) * _shuffle_sign(facet & ~sigma, sigma)
            image_of_boundary[facet & ~sigma] = coeff
        boundary_of_image: Dict[int, int] = {}
        eps = _shuffle_sign(eta, sigma)
        for i, v in enumerate(ids_from_mask(eta)):
            facet = eta & ~(1 << v)
            if _contained(facet, w_faces):
                continue
            boundary_of_image[facet] = eps * (-1 if i % 2 else 1)
        if image_of_boundary != boundary_of_image:
            debug("Boundary mismatch at cell %s", format_mask(cell))
            return False
    return True


def exact_sequence_defect(terms: Iterable[int]) -> int:
    """Alternating sum of dimensions; zero for a finite exact sequence"""
    return sum(d if i % 2 == 0 else -d for i, d in enumerate(terms))


def _dimension_range(*complexes: SimplicialComplex) -> Tuple[int, int]:
    top = -1
    for K in complexes:
        if not K.is_void:
            top = max(top, K.dim)
    return -1, top + 1


def mayer_vietoris_defect(X: SimplicialComplex, Y: SimplicialComplex) -> int:
    """
    Alternating sum along the Mayer-Vietoris sequence of X, Y.

    Terms from the top: H(X&Y)_k -> H(X)_k + H(Y)_k -> H(X|Y)_k -> H(X&Y)_{k-1} ...
    The reduced sequence needs X & Y non-void.
    """
    meet = intersection(X, Y)
    if meet.is_void:
        raise InputError("Mayer-Vietoris needs a non-void intersection")
    joined = union(X, Y)
    bm, bx, by, bj = (reduced_betti_or_zero(C) for C in (meet, X, Y, joined))
    low, high = _dimension_range(X, Y)
    terms = []
    for k in range(high, low - 1, -1):
        terms.extend([bm[k], bx[k] + by[k], bj[k]])
    return exact_sequence_defect(terms)


def link_costar_defect(K: SimplicialComplex, v: int) -> int:
    """
    Alternating sum along lk(K,v) -> cost(K,v) -> K -> lk(K,v)[k-1] ...

    v must be a vertex of K (a non-void link).
    """
    bit = 1 << v
    if not K.contains(bit):
        raise InputError(f"vertex {v} is not a face of the complex")
    bl, bc, bk = (reduced_betti_or_zero(C) for C in (link(K, bit), costar(K, bit), K))
    low, high = _dimension_range(K)
    terms = []
    for k in range(high, low - 1, -1):
        terms.extend([bl[k], bc[k], bk[k]])
    return exact_sequence_defect(terms)


def pair_sequence_defect(X: SimplicialComplex, Y: SimplicialComplex) -> int:
    """Alternating sum along H(Y)_k -> H(X)_k -> H(X,Y)_k -> H(Y)_{k-1} ..."""
    pair = RelativePair(X, Y)
    by, bx, br = reduced_betti_or_zero(Y), reduced_betti_or_zero(X), relative_betti(pair)
    low, high = _dimension_range(X)
    terms = []
    for k in range(high, low - 1, -1):
        terms.extend([by[k], bx[k], br[k]])
    return exact_sequence_defect(terms)
