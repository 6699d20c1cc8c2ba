"""
Finite simplicial complexes on at most 64 vertices.

A complex is stored as its antichain of maximal faces; faces are vertex-set
bitmasks (bit i <=> vertex i). The declared vertex set (ambient) is kept
explicitly because tolerance constructions depend on it: the vertex set of
K[U] is U, of cost(K, s) is V and of lk(K, s) is V minus s.

Two degenerate states are distinct:
- the VOID complex has no faces at all (no maximal faces);
- the EMPTY complex has exactly the face {} (maximal faces == (0,)).
"""
import threading
from typing import Iterable, List, Optional, Sequence, Tuple

from config import MAX_VERTICES
from errors import InputError
from logger import debug
from utils import antichain, format_mask, ids_from_mask, lowest_vertex, mask_from_ids, popcount, submasks_of_size

# Type aliases: both are vertex-set bitmasks, Face is used in face role
VertexSet = int
Face = int


class SimplicialComplex:
    """
    Immutable simplicial complex given by its maximal faces.

    Attributes:
        ambient: Declared vertex set V (bitmask)
        maximal_faces: Tuple of maximal faces in ascending bitmask order
    """

    __slots__ = ('ambient', 'maximal_faces', '_faces_by_dim', '_lock')

    def __init__(self, ambient: VertexSet, maximal_faces: Sequence[Face]):
        # Use from_maximal_faces() for unvalidated input
        object.__setattr__(self, 'ambient', ambient)
        object.__setattr__(self, 'maximal_faces', tuple(maximal_faces))
        object.__setattr__(self, '_faces_by_dim', {})
        object.__setattr__(self, '_lock', threading.Lock())

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_maximal_faces(cls, faces: Iterable[Face], ambient: VertexSet) -> 'SimplicialComplex':
        """
        Build a complex from any generating family of faces.

        Args:
            faces: Vertex sets; their downward closure is the complex
            ambient: Declared vertex set

        Returns:
            SimplicialComplex: maximal_faces is the antichain of the inputs

        Raises:
            InputError: a face is not contained in ambient, or ambient has
                more than 64 vertices
        """
        ambient = int(ambient)
        if ambient < 0 or ambient.bit_length() > MAX_VERTICES:
            raise InputError(f"Ambient vertex set must lie in 0..{MAX_VERTICES - 1}")
        faces = [int(f) for f in faces]
        for face in faces:
            if face < 0 or face & ~ambient:
                raise InputError(f"Face {format_mask(face)} is not contained in ambient {format_mask(ambient)}")
        return cls(ambient, antichain(faces))

    @classmethod
    def from_vertex_lists(cls, faces: Iterable[Iterable[int]], ambient: Optional[Iterable[int]] = None) -> 'SimplicialComplex':
        """Convenience constructor from lists of vertex ids (ambient defaults to ids used)"""
        masks = [mask_from_ids(face) for face in faces]
        if ambient is None:
            amb = 0
            for m in masks:
                amb |= m
        else:
            amb = mask_from_ids(ambient)
        return cls.from_maximal_faces(masks, amb)

    @classmethod
    def void(cls, ambient: VertexSet = 0) -> 'SimplicialComplex':
        """The complex with no faces"""
        return cls(ambient, ())

    @classmethod
    def empty(cls, ambient: VertexSet = 0) -> 'SimplicialComplex':
        """The complex whose only face is the empty set"""
        return cls(ambient, (0,))

    @classmethod
    def simplex(cls, vertices: VertexSet, ambient: Optional[VertexSet] = None) -> 'SimplicialComplex':
        """Complete complex 2^U (ambient defaults to U)"""
        ambient = vertices if ambient is None else ambient
        return cls.from_maximal_faces([vertices], ambient)

    @classmethod
    def boundary_of_simplex(cls, vertices: VertexSet, ambient: Optional[VertexSet] = None) -> 'SimplicialComplex':
        """All proper subsets of U; for |U| = 1 this is the empty complex"""
        ambient = vertices if ambient is None else ambient
        if vertices == 0:
            return cls.void(ambient)
        facets = [vertices & ~(1 << v) for v in ids_from_mask(vertices)]
        return cls.from_maximal_faces(facets, ambient)

    # ------------------------------------------------------------------
    # Basic queries
    # ------------------------------------------------------------------

    @property
    def is_void(self) -> bool:
        return not self.maximal_faces

    @property
    def is_empty_complex(self) -> bool:
        return self.maximal_faces == (0,)

    @property
    def dim(self) -> int:
        """Largest face dimension; the empty complex has dimension -1"""
        if self.is_void:
            raise InputError("The void complex has no dimension")
        return max(popcount(m) for m in self.maximal_faces) - 1

    @property
    def vertices(self) -> VertexSet:
        """Vertices lying in at least one face"""
        result = 0
        for m in self.maximal_faces:
            result |= m
        return result

    @property
    def vertex_count(self) -> int:
        """Size of the ambient vertex set"""
        return popcount(self.ambient)

    def contains(self, face: Face) -> bool:
        """True iff face is a face of the complex"""
        return any(face & ~m == 0 for m in self.maximal_faces)

    def __contains__(self, face: Face) -> bool:
        return self.contains(face)

    def faces_of_dim(self, k: int) -> List[Face]:
        """
        All faces of dimension k in ascending bitmask order.

        k = -1 yields [0] (the empty face); out-of-range k yields [].
        Results are memoized per complex; the cache is guarded by a lock so
        concurrent readers may share one complex.
        """
        if self.is_void:
            raise InputError("The void complex has no faces")
        cached = self._faces_by_dim.get(k)
        if cached is not None:
            return list(cached)
        size = k + 1
        if size < 0:
            found = ()
        else:
            collected = set()
            for m in self.maximal_faces:
                if popcount(m) >= size:
                    collected.update(submasks_of_size(m, size))
            found = tuple(sorted(collected))
        with self._lock:
            self._faces_by_dim[k] = found
        return list(found)

    def faces(self) -> List[Face]:
        """All faces ordered by size, then bitmask"""
        if self.is_void:
            return []
        result = []
        for k in range(-1, self.dim + 1):
            result.extend(self.faces_of_dim(k))
        return result

    def face_counts(self) -> List[int]:
        """f-vector from dimension -1 upward"""
        if self.is_void:
            return []
        return [len(self.faces_of_dim(k)) for k in range(-1, self.dim + 1)]

    def with_ambient(self, ambient: VertexSet) -> 'SimplicialComplex':
        """Same faces declared on another vertex set"""
        return SimplicialComplex.from_maximal_faces(self.maximal_faces, ambient)

    def same_faces(self, other: 'SimplicialComplex') -> bool:
        """Face-set equality ignoring the declared ambient"""
        return self.maximal_faces == other.maximal_faces

    # ------------------------------------------------------------------
    # Dunder plumbing
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.ambient == other.ambient and self.maximal_faces == other.maximal_faces

    def __hash__(self):
        return hash((self.ambient, self.maximal_faces))

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(void, ambient={format_mask(self.ambient)})"
        faces = ', '.join(format_mask(m) for m in self.maximal_faces)
        return f"SimplicialComplex([{faces}], ambient={format_mask(self.ambient)})"

    def __getstate__(self):
        return (self.ambient, self.maximal_faces)

    def __setstate__(self, state):
        ambient, maximal_faces = state
        object.__setattr__(self, 'ambient', ambient)
        object.__setattr__(self, 'maximal_faces', tuple(maximal_faces))
        object.__setattr__(self, '_faces_by_dim', {})
        object.__setattr__(self, '_lock', threading.Lock())


def from_maximal_faces(faces: Iterable[VertexSet], ambient: VertexSet) -> SimplicialComplex:
    """Module-level alias of SimplicialComplex.from_maximal_faces"""
    return SimplicialComplex.from_maximal_faces(faces, ambient)


def faces_of_dim(K: SimplicialComplex, k: int) -> List[Face]:
    """All k-dimensional faces of K; k = -1 yields [empty face]"""
    return K.faces_of_dim(k)


def _require_face(K: SimplicialComplex, tau: Face, operation: str):
    if not K.contains(tau):
        raise InputError(f"{operation}: {format_mask(tau)} is not a face of the complex")


def induced(K: SimplicialComplex, U: VertexSet) -> SimplicialComplex:
    """
    Subcomplex induced by U: K[U] = {s in K : s subset of U}.

    The ambient of the result is U intersected with the ambient of K, so
    induced(K, V) == K.
    """
    U &= K.ambient
    if K.is_void:
        return SimplicialComplex.void(U)
    return SimplicialComplex(U, antichain(m & U for m in K.maximal_faces))


def link(K: SimplicialComplex, tau: Face) -> SimplicialComplex:
    """
    Link of tau: {s : s disjoint from tau, s | tau in K}, on ambient V minus tau.

    Raises:
        InputError: tau is not a face of K
    """
    _require_face(K, tau, "link")
    containing = [m & ~tau for m in K.maximal_faces if tau & ~m == 0]
    return SimplicialComplex(K.ambient & ~tau, antichain(containing))


def star(K: SimplicialComplex, tau: Face) -> SimplicialComplex:
    """
    Star of tau: {s : s | tau in K}, on the ambient of K.

    Raises:
        InputError: tau is not a face of K
    """
    _require_face(K, tau, "star")
    return SimplicialComplex(K.ambient, [m for m in K.maximal_faces if tau & ~m == 0])


def costar(K: SimplicialComplex, tau: Face) -> SimplicialComplex:
    """
    Costar of tau: {s in K : tau not a subset of s}, on the ambient of K.

    cost(K, {}) is the void complex since every face contains the empty set.
    """
    if K.is_void or tau == 0:
        return SimplicialComplex.void(K.ambient)
    generators = []
    tau_ids = ids_from_mask(tau)
    for m in K.maximal_faces:
        if tau & ~m:
            generators.append(m)
        else:
            generators.extend(m & ~(1 << v) for v in tau_ids)
    return SimplicialComplex(K.ambient, antichain(generators))


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """
    Join {s | t : s in X, t in Y} of complexes on disjoint vertex sets.

    Raises:
        InputError: the ambients overlap
    """
    if X.ambient & Y.ambient:
        raise InputError(
            f"join needs disjoint vertex sets, both contain {format_mask(X.ambient & Y.ambient)}")
    ambient = X.ambient | Y.ambient
    if X.is_void or Y.is_void:
        return SimplicialComplex.void(ambient)
    return SimplicialComplex(ambient, sorted(a | b for a in X.maximal_faces for b in Y.maximal_faces))


def is_cone(K: SimplicialComplex) -> Optional[int]:
    """
    Apex of K if K is a cone: the lowest vertex lying in every maximal face.

    Returns:
        int or None: vertex id, or None when K is not a cone
    """
    if K.is_void:
        raise InputError("is_cone is undefined for the void complex")
    common = K.ambient
    for m in K.maximal_faces:
        common &= m
    return lowest_vertex(common) if common else None


def missing_faces(K: SimplicialComplex) -> List[VertexSet]:
    """
    Minimal non-faces of K inside its ambient, by increasing cardinality.

    Level k candidates are (k-1)-faces extended by a larger vertex; a
    candidate is kept when it is not a face and all of its facets are faces.
    Enumeration stops at the first level without faces to extend.
    """
    if K.is_void:
        raise InputError("missing_faces is undefined for the void complex")
    missing = []
    level = [0]
    while level:
        level_set = set(level)
        next_level = []
        seen = set()
        for face in level:
            start = face.bit_length()
            for v in ids_from_mask(K.ambient >> start << start):
                candidate = face | (1 << v)
                if candidate in seen:
                    continue
                seen.add(candidate)
                facets_ok = all(candidate & ~(1 << u) in level_set for u in ids_from_mask(candidate))
                if not facets_ok:
                    continue
                if K.contains(candidate):
                    next_level.append(candidate)
                else:
                    missing.append(candidate)
        level = next_level
    missing.sort(key=lambda m: (popcount(m), m))
    debug("Found %d missing faces", len(missing))
    return missing


def helly_number(K: SimplicialComplex) -> int:
    """Maximum dimension of a missing face; 0 when K has none"""
    missing = missing_faces(K)
    if not missing:
        return 0
    return max(popcount(m) for m in missing) - 1


# ----------------------------------------------------------------------
# Unions, intersections and comparisons
# ----------------------------------------------------------------------

def union(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Union of face sets; ambient is the union of ambients"""
    return SimplicialComplex(X.ambient | Y.ambient, antichain(X.maximal_faces + Y.maximal_faces))


def union_all(complexes: Sequence[SimplicialComplex], ambient: Optional[VertexSet] = None) -> SimplicialComplex:
    """Union of a family; the empty family gives the void complex on ambient"""
    amb = 0 if ambient is None else ambient
    generators = []
    for X in complexes:
        if ambient is None:
            amb |= X.ambient
        generators.extend(X.maximal_faces)
    return SimplicialComplex(amb, antichain(generators))


def intersection(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Common faces; ambient is the intersection of ambients"""
    ambient = X.ambient & Y.ambient
    if X.is_void or Y.is_void:
        return SimplicialComplex.void(ambient)
    return SimplicialComplex(ambient, antichain(a & b for a in X.maximal_faces for b in Y.maximal_faces))


def intersection_all(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    """Common faces of a non-empty family"""
    if not complexes:
        raise InputError("intersection of an empty family")
    result = complexes[0]
    for X in complexes[1:]:
        result = intersection(result, X)
    return result


def is_subcomplex(Y: SimplicialComplex, X: SimplicialComplex) -> bool:
    """True iff every face of Y is a face of X"""
    return all(X.contains(m) for m in Y.maximal_faces)


def face_set(K: SimplicialComplex) -> frozenset:
    """All faces as a frozenset of bitmasks"""
    return frozenset(K.faces())


def euler_characteristic(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic: sum over k >= -1 of (-1)^k f_k"""
    counts = K.face_counts()
    return sum(((-1) ** (k - 1)) * c for k, c in enumerate(counts))


def canonical_key(K: SimplicialComplex) -> Tuple[int, ...]:
    """Hashable key of the face set (maximal faces in ascending order)"""
    return K.maximal_faces


def relabel(K: SimplicialComplex, targets: Sequence[int], ambient: Optional[VertexSet] = None) -> SimplicialComplex:
    """
    Move vertex i of K to vertex targets[i].

    The ambient defaults to the image of K's ambient.
    """
    def image(mask: int) -> int:
        out = 0
        for v in ids_from_mask(mask):
            if v >= len(targets):
                raise InputError(f"relabel: no target for vertex {v}")
            out |= 1 << targets[v]
        return out

    if len(set(targets)) != len(targets):
        raise InputError("relabel targets must be distinct")
    new_ambient = image(K.ambient) if ambient is None else ambient
    return SimplicialComplex.from_maximal_faces([image(m) for m in K.maximal_faces], new_ambient)
