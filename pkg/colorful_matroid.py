"""
Partition matroids and colorful Helly verification.

A partition matroid is given by disjoint color classes; a set is independent
when it meets each class at most once and uses no uncolored vertex. Its rank
rho(W) is the number of classes W meets.
"""
import itertools
from typing import List, Optional, Sequence, Tuple

from bounds_hypergraph import colorful_obstruction_hypergraph, covering_number, eta_closed, h_value, Hypergraph
from collapsibility import is_d_collapsible
from complex_core import SimplicialComplex
from errors import InputError, PreconditionError
from geometry_families import BoxFamily, nerve_of_boxes
from leray import is_d_leray
from logger import debug
from tolerance import tolerance_complex, tolerance_membership
from utils import format_mask, full_mask, ids_from_mask, mask_from_ids, popcount, submasks_of_size

BOUND_MODES = ('plain', 'tolerant', 'd2t1')


class PartitionMatroid:
    """
    Partition matroid from disjoint color classes.

    Attributes:
        classes: Tuple of class bitmasks (empty classes are allowed and ignored)
    """

    __slots__ = ('classes',)

    def __init__(self, classes: Sequence[int]):
        seen = 0
        for c in classes:
            if c & seen:
                raise InputError(f"color classes overlap on {format_mask(c & seen)}")
            seen |= c
        self.classes = tuple(int(c) for c in classes)

    @classmethod
    def from_lists(cls, classes: Sequence[Sequence[int]]) -> 'PartitionMatroid':
        return cls([mask_from_ids(c) for c in classes])

    @property
    def ground(self) -> int:
        """Union of the classes"""
        mask = 0
        for c in self.classes:
            mask |= c
        return mask

    def is_independent(self, S: int) -> bool:
        return S & ~self.ground == 0 and all(popcount(S & c) <= 1 for c in self.classes)

    def __repr__(self):
        return f"PartitionMatroid([{', '.join(format_mask(c) for c in self.classes)}])"


def rank(M: PartitionMatroid, W: int) -> int:
    """Number of classes met by W"""
    return sum(1 for c in M.classes if c & W)


def transversals(M: PartitionMatroid) -> List[int]:
    """All sets taking exactly one element from each non-empty class"""
    pools = [ids_from_mask(c) for c in M.classes if c]
    return sorted(mask_from_ids(choice) for choice in itertools.product(*pools))


def matroid_subset_of_complex(M: PartitionMatroid, K: SimplicialComplex) -> bool:
    """
    Every independent set of M is a face of K.

    Independent sets are the subsets of full transversals, so checking the
    transversals is enough.
    """
    if M.ground & ~K.ambient:
        return False
    if K.is_void:
        return False
    return all(K.contains(T) for T in transversals(M))


def _witness_search(C: SimplicialComplex, M: PartitionMatroid, bound: int) -> Optional[int]:
    """Maximal face s of C with rho(V - s) <= bound; larger faces first, then lower bitmask"""
    for sigma in sorted(C.maximal_faces, key=lambda m: (-popcount(m), m)):
        if rank(M, C.ambient & ~sigma) <= bound:
            return sigma
    return None


def verify_topological_colorful_helly(K: SimplicialComplex, M: PartitionMatroid, d: int,
                                      assume: bool = False, force: bool = False) -> Optional[int]:
    """
    Find s in K with rho(V - s) <= d for a d-Leray K containing M.

    Args:
        assume: Skip the precondition checks

    Returns:
        Witness face, or None when no face qualifies (a falsification)

    Raises:
        PreconditionError: K is not d-Leray or M is not inside K
    """
    if K.is_void:
        raise InputError("colorful verification needs a non-void complex")
    if not assume:
        if not matroid_subset_of_complex(M, K):
            raise PreconditionError("some transversal of the matroid is not a face of K")
        if not is_d_leray(K, d, force=force)[0]:
            raise PreconditionError(f"K is not {d}-Leray")
    witness = _witness_search(K, M, d)
    debug("Topological colorful witness: %s", format_mask(witness) if witness is not None else None)
    return witness


def tolerant_bound(t: int, d: int, bound_mode: str) -> int:
    """rho bound of each mode: d (plain), h(t, d) (tolerant) or 5 (d2t1)"""
    if bound_mode not in BOUND_MODES:
        raise InputError(f"unknown bound mode {bound_mode!r}")
    if bound_mode == 'plain':
        if t != 0:
            raise InputError("plain mode needs t = 0")
        return d
    if bound_mode == 'd2t1':
        if (t, d) != (1, 2):
            raise InputError("d2t1 mode needs t = 1 and d = 2")
        return 5
    if t > 0 and d < 1:
        # h(t, 0) = 0 is below the dimension T_t adds; 0-collapsible complexes are 1-collapsible
        raise InputError("tolerant mode needs d >= 1 when t > 0")
    return h_value(t, d)


def verify_tolerant_colorful(K: SimplicialComplex, M: PartitionMatroid, t: int, d: int,
                             bound_mode: str = 'tolerant', assume: bool = False) -> Tuple[Optional[int], int]:
    """
    Find s in T_t(K) with rho(V - s) within the mode's bound.

    Preconditions: K is d-collapsible and M lies inside T_t(K).

    Returns:
        tuple: (witness or None, bound used)

    Raises:
        InputError: mode and parameters do not match
        PreconditionError: preconditions fail and assume is off
    """
    bound = tolerant_bound(t, d, bound_mode)
    if K.is_void:
        raise InputError("colorful verification needs a non-void complex")
    tolerant = tolerance_complex(K, t)
    if not assume:
        if not matroid_subset_of_complex(M, tolerant):
            raise PreconditionError("some transversal of the matroid is not a face of T_t(K)")
        if not is_d_collapsible(K, d)[0]:
            raise PreconditionError(f"K is not {d}-collapsible")
    return _witness_search(tolerant, M, bound), bound


def tolerant_point_in_common(color_class: int, nerve: SimplicialComplex, t: int) -> Tuple[bool, Optional[int]]:
    """
    Some subfamily of the class missing at most t members is a face of the nerve.

    Returns:
        tuple: (found, largest such subfamily or None)
    """
    if color_class & ~nerve.ambient:
        raise InputError("color class uses members outside the nerve")
    return tolerance_membership(nerve, t, color_class)


# ----------------------------------------------------------------------
# Box instantiations
# ----------------------------------------------------------------------

def check_planar_six_classes(family: BoxFamily) -> Tuple[bool, bool]:
    """
    Six planar color classes with tolerance 1.

    premise: every colorful transversal has a point in common with tolerance 1
    conclusion: some class has a point in common with tolerance 1
    """
    if family.dimension not in (None, 2):
        raise InputError("planar check needs boxes in the plane")
    classes = family.color_classes()
    if len(classes) != 6:
        raise InputError(f"planar check needs six color classes, got {len(classes)}")
    nerve = nerve_of_boxes(family)
    M = PartitionMatroid(classes)
    premise = all(tolerance_membership(nerve, 1, T)[0] for T in transversals(M))
    conclusion = any(tolerant_point_in_common(c, nerve, 1)[0] for c in classes)
    return premise, conclusion


def check_tolerant_colorful_boxes(family: BoxFamily, t: int) -> Tuple[bool, bool]:
    """
    d + 1 color classes of boxes in dimension d with tolerance t.

    premise: every subfamily of min(eta(d+1, t+1), |F|) members contains a
        subfamily missing at most t of them whose colorful transversals all
        have a common point, i.e. the non-intersecting transversals inside it
        have covering number at most t
    conclusion: some class has a point in common with tolerance t
    """
    d = family.dimension
    classes = family.color_classes()
    if d is None or len(classes) != d + 1:
        raise InputError("tolerant colorful check needs d + 1 color classes of boxes in dimension d")
    size = eta_closed(d + 1, t + 1) if t >= 0 else None
    if size is None:
        raise InputError(f"no closed form for eta({d + 1}, {t + 1})")
    nerve = nerve_of_boxes(family)
    H = colorful_obstruction_hypergraph(nerve, classes)
    n = len(family)
    premise = True
    for members in submasks_of_size(full_mask(n), min(size, n)):
        inside = Hypergraph(H.n, [e for e in H.edges if e & ~members == 0], H.r)
        if covering_number(inside) > t:
            premise = False
            break
    conclusion = any(tolerant_point_in_common(c, nerve, t)[0] for c in classes)
    return premise, conclusion
