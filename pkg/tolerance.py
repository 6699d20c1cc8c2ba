"""
t-tolerance complexes and the decompositions used to bound their homology.

T_t(K) = {eta | tau : eta in K, tau subset of V, |tau| <= t} depends on the
declared vertex set V, so every construction here keeps ambients explicit:
K[U] lives on U, cost(K, s) on V and lk(K, s) on V minus s.
"""
from typing import FrozenSet, List, Optional, Tuple

from complex_core import (SimplicialComplex, costar, face_set, induced, intersection, link,
                          union_all)
from errors import InputError
from homology_engine import RelativePair
from logger import debug
from utils import antichain, format_mask, iter_submasks, popcount, submasks_of_size


def _check_t(t: int):
    if t < 0:
        raise InputError("t must be non-negative")


def tolerance_complex(K: SimplicialComplex, t: int) -> SimplicialComplex:
    """
    The t-tolerance complex of K on the same ambient vertex set.

    Maximal faces come from maximal eta only: eta | tau with tau a
    min(t, |V - eta|)-subset of V - eta, followed by antichain reduction.
    """
    _check_t(t)
    if K.is_void:
        raise InputError("tolerance_complex is undefined for the void complex")
    if t == 0:
        return K
    generators = []
    for eta in K.maximal_faces:
        rest = K.ambient & ~eta
        size = min(t, popcount(rest))
        generators.extend(eta | tau for tau in submasks_of_size(rest, size))
    return SimplicialComplex(K.ambient, antichain(generators))


def tolerance_membership(K: SimplicialComplex, t: int, sigma: int) -> Tuple[bool, Optional[int]]:
    """
    Decide sigma in T_t(K) without building T_t(K).

    Returns:
        tuple: (member, eta) where eta is a largest face of K inside sigma
        (lowest bitmask on ties) when sigma is a member, else None
    """
    _check_t(t)
    if sigma & ~K.ambient:
        raise InputError(f"{format_mask(sigma)} is not contained in the ambient vertex set")
    if K.is_void:
        return False, None
    eta = min((sigma & m for m in K.maximal_faces), key=lambda f: (-popcount(f), f))
    if popcount(sigma) - popcount(eta) <= t:
        return True, eta
    return False, None


def _require_nonempty_face(K: SimplicialComplex, sigma: int, operation: str):
    if sigma == 0:
        raise InputError(f"{operation} needs a non-empty face")
    if not K.contains(sigma):
        raise InputError(f"{operation}: {format_mask(sigma)} is not a face")


def _partial_links(K: SimplicialComplex, t: int, sigma: int) -> List[SimplicialComplex]:
    """T_{t-|s'|}(lk(K[V - s'], sigma - s')) for every s' in sigma with 1 <= |s'| <= t"""
    pieces = []
    for size in range(1, min(t, popcount(sigma)) + 1):
        for part in submasks_of_size(sigma, size):
            restricted = induced(K, K.ambient & ~part)
            pieces.append(tolerance_complex(link(restricted, sigma & ~part), t - size))
    return pieces


def lemma41_decomposition(K: SimplicialComplex, t: int, sigma: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    Both sides of the set identity behind the relative decomposition.

    left: faces of T_t(K) that are not faces of T_t(cost(K, sigma))
    right: sigma | eta for eta in T_t(lk(K, sigma)) outside the union of the
        partial-link tolerance complexes

    Raises:
        InputError: sigma is empty or not a face of K
    """
    _check_t(t)
    _require_nonempty_face(K, sigma, "lemma41_decomposition")
    left = face_set(tolerance_complex(K, t)) - face_set(tolerance_complex(costar(K, sigma), t))
    link_side = face_set(tolerance_complex(link(K, sigma), t))
    excluded = set()
    for piece in _partial_links(K, t, sigma):
        excluded.update(piece.faces())
    right = frozenset(sigma | eta for eta in link_side if eta not in excluded)
    return frozenset(left), right


def corollary42_pairs(K: SimplicialComplex, t: int, sigma: int) -> Tuple[RelativePair, RelativePair]:
    """
    The pair (T_t(K), T_t(cost(K, sigma))) and its link-side counterpart.

    The link side is (Z, Z & Y) with Z = T_t(lk(K, sigma)) and Y the union of
    the partial-link tolerance complexes; its relative homology is the
    first pair's shifted down by |sigma|.
    """
    _check_t(t)
    _require_nonempty_face(K, sigma, "corollary42_pairs")
    outer = RelativePair(tolerance_complex(K, t), tolerance_complex(costar(K, sigma), t))
    Z = tolerance_complex(link(K, sigma), t)
    Y = union_all(_partial_links(K, t, sigma), ambient=Z.ambient)
    inner = RelativePair(Z, intersection(Z, Y))
    return outer, inner


def free_face_instances(K: SimplicialComplex) -> List[Tuple[int, int]]:
    """
    Every (sigma, U) with sigma non-empty and free, unique maximal face sigma | U, U non-empty.

    Ordered by sigma's size, then bitmask.
    """
    if K.is_void:
        return []
    found = []
    for tau in K.maximal_faces:
        for sigma in iter_submasks(tau):
            if sigma == 0 or sigma == tau:
                continue
            owners = [m for m in K.maximal_faces if sigma & ~m == 0]
            if len(owners) == 1:
                found.append((sigma, tau & ~sigma))
    found.sort(key=lambda p: (popcount(p[0]), p[0]))
    return found


def _check_prop43(K: SimplicialComplex, t: int, sigma: int, U: int):
    _check_t(t)
    _require_nonempty_face(K, sigma, "prop43_union")
    if U == 0 or sigma & U:
        raise InputError("U must be non-empty and disjoint from sigma")
    owners = [m for m in K.maximal_faces if sigma & ~m == 0]
    if owners != [sigma | U]:
        raise InputError(
            f"{format_mask(sigma)} is not free with unique maximal face {format_mask(sigma | U)}")


def prop43_union(K: SimplicialComplex, t: int, sigma: int, U: int, W: int) -> SimplicialComplex:
    """
    Union over s' in sigma, 1 <= |s'| <= t, of T_{t-|s'|}(lk(K, sigma - s')[U | W]).

    The result lives on ambient U | W.

    Raises:
        InputError: sigma is not free with unique maximal face sigma | U,
            U is empty, or W is not a t-subset of V - (sigma | U)
    """
    _check_prop43(K, t, sigma, U)
    if W & ~(K.ambient & ~(sigma | U)) or popcount(W) != t:
        raise InputError(f"W must be a {t}-subset of the vertices outside sigma and U")
    base = U | W
    pieces = []
    for size in range(1, min(t, popcount(sigma)) + 1):
        for part in submasks_of_size(sigma, size):
            restricted = induced(link(K, sigma & ~part), base)
            pieces.append(tolerance_complex(restricted, t - size))
    return union_all(pieces, ambient=base)


def prop43_unions(K: SimplicialComplex, t: int, sigma: int) -> Tuple[int, List[Tuple[int, SimplicialComplex]]]:
    """
    All union complexes for a free sigma, one per t-subset W outside sigma | U.

    Returns:
        tuple: (U, [(W, union complex), ...]) with W in ascending bitmask order
    """
    _require_nonempty_face(K, sigma, "prop43_unions")
    owners = [m for m in K.maximal_faces if sigma & ~m == 0]
    if len(owners) != 1 or owners[0] == sigma:
        raise InputError(f"{format_mask(sigma)} has no unique maximal face strictly containing it")
    U = owners[0] & ~sigma
    outside = K.ambient & ~(sigma | U)
    unions = [(W, prop43_union(K, t, sigma, U, W)) for W in submasks_of_size(outside, t)]
    unions.sort(key=lambda p: p[0])
    debug("prop43 unions for %s: %d choices of W", format_mask(sigma), len(unions))
    return U, unions
