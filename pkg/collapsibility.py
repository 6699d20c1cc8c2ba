"""
d-collapsibility and the collapsibility number.

The decision follows the recursive characterization: K is d-collapsible iff
dim(K) < d, or some d-face s lies in a unique maximal face t != s and
cost(K, s) is d-collapsible. The recursion is searched depth first with
backtracking; a greedy pass runs first and is trusted only when it succeeds.
"""
from typing import List, NamedTuple, Optional, Sequence, Set, Tuple

from complex_core import SimplicialComplex, costar
from errors import InputError
from logger import debug
from utils import format_mask, log_timing, popcount, submasks_of_size


class CollapseStep(NamedTuple):
    """One elementary collapse: sigma is free with unique maximal face unique_max"""
    sigma: int
    unique_max: int


def _containing(K: SimplicialComplex, face: int) -> List[int]:
    return [m for m in K.maximal_faces if face & ~m == 0]


def free_faces(K: SimplicialComplex, d: int) -> List[Tuple[int, int]]:
    """
    Faces of size at most d lying in exactly one maximal face.

    Returns:
        list: (sigma, unique_max) pairs ordered by size of sigma, then bitmask
    """
    if K.is_void:
        raise InputError("free_faces is undefined for the void complex")
    found = {}
    for m in K.maximal_faces:
        for size in range(0, min(d, popcount(m)) + 1):
            for sigma in submasks_of_size(m, size):
                if sigma in found:
                    continue
                owners = _containing(K, sigma)
                if len(owners) == 1:
                    found[sigma] = owners[0]
                else:
                    found[sigma] = None
    pairs = [(s, t) for s, t in found.items() if t is not None]
    pairs.sort(key=lambda p: (popcount(p[0]), p[0]))
    return pairs


def elementary_collapse(K: SimplicialComplex, sigma: int) -> SimplicialComplex:
    """
    Remove every face containing the free face sigma.

    Raises:
        InputError: sigma is not free in K
    """
    if K.is_void or len(_containing(K, sigma)) != 1:
        raise InputError(f"{format_mask(sigma)} is not a free face")
    return costar(K, sigma)


def _candidates(K: SimplicialComplex, d: int) -> List[CollapseStep]:
    """d-faces with a unique maximal superface strictly larger than themselves"""
    steps = []
    for tau in K.maximal_faces:
        if popcount(tau) <= d:
            continue
        for sigma in submasks_of_size(tau, d):
            if len(_containing(K, sigma)) == 1:
                steps.append(CollapseStep(sigma, tau))
    steps.sort()
    return steps


def _is_terminal(K: SimplicialComplex, d: int) -> bool:
    return K.is_void or K.dim < d


def _sweep(K: SimplicialComplex) -> List[CollapseStep]:
    """Remove maximal faces largest first (lowest bitmask on ties) down to void"""
    steps = []
    current = K
    while not current.is_void:
        tau = min(current.maximal_faces, key=lambda m: (-popcount(m), m))
        steps.append(CollapseStep(tau, tau))
        current = costar(current, tau)
    return steps


def _greedy(K: SimplicialComplex, d: int) -> Optional[List[CollapseStep]]:
    path = []
    current = K
    while not _is_terminal(current, d):
        options = _candidates(current, d)
        if not options:
            return None
        step = options[0]
        path.append(step)
        current = costar(current, step.sigma)
    return path + _sweep(current)


def _backtrack(K: SimplicialComplex, d: int) -> Optional[List[CollapseStep]]:
    failed: Set[Tuple[int, ...]] = set()
    path: List[CollapseStep] = []
    stack = [(K, iter(_candidates(K, d)))]
    visited = 0
    while stack:
        current, options = stack[-1]
        advanced = False
        for step in options:
            nxt = costar(current, step.sigma)
            if nxt.maximal_faces in failed:
                continue
            visited += 1
            path.append(step)
            if _is_terminal(nxt, d):
                debug("Collapse found after %d nodes", visited)
                return path + _sweep(nxt)
            stack.append((nxt, iter(_candidates(nxt, d))))
            advanced = True
            break
        if not advanced:
            failed.add(current.maximal_faces)
            stack.pop()
            if path:
                path.pop()
    debug("No %d-collapse: %d nodes, %d failed complexes", d, visited, len(failed))
    return None


@log_timing("d-collapsibility search")
def is_d_collapsible(K: SimplicialComplex, d: int) -> Tuple[bool, Optional[List[CollapseStep]]]:
    """
    Decide whether K is d-collapsible.

    Returns:
        tuple: (verdict, certificate) where the certificate lists the
        elementary collapses from K down to the void complex, or None

    Raises:
        InputError: d < 0
    """
    if d < 0:
        raise InputError("d must be non-negative")
    if K.is_void:
        return True, []
    if _is_terminal(K, d):
        return True, _sweep(K)
    greedy = _greedy(K, d)
    if greedy is not None:
        return True, greedy
    found = _backtrack(K, d)
    if found is None:
        return False, None
    return True, found


def collapsibility_number(K: SimplicialComplex) -> int:
    """Least d with K d-collapsible; the void complex and simplices give 0"""
    if K.is_void:
        return 0
    for d in range(0, K.dim + 2):
        if is_d_collapsible(K, d)[0]:
            return d
    # unreachable: dim(K) < dim(K) + 1
    return K.dim + 1


def replay_certificate(K: SimplicialComplex, steps: Sequence[CollapseStep], d: int) -> bool:
    """
    Apply a certificate and check every step.

    Each sigma must have size at most d and be contained only in its recorded
    unique_max at its turn; the final complex must be void.
    """
    current = K
    for sigma, unique_max in steps:
        if current.is_void or popcount(sigma) > d:
            return False
        if _containing(current, sigma) != [unique_max]:
            debug("Step %s is not free", format_mask(sigma))
            return False
        current = costar(current, sigma)
    return current.is_void
