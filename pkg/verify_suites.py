"""
Randomized and tabulated verification suites.

Each suite checks one structural fact about tolerance complexes, collapsibility,
Leray numbers or colorful Helly statements on many small instances. Trials
are seeded with numpy.random.default_rng([seed, trial]) so a report depends
only on (suite, parameters, seed). A failing trial dumps its complex as .scx
to the counterexample directory with the failed assertion in a comment.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from math import comb
from typing import Callable, Dict, List, NamedTuple, Optional

import numpy as np

from bounds_hypergraph import (critical_examples, eta_bruteforce, eta_closed, h_value, is_t_critical,
                               tuza_upper)
from collapsibility import collapsibility_number, is_d_collapsible, replay_certificate
from colorful_matroid import (PartitionMatroid, check_planar_six_classes, check_tolerant_colorful_boxes,
                              matroid_subset_of_complex, verify_topological_colorful_helly, verify_tolerant_colorful)
from complex_core import (SimplicialComplex, costar, helly_number, induced, intersection, is_cone, join, link,
                          missing_faces, relabel, union_all)
from config import COUNTEREXAMPLE_DIR, get_setting, get_suite_settings
from errors import InputError, PreconditionError
from formats import write_scx
from geometry_families import (has_common_point_with_tolerance, nerve_of_boxes, planted_colored_boxes, random_boxes,
                               random_complex, random_subfamily_complexes,
                               tolerant_helly_premise, two_block_complex)
from homology_engine import (BettiVector, RelativePair, betti_numbers, is_acyclic,
                             link_costar_defect, mayer_vietoris_defect, nerve, pair_sequence_defect,
                             reduced_betti_or_zero, relative_betti, verify_shift_isomorphism)
from leray import is_d_leray, leray_number
from logger import debug, exception, info, warning
from report_schemas import SuiteReport, TrialRecord, validate_report
from tolerance import (corollary42_pairs, free_face_instances, lemma41_decomposition, prop43_union,
                       prop43_unions, tolerance_complex)
from utils import format_mask, full_mask, ids_from_mask, popcount


class TrialOutcome(NamedTuple):
    passed: bool
    detail: str = ''
    instance: Optional[SimplicialComplex] = None
    skipped: bool = False


def _ok(detail: str = '') -> TrialOutcome:
    return TrialOutcome(True, detail)


def _fail(detail: str, instance: Optional[SimplicialComplex] = None) -> TrialOutcome:
    return TrialOutcome(False, detail, instance)


def _skip(detail: str) -> TrialOutcome:
    return TrialOutcome(True, detail, None, True)


class SuiteContext:
    """Parameters of one suite run (settings merged with command-line overrides)"""

    def __init__(self, name: str, seed: int, params: Dict):
        self.name = name
        self.seed = seed
        self.params = params

    def param(self, key, default=None):
        value = self.params.get(key)
        return default if value is None else value

    def t_for(self, index: int, default=(1,)) -> int:
        values = list(self.param('t_values', default))
        return int(values[index % len(values)])

    def n_max(self, default: int = 7) -> int:
        return int(self.param('n_max', default))


class Suite(NamedTuple):
    name: str
    description: str
    trial: Callable[[SuiteContext, int, np.random.Generator], TrialOutcome]
    fixed_trials: Optional[Callable[[SuiteContext], int]]


SUITES: Dict[str, Suite] = {}


def suite(name: str, description: str, fixed_trials: Optional[Callable[[SuiteContext], int]] = None):
    """Register a trial function under a suite name"""
    def decorator(func):
        SUITES[name] = Suite(name, description, func, fixed_trials)
        return func
    return decorator


def list_suites() -> List[Dict[str, str]]:
    return [{'name': s.name, 'description': s.description} for s in SUITES.values()]


# ============================================================================
# Instance helpers
# ============================================================================

def _random_instance(rng: np.random.Generator, n_max: int, n_min: int = 4,
                     low: float = 0.3, high: float = 0.75, attempts: int = 20) -> SimplicialComplex:
    """Random complex with at least two maximal faces and no cone point, when one turns up in time"""
    n_min = min(n_min, n_max)
    K = None
    for _ in range(attempts):
        n = int(rng.integers(n_min, max(n_min, n_max) + 1))
        K = random_complex(n, float(rng.uniform(low, high)), rng=rng)
        if len(K.maximal_faces) >= 2 and is_cone(K) is None:
            break
    return K


def _random_subset(rng: np.random.Generator, mask: int, p: float = 0.5) -> int:
    ids = ids_from_mask(mask)
    keep = rng.random(len(ids)) < p
    out = 0
    for v, k in zip(ids, keep):
        if k:
            out |= 1 << v
    return out


def _random_vertex(rng: np.random.Generator, mask: int) -> Optional[int]:
    ids = ids_from_mask(mask)
    if not ids:
        return None
    return ids[int(rng.integers(0, len(ids)))]


def _random_face(rng: np.random.Generator, K: SimplicialComplex) -> Optional[int]:
    """Random non-empty face: a random subset of a random maximal face"""
    candidates = [m for m in K.maximal_faces if m]
    if not candidates:
        return None
    top = candidates[int(rng.integers(0, len(candidates)))]
    face = _random_subset(rng, top)
    return face or 1 << _random_vertex(rng, top)


def _planted_classes(rng: np.random.Generator, C: SimplicialComplex, count: int) -> PartitionMatroid:
    """
    Color classes whose transversals are faces of C.

    Vertices of a random maximal face are colored freely; every other vertex
    joins a random class only if the matroid stays inside C.
    """
    classes = [0] * count
    candidates = [m for m in C.maximal_faces if m]
    if not candidates:
        return PartitionMatroid(classes)
    top = candidates[int(rng.integers(0, len(candidates)))]
    for v in ids_from_mask(top):
        slot = int(rng.integers(0, count + 1))
        if slot < count:
            classes[slot] |= 1 << v
    outside = ids_from_mask(C.ambient & ~top)
    for v in rng.permutation(outside).tolist() if outside else []:
        slot = int(rng.integers(0, count + 1))
        if slot == count:
            continue
        trial = list(classes)
        trial[slot] |= 1 << v
        if matroid_subset_of_complex(PartitionMatroid(trial), C):
            classes = trial
    return PartitionMatroid(classes)


def _bound_dimension(C: int) -> int:
    # h(t, 0) = 0 degenerates; every 0-collapsible complex is 1-collapsible
    return max(C, 1)


# ============================================================================
# Tolerance complexes
# ============================================================================

@suite('two-blocks', "two disjoint (t+1)-blocks: C = 1 and T_t is a (2t)-sphere with L = 2t + 1 = h(t, 1)",
       fixed_trials=lambda ctx: len(ctx.param('t_values', [1, 2, 3])))
def _two_blocks(ctx, index, rng):
    t = int(ctx.param('t_values', [1, 2, 3])[index])
    K = two_block_complex(t)
    C = collapsibility_number(K)
    T = tolerance_complex(K, t)
    sphere = SimplicialComplex.boundary_of_simplex(K.ambient)
    L = leray_number(T, force=True)
    if C != 1 or T != sphere or L != 2 * t + 1 or L != h_value(t, 1):
        return _fail(f"t={t}: C={C}, L={L}, sphere={T == sphere}", K)
    return _ok(f"t={t}: L={L}")


@suite('thm1.5', "T_t(K) is h(t, d)-Leray for d-collapsible K")
def _tolerance_leray_bound(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(8))
    t = ctx.t_for(index, (1, 2))
    C = collapsibility_number(K)
    d_fixed = ctx.param('d')
    if d_fixed is not None and C > int(d_fixed):
        return _skip(f"C={C} above d={d_fixed}")
    d = _bound_dimension(int(d_fixed) if d_fixed is not None else C)
    L = leray_number(tolerance_complex(K, t))
    bound = h_value(t, d)
    if L > bound:
        return _fail(f"L(T_{t}(K))={L} > h({t},{d})={bound}", K)
    return _ok(f"t={t} d={d} L={L} <= {bound}")


@suite('thm1.6', "T_1(K) is 5-Leray for 2-collapsible K (random complexes and planar box nerves)")
def _tolerance_d2t1(ctx, index, rng):
    n_max = ctx.n_max(8)
    if index % 2:
        n = int(rng.integers(2, n_max + 1))
        K = nerve_of_boxes(random_boxes(2, n, rng=rng, coord_range=8))
        if not is_d_collapsible(K, 2)[0]:
            return _fail("nerve of planar boxes is not 2-collapsible", K)
    else:
        K = _random_instance(rng, n_max)
        if not is_d_collapsible(K, 2)[0]:
            return _skip("not 2-collapsible")
    L = leray_number(tolerance_complex(K, 1))
    if L > 5:
        return _fail(f"L(T_1(K))={L} > 5", K)
    return _ok(f"L={L}")


@suite('lemma4.1', "T_t(K) minus T_t(cost(K,s)) equals s joined with the link-side difference")
def _decomposition_identity(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    sigma = _random_face(rng, K)
    if sigma is None:
        return _skip("no non-empty face")
    t = ctx.t_for(index, (1, 2))
    left, right = lemma41_decomposition(K, t, sigma)
    if left != right:
        return _fail(f"t={t} sigma={format_mask(sigma)}: {len(left ^ right)} faces differ", K)
    return _ok(f"t={t} sigma={format_mask(sigma)} |difference|={len(left)}")


@suite('cor4.2', "relative Betti of (T_t(K), T_t(cost)) equals the link-side pair shifted by |s|")
def _relative_shift(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    sigma = _random_face(rng, K)
    if sigma is None:
        return _skip("no non-empty face")
    t = ctx.t_for(index, (1, 2))
    outer, inner = corollary42_pairs(K, t, sigma)
    lhs = relative_betti(outer)
    rhs = relative_betti(inner).shifted(popcount(sigma))
    if lhs != rhs:
        return _fail(f"t={t} sigma={format_mask(sigma)}: {lhs} vs {rhs}", K)
    if not verify_shift_isomorphism(outer, inner, sigma):
        return _fail(f"t={t} sigma={format_mask(sigma)}: shift is not a chain isomorphism", K)
    return _ok(f"t={t} sigma={format_mask(sigma)}")


@suite('prop4.3', "relative Betti of a free face equals the direct sum over W of the union complexes")
def _free_face_direct_sum(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7), low=0.4, high=0.8)
    instances = free_face_instances(K)
    if not instances:
        return _skip("no free face with a larger unique maximal face")
    sigma, _ = instances[int(rng.integers(0, len(instances)))]
    t = ctx.t_for(index, (1, 2))
    U, unions = prop43_unions(K, t, sigma)
    outer, _ = corollary42_pairs(K, t, sigma)
    lhs = relative_betti(outer)
    total = BettiVector({})
    for _, Y in unions:
        total = total + reduced_betti_or_zero(Y)
    rhs = total.shifted(popcount(sigma) + 1)
    if lhs != rhs:
        return _fail(f"t={t} sigma={format_mask(sigma)} U={format_mask(U)}: {lhs} vs {rhs}", K)
    return _ok(f"t={t} sigma={format_mask(sigma)} W-count={len(unions)}")


# ============================================================================
# Homology facts
# ============================================================================

@suite('lemma3.2', "cells of X - Y of the form eta | s give H_k(X,Y) = H_{k-|s|}(Z,W) at chain level")
def _shift_lemma(ctx, index, rng):
    n = int(rng.integers(3, ctx.n_max(7) + 1))
    V = full_mask(n)
    size = int(rng.integers(1, min(3, n - 1) + 1))
    chosen = rng.choice(n, size=size, replace=False)
    sigma = 0
    for v in chosen.tolist():
        sigma |= 1 << v
    rest = ids_from_mask(V & ~sigma)
    Z = relabel(random_complex(len(rest), float(rng.uniform(0.3, 0.8)), rng=rng), rest)
    W = intersection(Z, relabel(random_complex(len(rest), float(rng.uniform(0.3, 0.8)), rng=rng), rest))
    E = costar(random_complex(n, float(rng.uniform(0.3, 0.8)), rng=rng), sigma)
    X = union_all([join(Z, SimplicialComplex.simplex(sigma)), E], ambient=V)
    Y = union_all([join(Z, SimplicialComplex.boundary_of_simplex(sigma)),
                   join(W, SimplicialComplex.simplex(sigma)), E], ambient=V)
    outer, inner = RelativePair(X, Y), RelativePair(Z, W)
    if not verify_shift_isomorphism(outer, inner, sigma):
        return _fail(f"sigma={format_mask(sigma)}: not a chain isomorphism", X)
    lhs, rhs = relative_betti(outer), relative_betti(inner).shifted(popcount(sigma))
    if lhs != rhs:
        return _fail(f"sigma={format_mask(sigma)}: {lhs} vs {rhs}", X)
    return _ok(f"sigma={format_mask(sigma)} {lhs}")


@suite('lemma3.1', "members meeting in one acyclic simplex: Betti numbers of the union add up")
def _direct_sum(ctx, index, rng):
    n_max = ctx.n_max(10)
    s = int(rng.integers(1, 3))
    members = int(rng.integers(2, 4))
    private_sizes = []
    used = s
    for _ in range(members):
        k = int(rng.integers(1, 4))
        k = max(1, min(k, n_max - used - (members - len(private_sizes) - 1)))
        private_sizes.append(k)
        used += k
    V = full_mask(used)
    S = full_mask(s)
    family = []
    offset = s
    for k in private_sizes:
        span = list(range(s)) + list(range(offset, offset + k))
        offset += k
        extra = relabel(random_complex(len(span), float(rng.uniform(0.3, 0.8)), rng=rng), span, ambient=V)
        family.append(union_all([SimplicialComplex.simplex(S, ambient=V), extra], ambient=V))
    for i in range(members):
        for j in range(i + 1, members):
            meet = intersection(family[i], family[j])
            if not is_acyclic(meet):
                return _fail("pairwise intersection is not acyclic", union_all(family))
    total = BettiVector({})
    for X in family:
        total = total + betti_numbers(X)
    joined = union_all(family, ambient=V)
    if betti_numbers(joined) != total:
        return _fail(f"union {betti_numbers(joined)} vs sum {total}", joined)
    return _ok(f"members={members} {total}")


@suite('nerve-thm', "union of simplices has the Betti numbers of its nerve")
def _nerve_theorem(ctx, index, rng):
    n = int(rng.integers(2, ctx.n_max(8) + 1))
    family = random_subfamily_complexes(n, int(rng.integers(2, 6)), rng=rng)
    joined = union_all(family)
    N = nerve(family)
    if betti_numbers(joined) != betti_numbers(N):
        return _fail(f"union {betti_numbers(joined)} vs nerve {betti_numbers(N)}", joined)
    return _ok(f"{betti_numbers(N)}")


@suite('exact-mv', "Mayer-Vietoris dimensions have zero alternating sum")
def _exact_mv(ctx, index, rng):
    n = int(rng.integers(2, ctx.n_max(7) + 1))
    X = random_complex(n, float(rng.uniform(0.3, 0.8)), rng=rng)
    Y = random_complex(n, float(rng.uniform(0.3, 0.8)), rng=rng)
    defect = mayer_vietoris_defect(X, Y)
    if defect:
        return _fail(f"defect {defect}", union_all([X, Y]))
    return _ok()


@suite('exact-link-costar', "link-costar sequence dimensions have zero alternating sum")
def _exact_link_costar(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    v = _random_vertex(rng, K.vertices)
    if v is None:
        return _skip("no vertex")
    defect = link_costar_defect(K, v)
    if defect:
        return _fail(f"v={v}: defect {defect}", K)
    return _ok(f"v={v}")


@suite('exact-pair', "pair sequence dimensions have zero alternating sum")
def _exact_pair(ctx, index, rng):
    n = int(rng.integers(2, ctx.n_max(7) + 1))
    X = random_complex(n, float(rng.uniform(0.3, 0.8)), rng=rng)
    Y = intersection(X, random_complex(n, float(rng.uniform(0.2, 0.7)), rng=rng))
    defect = pair_sequence_defect(X, Y)
    if defect:
        return _fail(f"defect {defect}", X)
    return _ok()


@suite('km-union', "L(X_1 | .. | X_r) <= sum of (L(X_i) + 1) - 1")
def _union_bound(ctx, index, rng):
    n = int(rng.integers(2, ctx.n_max(7) + 1))
    parts = [random_complex(n, float(rng.uniform(0.2, 0.7)), rng=rng) for _ in range(int(rng.integers(2, 4)))]
    joined = union_all(parts)
    L = leray_number(joined)
    bound = sum(leray_number(X) + 1 for X in parts) - 1
    if L > bound:
        return _fail(f"L(union)={L} > {bound}", joined)
    return _ok(f"L={L} <= {bound}")


# ============================================================================
# Bound functions
# ============================================================================

def _bounds_cases(ctx) -> List[Callable[[], Optional[str]]]:
    t_max = int(ctx.param('t_max', 10))
    d_max = int(ctx.param('d_max', 10))

    def h_base():
        bad = [d for d in range(d_max + 1) if h_value(0, d) != d]
        return f"h(0,d) != d for d in {bad}" if bad else None

    def h_d1():
        bad = [t for t in range(t_max + 1) if h_value(t, 1) != 2 * t + 1]
        return f"h(t,1) != 2t+1 for t in {bad}" if bad else None

    def h_t1():
        bad = [d for d in range(d_max + 1) if h_value(1, d) != d * d + 2 * d]
        return f"h(1,d) != d^2+2d for d in {bad}" if bad else None

    def h_monotone():
        for t in range(t_max + 1):
            for d in range(d_max + 1):
                if t < t_max and h_value(t + 1, d) < h_value(t, d):
                    return f"h not monotone in t at ({t},{d})"
                if d < d_max and h_value(t, d + 1) < h_value(t, d):
                    return f"h not monotone in d at ({t},{d})"
        return None

    def h_rederived():
        for d in range(d_max + 1):
            column = [d]
            for t in range(1, t_max + 1):
                column.append(sum(comb(d, s) * (column[t - s] + 1) for s in range(1, min(t, d) + 1)) + d)
            bad = [t for t in range(t_max + 1) if column[t] != h_value(t, d)]
            if bad:
                return f"bottom-up table differs at d={d}, t in {bad}"
        return None

    def h_matches_eta():
        bad = [t for t in range(t_max + 1) if h_value(t, 1) != eta_closed(2, t + 1) - 1]
        return f"h(t,1) != eta(2,t+1)-1 for t in {bad}" if bad else None

    def eta_search():
        rails = get_setting('eta_guard_rails', {}) or {}
        for t in range(1, int(rails.get('t_max', 3)) + 1):
            n_max = min(int(rails.get('n_max', 8)), 2 * t + 2)
            found = eta_bruteforce(2, t, n_max)
            if found != min(eta_closed(2, t), n_max):
                return f"eta brute force {found} vs closed {eta_closed(2, t)} at t={t}"
        return None

    def tuza():
        for r in range(2, 9):
            for t in range(1, t_max + 1):
                closed = eta_closed(r, t)
                if closed is not None and not closed < tuza_upper(r, t):
                    return f"eta({r},{t})={closed} not below Tuza bound {tuza_upper(r, t)}"
        return None

    def critical():
        for t in range(1, 4):
            for H in critical_examples(2, t, 2 * t):
                if not is_t_critical(H, t):
                    return f"{H} is not {t}-critical"
        return None

    return [h_base, h_d1, h_t1, h_monotone, h_rederived, h_matches_eta, eta_search, tuza, critical]


@suite('bounds', "h(t, d) closed forms and recursion, eta closed forms vs brute force, Tuza strictness",
       fixed_trials=lambda ctx: len(_bounds_cases(ctx)))
def _bounds(ctx, index, rng):
    case = _bounds_cases(ctx)[index]
    problem = case()
    if problem:
        return _fail(problem)
    return _ok(case.__name__)


@suite('thm1.2', "h(T_t(K)) <= eta(d+1, t+1) - 1 whenever h(K) <= d")
def _helly_tolerance(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    hK = helly_number(K)
    d_max, t_max = int(ctx.param('d_max', 3)), int(ctx.param('t_max', 3))
    cases = [(1, t) for t in range(1, t_max + 1)] + [(d, 1) for d in range(2, d_max + 1)]
    cases = [(d, t) for d, t in cases if d >= hK]
    if not cases:
        return _skip(f"h(K)={hK} above every tested d")
    d, t = cases[index % len(cases)]
    bound = eta_closed(d + 1, t + 1) - 1
    hT = helly_number(tolerance_complex(K, t))
    if hT > bound:
        return _fail(f"d={d} t={t}: h(T_t(K))={hT} > {bound}", K)
    return _ok(f"d={d} t={t} h={hT} <= {bound}")


@suite('lemma5.1', "for 2-collapsible K and a free edge uv: lk(K,v)[U+w] | lk(K,u)[U+w] has no homology above 1")
def _union_of_links(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(8), n_min=4, low=0.45, high=0.85)
    if not is_d_collapsible(K, 2)[0]:
        return _skip("not 2-collapsible")
    instances = [(s, U) for s, U in free_face_instances(K) if popcount(s) == 2 and K.ambient & ~(s | U)]
    if not instances:
        return _skip("no free edge with an outside vertex")
    sigma, U = instances[int(rng.integers(0, len(instances)))]
    w = _random_vertex(rng, K.ambient & ~(sigma | U))
    Y = prop43_union(K, 1, sigma, U, 1 << w)
    top = reduced_betti_or_zero(Y).top()
    if top is not None and top >= 2:
        return _fail(f"sigma={format_mask(sigma)} U={format_mask(U)} w={w}: homology in dimension {top}", K)
    return _ok(f"sigma={format_mask(sigma)} w={w}")


# ============================================================================
# Colorful Helly
# ============================================================================

@suite('thm6.3', "d-Leray K containing a partition matroid has a face s with rho(V - s) <= d")
def _topological_colorful(ctx, index, rng):
    n_max = ctx.n_max(9)
    if index % 2:
        d = int(rng.integers(1, 3))
        n = int(rng.integers(2, min(n_max, 10) + 1))
        K = nerve_of_boxes(random_boxes(d, n, rng=rng, coord_range=6))
        if not is_d_leray(K, d)[0]:
            return _fail(f"nerve of boxes in dimension {d} is not {d}-Leray", K)
    else:
        K = _random_instance(rng, n_max)
        d = leray_number(K)
    M = _planted_classes(rng, K, d + 1)
    try:
        witness = verify_topological_colorful_helly(K, M, d)
    except PreconditionError as e:
        return _skip(str(e))
    if witness is None:
        return _fail(f"d={d} {M}: no face s with rho(V - s) <= d", K)
    return _ok(f"d={d} witness={format_mask(witness)}")


@suite('thm6.4', "d-collapsible K with M inside T_t(K) has s in T_t(K) with rho(V - s) <= h(t, d)")
def _tolerant_colorful(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    t = ctx.t_for(index, (1,))
    d = _bound_dimension(collapsibility_number(K))
    count = min(h_value(t, d) + 1, popcount(K.ambient))
    M = _planted_classes(rng, tolerance_complex(K, t), max(count, 1))
    try:
        witness, bound = verify_tolerant_colorful(K, M, t, d, 'tolerant')
    except PreconditionError as e:
        return _skip(str(e))
    if witness is None:
        return _fail(f"t={t} d={d} {M}: no witness within {bound}", K)
    return _ok(f"t={t} d={d} witness={format_mask(witness)}")


@suite('thm6.5', "2-collapsible K with M inside T_1(K) has s in T_1(K) with rho(V - s) <= 5")
def _tolerant_colorful_d2t1(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7), n_min=min(6, ctx.n_max(7)))
    if not is_d_collapsible(K, 2)[0]:
        return _skip("not 2-collapsible")
    M = _planted_classes(rng, tolerance_complex(K, 1), 6)
    try:
        witness, bound = verify_tolerant_colorful(K, M, 1, 2, 'd2t1')
    except PreconditionError as e:
        return _skip(str(e))
    if witness is None:
        return _fail(f"{M}: no witness within {bound}", K)
    return _ok(f"witness={format_mask(witness)}")


@suite('cor6.6', "six planar color classes: tolerant colorful premise implies some class has a tolerant common point")
def _planar_six(ctx, index, rng):
    per_class = int(ctx.param('per_class', 3))
    family = planted_colored_boxes(2, 6 * per_class, 6, rng=rng, coord_range=int(ctx.param('coord_range', 6)),
                                   stray=float(ctx.param('stray', 0.1)))
    premise, conclusion = check_planar_six_classes(family)
    if not premise:
        return _skip("premise fails")
    if not conclusion:
        return _fail("premise holds but no class has a point in common with tolerance 1", nerve_of_boxes(family))
    return _ok()


@suite('thm6.2', "d+1 box color classes: tolerant colorful premise implies some class has a tolerant common point")
def _tolerant_colorful_boxes(ctx, index, rng):
    per_class = int(ctx.param('per_class', 3))
    d, t = [(1, 1), (1, 2), (2, 1)][index % 3]
    family = planted_colored_boxes(d, (d + 1) * per_class, d + 1, rng=rng,
                                   coord_range=int(ctx.param('coord_range', 6)), stray=float(ctx.param('stray', 0.2)))
    premise, conclusion = check_tolerant_colorful_boxes(family, t)
    if not premise:
        return _skip(f"d={d} t={t}: premise fails")
    if not conclusion:
        return _fail(f"d={d} t={t}: premise holds, conclusion fails", nerve_of_boxes(family))
    return _ok(f"d={d} t={t}")


@suite('thm1.1', "intervals: if every 2t+2 members have a tolerant common point then so does the family")
def _tolerant_helly_intervals(ctx, index, rng):
    n = int(rng.integers(2, ctx.n_max(9) + 1))
    t = ctx.t_for(index, (0, 1, 2))
    family = random_boxes(1, n, rng=rng, coord_range=int(ctx.param('coord_range', 10)))
    if not tolerant_helly_premise(family, t, 2 * t + 2):
        return _skip(f"t={t}: premise fails")
    if not has_common_point_with_tolerance(family, t)[0]:
        return _fail(f"t={t}: premise holds, family has no common point with tolerance {t}", nerve_of_boxes(family))
    return _ok(f"t={t} n={n}")


# ============================================================================
# Conjecture search and heredity
# ============================================================================

@suite('conj-eta', "search for d-collapsible K with L(T_t(K)) > eta(d+1, t+1) - 1 (none expected)")
def _conjectural_bound(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    d = _bound_dimension(collapsibility_number(K))
    t = ctx.t_for(index, (1, 2)) if d == 1 else 1
    eta = eta_closed(d + 1, t + 1)
    if eta is None:
        return _skip(f"no closed form for eta({d + 1},{t + 1})")
    L = leray_number(tolerance_complex(K, t))
    if L > eta - 1:
        return _fail(f"d={d} t={t}: L(T_t(K))={L} > {eta - 1}", K)
    return _ok(f"d={d} t={t} L={L}")


@suite('heredity', "collapsibility passes to induced subcomplexes and links; C >= L >= h; certificates replay")
def _heredity(ctx, index, rng):
    K = _random_instance(rng, ctx.n_max(7))
    C = collapsibility_number(K)
    ok, certificate = is_d_collapsible(K, C)
    if not ok or not replay_certificate(K, certificate, C):
        return _fail(f"certificate for d={C} does not replay", K)
    if not is_d_collapsible(K, C + 1)[0]:
        return _fail(f"{C}-collapsible but not {C + 1}-collapsible", K)
    U = _random_subset(rng, K.ambient)
    if collapsibility_number(induced(K, U)) > C:
        return _fail(f"C(K[{format_mask(U)}]) > C(K)={C}", K)
    sigma = _random_face(rng, K)
    if sigma is not None and collapsibility_number(link(K, sigma)) > C:
        return _fail(f"C(lk(K,{format_mask(sigma)})) > C(K)={C}", K)
    L, h = leray_number(K), helly_number(K)
    if not C >= L >= h:
        return _fail(f"C={C}, L={L}, h={h} out of order", K)
    if any(popcount(m) > C + 1 for m in missing_faces(K)):
        return _fail(f"missing face larger than C + 1 = {C + 1}", K)
    return _ok(f"C={C} L={L} h={h}")


# ============================================================================
# Runner
# ============================================================================

def _run_trial(entry: Suite, ctx: SuiteContext, index: int) -> TrialOutcome:
    rng = np.random.default_rng([ctx.seed, index])
    try:
        return entry.trial(ctx, index, rng)
    except Exception as e:
        exception("Suite %s trial %d crashed: %s", ctx.name, index, str(e))
        return _fail(f"{type(e).__name__}: {e}")


def _dump(ctx: SuiteContext, index: int, outcome: TrialOutcome, dump_dir: str) -> Optional[str]:
    if outcome.instance is None:
        return None
    os.makedirs(dump_dir, exist_ok=True)
    path = os.path.join(dump_dir, f"{ctx.name}-seed{ctx.seed}-trial{index}.scx")
    write_scx(outcome.instance, path, comments=[f"suite {ctx.name} seed {ctx.seed} trial {index}",
                                                f"failed: {outcome.detail}"])
    return path


def _run_batch(entry: Suite, ctx: SuiteContext, indices: List[int], workers: int) -> List[TrialOutcome]:
    if workers > 1 and len(indices) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(lambda i: _run_trial(entry, ctx, i), indices))
    return [_run_trial(entry, ctx, i) for i in indices]


def run_suite(name: str, seed: Optional[int] = None, trials: Optional[int] = None,
              params: Optional[Dict] = None, workers: Optional[int] = None,
              dump_dir: Optional[str] = None) -> SuiteReport:
    """
    Run one suite and build its report.

    Randomized suites keep drawing until `trials` instances satisfied the
    premise (skipped draws do not count) or max_attempts_factor * trials
    draws were made; a run that ends short of `trials` valid instances fails.
    Draws are made in batches of the missing count, so the report does not
    depend on the worker count.

    Args:
        name: Suite name (see list_suites())
        seed: Base seed (default: settings default_seed)
        trials: Valid instances wanted (default: per-suite setting, then
            default_trials); ignored by tabulated suites
        params: Overrides of the per-suite settings (t_values, d, n_max, ...)
        workers: Thread pool size for trials
        dump_dir: Counterexample directory (default: COUNTEREXAMPLE_DIR)

    Raises:
        InputError: unknown suite
    """
    entry = SUITES.get(name)
    if entry is None:
        raise InputError(f"unknown suite {name!r}; see verify --list")
    settings = get_suite_settings(name)
    settings.update({k: v for k, v in (params or {}).items() if v is not None})
    seed = int(get_setting('default_seed', 0) if seed is None else seed)
    ctx = SuiteContext(name, seed, settings)
    if entry.fixed_trials is not None:
        count = entry.fixed_trials(ctx)
        max_draws = count
    else:
        count = int(trials if trials is not None else settings.get('trials', get_setting('default_trials', 50)))
        max_draws = count * int(get_setting('max_attempts_factor', 20))
    workers = int(workers or get_setting('workers', 1))
    info("Running suite %s: %d trials, seed %d, %d workers", name, count, seed, workers)

    failures: List[TrialRecord] = []
    valid = skipped = drawn = 0
    while valid < count and drawn < max_draws:
        indices = list(range(drawn, min(drawn + count - valid, max_draws)))
        for index, outcome in zip(indices, _run_batch(entry, ctx, indices, workers)):
            if outcome.skipped:
                skipped += 1
                continue
            valid += 1
            if not outcome.passed:
                record: TrialRecord = {'trial': index, 'passed': False, 'skipped': False, 'detail': outcome.detail,
                                       'counterexample': _dump(ctx, index, outcome, dump_dir or COUNTEREXAMPLE_DIR)}
                failures.append(record)
        drawn = indices[-1] + 1

    failed = len(failures)
    notes = []
    if skipped:
        notes.append(f"{skipped} trials skipped because the premise did not hold")
    short = valid < count
    if short:
        notes.append(f"only {valid} of {count} valid instances in {drawn} draws")
        warning("Suite %s: only %d of %d valid instances in %d draws", name, valid, count, drawn)
    report: SuiteReport = {
        'status': 'fail' if failed or short else 'success',
        'suite': name,
        'seed': seed,
        'trials': count,
        'valid': valid,
        'drawn': drawn,
        'passed': valid - failed,
        'failed': failed,
        'skipped': skipped,
        'failures': failures,
        'notes': notes,
    }
    validate_report(report, SuiteReport)
    debug("Suite %s finished: %d passed, %d failed, %d skipped", name, report['passed'], failed, skipped)
    return report
