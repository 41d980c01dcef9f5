"""Exhaustive extremal-value search, wedge counting, and related checks.

extremal_search computes ex(n, k, r): the maximum number of edges of an
n-vertex k-uniform hypergraph with no r-regular subgraph, by include-first
depth-first search over the complete k-set universe in colex order, pruning
with an incremental solver call (adding an edge to a regular-free set can
only create regular subgraphs through that edge) and a remaining-slots bound.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb

from .errors import GuardError
from .hypercore import Hypergraph, mask_of, vertices_of
from .regdetect import SolverBudget, SolveStatus, _solve_masks, find_regular


@dataclass(frozen=True)
class SearchReport:
    n: int
    k: int
    r: int
    optimum: int
    witness: Hypergraph
    complete: bool
    nodes: int
    elapsed_ms: float


@dataclass(frozen=True)
class WedgeCount:
    """Wedges at center v: pairs (e, f) with e an edge avoiding v, f a
    non-edge k-set through v, and |e n f| = k - k/r."""

    v: int
    r: int
    k: int
    k_prime: int
    total: int
    per_edge: dict[int, int]


@dataclass(frozen=True)
class ThreeSetPartition:
    """3-sets T split by how many non-edges pass through T + {v}: T is bad
    iff 8 * d(T) >= C(n-k-4, k-4), with d counted over non-edges."""

    v: int
    good: tuple[tuple[int, int, int], ...]
    bad: tuple[tuple[int, int, int], ...]


class _OuterBudget(Exception):
    pass


def _comb0(a: int, b: int) -> int:
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def min_set_cover(num_elements: int, sets: list[int]) -> tuple[int, tuple[int, ...]]:
    """Exact minimum set cover over bitmask sets; branch on the lowest
    uncovered element, bound by remaining/max-set-size.  Returns the size and
    the first optimal selection found (ascending indices)."""
    full = (1 << num_elements) - 1
    if full == 0:
        return 0, ()
    union = 0
    for s in sets:
        union |= s
    if union & full != full:
        raise ValueError("the sets do not cover all elements")
    containing: list[list[int]] = [[] for _ in range(num_elements)]
    for i, s in enumerate(sets):
        mm = s & full
        while mm:
            low = mm & -mm
            containing[low.bit_length() - 1].append(i)
            mm ^= low
    max_size = max((s & full).bit_count() for s in sets)

    # greedy upper bound seeds the incumbent
    covered, greedy = 0, []
    while covered != full:
        best_i = min(
            range(len(sets)),
            key=lambda i: (-(sets[i] & ~covered & full).bit_count(), i),
        )
        greedy.append(best_i)
        covered |= sets[best_i]
    best_size = len(greedy)
    best_sets = tuple(sorted(greedy))

    chosen: list[int] = []

    def dfs(covered: int) -> None:
        nonlocal best_size, best_sets
        if covered == full:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_sets = tuple(sorted(chosen))
            return
        uncov = (~covered & full).bit_count()
        if len(chosen) + -(-uncov // max_size) >= best_size:
            return
        e = ((~covered & full) & -(~covered & full)).bit_length() - 1
        for i in containing[e]:
            chosen.append(i)
            dfs(covered | sets[i])
            chosen.pop()

    dfs(0)
    return best_size, best_sets


def extremal_search(
    n: int,
    k: int,
    r: int,
    budget: SolverBudget | None = None,
    isomorph_reject: bool = False,
) -> SearchReport:
    """Exact ex(n, k, r) over the full C(n, k) universe (guarded to 64
    candidate edges).  With a budget the search may stop early, returning the
    best complete leaf seen and complete=False."""
    if not isinstance(r, int) or r < 2:
        raise ValueError(f"r must be an integer >= 2, got {r!r}")
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if comb(n, k) > 64:
        raise GuardError(f"universe C({n},{k}) exceeds the 64-edge guard")
    if isomorph_reject and n > 7:
        raise GuardError("isomorph rejection is limited to n <= 7")

    universe = sorted(mask_of(e) for e in combinations(range(n), k))
    total = len(universe)
    start = time.perf_counter()
    deadline = None
    if budget is not None and budget.max_millis is not None:
        deadline = start + budget.max_millis / 1000.0
    max_nodes = budget.max_nodes if budget is not None else None

    best_count = -1
    best_masks: tuple[int, ...] = ()
    nodes = 0
    seen_states: set = set()
    perms = list(permutations(range(n))) if isomorph_reject else []

    def canon(chosen: tuple[int, ...], slot: int):
        chosen_set = set(chosen)
        excluded = [universe[i] for i in range(slot) if universe[i] not in chosen_set]
        best = None
        for pi in perms:
            mapped_c = tuple(sorted(
                sum(1 << pi[v] for v in vertices_of(m)) for m in chosen
            ))
            mapped_e = tuple(sorted(
                sum(1 << pi[v] for v in vertices_of(m)) for m in excluded
            ))
            key = (mapped_c, mapped_e)
            if best is None or key < best:
                best = key
        return slot, best

    def dfs(slot: int, chosen: tuple[int, ...]) -> None:
        nonlocal best_count, best_masks, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _OuterBudget
        if deadline is not None and nodes % 64 == 0 and time.perf_counter() > deadline:
            raise _OuterBudget
        if slot == total:
            if len(chosen) > best_count:
                best_count = len(chosen)
                best_masks = chosen
            return
        if len(chosen) + (total - slot) <= best_count:
            return
        if isomorph_reject and slot < 8:
            key = canon(chosen, slot)
            if key in seen_states:
                return
            seen_states.add(key)
        new = chosen + (universe[slot],)
        res = _solve_masks(n, list(new), r, forced=len(new) - 1)
        if res.status is not SolveStatus.FOUND:
            dfs(slot + 1, new)
        dfs(slot + 1, chosen)

    complete = True
    try:
        dfs(0, ())
    except _OuterBudget:
        complete = False

    if best_count < 0:
        best_count, best_masks = 0, ()
    witness = Hypergraph(n, [vertices_of(m) for m in best_masks])
    check = find_regular(witness, r)
    if check.status is not SolveStatus.NONE_EXISTS:
        raise AssertionError("search witness failed its freeness re-verification")
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return SearchReport(
        n=n, k=k, r=r, optimum=best_count, witness=witness,
        complete=complete, nodes=nodes, elapsed_ms=elapsed_ms,
    )


def count_wedges(h: Hypergraph, v: int, r: int) -> WedgeCount:
    """Exact wedge count at v.  The non-edge side is never materialized: for
    each edge e avoiding v, wedge partners are exactly (e - D) + S + {v} over
    k/r-subsets D of e and (k/r - 1)-sets S outside e + {v}, minus those that
    are edges; (D, S) <-> f is a bijection, so each wedge is counted once."""
    k = h.uniformity
    if k is None:
        raise ValueError("a nonempty uniform hypergraph is required")
    if r < 1 or k % r:
        raise ValueError(f"r must divide k, got k={k}, r={r}")
    if not (0 <= v < h.n):
        raise ValueError(f"vertex {v} out of range")
    kp = k // r
    idx = h.mask_index
    vbit = 1 << v
    per_edge: dict[int, int] = {}
    total = 0
    for i, (e, me) in enumerate(zip(h.edges, h.edge_masks)):
        if me & vbit:
            continue
        pool = [u for u in range(h.n) if u != v and not (me >> u) & 1]
        s_masks = [mask_of(s) for s in combinations(pool, kp - 1)]
        cnt = 0
        for d in combinations(e, kp):
            base = (me ^ mask_of(d)) | vbit
            for sm in s_masks:
                if base | sm not in idx:
                    cnt += 1
        per_edge[i] = cnt
        total += cnt
    return WedgeCount(v=v, r=r, k=k, k_prime=kp, total=total, per_edge=per_edge)


def classify_3sets(h: Hypergraph, v: int) -> ThreeSetPartition:
    """Partition the 3-sets of V - {v} by the exact integer comparison
    8 * d(T + {v}) >= C(n-k-4, k-4), where d counts non-edge k-sets through
    T + {v} as C(n-4, k-4) minus the edge count (no floating point)."""
    k = h.uniformity
    if k is None or k < 5:
        raise ValueError("a k-uniform hypergraph with k >= 5 is required")
    if not (0 <= v < h.n):
        raise ValueError(f"vertex {v} out of range")
    n = h.n
    inc = h.vertex_incidence
    through_all = _comb0(n - 4, k - 4)
    rhs = _comb0(n - k - 4, k - 4)
    good, bad = [], []
    others = [u for u in range(n) if u != v]
    for t in combinations(others, 3):
        d_edges = (inc[v] & inc[t[0]] & inc[t[1]] & inc[t[2]]).bit_count()
        d_non = through_all - d_edges
        (bad if 8 * d_non >= rhs else good).append(t)
    return ThreeSetPartition(v=v, good=tuple(good), bad=tuple(bad))


def is_linear(h: Hypergraph) -> bool:
    """True iff every two distinct edges share at most one vertex."""
    seen: set[tuple[int, int]] = set()
    for e in h.edges:
        for pair in combinations(e, 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True
