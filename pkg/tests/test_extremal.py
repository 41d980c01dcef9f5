from __future__ import annotations

import random
from itertools import combinations
from math import comb

import pytest

from oracles import extremal_by_enumeration, min_cover_by_scan, wedge_total
from regulus.errors import GuardError
from regulus.gadgets import full_star, star_plus
from regulus.hypercore import Hypergraph, complete_uniform
from regulus.regdetect import SolverBudget, SolveStatus, find_regular
from regulus.extremal import (
    classify_3sets,
    count_wedges,
    extremal_search,
    is_linear,
    min_set_cover,
)

FANO = Hypergraph(7, [(0, 1, 2), (0, 3, 4), (0, 5, 6),
                      (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)])


def test_smallest_case_is_whole_universe():
    rep = extremal_search(4, 3, 2)
    assert rep.complete
    assert rep.optimum == 4
    assert rep.witness == complete_uniform(4, 3)
    assert rep.optimum == extremal_by_enumeration(4, 3, 2)


def test_five_vertices_admit_every_triple():
    # a 2-regular 3-uniform subgraph satisfies 3m = 2w, so m is even and
    # w = 3m/2 >= 6 vertices; no 5-vertex host can contain one, hence the
    # optimum is the full C(5,3) = 10
    rep = extremal_search(5, 3, 2)
    assert rep.complete
    assert rep.optimum == 10
    assert rep.optimum == extremal_by_enumeration(5, 3, 2)


def test_six_vertices_match_star_plus_matching_pattern():
    # first size where 2-regular subgraphs exist at all; the optimum equals
    # C(5,2) + floor(5/3) = 11 (full star plus one disjoint edge)
    rep = extremal_search(6, 3, 2)
    assert rep.complete
    assert rep.optimum == comb(5, 2) + (6 - 1) // 3 == 11


def test_optimum_at_least_full_star():
    for n, k, r in ((5, 3, 2), (6, 3, 3), (5, 4, 2), (6, 5, 4)):
        rep = extremal_search(n, k, r)
        assert rep.optimum >= comb(n - 1, k - 1)


def test_witness_is_free_and_sized():
    rep = extremal_search(5, 3, 2)
    assert len(rep.witness.edges) == rep.optimum
    assert find_regular(rep.witness, 2).status is SolveStatus.NONE_EXISTS


def test_isomorph_rejection_preserves_optimum():
    plain = extremal_search(5, 3, 2)
    pruned = extremal_search(5, 3, 2, isomorph_reject=True)
    assert pruned.optimum == plain.optimum
    assert pruned.complete
    assert pruned.nodes <= plain.nodes


def test_isomorph_rejection_vertex_guard():
    with pytest.raises(GuardError):
        extremal_search(8, 3, 2, isomorph_reject=True)


def test_universe_guard():
    with pytest.raises(GuardError):
        extremal_search(9, 4, 2)


def test_parameter_validation():
    with pytest.raises(ValueError):
        extremal_search(4, 3, 1)
    with pytest.raises(ValueError):
        extremal_search(0, 3, 2)


def test_budget_interrupts_search():
    rep = extremal_search(6, 3, 2, budget=SolverBudget(max_nodes=20))
    assert not rep.complete
    assert rep.nodes <= 21
    assert find_regular(rep.witness, 2).status is SolveStatus.NONE_EXISTS
    again = extremal_search(6, 3, 2, budget=SolverBudget(max_nodes=20))
    assert again.optimum == rep.optimum
    assert again.nodes == rep.nodes


def test_min_set_cover_small():
    # elements 0..3; sets {0,1}, {2}, {3}, {1,2,3}
    size, chosen = min_set_cover(4, [0b0011, 0b0100, 0b1000, 0b1110])
    assert size == 2
    assert chosen == (0, 3)


def test_min_set_cover_requires_coverage():
    with pytest.raises(ValueError):
        min_set_cover(3, [0b011])


def test_min_set_cover_matches_scan():
    rng = random.Random(17)
    for _ in range(60):
        ne = rng.randint(1, 8)
        sets = [rng.randint(1, (1 << ne) - 1) for _ in range(rng.randint(1, 9))]
        want = min_cover_by_scan(ne, sets)
        if want is None:
            with pytest.raises(ValueError):
                min_set_cover(ne, sets)
        else:
            size, chosen = min_set_cover(ne, sets)
            assert size == want
            union = 0
            for i in chosen:
                union |= sets[i]
            assert union == (1 << ne) - 1


def test_wedges_zero_at_star_center():
    h, _ = full_star(8, 3)
    w = count_wedges(h, 0, 3)
    assert w.total == 0 and w.per_edge == {}


def test_wedges_zero_when_no_missing_sets():
    # the star side of star-plus is complete at the center, so no k-set
    # through the center is a non-edge and the count collapses to zero
    h, _ = star_plus(8, 3, 3)
    w = count_wedges(h, 0, 3)
    assert w.total == 0
    assert list(w.per_edge.values()) == [0]
    assert w.total == wedge_total(h.edges, h.n, 0, 3)


def test_wedges_on_dented_star():
    star, _ = full_star(8, 3)
    pruned = [e for e in star.edges if e not in ((0, 1, 2), (0, 3, 4))]
    h = Hypergraph(8, pruned + [(1, 2, 3)])
    w = count_wedges(h, 0, 3)
    assert w.total == wedge_total(h.edges, h.n, 0, 3)
    assert w.total == sum(w.per_edge.values())
    assert w.k_prime == 1


def test_wedges_match_oracle_on_random_instances():
    rng = random.Random(29)
    for _ in range(60):
        k, r = rng.choice(((3, 3), (4, 2), (4, 4), (2, 2)))
        n = rng.randint(k + 2, 9)
        pool = list(combinations(range(n), k))
        h = Hypergraph(n, rng.sample(pool, rng.randint(1, min(15, len(pool)))))
        v = rng.randrange(n)
        w = count_wedges(h, v, r)
        assert w.total == wedge_total(h.edges, h.n, v, r)
        assert w.total == sum(w.per_edge.values())
        assert set(w.per_edge) == {i for i, e in enumerate(h.edges) if v not in e}


def test_wedges_parameter_validation():
    h, _ = full_star(8, 3)
    with pytest.raises(ValueError):
        count_wedges(h, 0, 2)  # r does not divide k
    with pytest.raises(ValueError):
        count_wedges(h, 8, 3)
    with pytest.raises(ValueError):
        count_wedges(Hypergraph(4, [(0, 1), (0, 1, 2)]), 0, 2)


def test_classify_full_star_all_good():
    h, _ = full_star(12, 5)
    part = classify_3sets(h, 0)
    assert part.bad == ()
    assert len(part.good) == comb(11, 3)


def test_classify_partition_is_exact():
    rng = random.Random(43)
    h = Hypergraph(11, rng.sample(list(combinations(range(11), 5)), 40))
    part = classify_3sets(h, 2)
    everything = set(combinations([u for u in range(11) if u != 2], 3))
    assert set(part.good) | set(part.bad) == everything
    assert not set(part.good) & set(part.bad)


def test_classify_detects_the_dented_triple():
    # remove all edges through {1,2,3} + center from a (20,5)-star: that
    # 3-set collects C(16,1) = 16 missing 5-sets (8*16 >= C(11,1)), while
    # any other 3-set collects at most one (8*1 < 11)
    star, _ = full_star(20, 5)
    t0 = (1, 2, 3)
    kept = [e for e in star.edges if not set(t0) <= set(e)]
    part = classify_3sets(Hypergraph(20, kept), 0)
    assert part.bad == (t0,)


def test_classify_parameter_validation():
    with pytest.raises(ValueError):
        classify_3sets(complete_uniform(8, 3), 0)  # k < 5
    h, _ = full_star(12, 5)
    with pytest.raises(ValueError):
        classify_3sets(h, 12)


def test_is_linear():
    assert is_linear(FANO)
    assert is_linear(Hypergraph(9, [(0, 1, 2), (3, 4, 5), (6, 7, 8)]))
    assert not is_linear(full_star(6, 3)[0])
    assert is_linear(Hypergraph(5))
