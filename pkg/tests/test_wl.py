import random
from collections import Counter

import networkx as nx
import pytest

from hardgi.components import is_equitable
from hardgi.errors import ResourceLimitError
from hardgi.graph import ColoredGraph, apply_permutation, disjoint_union
from hardgi.wl import (Partition, color_refine, individualize, refine_after_individualizing,
                       wl_equivalent, wl_joint, wl_k)

from conftest import cycle, random_graph, to_nx, two_triangles


def naive_wl2_histograms(graphs, vbars):
    """Direct transcription of the 2-tuple refinement rule, both graphs ranked together."""
    def init(g, vbar):
        where = {}
        for i, v in enumerate(vbar):
            where.setdefault(v, []).append(i)
        ind = [(g.coloring[v], tuple(where.get(v, ()))) for v in range(g.n)]
        return {(u, v): (ind[u], ind[v], u == v, g.has_edge(u, v)) for u in range(g.n) for v in range(g.n)}

    cols = [init(g, vb) for g, vb in zip(graphs, vbars)]
    while True:
        keys = []
        for g, col in zip(graphs, cols):
            keys.append({(u, v): (col[u, v], tuple(sorted((col[w, v], col[u, w]) for w in range(g.n))))
                         for u in range(g.n) for v in range(g.n)})
        ranks = {k: i for i, k in enumerate(sorted({k for ks in keys for k in ks.values()}, key=repr))}
        new = [{t: ranks[k] for t, k in ks.items()} for ks in keys]
        before = len({x for col in cols for x in col.values()})
        after = len({x for col in new for x in col.values()})
        cols = new
        if after == before:
            return [Counter(col.values()) for col in cols]


def test_individualize_examples():
    c = Partition.uniform(3)
    assert individualize(c, ()) == c
    assert sorted(map(sorted, individualize(c, (0,)).cells())) == [[0], [1, 2]]


def test_individualize_uses_index_sets():
    c = Partition((0, 0, 0))
    one = individualize(c, (0,))
    two = individualize(c, (0, 0))
    assert one.same_partition(two)
    from hardgi.wl import individualization_keys
    assert individualization_keys((0, 0, 0), (0, 0))[0] != individualization_keys((0, 0, 0), (0,))[0]


def test_color_refine_examples():
    assert color_refine(cycle(6)).num_classes == 1
    p3 = ColoredGraph.from_edges(3, [(0, 1), (1, 2)])
    part = color_refine(p3)
    assert part.colors[0] == part.colors[2] != part.colors[1]
    k3 = ColoredGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    ind = color_refine(k3, individualize(Partition.of(k3), (0,)))
    assert sorted(map(sorted, ind.cells())) == [[0], [1, 2]]


def test_worklist_matches_round_based():
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng, rng.randint(1, 10), rng.random(), colors=rng.randint(1, 3))
        fast = color_refine(g)
        slow = wl_k(g, (), 1)[1]
        assert fast.same_partition(slow)
        assert is_equitable(g, fast)
        assert color_refine(g, fast).same_partition(fast)


def test_incremental_individualization_matches_scratch():
    rng = random.Random(12)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 9), 0.4, colors=2)
        stable = color_refine(g)
        w = rng.randrange(g.n)
        inc = refine_after_individualizing(g, stable, w)
        scratch = wl_k(g, (w,), 1)[1]
        assert inc.same_partition(scratch)


def test_color_refine_ids_are_canonical():
    rng = random.Random(13)
    for _ in range(50):
        g = random_graph(rng, 8, 0.35, colors=2)
        perm = list(range(8))
        rng.shuffle(perm)
        h = apply_permutation(g, perm)
        cg, ch = color_refine(g), color_refine(h)
        assert all(cg.colors[v] == ch.colors[perm[v]] for v in range(8))


def test_wl2_on_c6_groups_by_distance():
    tc, part = wl_k(cycle(6), (), 2)
    assert part.num_classes == 1
    by_dist = {}
    for u in range(6):
        for v in range(6):
            d = min((u - v) % 6, (v - u) % 6)
            by_dist.setdefault(d, set()).add(tc.color((u, v)))
    assert all(len(s) == 1 for s in by_dist.values())
    assert len({next(iter(s)) for s in by_dist.values()}) == 4


def test_full_individualization_is_discrete():
    g = random_graph(random.Random(2), 6)
    for k in (1, 2):
        assert wl_k(g, tuple(range(6)), k)[1].is_discrete()


def test_wl_equivalent_examples():
    assert wl_equivalent(cycle(6), (), two_triangles(), (), 1)
    assert not wl_equivalent(cycle(6), (), two_triangles(), (), 2)
    with pytest.raises(ValueError):
        wl_equivalent(cycle(6), (0,), cycle(6), (), 1)


def test_wl1_agrees_with_networkx_hash():
    rng = random.Random(14)
    for _ in range(100):
        n = rng.randint(3, 8)
        g = random_graph(rng, n, 0.4)
        h = random_graph(rng, n, 0.4)
        ours = wl_equivalent(g, (), h, (), 1)
        theirs = (nx.weisfeiler_lehman_graph_hash(to_nx(g), iterations=n)
                  == nx.weisfeiler_lehman_graph_hash(to_nx(h), iterations=n))
        assert ours == theirs


def test_wl2_agrees_with_naive_transcription():
    rng = random.Random(15)
    for _ in range(40):
        n = rng.randint(2, 6)
        g = random_graph(rng, n, 0.5, colors=2)
        h = random_graph(rng, n, 0.5, colors=2)
        xb = tuple(rng.randrange(n) for _ in range(rng.randint(0, 2)))
        yb = tuple(rng.randrange(n) for _ in range(len(xb)))
        hg, hh = naive_wl2_histograms([g, h], [xb, yb])
        assert wl_equivalent(g, xb, h, yb, 2) == (hg == hh)


def test_isomorphism_invariance_and_monotonicity():
    rng = random.Random(16)
    for _ in range(40):
        g = random_graph(rng, 7, 0.4, colors=2)
        perm = list(range(7))
        rng.shuffle(perm)
        h = apply_permutation(g, perm)
        xb = (rng.randrange(7),)
        for k in (1, 2):
            assert wl_equivalent(g, xb, h, (perm[xb[0]],), k)
        other = random_graph(rng, 7, 0.4, colors=2)
        if not wl_equivalent(g, (), other, (), 1):
            assert not wl_equivalent(g, (), other, (), 2)


def test_stable_table_is_a_fixpoint():
    rng = random.Random(17)
    for _ in range(10):
        g = random_graph(rng, 6, 0.4)
        tc, part = wl_k(g, (), 2)
        col = {(u, v): tc.color((u, v)) for u in range(6) for v in range(6)}
        keys = {t: (col[t], tuple(sorted((col[w, t[1]], col[t[0], w]) for w in range(6)))) for t in col}
        assert len(set(keys.values())) == tc.num_colors
        # 2-WL is at least as fine as color refinement on vertices
        assert part.refines(color_refine(g))


def test_budget_error():
    with pytest.raises(ResourceLimitError):
        wl_k(cycle(60), (), 3, max_tuples=1000)


def test_joint_ranking_shares_namespace():
    g = cycle(6)
    tg, th = wl_joint([g, disjoint_union(cycle(3), cycle(3))], [(), ()], 1)
    assert tg.histogram() == th.histogram()
