import random
from itertools import combinations

import pytest

from hardgi.automorphisms import brute_force_automorphisms, is_rigid
from hardgi.errors import ResourceLimitError
from hardgi.gf2 import f2_nullspace_basis, f2_rank, incidence_matrix
from hardgi.graph import BipartiteBaseGraph
from hardgi.multipede import (attractor, aut_count_via_rank, build_multipede, cfi_gadget, closure,
                              gadget_swap_automorphism, induced_multipede, is_closed, is_odd,
                              n_inverse, reduce_odd_support, rigidify, uncolored_wrap)
from hardgi.pebble import Winner, bp_winner
from hardgi.wl import color_refine, wl_equivalent

from conftest import nx_automorphism_count, random_base

SINGLE = BipartiteBaseGraph.from_neighborhoods(1, [[0]])


@pytest.mark.parametrize("size,verts,edges", [(1, 3, 1), (2, 6, 4), (3, 10, 12)])
def test_gadget_sizes(size, verts, edges):
    x = cfi_gadget(range(size))
    assert (x.graph.n, x.graph.m) == (verts, edges)
    assert len(x.middle_masks) == 2 ** (size - 1)


def test_gadget_x3_layout():
    x = cfi_gadget([1, 2, 3])
    assert x.graph.adjacency[x.middle([])] == (x.b(1), x.b(2), x.b(3))
    assert set(x.graph.adjacency[x.middle([1, 2])]) == {x.a(1), x.a(2), x.b(3)}
    with pytest.raises(ValueError):
        cfi_gadget([])


def test_gadget_swaps():
    x = cfi_gadget([1, 2, 3])
    assert gadget_swap_automorphism(x, []) == tuple(range(10))
    perm = gadget_swap_automorphism(x, [1, 2])
    assert perm[x.middle([])] == x.middle([1, 2])
    assert perm[x.a(1)] == x.b(1) and perm[x.a(3)] == x.a(3)
    assert gadget_swap_automorphism(x, [1]) is None
    assert len(brute_force_automorphisms(x.graph)) == 4


def test_fig2_multipede(fig2):
    r = build_multipede(fig2)
    assert (r.graph.n, r.graph.m) == (24, 36)
    assert len(brute_force_automorphisms(r.graph)) == 8 == aut_count_via_rank(fig2)
    assert r.graph.num_colors == 9
    assert r.middle_subset(r.middle(1, [1, 3])) == (1, frozenset({1, 3}))


def test_single_edge_and_full_individualization(fig2):
    r = build_multipede(SINGLE)
    assert r.graph.n == 3 and r.graph.edges() == [(1, 2)]
    assert aut_count_via_rank(SINGLE) == 1
    full = build_multipede(fig2, range(6))
    assert all(full.graph.coloring[full.a(w)] != full.graph.coloring[full.b(w)] for w in range(6))


def test_build_errors():
    with pytest.raises(ValueError):
        build_multipede(BipartiteBaseGraph.from_neighborhoods(2, [[]]))
    with pytest.raises(ResourceLimitError):
        build_multipede(BipartiteBaseGraph.from_neighborhoods(5, [range(5)]), degree_cap=4)


def test_isolated_right_vertex_doubles_group():
    g = BipartiteBaseGraph.from_neighborhoods(3, [[0, 1]])
    count = aut_count_via_rank(g)
    assert count >= 2 and count % 2 == 0
    assert len(brute_force_automorphisms(build_multipede(g).graph)) == count


def test_brute_force_matches_networkx():
    rng = random.Random(31)
    for _ in range(25):
        g = random_base(rng, rng.randint(1, 4), rng.randint(1, 4), 3)
        r = build_multipede(g)
        assert len(brute_force_automorphisms(r.graph)) == nx_automorphism_count(r.graph)


def test_odd_and_support(fig2):
    assert is_odd(SINGLE)
    assert not is_odd(fig2)
    assert not is_odd(BipartiteBaseGraph.from_neighborhoods(2, [[0, 1]]))
    with pytest.raises(ValueError):
        reduce_odd_support(fig2)
    ident = BipartiteBaseGraph.from_neighborhoods(3, [[0], [1], [2]])
    assert reduce_odd_support(ident) == [0, 1, 2]
    dup = BipartiteBaseGraph.from_neighborhoods(2, [[0], [0, 1], [0]])
    assert reduce_odd_support(dup) == [0, 1]


def test_reduce_odd_support_random():
    rng = random.Random(32)
    seen = 0
    while seen < 10:
        g = random_base(rng, 8, 5, 3)
        if not is_odd(g):
            continue
        seen += 1
        support = reduce_odd_support(g)
        assert len(support) == 5
        assert is_odd(g.induced_left(support))


def test_rigidify_examples(fig2):
    assert rigidify(SINGLE) == frozenset()
    assert rigidify(fig2) == frozenset({0, 1, 4})
    assert is_rigid(build_multipede(fig2, rigidify(fig2)).graph)
    zero = BipartiteBaseGraph.from_neighborhoods(3, [])
    assert rigidify(zero) == frozenset({0, 1, 2})


def test_n_inverse_and_closure(fig2):
    assert n_inverse(fig2, []) == frozenset()
    assert n_inverse(fig2, range(6)) == frozenset({0, 1, 2})
    assert n_inverse(fig2, [0, 1, 2]) == frozenset({0})
    assert closure(fig2, [], 1) == frozenset()
    assert closure(fig2, [0], 1) == frozenset({0})
    assert closure(fig2, [0, 1], 1) == frozenset({0, 1, 2, 3})
    assert attractor(fig2, [0, 1], 1) == frozenset({0, 1, 2})
    assert is_closed(fig2, [0, 1, 2, 3], 1)
    with pytest.raises(ValueError):
        closure(fig2, [0], -1)


def test_closure_axioms_small():
    rng = random.Random(33)
    for _ in range(200):
        g = random_base(rng, 5, 6, 3)
        d = rng.randint(0, 3)
        x = set(rng.sample(range(6), rng.randint(0, 4)))
        y = x | set(rng.sample(range(6), rng.randint(0, 2)))
        cx = closure(g, x, d)
        assert x <= cx and cx <= closure(g, y, d) and closure(g, cx, d) == cx


def test_induced_multipede(fig2):
    assert induced_multipede(fig2, []).n == 0
    assert induced_multipede(fig2, range(6)) == build_multipede(fig2).graph
    sub = induced_multipede(fig2, [0, 1, 2])
    assert sub.n == 10
    assert len(brute_force_automorphisms(sub)) == 4


def test_uncolored_wrap(fig2):
    r = build_multipede(fig2, rigidify(fig2))
    wrapped = uncolored_wrap(r)
    t = r.graph.num_colors
    assert wrapped.n == r.graph.n + t + 2 and wrapped.num_colors == 1
    ones = [v for v in range(wrapped.n) if wrapped.degree(v) == 1]
    assert ones == [r.graph.n + t]
    assert is_rigid(wrapped)
    part = color_refine(wrapped)
    sizes = part.sizes()
    assert all(sizes[part.colors[v]] == 1 for v in range(r.graph.n, wrapped.n))
    inner = color_refine(r.graph)
    assert all((part.colors[u] == part.colors[v]) == (inner.colors[u] == inner.colors[v])
               for u, v in combinations(range(r.graph.n), 2))


def test_wrap_of_single_class():
    from hardgi.graph import ColoredGraph
    g = ColoredGraph.from_edges(2, [])
    w = uncolored_wrap(g)
    # path p1 p2, p1 joined to both vertices, apex joined to p1
    assert w.n == 5 and w.edges() == [(0, 2), (1, 2), (2, 3), (2, 4)]


def test_lemma4_rank_matches_brute_force_sample():
    rng = random.Random(34)
    for _ in range(30):
        g = random_base(rng, rng.randint(1, 5), rng.randint(1, 5), 3)
        r = build_multipede(g)
        assert len(brute_force_automorphisms(r.graph)) == 2 ** (g.right_count - f2_rank(incidence_matrix(g)))


def test_refinement_can_outrun_the_closure():
    """Individualizing a(0) propagates everywhere; with no swap automorphism
    for pair 0 the two individualized graphs differ although cl(∅) = ∅."""
    base = BipartiteBaseGraph.from_neighborhoods(5, [(0, 4), (1, 3, 4), (1, 4), (0, 2, 4), (3, 4), (2, 3, 4)])
    r = build_multipede(base)
    assert closure(base, [], 1) == frozenset()
    assert f2_nullspace_basis(incidence_matrix(base)) == []
    assert not wl_equivalent(r.graph, (r.a(0),), r.graph, (r.b(0),), 1)
    assert bp_winner(r.graph, (r.a(0),), r.graph, (r.b(0),), 2) == Winner.SPOILER
    part = color_refine(r.graph)
    assert part.colors[r.a(0)] == part.colors[r.b(0)]
