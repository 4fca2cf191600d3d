import random

import pytest

from hardgi.automorphisms import is_rigid
from hardgi.components import (find_nontrivial_color_components, is_chi_automorphism,
                               is_color_component, is_equitable, is_union_of_classes,
                               is_uniformly_joined, join_blocks, swap_map)
from hardgi.errors import ResourceLimitError
from hardgi.graph import ColoredGraph
from hardgi.multipede import build_multipede, rigidify
from hardgi.wl import Partition, color_refine

from conftest import cycle, random_base, random_graph, two_triangles

TWO_EDGES = ColoredGraph.from_edges(4, [(0, 1), (2, 3)])


def test_uniform_join_examples():
    k23 = ColoredGraph.from_edges(5, [(u, v) for u in (0, 1) for v in (2, 3, 4)])
    assert is_uniformly_joined(k23, [0, 1], [2, 3, 4])
    assert is_uniformly_joined(k23, [], [2])
    assert not is_uniformly_joined(cycle(4), [0], [1, 2])
    with pytest.raises(ValueError):
        is_uniformly_joined(k23, [0], [0, 1])


def test_equitable_examples():
    assert is_equitable(cycle(6), [0] * 6)
    p3 = ColoredGraph.from_edges(3, [(0, 1), (1, 2)])
    assert not is_equitable(p3, [0, 0, 0])
    assert is_equitable(p3, color_refine(p3))
    # must refine the graph's own colors
    assert not is_equitable(ColoredGraph.from_edges(2, [], [0, 1]), [0, 0])


def test_color_component_examples():
    assert is_color_component(cycle(5), [0] * 5, [])
    assert is_color_component(cycle(5), [0] * 5, range(5))
    tri = ColoredGraph.from_edges(6, two_triangles().edges(), [0, 0, 0, 1, 1, 1])
    assert is_color_component(tri, tri.coloring, [0, 1, 2])
    p3 = ColoredGraph.from_edges(3, [(0, 1), (1, 2)])
    assert not is_color_component(p3, [0, 0, 0], [0])


def test_two_disjoint_edges():
    for mode in ("raw", "exhaustive"):
        res = find_nontrivial_color_components(TWO_EDGES, [0] * 4, mode)
        assert res.components == [(0, 1), (2, 3)] and not res.partial
    # the structured search keeps a class of size 4 whole
    assert find_nontrivial_color_components(TWO_EDGES, [0] * 4, "structured").components == []
    assert swap_map([0] * 4, [0, 1]) is None


def test_raw_and_block_search_agree():
    """Raw components restrict to block-local ones, and vice versa."""
    rng = random.Random(61)
    for _ in range(60):
        g = random_graph(rng, rng.randint(3, 9), rng.choice([0.2, 0.4, 0.6]))
        chi = color_refine(g)
        raw = set(find_nontrivial_color_components(g, chi, "raw").components)
        local = set(find_nontrivial_color_components(g, chi, "exhaustive").components)
        assert local <= raw
        cls = [set(c) for c in chi.cells()]
        for block in join_blocks(g, chi):
            verts = set().union(*(cls[i] for i in block))
            for s in raw:
                part = tuple(sorted(set(s) & verts))
                if not is_union_of_classes(chi, part):
                    assert part in local
        for s in local:
            assert is_color_component(g, chi, s) and not is_union_of_classes(chi, s)


def test_raw_is_gated():
    with pytest.raises(ResourceLimitError):
        find_nontrivial_color_components(cycle(17), [0] * 17, "raw")
    with pytest.raises(ValueError):
        find_nontrivial_color_components(cycle(4), [0] * 4, "bogus")


def test_budget_marks_partial():
    g = ColoredGraph.from_edges(8, [(0, 1), (2, 3), (4, 5), (6, 7)])
    res = find_nontrivial_color_components(g, [0] * 8, budget=10)
    assert res.partial


def test_rigid_multipedes_have_only_trivial_components():
    rng = random.Random(62)
    for _ in range(10):
        base = random_base(rng, 4, 4, 3)
        r = build_multipede(base, rigidify(base))
        assert is_rigid(r.graph)
        chi = color_refine(r.graph)
        assert is_equitable(r.graph, chi)
        assert find_nontrivial_color_components(r.graph, chi).components == []


def test_non_rigid_components_carry_swaps():
    rng = random.Random(63)
    seen = 0
    for _ in range(25):
        base = random_base(rng, 3, 4, 3)
        g = build_multipede(base).graph
        chi = color_refine(g)
        for s in find_nontrivial_color_components(g, chi).components:
            perm = swap_map(chi, s)
            assert perm is not None and is_chi_automorphism(g, chi, perm)
            assert perm != tuple(range(g.n))
            seen += 1
    assert seen > 0


def test_chi_automorphism_rejects():
    chi = Partition((0, 0, 1, 1))
    assert is_chi_automorphism(TWO_EDGES, chi, (1, 0, 2, 3))
    assert not is_chi_automorphism(TWO_EDGES, chi, (2, 3, 0, 1))
    assert not is_chi_automorphism(TWO_EDGES, chi, (0, 0, 2, 3))
