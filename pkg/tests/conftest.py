from __future__ import annotations

import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from hardgi.graph import BipartiteBaseGraph, ColoredGraph

FIG2 = BipartiteBaseGraph.from_neighborhoods(6, [[0, 1, 2], [1, 2, 3], [3, 4, 5]])

# lines printed by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":abc"))):
            terminalreporter.write_line(line)


@pytest.fixture
def fig2():
    return FIG2


def random_graph(rng: random.Random, n: int, p: float = 0.4, colors: int = 1) -> ColoredGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    col = [rng.randrange(colors) for _ in range(n)]
    remap = {c: i for i, c in enumerate(sorted(set(col)))}
    return ColoredGraph.from_edges(n, edges, [remap[c] for c in col])


def random_base(rng: random.Random, left: int, right: int, max_deg: int) -> BipartiteBaseGraph:
    nbrs = [rng.sample(range(right), rng.randint(1, min(max_deg, right))) for _ in range(left)]
    return BipartiteBaseGraph.from_neighborhoods(right, nbrs)


def to_nx(g: ColoredGraph) -> nx.Graph:
    h = nx.Graph()
    for v, c in enumerate(g.coloring):
        h.add_node(v, color=c)
    h.add_edges_from(g.edges())
    return h


def nx_automorphism_count(g: ColoredGraph) -> int:
    h = to_nx(g)
    gm = GraphMatcher(h, h, node_match=lambda a, b: a["color"] == b["color"])
    return sum(1 for _ in gm.isomorphisms_iter())


def nx_isomorphic(g: ColoredGraph, h: ColoredGraph) -> bool:
    return nx.is_isomorphic(to_nx(g), to_nx(h), node_match=lambda a, b: a["color"] == b["color"])


def cycle(n: int) -> ColoredGraph:
    return ColoredGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def two_triangles() -> ColoredGraph:
    return ColoredGraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
