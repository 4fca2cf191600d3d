"""Exhaustive color-preserving isomorphism search, used as a test oracle.

The search maps vertices one at a time, in an order where each vertex has as
many already-mapped neighbors as possible, and checks adjacency to every
mapped vertex before descending.  It does not use any refinement, so it can
check refinement-based code independently.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import ResourceLimitError
from .graph import ColoredGraph

DEFAULT_MAX_NODES = 5_000_000


def _search_order(g: ColoredGraph) -> list[int]:
    n = g.n
    size = [0] * g.num_colors
    for c in g.coloring:
        size[c] += 1
    placed = [False] * n
    links = [0] * n
    order = []
    for _ in range(n):
        best = min((v for v in range(n) if not placed[v]),
                   key=lambda v: (-links[v], size[g.coloring[v]], v))
        placed[best] = True
        order.append(best)
        for u in g.adjacency[best]:
            links[u] += 1
    return order


def iter_isomorphisms(g: ColoredGraph, h: ColoredGraph,
                      max_nodes: int = DEFAULT_MAX_NODES) -> Iterator[tuple[int, ...]]:
    """Yield every color-preserving isomorphism g → h as a tuple ``phi[v]``."""
    if g.n != h.n or sorted(g.coloring) != sorted(h.coloring):
        return
    n = g.n
    order = _search_order(g)
    by_color: dict[int, list[int]] = {}
    for v, c in enumerate(h.coloring):
        by_color.setdefault(c, []).append(v)
    gm, hm = g.masks, h.masks
    phi = [-1] * n
    used = [False] * n
    nodes = 0

    def descend(depth: int, placed_mask: int, image_mask: int):
        nonlocal nodes
        if depth == n:
            yield tuple(phi)
            return
        x = order[depth]
        required = 0
        nbrs = gm[x] & placed_mask
        while nbrs:
            low = nbrs & -nbrs
            required |= 1 << phi[low.bit_length() - 1]
            nbrs ^= low
        for c in by_color.get(g.coloring[x], ()):
            if used[c] or (hm[c] & image_mask) != required:
                continue
            nodes += 1
            if nodes > max_nodes:
                raise ResourceLimitError(f"isomorphism search exceeded {max_nodes} nodes")
            phi[x] = c
            used[c] = True
            yield from descend(depth + 1, placed_mask | (1 << x), image_mask | (1 << c))
            used[c] = False
            phi[x] = -1

    yield from descend(0, 0, 0)


def brute_force_automorphisms(g: ColoredGraph, max_nodes: int = DEFAULT_MAX_NODES,
                              limit: int | None = None) -> list[tuple[int, ...]]:
    """All color-preserving automorphisms (at most ``limit`` if given)."""
    out = []
    for phi in iter_isomorphisms(g, g, max_nodes):
        out.append(phi)
        if limit is not None and len(out) >= limit:
            break
    return out


def is_rigid(g: ColoredGraph, max_nodes: int = DEFAULT_MAX_NODES) -> bool:
    return len(brute_force_automorphisms(g, max_nodes, limit=2)) == 1


def brute_force_isomorphism(g: ColoredGraph, h: ColoredGraph,
                            max_nodes: int = DEFAULT_MAX_NODES) -> tuple[int, ...] | None:
    return next(iter_isomorphisms(g, h, max_nodes), None)


def is_isomorphism(g: ColoredGraph, h: ColoredGraph, phi: Sequence[int]) -> bool:
    """Check a claimed color-preserving isomorphism edge by edge."""
    if g.n != h.n or sorted(phi) != list(range(g.n)):
        return False
    if any(g.coloring[v] != h.coloring[phi[v]] for v in range(g.n)):
        return False
    if g.m != h.m:
        return False
    return all(h.has_edge(phi[u], phi[v]) for u, v in g.edges())
