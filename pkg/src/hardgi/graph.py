"""Colored simple graphs and bipartite base graphs.

Vertices are dense 0-based integers.  Everything here is immutable once
constructed; builders normalize their input (sorted neighbor lists, dense
color ids) so that equal graphs compare and hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


def dense_ranks(values: Sequence) -> tuple[int, ...]:
    """Replace each value by the rank of its value among the distinct values."""
    order = {v: i for i, v in enumerate(sorted(set(values)))}
    return tuple(order[v] for v in values)


@dataclass(frozen=True)
class ColoredGraph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    coloring: tuple[int, ...]
    _masks: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != self.n or len(self.coloring) != self.n:
            raise ValueError("adjacency/coloring length does not match n")
        masks = []
        for v, nbrs in enumerate(self.adjacency):
            mask = 0
            prev = -1
            for u in nbrs:
                if u <= prev:
                    raise ValueError(f"neighbor list of {v} not strictly ascending")
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                prev = u
                mask |= 1 << u
            masks.append(mask)
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not (masks[u] >> v) & 1:
                    raise ValueError(f"edge {v}-{u} is not symmetric")
        if self.n and set(self.coloring) != set(range(max(self.coloring) + 1)):
            raise ValueError("color ids are not dense")
        object.__setattr__(self, "_masks", tuple(masks))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], coloring=None) -> "ColoredGraph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        colors = dense_ranks(coloring) if coloring is not None else (0,) * n
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), colors)

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbor sets as int bitsets."""
        return self._masks

    @property
    def num_colors(self) -> int:
        return max(self.coloring) + 1 if self.n else 0

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._masks[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def color_classes(self) -> list[list[int]]:
        classes: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.coloring):
            classes[c].append(v)
        return classes

    def with_coloring(self, coloring: Sequence[int]) -> "ColoredGraph":
        return ColoredGraph(self.n, self.adjacency, dense_ranks(coloring))

    def induced(self, vertices: Iterable[int]) -> tuple["ColoredGraph", list[int]]:
        """Induced subgraph on ``vertices`` (relabelled in ascending order).

        Returns the subgraph and the list mapping new ids to old ids.
        Colors are inherited and re-densified.
        """
        keep = sorted(set(vertices))
        new_id = {v: i for i, v in enumerate(keep)}
        edges = [(new_id[u], new_id[v]) for u in keep for v in self.adjacency[u]
                 if v in new_id and u < v]
        sub = ColoredGraph.from_edges(len(keep), edges, [self.coloring[v] for v in keep])
        return sub, keep


def apply_permutation(g: ColoredGraph, perm: Sequence[int]) -> ColoredGraph:
    """Relabel vertex ``v`` as ``perm[v]``; colors travel with the vertices."""
    if len(perm) != g.n or sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a bijection on 0..n-1")
    colors = [0] * g.n
    for v in range(g.n):
        colors[perm[v]] = g.coloring[v]
    edges = [(perm[u], perm[v]) for u, v in g.edges()]
    return ColoredGraph.from_edges(g.n, edges, colors)


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def disjoint_union(g: ColoredGraph, h: ColoredGraph) -> ColoredGraph:
    """``g`` followed by ``h`` shifted by ``g.n``; color namespaces are shared."""
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    return ColoredGraph.from_edges(g.n + h.n, edges, list(g.coloring) + list(h.coloring))


@dataclass(frozen=True)
class BipartiteBaseGraph:
    """Bipartite graph G = (V, W, E) given by the neighborhoods of the left side."""

    left_count: int
    right_count: int
    left_neighbors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.left_neighbors) != self.left_count:
            raise ValueError("left_neighbors length does not match left_count")
        for v, nbrs in enumerate(self.left_neighbors):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"N({v}) must be strictly ascending")
            if nbrs and not (0 <= nbrs[0] and nbrs[-1] < self.right_count):
                raise ValueError(f"N({v}) has a right vertex out of range")

    @classmethod
    def from_neighborhoods(cls, right_count: int, neighborhoods: Iterable[Iterable[int]]) -> "BipartiteBaseGraph":
        nbrs = tuple(tuple(sorted(set(s))) for s in neighborhoods)
        return cls(len(nbrs), right_count, nbrs)

    def degree(self, v: int) -> int:
        return len(self.left_neighbors[v])

    def neighbor_mask(self, v: int) -> int:
        mask = 0
        for w in self.left_neighbors[v]:
            mask |= 1 << w
        return mask

    def right_neighbors(self, w: int) -> list[int]:
        return [v for v, nbrs in enumerate(self.left_neighbors) if w in nbrs]

    def induced_left(self, left: Iterable[int]) -> "BipartiteBaseGraph":
        """G[V' ∪ W] for a subset V' of the left side (kept in ascending order)."""
        keep = sorted(set(left))
        return BipartiteBaseGraph(len(keep), self.right_count,
                                  tuple(self.left_neighbors[v] for v in keep))

    def edge_count(self) -> int:
        return sum(len(s) for s in self.left_neighbors)
