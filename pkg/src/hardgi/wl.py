"""Color refinement and the k-dimensional Weisfeiler-Leman algorithm.

Two independent routes to the 1-dimensional stable coloring live here:

* :func:`color_refine` is a worklist partition refinement on an ordered
  partition (cells split by neighbor counts into a splitter cell).  Class
  ids are the positions of the cells, so they depend only on the
  isomorphism type of the input and can be compared across graphs.
* :func:`wl_k` with ``k == 1`` runs the textbook round-based iteration in
  which each vertex gets the key (old color, sorted neighbor colors) and
  all keys are ranked lexicographically.

For ``k >= 2`` the tuple colorings are dense numpy tables.  When two graphs
are compared, every round ranks the keys of both graphs together, so color
ids share one namespace.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ResourceLimitError
from .graph import ColoredGraph, dense_ranks

DEFAULT_MAX_TUPLES = 250_000


@dataclass(frozen=True)
class Partition:
    """A vertex coloring with dense class ids."""

    colors: tuple[int, ...]

    @classmethod
    def uniform(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def of(cls, g: ColoredGraph) -> "Partition":
        return cls(g.coloring)

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def num_classes(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.num_classes
        for c in self.colors:
            counts[c] += 1
        return tuple(counts)

    def cells(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_classes)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return out

    def is_discrete(self) -> bool:
        return self.num_classes == self.n

    def refines(self, other: "Partition") -> bool:
        """True iff self ⪯ other (equal here implies equal there)."""
        seen: dict[int, int] = {}
        for a, b in zip(self.colors, other.colors):
            if seen.setdefault(a, b) != b:
                return False
        return True

    def same_partition(self, other: "Partition") -> bool:
        return self.refines(other) and other.refines(self)


@dataclass(frozen=True, eq=False)
class TupleColoring:
    """Stable coloring of V^k stored row-major as a flat array."""

    k: int
    n: int
    table: np.ndarray
    rounds: int

    def color(self, tup: Sequence[int]) -> int:
        idx = 0
        for v in tup:
            idx = idx * self.n + v
        return int(self.table[idx])

    def histogram(self) -> Counter:
        return Counter(self.table.tolist())

    @property
    def num_colors(self) -> int:
        return len(np.unique(self.table))


def individualization_keys(colors: Sequence[int], vbar: Sequence[int]) -> list[tuple]:
    """Per-vertex keys (old color, positions at which the vertex occurs in vbar)."""
    where: dict[int, list[int]] = {}
    for i, v in enumerate(vbar):
        if not 0 <= v < len(colors):
            raise ValueError(f"vertex {v} out of range")
        where.setdefault(v, []).append(i)
    return [(c, tuple(where.get(v, ()))) for v, c in enumerate(colors)]


def individualize(c: Partition, vbar: Sequence[int]) -> Partition:
    return Partition(dense_ranks(individualization_keys(c.colors, vbar)))


# ---------------------------------------------------------------------------
# worklist refinement


def _refine_ordered(g: ColoredGraph, colors: Sequence[int], seeds=None) -> tuple[int, ...]:
    """Coarsest equitable refinement of the ordered partition given by ``colors``.

    ``seeds`` lists the class ids used as initial splitters (all classes when
    None).  Restricting them is only sound when the input was equitable before
    one cell was split off, as after individualizing a vertex of a stable
    coloring.
    """
    n = g.n
    if n == 0:
        return ()
    adj = g.adjacency
    lab = sorted(range(n), key=colors.__getitem__)
    cell_of = [0] * n
    end: dict[int, int] = {}
    start_of_color: dict[int, int] = {}
    pos = 0
    while pos < n:
        c = colors[lab[pos]]
        stop = pos
        while stop < n and colors[lab[stop]] == c:
            cell_of[lab[stop]] = pos
            stop += 1
        end[pos] = stop
        start_of_color[c] = pos
        pos = stop

    if seeds is None:
        queue = deque(sorted(end))
    else:
        queue = deque(sorted(start_of_color[c] for c in seeds))
    queued = set(queue)

    while queue:
        s = queue.popleft()
        queued.discard(s)
        count: dict[int, int] = {}
        for u in lab[s:end[s]]:
            for x in adj[u]:
                count[x] = count.get(x, 0) + 1
        touched = sorted({cell_of[x] for x in count})
        for t in touched:
            e = end[t]
            if e - t == 1:
                continue
            members = lab[t:e]
            keys = [count.get(x, 0) for x in members]
            if min(keys) == max(keys):
                continue
            groups: dict[int, list[int]] = {}
            for x, key in zip(members, keys):
                groups.setdefault(key, []).append(x)
            p = t
            for key in sorted(groups):
                frag = groups[key]
                lab[p:p + len(frag)] = frag
                for x in frag:
                    cell_of[x] = p
                end[p] = p + len(frag)
                if p not in queued:
                    queue.append(p)
                    queued.add(p)
                p += len(frag)
    starts = sorted(end)
    rank = {s: i for i, s in enumerate(starts)}
    return tuple(rank[cell_of[v]] for v in range(n))


def color_refine(g: ColoredGraph, c: Partition | None = None) -> Partition:
    """1-WL stable coloring of ``g`` starting from ``c`` (default: g's colors)."""
    colors = c.colors if c is not None else g.coloring
    return Partition(_refine_ordered(g, colors))


def refine_after_individualizing(g: ColoredGraph, stable: Partition, w: int) -> Partition:
    """Individualize ``w`` in a stable coloring and re-stabilize.

    ``w`` gets the id of its old cell and the rest of the cell moves one id
    up; then only ``{w}`` is used as a splitter, which suffices because the
    input was equitable.
    """
    cw = stable.colors[w]
    if stable.colors.count(cw) == 1:
        return stable
    colors = [x + 1 if x > cw or (x == cw and v != w) else x for v, x in enumerate(stable.colors)]
    return Partition(_refine_ordered(g, colors, seeds=[cw]))


# ---------------------------------------------------------------------------
# round-based WL, run jointly on several graphs


def _joint_rank(key_lists: list[list]) -> list[list[int]]:
    ranks = {k: i for i, k in enumerate(sorted({k for keys in key_lists for k in keys}))}
    return [[ranks[k] for k in keys] for keys in key_lists]


def _joint_refine_1(graphs: Sequence[ColoredGraph], init_keys: list[list]) -> tuple[list[list[int]], int]:
    colors = _joint_rank(init_keys)
    classes = len({c for cs in colors for c in cs})
    rounds = 0
    while True:
        keys = [[(cs[v], tuple(sorted(cs[u] for u in g.adjacency[v]))) for v in range(g.n)]
                for g, cs in zip(graphs, colors)]
        new = _joint_rank(keys)
        new_classes = len({c for cs in new for c in cs})
        if new_classes == classes:
            return colors, rounds
        colors, classes = new, new_classes
        rounds += 1


def _rank_rows(blocks: list[np.ndarray]) -> list[np.ndarray]:
    """Jointly rank the rows of several 2-D integer arrays lexicographically."""
    stacked = np.vstack(blocks)
    _, inverse = np.unique(stacked, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1).astype(np.int64)
    out, offset = [], 0
    for b in blocks:
        out.append(inverse[offset:offset + len(b)])
        offset += len(b)
    return out


def _atomic_types(g: ColoredGraph, colors: Sequence[int], k: int) -> np.ndarray:
    n = g.n
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1
    col = np.asarray(colors, dtype=np.int64)
    idx = np.indices((n,) * k).reshape(k, -1)
    parts = [col[idx[i]] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            parts.append((idx[i] == idx[j]).astype(np.int64))
            parts.append(adj[idx[i], idx[j]])
    return np.stack(parts, axis=1)


def _joint_refine_k(graphs: Sequence[ColoredGraph], init_colors: list[Sequence[int]], k: int):
    n = graphs[0].n
    tables = _rank_rows([_atomic_types(g, cs, k) for g, cs in zip(graphs, init_colors)])
    classes = len(np.unique(np.concatenate(tables)))
    rounds = 0
    while True:
        cubes = [t.reshape((n,) * k) for t in tables]
        keys = None
        for i in range(k):
            subs = [np.broadcast_to(np.expand_dims(np.moveaxis(cube, i, -1), i), (n,) * (k + 1))
                    for cube in cubes]
            if keys is None:
                keys = [s.copy() for s in subs]
                continue
            width = max(int(x.max()) for x in keys) + 1
            if width * (classes + 1) >= 2 ** 62:
                # re-rank the partial codes jointly before they overflow
                flat = _rank_rows([x.reshape(-1, 1) for x in keys])
                keys = [f.reshape((n,) * (k + 1)) for f in flat]
            keys = [x * (classes + 1) + s for x, s in zip(keys, subs)]
        rows = []
        for t, code in zip(tables, keys):
            ms = np.sort(code.reshape(-1, n), axis=1)
            rows.append(np.hstack([t.reshape(-1, 1), ms]))
        new = _rank_rows(rows)
        new_classes = len(np.unique(np.concatenate(new)))
        if new_classes == classes:
            return tables, rounds
        tables, classes = new, new_classes
        rounds += 1


def _check_budget(n: int, k: int, max_tuples: int):
    if n ** k > max_tuples or (k > 1 and n ** (k + 1) > 40 * max_tuples):
        raise ResourceLimitError(f"{k}-WL on {n} vertices exceeds tuple budget {max_tuples}")


def _diagonal(table: np.ndarray, n: int, k: int) -> Partition:
    step = sum(n ** i for i in range(k))
    diag = table[np.arange(n) * step] if n else table[:0]
    return Partition(dense_ranks(diag.tolist()))


def wl_k(g: ColoredGraph, vbar: Sequence[int] = (), k: int = 1, c: Partition | None = None,
         max_tuples: int = DEFAULT_MAX_TUPLES) -> tuple[TupleColoring, Partition]:
    """Stable k-tuple coloring of (g, c) with ``vbar`` individualized.

    Returns the tuple coloring and the induced vertex coloring w ↦ χ(w,…,w).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_budget(g.n, k, max_tuples)
    base = c.colors if c is not None else g.coloring
    init = dense_ranks(individualization_keys(base, vbar))
    if k == 1:
        (colors,), rounds = _joint_refine_1([g], [list(init)])
        tc = TupleColoring(1, g.n, np.asarray(colors, dtype=np.int64), rounds)
        return tc, Partition(tuple(colors))
    (table,), rounds = _joint_refine_k([g], [init], k)
    return TupleColoring(k, g.n, table, rounds), _diagonal(table, g.n, k)


def wl_joint(graphs: Sequence[ColoredGraph], vbars: Sequence[Sequence[int]], k: int,
             max_tuples: int = DEFAULT_MAX_TUPLES) -> list[TupleColoring]:
    """Run k-WL on several equal-order graphs side by side with shared color ids."""
    n = graphs[0].n
    if any(h.n != n for h in graphs):
        raise ValueError("joint WL needs graphs of equal order")
    _check_budget(n, k, max_tuples)
    keys = [individualization_keys(h.coloring, vb) for h, vb in zip(graphs, vbars)]
    if k == 1:
        colors, rounds = _joint_refine_1(graphs, keys)
        return [TupleColoring(1, n, np.asarray(cs, dtype=np.int64), rounds) for cs in colors]
    init = _joint_rank(keys)
    tables, rounds = _joint_refine_k(graphs, init, k)
    return [TupleColoring(k, n, t, rounds) for t in tables]


def wl_equivalent(g: ColoredGraph, xbar: Sequence[int], h: ColoredGraph, ybar: Sequence[int],
                  k: int, max_tuples: int = DEFAULT_MAX_TUPLES) -> bool:
    """(g, xbar) ≃_k (h, ybar): equal stable color histograms in a shared namespace."""
    if len(xbar) != len(ybar):
        raise ValueError("distinguished tuples must have equal length")
    if g.n != h.n:
        return False
    tg, th = wl_joint([g, h], [xbar, ybar], k, max_tuples)
    return tg.histogram() == th.histogram()
