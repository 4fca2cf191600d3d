"""Individualization-refinement search trees.

A node is a vertex sequence v̄.  Its coloring is the refinement of the input
coloring with v̄ individualized; its children are v̄·w for w in the cell picked
by the selector.  Nodes whose coloring is discrete are leaves.

The node invariant is a sequence with one record per level.  A record is

    (discrete?, selected cell, class sizes, quotient edge counts)

and a discrete node additionally carries the adjacency rows and original
colors of the graph listed in the discrete order.  Non-discrete records sort
before discrete ones, so the nodes of minimal invariant at level m+1 are
always children of minimal nodes at level m.  That lets the invariant-pruned
tree be built level by level keeping only per-level minima, which gives the
same node set as the declarative definition over the full tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .automorphisms import is_isomorphism
from .errors import SearchBudgetExceeded
from .graph import ColoredGraph
from .wl import (DEFAULT_MAX_TUPLES, Partition, color_refine, refine_after_individualizing,
                 wl_equivalent, wl_k)

MODES = ("none", "inv", "aut", "inv+aut")
DEFAULT_MAX_NODES = 1_000_000


# ---------------------------------------------------------------------------
# selector and refinement operators


def selector_first_smallest(g: ColoredGraph, c: Partition) -> int | None:
    """Lowest color id among the smallest non-singleton classes; None if discrete."""
    best = None
    for color, size in enumerate(c.sizes()):
        if size >= 2 and (best is None or size < best[0]):
            best = (size, color)
    return None if best is None else best[1]


SELECTORS: dict[str, Callable[[ColoredGraph, Partition], int | None]] = {
    "first-smallest": selector_first_smallest,
}


def refine_wl(g: ColoredGraph, c: Partition, vbar: Sequence[int], k: int = 1,
              max_tuples: int = DEFAULT_MAX_TUPLES) -> Partition:
    """WL_k(G, c, v̄) projected to vertices."""
    if k not in (1, 2, 3):
        raise ValueError("k must be 1, 2 or 3")
    return wl_k(g, vbar, k, c, max_tuples)[1]


@dataclass(frozen=True)
class RefinementOperator:
    """Computes node colorings; ``child`` may reuse the parent's coloring."""

    name: str
    k: int
    max_tuples: int = DEFAULT_MAX_TUPLES

    def root(self, g: ColoredGraph) -> Partition:
        if self.k == 1:
            return color_refine(g)
        return refine_wl(g, Partition.of(g), (), self.k, self.max_tuples)

    def child(self, g: ColoredGraph, parent: Partition, vbar: Sequence[int]) -> Partition:
        if self.k == 1:
            # Same partition as refining from scratch: the stable coloring of
            # the longer sequence refines that of the shorter one.
            return refine_after_individualizing(g, parent, vbar[-1])
        return refine_wl(g, Partition.of(g), vbar, self.k, self.max_tuples)

    def __call__(self, g: ColoredGraph, vbar: Sequence[int]) -> Partition:
        c = self.root(g)
        for i in range(len(vbar)):
            c = self.child(g, c, vbar[:i + 1])
        return c


OPERATORS = {name: RefinementOperator(name, k) for name, k in (("wl1", 1), ("wl2", 2), ("wl3", 3))}


# ---------------------------------------------------------------------------
# node invariant


def level_record(g: ColoredGraph, c: Partition, selected: int | None) -> tuple:
    """(discrete?, selected cell, class sizes, sorted (i, j, #edges) for i <= j)."""
    counts: dict[tuple[int, int], int] = {}
    col = c.colors
    for u, v in g.edges():
        a, b = col[u], col[v]
        key = (a, b) if a <= b else (b, a)
        counts[key] = counts.get(key, 0) + 1
    quotient = tuple(sorted((a, b, x) for (a, b), x in counts.items()))
    discrete = selected is None
    return (int(discrete), -1 if discrete else selected, c.sizes(), quotient)


def discrete_order(c: Partition) -> list[int]:
    """Vertices listed by class id; c must be discrete."""
    order = [0] * c.n
    for v, x in enumerate(c.colors):
        order[x] = v
    return order


def leaf_suffix(g: ColoredGraph, c: Partition) -> tuple:
    order = discrete_order(c)
    pos = {v: i for i, v in enumerate(order)}
    rows = tuple(tuple(sorted(pos[u] for u in g.adjacency[v])) for v in order)
    return (rows, tuple(g.coloring[v] for v in order))


@dataclass
class InvariantTrace:
    """Per-level records plus the leaf suffix (None until discrete)."""

    levels: tuple[tuple, ...]
    leaf: tuple | None = None

    def key(self) -> tuple:
        return (self.levels, () if self.leaf is None else (self.leaf,))

    def __lt__(self, other: "InvariantTrace") -> bool:
        return self.key() < other.key()

    def __eq__(self, other) -> bool:
        return isinstance(other, InvariantTrace) and self.key() == other.key()


def node_trace(g: ColoredGraph, vbar: Sequence[int], refine: RefinementOperator = OPERATORS["wl1"],
               sel=selector_first_smallest) -> InvariantTrace:
    """The invariant of v̄, built from scratch."""
    records = []
    c = refine.root(g)
    for i in range(len(vbar) + 1):
        if i:
            c = refine.child(g, c, vbar[:i])
        records.append(level_record(g, c, sel(g, c)))
    leaf = leaf_suffix(g, c) if c.is_discrete() else None
    return InvariantTrace(tuple(records), leaf)


# ---------------------------------------------------------------------------
# search tree


@dataclass
class _Node:
    vbar: tuple[int, ...]
    coloring: Partition
    selected: int | None
    record: tuple  # last-level record, plus leaf suffix if discrete


@dataclass
class SearchTree:
    mode: str
    refine: str
    selector: str
    levels: list[list[tuple[int, ...]]]
    leaves: list[tuple[int, ...]]
    truncated: bool = False
    min_leaf: tuple | None = None
    min_leaf_order: list[int] | None = None
    stats: dict = field(default_factory=dict)

    @property
    def nodes(self) -> int:
        return sum(len(level) for level in self.levels)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    def level_set(self, m: int) -> set[tuple[int, ...]]:
        return set(self.levels[m]) if m < len(self.levels) else set()


def _make_node(g, refine, sel, vbar, coloring) -> _Node:
    s = sel(g, coloring)
    rec = level_record(g, coloring, s)
    if s is None:
        rec = rec + (leaf_suffix(g, coloring),)
    return _Node(vbar, coloring, s, rec)


def _stabilizer_orbits(auts: Sequence[Sequence[int]], fixed: Sequence[int], cell: Sequence[int]) -> list[int]:
    """Smallest member of each orbit on ``cell`` of the automorphisms fixing ``fixed`` pointwise."""
    stab = [a for a in auts if all(a[x] == x for x in fixed)]
    reps = []
    seen: set[int] = set()
    for w in sorted(cell):
        if w in seen:
            continue
        reps.append(w)
        seen.update(a[w] for a in stab)
    return reps


def build_search_tree(g: ColoredGraph, refine: RefinementOperator | str = "wl1",
                      sel: str = "first-smallest", mode: str = "inv",
                      automorphisms: Sequence[Sequence[int]] | None = None,
                      max_nodes: int = DEFAULT_MAX_NODES) -> SearchTree:
    """Explore the IR tree of ``g`` (colored by its own coloring) level by level.

    ``mode`` is "none" (full tree), "inv" (per-level minimum invariant),
    "aut" (one child per orbit of the parent's pointwise stabilizer, using the
    supplied automorphisms) or "inv+aut".  When the node budget runs out the
    tree built so far is returned with ``truncated`` set.
    """
    if mode not in MODES:
        raise ValueError(f"unknown pruning mode {mode!r}")
    if isinstance(refine, str):
        refine = OPERATORS[refine]
    select = SELECTORS[sel]
    use_inv = "inv" in mode
    use_aut = "aut" in mode
    if use_aut and automorphisms is None:
        raise ValueError("automorphism pruning needs an automorphism list")
    root = _make_node(g, refine, select, (), refine.root(g))
    tree = SearchTree(mode, refine.name, sel, [[()]], [])
    frontier = [root]
    count = 1
    while frontier:
        children = []
        for node in frontier:
            if node.selected is None:
                tree.leaves.append(node.vbar)
                continue
            cell = [v for v, x in enumerate(node.coloring.colors) if x == node.selected]
            if use_aut:
                cell = _stabilizer_orbits(automorphisms, node.vbar, cell)
            for w in cell:
                vbar = node.vbar + (w,)
                children.append(_make_node(g, refine, select, vbar, refine.child(g, node.coloring, vbar)))
        if use_inv and children:
            best = min(ch.record for ch in children)
            children = [ch for ch in children if ch.record == best]
        if not children:
            break
        if count + len(children) > max_nodes:
            tree.truncated = True
            break
        count += len(children)
        tree.levels.append([ch.vbar for ch in children])
        frontier = children
    done = [n for n in frontier if n.selected is None] if not tree.truncated else []
    if done:
        best = min(done, key=lambda n: n.record)
        tree.min_leaf = best.record
        tree.min_leaf_order = discrete_order(best.coloring)
    tree.stats = {"nodes": tree.nodes, "leaves": tree.leaf_count, "height": tree.height,
                  "truncated": tree.truncated}
    return tree


# ---------------------------------------------------------------------------
# isomorphism


@dataclass
class IsoResult:
    isomorphic: bool
    witness: tuple[int, ...] | None = None
    nodes: int = 0


def isomorphic(g: ColoredGraph, h: ColoredGraph, refine: RefinementOperator | str = "wl1",
               sel: str = "first-smallest", max_nodes: int = DEFAULT_MAX_NODES) -> IsoResult:
    """Decide g ≅ h by walking both invariant-pruned trees in lockstep.

    At every level the minimum invariants must agree; at the leaves equal
    minima give a bijection from the two discrete orders, which is checked
    edge by edge.  Raises SearchBudgetExceeded instead of guessing.
    """
    if isinstance(refine, str):
        refine = OPERATORS[refine]
    select = SELECTORS[sel]
    if g.n != h.n or g.m != h.m or sorted(g.coloring) != sorted(h.coloring):
        return IsoResult(False)
    fg = [_make_node(g, refine, select, (), refine.root(g))]
    fh = [_make_node(h, refine, select, (), refine.root(h))]
    count = 2
    while True:
        if fg[0].record != fh[0].record:
            return IsoResult(False, nodes=count)
        if fg[0].selected is None:
            phi = [0] * g.n
            for a, b in zip(discrete_order(fg[0].coloring), discrete_order(fh[0].coloring)):
                phi[a] = b
            phi = tuple(phi)
            if not is_isomorphism(g, h, phi):
                raise AssertionError("equal leaf invariants gave a non-isomorphism")
            return IsoResult(True, phi, count)
        nxt = []
        for graph, frontier in ((g, fg), (h, fh)):
            kids = []
            for node in frontier:
                for w in (v for v, x in enumerate(node.coloring.colors) if x == node.selected):
                    vbar = node.vbar + (w,)
                    kids.append(_make_node(graph, refine, select, vbar, refine.child(graph, node.coloring, vbar)))
            best = min(ch.record for ch in kids)
            nxt.append([ch for ch in kids if ch.record == best])
            count += len(kids)
            if count > max_nodes:
                raise SearchBudgetExceeded(f"isomorphism search exceeded {max_nodes} nodes")
        fg, fh = nxt


# ---------------------------------------------------------------------------
# tuple census and the level-closure check


@dataclass
class CensusResult:
    count: int
    partial: bool
    tuples: list[tuple[int, ...]]


def equivalent_tuple_census(g: ColoredGraph, xbar: Sequence[int], k: int = 1,
                            budget: int = 200_000, max_tuples: int = DEFAULT_MAX_TUPLES) -> CensusResult:
    """All ȳ with (G, x̄) ≃_k (G, ȳ) among tuples with c(ȳ_i) = c(x̄_i).

    Depth-first over prefixes: a prefix of an equivalent tuple is itself
    equivalent to the matching prefix of x̄, so failing prefixes are cut.
    With the budget exhausted the count is a lower bound and ``partial`` is set.
    """
    xbar = tuple(xbar)
    found: list[tuple[int, ...]] = []
    tests = 0
    partial = False

    def extend(prefix: tuple[int, ...]):
        nonlocal tests, partial
        i = len(prefix)
        if i == len(xbar):
            found.append(prefix)
            return
        for y in range(g.n):
            if g.coloring[y] != g.coloring[xbar[i]]:
                continue
            if tests >= budget:
                partial = True
                return
            tests += 1
            cand = prefix + (y,)
            if wl_equivalent(g, xbar[:i + 1], g, cand, k, max_tuples):
                extend(cand)
            if partial:
                return

    extend(())
    return CensusResult(len(found), partial, found)


@dataclass
class LowerBoundReport:
    levels_checked: list[int]
    nodes_checked: int
    violations: list[tuple[tuple[int, ...], tuple[int, ...]]]
    partial: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations


def tree_size_lower_bound_check(g: ColoredGraph, tree: SearchTree, k: int = 1,
                                levels: Sequence[int] | None = None, per_level: int | None = None,
                                budget: int = 200_000) -> LowerBoundReport:
    """Check that each level of ``tree`` is closed under ≃_k.

    For the chosen nodes v̄ at level m, every color-consistent ȳ with
    (G, v̄) ≃_k (G, ȳ) must be a level-m node.  ``per_level`` caps how many
    nodes per level are tested (taken in sorted order).
    """
    if tree.truncated:
        raise ValueError("level closure needs an untruncated tree")
    if levels is None:
        levels = range(len(tree.levels))
    report = LowerBoundReport([], 0, [])
    for m in levels:
        present = tree.level_set(m)
        sample = sorted(present)
        if per_level is not None:
            sample = sample[:per_level]
        report.levels_checked.append(m)
        for vbar in sample:
            census = equivalent_tuple_census(g, vbar, k, budget)
            report.partial |= census.partial
            report.nodes_checked += 1
            for y in census.tuples:
                if y not in present:
                    report.violations.append((vbar, y))
    return report
