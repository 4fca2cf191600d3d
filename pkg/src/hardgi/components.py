"""Equitable colorings and color-components.

A set S is a color-component of (G, χ) if for all colors i, j the sets
S ∩ χ⁻¹(i) and χ⁻¹(j) ∖ S are uniformly joined (all edges or none).

Writing S_i = S ∩ χ⁻¹(i), the condition for a pair (i, j) can only fail when
the edges between the classes i and j are neither all nor none.  Linking
such classes gives a "join graph" on colors, and S is a color-component iff
its restriction to every connected block of that graph is one.  Since the
empty restriction always works, every nontrivial component restricts to a
nontrivial one on some block, and conversely a nontrivial block solution
extended by ∅ is a component.  The finder therefore searches block by block
and reports the nontrivial block-local components.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .graph import ColoredGraph
from .wl import Partition

RAW_LIMIT = 16
DEFAULT_BUDGET = 1_000_000


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _joined(g: ColoredGraph, xmask: int, ymask: int) -> bool:
    if not xmask or not ymask:
        return True
    masks = g.masks
    first = None
    x = xmask
    while x:
        low = x & -x
        hit = masks[low.bit_length() - 1] & ymask
        if hit not in (0, ymask):
            return False
        state = hit == ymask
        if first is None:
            first = state
        elif state != first:
            return False
        x ^= low
    return True


def is_uniformly_joined(g: ColoredGraph, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """All of X × Y are edges, or none are; vacuous if either side is empty."""
    x, y = _mask(xs), _mask(ys)
    if x & y:
        raise ValueError("X and Y must be disjoint")
    return _joined(g, x, y)


def _colors(chi) -> tuple[int, ...]:
    return chi.colors if isinstance(chi, Partition) else tuple(chi)


def is_equitable(g: ColoredGraph, chi) -> bool:
    """χ refines the colors of g and same-colored vertices have equal
    neighbor counts in every class."""
    col = _colors(chi)
    if len(col) != g.n:
        raise ValueError("coloring has the wrong length")
    base: dict[int, int] = {}
    for v, x in enumerate(col):
        if base.setdefault(x, g.coloring[v]) != g.coloring[v]:
            return False
    sig: dict[int, dict] = {}
    for v in range(g.n):
        counts: dict[int, int] = {}
        for u in g.adjacency[v]:
            counts[col[u]] = counts.get(col[u], 0) + 1
        if sig.setdefault(col[v], counts) != counts:
            return False
    return True


def _classes(col: Sequence[int]) -> list[int]:
    out: list[int] = [0] * (max(col) + 1 if col else 0)
    for v, x in enumerate(col):
        out[x] |= 1 << v
    return out


def is_color_component(g: ColoredGraph, chi, s: Iterable[int]) -> bool:
    col = _colors(chi)
    classes = _classes(col)
    smask = _mask(s)
    for ci in classes:
        si = ci & smask
        if not si:
            continue
        for cj in classes:
            if not _joined(g, si, cj & ~smask):
                return False
    return True


def is_union_of_classes(chi, s: Iterable[int]) -> bool:
    col = _colors(chi)
    smask = _mask(s)
    return all(ci & smask in (0, ci) for ci in _classes(col))


def _mask_list(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def join_blocks(g: ColoredGraph, chi) -> list[list[int]]:
    """Colors grouped into connected blocks of the nontrivial-join relation."""
    classes = _classes(_colors(chi))
    t = len(classes)
    parent = list(range(t))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in combinations(range(t), 2):
        if not _joined(g, classes[i], classes[j]):
            parent[find(i)] = find(j)
    blocks: dict[int, list[int]] = {}
    for i in range(t):
        blocks.setdefault(find(i), []).append(i)
    return sorted(blocks.values())


@dataclass
class ComponentSearch:
    components: list[tuple[int, ...]]
    partial: bool
    mode: str
    nodes: int


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _search_block(g, classes, block, whole_only, budget, counter) -> tuple[list[int], bool]:
    """All block-local solutions (as masks) that split at least one class."""
    # order: start from the largest class, then by most links to earlier ones
    order = [block[0]]
    rest = block[1:]
    linked = {i: {j for j in block if j != i and not _joined(g, classes[i], classes[j])} for i in block}
    while rest:
        nxt = max(rest, key=lambda j: (len(linked[j] & set(order)), -j))
        order.append(nxt)
        rest.remove(nxt)
    found = []
    choice: dict[int, int] = {}

    def ok_with(i: int, si: int) -> bool:
        ci = classes[i]
        if not _joined(g, si, ci & ~si):
            return False
        for j in linked[i]:
            if j in choice:
                sj = choice[j]
                if not _joined(g, si, classes[j] & ~sj) or not _joined(g, sj, ci & ~si):
                    return False
        return True

    def descend(pos: int, split: bool) -> bool:
        if pos == len(order):
            if split:
                found.append(sum(choice.values()))
            return True
        i = order[pos]
        ci = classes[i]
        options = (0, ci) if i in whole_only else _submasks(ci)
        for si in options:
            counter[0] += 1
            if counter[0] > budget:
                return False
            if ok_with(i, si):
                choice[i] = si
                alive = descend(pos + 1, split or si not in (0, ci))
                del choice[i]
                if not alive:
                    return False
        return True

    complete = descend(0, False)
    return found, not complete


def find_nontrivial_color_components(g: ColoredGraph, chi, mode: str = "exhaustive",
                                     budget: int = DEFAULT_BUDGET) -> ComponentSearch:
    """Color-components of (g, χ) that are not unions of χ-classes.

    ``exhaustive`` searches every subset of every class, block by block;
    ``structured`` only lets classes of size ≤ 2 split; ``raw`` tries all
    2^n subsets directly (n ≤ 16) and returns whole components.  Results are
    sorted tuples, sorted; ``partial`` is set when the budget ran out.
    """
    col = _colors(chi)
    if mode == "raw":
        if g.n > RAW_LIMIT:
            raise ResourceLimitError(f"raw enumeration is limited to {RAW_LIMIT} vertices")
        out = []
        for smask in range(1 << g.n):
            s = _mask_list(smask)
            if not is_union_of_classes(col, s) and is_color_component(g, col, s):
                out.append(s)
        return ComponentSearch(sorted(out), False, mode, 1 << g.n)
    if mode not in ("exhaustive", "structured"):
        raise ValueError(f"unknown mode {mode!r}")
    classes = _classes(col)
    whole_only = set()
    if mode == "structured":
        whole_only = {i for i, c in enumerate(classes) if bin(c).count("1") >= 3}
    counter = [0]
    out: set[tuple[int, ...]] = set()
    partial = False
    for block in join_blocks(g, col):
        if all(bin(classes[i]).count("1") == 1 or i in whole_only for i in block):
            continue
        found, cut = _search_block(g, classes, list(block), whole_only, budget, counter)
        out.update(_mask_list(m) for m in found)
        if cut:
            partial = True
            break
    return ComponentSearch(sorted(out), partial, mode, counter[0])


def swap_map(chi, s: Iterable[int]) -> tuple[int, ...] | None:
    """Exchange the two members of every class split by S; None if a split
    class does not have exactly two members."""
    col = _colors(chi)
    smask = _mask(s)
    perm = list(range(len(col)))
    for ci in _classes(col):
        part = ci & smask
        if part in (0, ci):
            continue
        members = _mask_list(ci)
        if len(members) != 2:
            return None
        a, b = members
        perm[a], perm[b] = b, a
    return tuple(perm)


def is_chi_automorphism(g: ColoredGraph, chi, perm: Sequence[int]) -> bool:
    col = _colors(chi)
    if sorted(perm) != list(range(g.n)):
        return False
    if any(col[perm[v]] != col[v] for v in range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())
