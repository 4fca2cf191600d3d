"""CFI gadgets, multipede graphs R^I(G), and the closure operators on W.

Vertex layout of R^I(G) (fixed for reproducibility):

* ``a(w) = 2w`` and ``b(w) = 2w + 1`` for every right vertex ``w``;
* then the middle vertices of ``v = 0, 1, ...`` in turn, each block listing
  ``m_A(v)`` for the even subsets ``A`` of ``N(v)`` by ascending bitmask,
  where bit ``i`` of the mask stands for the ``i``-th smallest element of
  ``N(v)``.

Color classes are ``F(w_0), F(w_1), ...`` (split into ``{a}``, ``{b}`` for
``w`` in I) followed by ``M(v_0), M(v_1), ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ResourceLimitError
from .gf2 import f2_rank, incidence_matrix, row_basis, span_extension
from .graph import BipartiteBaseGraph, ColoredGraph

DEFAULT_DEGREE_CAP = 16


def even_masks(size: int) -> list[int]:
    return [m for m in range(1 << size) if bin(m).count("1") % 2 == 0]


def _mask_of(items: Iterable[int], ground: Sequence[int]) -> int:
    pos = {w: i for i, w in enumerate(ground)}
    mask = 0
    for w in items:
        if w not in pos:
            raise ValueError(f"{w} is not in the ground set")
        mask |= 1 << pos[w]
    return mask


@dataclass(frozen=True)
class CfiGadget:
    """X_S with outer pairs ``(2i, 2i+1)`` for the i-th element of S and
    middle vertex ``2|S| + j`` for the j-th even subset mask."""

    ground: tuple[int, ...]
    graph: ColoredGraph
    middle_masks: tuple[int, ...]

    def a(self, w: int) -> int:
        return 2 * self.ground.index(w)

    def b(self, w: int) -> int:
        return 2 * self.ground.index(w) + 1

    def middle(self, subset: Iterable[int]) -> int:
        mask = _mask_of(subset, self.ground)
        return 2 * len(self.ground) + self.middle_masks.index(mask)


def cfi_gadget(ground: Iterable[int]) -> CfiGadget:
    S = tuple(sorted(set(ground)))
    if not S:
        raise ValueError("CFI gadget needs a nonempty ground set")
    s = len(S)
    masks = even_masks(s)
    edges = []
    for j, mask in enumerate(masks):
        m = 2 * s + j
        for i in range(s):
            edges.append((2 * i if (mask >> i) & 1 else 2 * i + 1, m))
    colors = [i // 2 for i in range(2 * s)] + [s] * len(masks)
    return CfiGadget(S, ColoredGraph.from_edges(2 * s + len(masks), edges, colors), tuple(masks))


def gadget_swap_automorphism(x: CfiGadget, swap: Iterable[int]) -> tuple[int, ...] | None:
    """The automorphism exchanging a_w and b_w exactly for w in ``swap``.

    Exists iff |swap| is even; middles map m_A ↦ m_{A △ swap}.
    """
    t = _mask_of(swap, x.ground)
    if bin(t).count("1") % 2:
        return None
    s = len(x.ground)
    perm = list(range(x.graph.n))
    for i in range(s):
        if (t >> i) & 1:
            perm[2 * i], perm[2 * i + 1] = 2 * i + 1, 2 * i
    index = {m: j for j, m in enumerate(x.middle_masks)}
    for j, m in enumerate(x.middle_masks):
        perm[2 * s + j] = 2 * s + index[m ^ t]
    return tuple(perm)


@dataclass(frozen=True)
class MultipedeGraph:
    graph: ColoredGraph
    base: BipartiteBaseGraph
    individualized: frozenset[int]
    middle_offset: tuple[int, ...]

    def a(self, w: int) -> int:
        return 2 * w

    def b(self, w: int) -> int:
        return 2 * w + 1

    def F(self, w: int) -> tuple[int, int]:
        return (2 * w, 2 * w + 1)

    def M(self, v: int) -> list[int]:
        size = 1 << (self.base.degree(v) - 1)
        return list(range(self.middle_offset[v], self.middle_offset[v] + size))

    def middle(self, v: int, subset: Iterable[int]) -> int:
        """The vertex m_A(v) for an even subset A of N(v)."""
        nbrs = self.base.left_neighbors[v]
        mask = _mask_of(subset, nbrs)
        masks = even_masks(len(nbrs))
        return self.middle_offset[v] + masks.index(mask)

    def middle_subset(self, vertex: int) -> tuple[int, frozenset[int]]:
        """Inverse of :meth:`middle`: (v, A) for a middle vertex."""
        for v in range(self.base.left_count):
            block = self.M(v)
            if block[0] <= vertex <= block[-1]:
                nbrs = self.base.left_neighbors[v]
                mask = even_masks(len(nbrs))[vertex - block[0]]
                return v, frozenset(w for i, w in enumerate(nbrs) if (mask >> i) & 1)
        raise ValueError(f"{vertex} is not a middle vertex")


def build_multipede(base: BipartiteBaseGraph, individualized: Iterable[int] = (),
                    degree_cap: int = DEFAULT_DEGREE_CAP) -> MultipedeGraph:
    """R^I(G); ``build_multipede(G)`` is R(G)."""
    I = frozenset(individualized)
    if any(not 0 <= w < base.right_count for w in I):
        raise ValueError("individualized set must lie in W")
    for v in range(base.left_count):
        d = base.degree(v)
        if d < 1:
            raise ValueError(f"left vertex {v} has degree 0")
        if d > degree_cap:
            raise ResourceLimitError(f"left vertex {v} has degree {d} > cap {degree_cap}")
    colors = []
    color = 0
    for w in range(base.right_count):
        if w in I:
            colors += [color, color + 1]
            color += 2
        else:
            colors += [color, color]
            color += 1
    edges = []
    offsets = []
    nxt = 2 * base.right_count
    for v, nbrs in enumerate(base.left_neighbors):
        offsets.append(nxt)
        for mask in even_masks(len(nbrs)):
            for i, w in enumerate(nbrs):
                edges.append((2 * w if (mask >> i) & 1 else 2 * w + 1, nxt))
            colors.append(color)
            nxt += 1
        color += 1
    g = ColoredGraph.from_edges(nxt, edges, colors)
    return MultipedeGraph(g, base, I, tuple(offsets))


def aut_count_via_rank(base: BipartiteBaseGraph) -> int:
    return 2 ** (base.right_count - f2_rank(incidence_matrix(base)))


def is_odd(base: BipartiteBaseGraph) -> bool:
    return f2_rank(incidence_matrix(base)) == base.right_count


def reduce_odd_support(base: BipartiteBaseGraph) -> list[int]:
    """Left vertices whose rows form a basis of the row space of A_G."""
    if not is_odd(base):
        raise ValueError("base graph is not odd")
    return row_basis(incidence_matrix(base).rows)


def rigidify(base: BipartiteBaseGraph) -> frozenset[int]:
    """Smallest I (greedy in ascending w) with rows(A_G) ∪ {e_w : w ∈ I} spanning."""
    return frozenset(span_extension(incidence_matrix(base).rows, base.right_count))


# ---------------------------------------------------------------------------
# closure operators on subsets of W


def _to_mask(xs: Iterable[int]) -> int:
    mask = 0
    for w in xs:
        mask |= 1 << w
    return mask


def _from_mask(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def n_inverse(base: BipartiteBaseGraph, xs: Iterable[int]) -> frozenset[int]:
    """Left vertices whose whole neighborhood lies in ``xs``."""
    x = _to_mask(xs)
    return frozenset(v for v in range(base.left_count) if base.neighbor_mask(v) & ~x == 0)


def _attractor_mask(nmasks: Sequence[int], x: int, d: int) -> int:
    out = x
    for nm in nmasks:
        if bin(nm & ~x).count("1") <= d:
            out |= nm
    return out


def attractor(base: BipartiteBaseGraph, xs: Iterable[int], d: int) -> frozenset[int]:
    if d < 0:
        raise ValueError("d must be >= 0")
    nmasks = [base.neighbor_mask(v) for v in range(base.left_count)]
    return _from_mask(_attractor_mask(nmasks, _to_mask(xs), d))


def closure(base: BipartiteBaseGraph, xs: Iterable[int], d: int) -> frozenset[int]:
    """Least d-closed superset of ``xs``."""
    if d < 0:
        raise ValueError("d must be >= 0")
    nmasks = [base.neighbor_mask(v) for v in range(base.left_count)]
    x = _to_mask(xs)
    while True:
        nxt = _attractor_mask(nmasks, x, d)
        if nxt == x:
            return _from_mask(x)
        x = nxt


def is_closed(base: BipartiteBaseGraph, xs: Iterable[int], d: int) -> bool:
    xs = frozenset(xs)
    return attractor(base, xs, d) == xs


def multipede_window(base: BipartiteBaseGraph, xs: Iterable[int]) -> list[int]:
    """Vertices F(X) ∪ M(N⁻¹(X)) of R(G), ascending."""
    r = build_multipede(base)
    xs = frozenset(xs)
    keep = [u for w in sorted(xs) for u in r.F(w)]
    for v in sorted(n_inverse(base, xs)):
        keep += r.M(v)
    return sorted(keep)


def induced_multipede(base: BipartiteBaseGraph, xs: Iterable[int]) -> ColoredGraph:
    """R(G)[[X]] with the color classes inherited from R(G)."""
    r = build_multipede(base)
    sub, _ = r.graph.induced(multipede_window(base, xs))
    return sub


def uncolored_wrap(g: ColoredGraph | MultipedeGraph) -> ColoredGraph:
    """Encode the coloring of ``g`` structurally and drop it.

    Adds a path p_1 … p_{t+1} (t = number of colors) with p_i joined to every
    vertex of color i, plus an apex joined to p_1 … p_t.  The original
    vertices keep their ids; the path follows them and the apex is last.
    """
    if isinstance(g, MultipedeGraph):
        g = g.graph
    n, t = g.n, g.num_colors
    path = [n + i for i in range(t + 1)]
    apex = n + t + 1
    edges = list(g.edges())
    edges += [(path[i], path[i + 1]) for i in range(t)]
    edges += [(v, path[c]) for v, c in enumerate(g.coloring)]
    edges += [(p, apex) for p in path[:t]]
    return ColoredGraph.from_edges(n + t + 2, edges)
