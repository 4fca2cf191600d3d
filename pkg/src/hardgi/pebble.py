"""Exact solver for the bijective k-pebble game.

Spoiler picks a pebble slot, Duplicator answers with a bijection V(G)→V(H),
Spoiler places the pebble pair on some (v, f(v)).  Spoiler wins once the
pebbled pairs stop being a partial isomorphism.

The solver works on the positions *between* rounds: after Spoiler has
lifted a pebble pair, k−1 pairs remain.  Whether Duplicator survives such
a position depends only on the multiset of remaining pairs, and she
survives iff the "safe" pairs (v, w) admit a perfect matching.  The winning
region is the greatest fixpoint of that condition.
"""

from __future__ import annotations

import enum
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import ResourceLimitError
from .graph import ColoredGraph, dense_ranks
from .wl import individualization_keys

BOT = -1


class Winner(str, enum.Enum):
    SPOILER = "Spoiler"
    DUPLICATOR = "Duplicator"


def _has_perfect_matching(allowed: list[int], n: int) -> bool:
    """Kuhn's augmenting paths on rows given as bitmasks over columns."""
    match_col = [-1] * n

    def augment(row: int, seen: list[bool]) -> bool:
        mask = allowed[row]
        while mask:
            low = mask & -mask
            col = low.bit_length() - 1
            mask ^= low
            if seen[col]:
                continue
            seen[col] = True
            if match_col[col] < 0 or augment(match_col[col], seen):
                match_col[col] = row
                return True
        return False

    for row in range(n):
        if not allowed[row] or not augment(row, [False] * n):
            return False
    return True


def bp_winner(g: ColoredGraph, xbar: Sequence[int], h: ColoredGraph, ybar: Sequence[int],
              k: int, max_states: int = 200_000) -> Winner:
    """Winner of BP_k on (g, xbar) vs (h, ybar).

    The distinguished tuples are individualized into the vertex colors
    (shared namespace) instead of occupying pebble slots.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(xbar) != len(ybar):
        raise ValueError("distinguished tuples must have equal length")
    if g.n != h.n:
        return Winner.SPOILER
    n = g.n
    keys_g = individualization_keys(g.coloring, xbar)
    keys_h = individualization_keys(h.coloring, ybar)
    ranked = dense_ranks(keys_g + keys_h)
    cg, ch = ranked[:n], ranked[n:]

    pairs = [(BOT, BOT)] + [(a, b) for a in range(n) for b in range(n) if cg[a] == ch[b]]

    def consistent(p, q) -> bool:
        (a, b), (c, d) = p, q
        if a == BOT or c == BOT:
            return True
        return (a == c) == (b == d) and g.has_edge(a, c) == h.has_edge(b, d)

    m = k - 1
    states: set[tuple] = set()
    for combo in combinations_with_replacement(pairs, m):
        if all(consistent(p, q) for i, p in enumerate(combo) for q in combo[i + 1:]):
            states.add(combo)
            if len(states) > max_states:
                raise ResourceLimitError(f"pebble game on {n} vertices exceeds {max_states} states")

    def canon(pairs_: Sequence[tuple[int, int]]) -> tuple:
        return tuple(sorted(pairs_))

    good = set(states)
    changed = True
    while changed:
        changed = False
        for q in sorted(good):
            allowed = [0] * n
            for v in range(n):
                row = 0
                for w in range(n):
                    if cg[v] != ch[w]:
                        continue
                    new = (v, w)
                    if not all(consistent(p, new) for p in q):
                        continue
                    if any(canon(q[:j] + q[j + 1:] + (new,)) not in good for j in range(m)):
                        continue
                    row |= 1 << w
                allowed[v] = row
            if not _has_perfect_matching(allowed, n):
                good.discard(q)
                changed = True
    start = tuple([(BOT, BOT)] * m)
    return Winner.DUPLICATOR if start in good else Winner.SPOILER
