"""GF(2) matrices stored as one int bitset per row.

Column ``j`` of a row is bit ``j`` of its int.  Python ints act as packed
word arrays of arbitrary width, so there is no fixed 64-column limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import BipartiteBaseGraph


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    col_count: int

    def __post_init__(self):
        limit = 1 << self.col_count
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError("row wider than col_count")

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        """Build from strings like ``"1100"`` (leftmost char is column 0)."""
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("rows of unequal width")
        return cls(tuple(sum(1 << j for j, ch in enumerate(r) if ch == "1") for r in rows), width)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls((0,) * rows, cols)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def to_strings(self) -> list[str]:
        return [vector_to_string(r, self.col_count) for r in self.rows]

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.col_count):
            col = 0
            for i, r in enumerate(self.rows):
                if (r >> j) & 1:
                    col |= 1 << i
            cols.append(col)
        return BitMatrix(tuple(cols), self.row_count)

    def mul_vector(self, x: int) -> int:
        """M·x over GF(2), result packed as a bitset over rows."""
        out = 0
        for i, r in enumerate(self.rows):
            if bin(r & x).count("1") & 1:
                out |= 1 << i
        return out

    def stack(self, extra: Iterable[int]) -> "BitMatrix":
        return BitMatrix(self.rows + tuple(extra), self.col_count)


def vector_to_string(x: int, width: int) -> str:
    return "".join("1" if (x >> j) & 1 else "0" for j in range(width))


def incidence_matrix(g: BipartiteBaseGraph) -> BitMatrix:
    """A_G with rows indexed by V and columns by W."""
    return BitMatrix(tuple(g.neighbor_mask(v) for v in range(g.left_count)), g.right_count)


def _echelon(rows: Sequence[int], width: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (pivot rows, pivot columns)."""
    work = list(rows)
    pivots: list[int] = []
    pivot_rows: list[int] = []
    for col in range(width):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        p = work.pop(idx)
        work = [r ^ p if r & bit else r for r in work]
        pivot_rows = [r ^ p if r & bit else r for r in pivot_rows]
        pivot_rows.append(p)
        pivots.append(col)
    return pivot_rows, pivots


def f2_rank(m: BitMatrix) -> int:
    work = list(m.rows)
    rank = 0
    for col in range(m.col_count):
        bit = 1 << col
        idx = next((i for i in range(rank, len(work)) if work[i] & bit), None)
        if idx is None:
            continue
        work[rank], work[idx] = work[idx], work[rank]
        p = work[rank]
        for i in range(rank + 1, len(work)):
            if work[i] & bit:
                work[i] ^= p
        rank += 1
        if rank == len(work):
            break
    return rank


def f2_nullspace_basis(m: BitMatrix) -> list[int]:
    """Basis of {x : Mx = 0}, one vector per free column in ascending order.

    The vector for free column ``f`` has bit ``f`` set, no other free bits,
    and pivot bits fixed by back substitution.
    """
    pivot_rows, pivots = _echelon(m.rows, m.col_count)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.col_count):
        if f in pivot_set:
            continue
        x = 1 << f
        for row, col in zip(pivot_rows, pivots):
            if (row >> f) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def span_extension(rows: Sequence[int], width: int) -> list[int]:
    """Standard basis indices that, added greedily in ascending order, complete
    the row span of ``rows`` to all of GF(2)^width."""
    basis: dict[int, int] = {}  # leading bit -> reduced vector

    def reduce(v: int) -> int:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                return v
            v ^= basis[top]
        return 0

    def insert(v: int) -> bool:
        v = reduce(v)
        if not v:
            return False
        basis[v.bit_length() - 1] = v
        return True

    for r in rows:
        insert(r)
    chosen = []
    for w in range(width):
        if insert(1 << w):
            chosen.append(w)
    return chosen


def row_basis(rows: Sequence[int]) -> list[int]:
    """Indices of a maximal independent subset of ``rows``, scanned in order."""
    basis: dict[int, int] = {}
    chosen = []
    for i, r in enumerate(rows):
        v = r
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                chosen.append(i)
                break
            v ^= basis[top]
    return chosen
