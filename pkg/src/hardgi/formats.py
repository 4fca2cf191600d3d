"""Text formats: the canonical ``cgf`` instance format, exporters, bench CSV.

cgf grammar (every line ends in a newline, tokens separated by one space)::

    # free-form metadata          (only before the header)
    p cgf <n> <m> <numColors>
    c <v> <color>                 n lines, v = 0 .. n-1 in order
    e <u> <v>                     m lines, u < v, strictly increasing

Multipede instances carry their base graph and individualized set in the
metadata block (``# base``, ``# I``) so that verification commands can
rebuild them.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable, Sequence

from .errors import FormatError
from .graph import BipartiteBaseGraph, ColoredGraph

_INT = re.compile(r"0|[1-9][0-9]*\Z")


@dataclass
class InstanceFile:
    graph: ColoredGraph
    metadata: list[str] = field(default_factory=list)  # lines without the leading "# "

    def meta(self, key: str) -> str | None:
        """Rest of the first metadata line starting with ``key``."""
        for line in self.metadata:
            head, _, rest = line.partition(" ")
            if head == key:
                return rest
        return None

    def base(self) -> BipartiteBaseGraph | None:
        text = self.meta("base")
        return None if text is None else decode_base(text)

    def individualized(self) -> frozenset[int]:
        text = self.meta("I")
        if text is None or text == "-":
            return frozenset()
        return frozenset(int(x) for x in text.split(","))

    def params(self) -> dict[str, int]:
        text = self.meta("params")
        if not text:
            return {}
        return {k: int(v) for k, v in (item.split("=") for item in text.split())}

    def certificate(self) -> dict | None:
        text = self.meta("cert")
        return None if text is None else json.loads(text)


def encode_base(base: BipartiteBaseGraph) -> str:
    nbrs = ";".join(",".join(map(str, ns)) for ns in base.left_neighbors)
    return f"{base.left_count} {base.right_count} {nbrs or '-'}"


def decode_base(text: str) -> BipartiteBaseGraph:
    try:
        left, right, body = text.split(" ")
        left, right = int(left), int(right)
        groups = [] if body == "-" else body.split(";")
        nbrs = [[int(x) for x in grp.split(",") if x] for grp in groups]
    except ValueError as exc:
        raise FormatError(f"bad base metadata: {text!r}") from exc
    if len(nbrs) != left:
        raise FormatError(f"base metadata lists {len(nbrs)} neighborhoods, expected {left}")
    return BipartiteBaseGraph.from_neighborhoods(right, nbrs)


def encode_set(xs: Iterable[int]) -> str:
    xs = sorted(xs)
    return ",".join(map(str, xs)) if xs else "-"


def serialize(g: ColoredGraph, metadata: Sequence[str] = ()) -> str:
    out = []
    for line in metadata:
        if "\n" in line:
            raise ValueError("metadata lines cannot contain newlines")
        out.append(f"# {line}" if line else "#")
    out.append(f"p cgf {g.n} {g.m} {g.num_colors}")
    out += [f"c {v} {c}" for v, c in enumerate(g.coloring)]
    out += [f"e {u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    for t in tokens:
        if not _INT.match(t):
            raise FormatError(f"expected a non-negative integer, got {t!r}", lineno)
    return [int(t) for t in tokens]


def parse(text: str) -> InstanceFile:
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    metadata = []
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        metadata.append(lines[i][2:] if lines[i].startswith("# ") else lines[i][1:])
        i += 1
    if i == len(lines):
        raise FormatError("missing header line", i + 1)
    parts = lines[i].split(" ")
    if len(parts) != 5 or parts[:2] != ["p", "cgf"]:
        raise FormatError("header must read 'p cgf <n> <m> <numColors>'", i + 1)
    n, m, t = _ints(parts[2:], i + 1)
    body = lines[i + 1:]
    if len(body) != n + m:
        raise FormatError(f"expected {n} color and {m} edge lines, found {len(body)} lines", i + 2)
    colors = []
    for j in range(n):
        lineno = i + 2 + j
        parts = body[j].split(" ")
        if parts[0] != "c" or len(parts) != 3:
            raise FormatError("expected 'c <v> <color>'", lineno)
        v, c = _ints(parts[1:], lineno)
        if v != j:
            raise FormatError(f"color lines must list vertices in order, expected {j}", lineno)
        if c >= t:
            raise FormatError(f"color {c} not below numColors {t}", lineno)
        colors.append(c)
    edges = []
    prev = None
    for j in range(m):
        lineno = i + 2 + n + j
        parts = body[n + j].split(" ")
        if parts[0] != "e" or len(parts) != 3:
            raise FormatError("expected 'e <u> <v>'", lineno)
        u, v = _ints(parts[1:], lineno)
        if not u < v:
            raise FormatError(f"edge endpoints must satisfy u < v, got {u} {v}", lineno)
        if v >= n:
            raise FormatError(f"vertex {v} out of range", lineno)
        if prev is not None and (u, v) <= prev:
            raise FormatError("edges must be strictly increasing", lineno)
        prev = (u, v)
        edges.append((u, v))
    if n and sorted(set(colors)) != list(range(t)):
        raise FormatError(f"colors must use every id in 0..{t - 1}", i + 1)
    if not n and t:
        raise FormatError("an empty graph has no colors", i + 1)
    return InstanceFile(ColoredGraph.from_edges(n, edges, colors), metadata)


def read_instance(path: str) -> InstanceFile:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def write_instance(path: str, g: ColoredGraph, metadata: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize(g, metadata))


# ---------------------------------------------------------------------------
# exporters


def export_dimacs(g: ColoredGraph) -> str:
    """``p edge n m``, one ``n v color`` line per vertex, then ``e u v`` (1-based)."""
    out = [f"p edge {g.n} {g.m}"]
    out += [f"n {v + 1} {c}" for v, c in enumerate(g.coloring)]
    out += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def export_dreadnaut(g: ColoredGraph) -> str:
    """0-based dreadnaut input: graph, then the color classes as a partition."""
    out = [f"n={g.n} $=0 g"]
    for v in range(g.n):
        later = [u for u in g.adjacency[v] if u > v]
        out.append(f"{v}: {' '.join(map(str, later))};" if later else f"{v}: ;")
    out.append(".")
    cells = [",".join(map(str, cell)) for cell in g.color_classes()]
    out.append(f"f=[{'|'.join(cells)}]")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# bench records


@dataclass
class BenchRecord:
    seed: int
    n: int
    r: int
    k: int
    refine: str
    selector: str
    invariant: str
    prune: str
    nodes: int
    leaves: int
    height: int
    truncated: bool
    wall_ms: float


BENCH_COLUMNS = [f.name for f in fields(BenchRecord)]


def _cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCH_COLUMNS)
    for rec in records:
        w.writerow([_cell(v) for v in asdict(rec).values()])
    return buf.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != BENCH_COLUMNS:
        raise FormatError("unexpected CSV header", 1)
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(BENCH_COLUMNS):
            raise FormatError("wrong number of columns", lineno)
        vals = dict(zip(BENCH_COLUMNS, row))
        try:
            out.append(BenchRecord(
                seed=int(vals["seed"]), n=int(vals["n"]), r=int(vals["r"]), k=int(vals["k"]),
                refine=vals["refine"], selector=vals["selector"], invariant=vals["invariant"],
                prune=vals["prune"], nodes=int(vals["nodes"]), leaves=int(vals["leaves"]),
                height=int(vals["height"]), truncated=vals["truncated"] == "1",
                wall_ms=float(vals["wall_ms"])))
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from exc
    return out
