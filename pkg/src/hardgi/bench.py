"""Benchmark harness: generate instances over a grid and record tree sizes."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automorphisms import brute_force_automorphisms
from .basegen import generate_hard_instance
from .formats import BenchRecord
from .ir import build_search_tree

RELAXED_REQUIRE = ("overlap",)


def instance_for(n: int, r: int, k: int, seed: int, relaxed: bool = False,
                 max_retries: int = 5_000_000, verify: str = "assumed"):
    require = RELAXED_REQUIRE if relaxed else ("overlap", "rank")
    return generate_hard_instance(n, r, k, seed, require=require, strict=not relaxed,
                                  max_retries=max_retries, verify=verify)


def solve_record(graph, *, seed: int = -1, n: int = -1, r: int = -1, k: int = -1,
                 refine: str = "wl1", selector: str = "first-smallest", prune: str = "inv",
                 max_nodes: int = 1_000_000) -> BenchRecord:
    t0 = time.perf_counter()
    auts = brute_force_automorphisms(graph) if "aut" in prune else None
    tree = build_search_tree(graph, refine, selector, prune, auts, max_nodes)
    wall = (time.perf_counter() - t0) * 1000.0
    return BenchRecord(seed, n, r, k, refine, selector, "default", prune, tree.nodes,
                       tree.leaf_count, tree.height, tree.truncated, wall)


def run_bench(n_list: Iterable[int], r: int, seeds: Iterable[int], k: int = 1, *,
              refine: str = "wl1", prune: str = "inv", relaxed: bool = False,
              max_nodes: int = 1_000_000, max_retries: int = 5_000_000) -> list[BenchRecord]:
    records = []
    for n in n_list:
        for seed in seeds:
            multipede, _ = instance_for(n, r, k, seed, relaxed, max_retries)
            records.append(solve_record(multipede.graph, seed=seed, n=n, r=r, k=k, refine=refine,
                                        prune=prune, max_nodes=max_nodes))
    records.sort(key=lambda rec: (rec.n, rec.seed))
    return records


@dataclass
class Growth:
    ns: list[int]
    medians: list[float]
    log2_medians: list[float]
    steps: list[float]  # log2 median increase between consecutive n
    per_seed_increasing: dict[int, bool]


def growth_summary(records: Sequence[BenchRecord]) -> Growth:
    """Median tree size per n and per-seed monotonicity; truncated rows are dropped."""
    usable = [rec for rec in records if not rec.truncated]
    ns = sorted({rec.n for rec in usable})
    medians = [statistics.median(rec.nodes for rec in usable if rec.n == n) for n in ns]
    logs = [math.log2(m) for m in medians]
    by_seed: dict[int, list[tuple[int, int]]] = {}
    for rec in usable:
        by_seed.setdefault(rec.seed, []).append((rec.n, rec.nodes))
    increasing = {}
    for seed, rows in sorted(by_seed.items()):
        sizes = [nodes for _, nodes in sorted(rows)]
        increasing[seed] = all(a < b for a, b in zip(sizes, sizes[1:]))
    return Growth(ns, medians, logs, [b - a for a, b in zip(logs, logs[1:])], increasing)
