"""Record the tree-size growth baseline enforced by the acceptance suite.

Run once from the repository root; the output is committed as
tests/data/bench_baseline.json.
"""

from __future__ import annotations

import json
import statistics
import sys

from hardgi.bench import growth_summary, run_bench

GRID = {"n_list": [8, 10, 12, 14, 16], "r": 4, "k": 1, "seeds": [1, 2, 3, 4, 5],
        "refine": "wl1", "prune": "inv", "relaxed": True}


def main(path: str = "tests/data/bench_baseline.json") -> None:
    records = run_bench(GRID["n_list"], GRID["r"], GRID["seeds"], GRID["k"], refine=GRID["refine"],
                        prune=GRID["prune"], relaxed=GRID["relaxed"])
    growth = growth_summary(records)
    out = {
        "grid": GRID,
        "nodes": {str(n): [rec.nodes for rec in records if rec.n == n] for n in growth.ns},
        "medians": growth.medians,
        "log2_medians": growth.log2_medians,
        "min_step": min(growth.steps),
        "mean_step": statistics.fmean(growth.steps),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main(*sys.argv[1:])
