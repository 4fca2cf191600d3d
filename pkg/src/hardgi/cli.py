"""Command-line entry point (``hardgi``).

Exit codes: 0 pass, 1 fail (or "not isomorphic"), 2 usage or input error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import checks
from .bench import growth_summary, instance_for, run_bench, solve_record
from .errors import FormatError, GenerationError, ResourceLimitError
from .formats import (encode_base, encode_set, export_dimacs, export_dreadnaut, read_instance,
                      records_to_csv, serialize)
from .ir import MODES, OPERATORS, SELECTORS, isomorphic
from .multipede import uncolored_wrap
from .wl import Partition, wl_k

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    """``1,2,5`` or ``1-5`` (inclusive), or a mix."""
    out = []
    try:
        for part in text.split(","):
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out += list(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}")
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _base_of(inst):
    base = inst.base()
    if base is None:
        raise FormatError("file has no '# base' metadata; it was not written by 'gen'")
    return base


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> int:
    multipede, cert = instance_for(args.n, args.r, args.k, args.seed, args.relaxed,
                                   args.max_retries, args.verify)
    graph = uncolored_wrap(multipede) if args.uncolored else multipede.graph
    meta = [
        f"params n={args.n} r={args.r} k={args.k} seed={args.seed}",
        f"base {encode_base(multipede.base)}",
        f"I {encode_set(multipede.individualized)}",
        f"wrap {int(args.uncolored)}",
        f"cert {json.dumps(cert.to_dict(), sort_keys=True)}",
    ]
    _emit(serialize(graph, meta), args.out)
    return EXIT_OK


def cmd_wl(args) -> int:
    inst = read_instance(args.graph)
    vbar = args.individualize or []
    _, part = wl_k(inst.graph, vbar, args.k, Partition.of(inst.graph), args.max_tuples)
    print(f"classes {part.num_classes}")
    print(f"sizes {' '.join(map(str, part.sizes()))}")
    print(f"colors {' '.join(map(str, part.colors))}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = read_instance(args.graph)
    p = inst.params()
    rec = solve_record(inst.graph, seed=p.get("seed", -1), n=p.get("n", -1), r=p.get("r", -1),
                       k=p.get("k", -1), refine=args.refine, selector=args.select,
                       prune=args.prune, max_nodes=args.max_nodes)
    sys.stdout.write(records_to_csv([rec]))
    return EXIT_RESOURCE if rec.truncated else EXIT_OK


def cmd_iso(args) -> int:
    g = read_instance(args.g1).graph
    h = read_instance(args.g2).graph
    res = isomorphic(g, h, args.refine, args.select, args.max_nodes)
    print(f"isomorphic {str(res.isomorphic).lower()}")
    if res.witness is not None:
        print(f"witness {' '.join(map(str, res.witness))}")
    return EXIT_OK if res.isomorphic else EXIT_FAIL


def cmd_verify(args) -> int:
    what = args.what
    if what == "lemma1" and not args.graph:
        result = checks.lemma1()
    else:
        if not args.graph:
            raise FormatError(f"verify {what} needs --graph")
        inst = read_instance(args.graph)
        if what == "lemma1":
            result = checks.lemma1(_base_of(inst))
        elif what == "lemma4":
            result = checks.lemma4(_base_of(inst))
        elif what == "lemma6":
            result = checks.lemma6(_base_of(inst), inst.individualized())
        elif what == "lemma8":
            result = checks.lemma8(_base_of(inst), args.ell, args.alpha)
        elif what == "lemma9":
            result = checks.lemma9(_base_of(inst), args.ell, args.alpha, args.d)
        elif what == "meager":
            result = checks.meager(_base_of(inst), args.ell, args.alpha)
        elif what == "rigid":
            result = checks.rigid(inst.graph)
        else:
            result = checks.components(inst.graph)
    print(result.summary())
    return EXIT_OK if result.ok else EXIT_FAIL


def cmd_bench(args) -> int:
    records = run_bench(args.n_list, args.r, args.seeds, args.k, refine=args.refine,
                        prune=args.prune, relaxed=args.relaxed, max_nodes=args.max_nodes,
                        max_retries=args.max_retries)
    _emit(records_to_csv(records), args.csv)
    if args.csv:
        growth = growth_summary(records)
        for n, med in zip(growth.ns, growth.medians):
            print(f"n={n} median nodes {med}")
    return EXIT_OK


def cmd_export(args) -> int:
    g = read_instance(args.graph).graph
    _emit(export_dimacs(g) if args.format == "dimacs" else export_dreadnaut(g), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hardgi", description="Hard multipede instances and an instrumented IR solver.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate R^I(G) from a seeded random base graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--uncolored", action="store_true", help="encode colors with the path gadget")
    g.add_argument("--verify", choices=("exhaustive", "sampled", "assumed"), default="exhaustive")
    g.add_argument("--relaxed", action="store_true",
                   help="allow r > n/4 and do not redraw on the rank condition")
    g.add_argument("--max-retries", type=int, default=5_000_000)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    w = sub.add_parser("wl", help="stable k-WL vertex partition")
    w.add_argument("--graph", required=True)
    w.add_argument("--k", type=int, default=1, choices=(1, 2, 3))
    w.add_argument("--individualize", type=_int_list)
    w.add_argument("--max-tuples", type=int, default=250_000)
    w.set_defaults(func=cmd_wl)

    s = sub.add_parser("solve", help="build the IR search tree and print a bench record")
    s.add_argument("--graph", required=True)
    s.add_argument("--refine", choices=sorted(OPERATORS), default="wl1")
    s.add_argument("--select", choices=sorted(SELECTORS), default="first-smallest")
    s.add_argument("--invariant", choices=("default",), default="default")
    s.add_argument("--prune", choices=MODES, default="inv")
    s.add_argument("--max-nodes", type=int, default=1_000_000)
    s.set_defaults(func=cmd_solve)

    i = sub.add_parser("iso", help="decide isomorphism of two instance files")
    i.add_argument("--g1", required=True)
    i.add_argument("--g2", required=True)
    i.add_argument("--refine", choices=sorted(OPERATORS), default="wl1")
    i.add_argument("--select", choices=sorted(SELECTORS), default="first-smallest")
    i.add_argument("--max-nodes", type=int, default=1_000_000)
    i.set_defaults(func=cmd_iso)

    v = sub.add_parser("verify", help="check a structural property of an instance")
    v.add_argument("what", choices=("lemma1", "lemma4", "lemma6", "lemma8", "lemma9",
                                    "rigid", "meager", "components"))
    v.add_argument("--graph")
    v.add_argument("--ell", type=Fraction, default=Fraction(3))
    v.add_argument("--alpha", type=Fraction, default=Fraction(1, 2))
    v.add_argument("--d", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="tree sizes over a grid of instances, as CSV")
    b.add_argument("--n-list", type=_int_list, required=True)
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--k", type=int, default=1)
    b.add_argument("--seeds", type=_int_list, required=True)
    b.add_argument("--refine", choices=sorted(OPERATORS), default="wl1")
    b.add_argument("--prune", choices=MODES, default="inv")
    b.add_argument("--relaxed", action="store_true")
    b.add_argument("--max-nodes", type=int, default=1_000_000)
    b.add_argument("--max-retries", type=int, default=5_000_000)
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)

    e = sub.add_parser("export", help="write DIMACS or dreadnaut input")
    e.add_argument("--graph", required=True)
    e.add_argument("--format", choices=("dimacs", "dreadnaut"), required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ResourceLimitError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
