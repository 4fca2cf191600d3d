"""Per-instance checks of the structural facts about multipedes.

Each check returns a :class:`CheckResult`; the CLI ``verify`` command prints
it and turns ``ok`` into the exit code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .automorphisms import brute_force_automorphisms
from .basegen import check_meager
from .components import find_nontrivial_color_components, is_chi_automorphism, swap_map
from .graph import BipartiteBaseGraph, ColoredGraph
from .multipede import (aut_count_via_rank, build_multipede, cfi_gadget, closure,
                        gadget_swap_automorphism, induced_multipede)
from .wl import color_refine, wl_equivalent


@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int = 0
    details: list[str] = field(default_factory=list)

    def summary(self) -> str:
        head = f"{self.name}: {'pass' if self.ok else 'FAIL'} ({self.checked} checked)"
        return "\n".join([head] + [f"  {d}" for d in self.details])


def gadget_swaps_match(size: int) -> CheckResult:
    """Automorphisms of X_S are exactly the swap maps of even subsets of S."""
    x = cfi_gadget(range(size))
    found = set(brute_force_automorphisms(x.graph))
    expected = set()
    for t in range(1 << size):
        perm = gadget_swap_automorphism(x, [w for w in range(size) if (t >> w) & 1])
        if (bin(t).count("1") % 2 == 0) != (perm is not None):
            return CheckResult(f"gadget |S|={size}", False, t, [f"parity rule broken for swap set {t:b}"])
        if perm is not None:
            expected.add(perm)
    ok = found == expected and len(expected) == 1 << (size - 1)
    details = [] if ok else [f"brute force {len(found)} vs swap maps {len(expected)}"]
    return CheckResult(f"gadget |S|={size}", ok, 1 << size, details)


def lemma1(base: BipartiteBaseGraph | None = None, sizes=(1, 2, 3, 4)) -> CheckResult:
    if base is not None:
        sizes = sorted({base.degree(v) for v in range(base.left_count)})
    parts = [gadget_swaps_match(s) for s in sizes]
    return CheckResult("lemma1", all(p.ok for p in parts), sum(p.checked for p in parts),
                       [d for p in parts for d in p.details])


def lemma4(base: BipartiteBaseGraph, max_nodes: int = 5_000_000) -> CheckResult:
    r = build_multipede(base)
    brute = len(brute_force_automorphisms(r.graph, max_nodes))
    predicted = aut_count_via_rank(base)
    return CheckResult("lemma4", brute == predicted, 1, [f"|Aut| = {brute}, 2^(|W|-rk) = {predicted}"])


def distinguished_pairs(base: BipartiteBaseGraph, individualized) -> frozenset[int]:
    """The w for which 1-WL tells (R^I(G), a(w)) from (R^I(G), b(w))."""
    r = build_multipede(base, individualized)
    return frozenset(w for w in range(base.right_count)
                     if not wl_equivalent(r.graph, (r.a(w),), r.graph, (r.b(w),), 1))


def lemma6(base: BipartiteBaseGraph, individualized) -> CheckResult:
    got = distinguished_pairs(base, individualized)
    want = closure(base, individualized, 1)
    details = [] if got == want else [f"1-WL splits {sorted(got)}, closure is {sorted(want)}"]
    return CheckResult("lemma6", got == want, base.right_count, details)


def _subsets(universe: int, max_size: int):
    for size in range(1, max_size + 1):
        yield from combinations(range(universe), size)


def lemma8(base: BipartiteBaseGraph, ell, alpha, max_nodes: int = 2_000_000) -> CheckResult:
    """|Aut(R(G)[[X]])| ≥ 2^((1−α)|X|) for all X with |X| ≤ ℓ; needs (ℓ, α)-meagerness."""
    alpha = Fraction(alpha)
    verdict = check_meager(base, ell, alpha, "exhaustive")
    if not verdict.ok:
        return CheckResult("lemma8", False, 0, [f"base is not ({ell}, {alpha})-meager: X = {verdict.witness}"])
    checked = 0
    for xs in _subsets(base.right_count, int(Fraction(ell))):
        sub = induced_multipede(base, xs)
        count = len(brute_force_automorphisms(sub, max_nodes))
        checked += 1
        # count >= 2^e with e rational: compare count^den >= 2^num
        e = (1 - alpha) * len(xs)
        if count ** e.denominator < 2 ** e.numerator:
            return CheckResult("lemma8", False, checked, [f"X = {xs}: |Aut| = {count} < 2^{e}"])
    return CheckResult("lemma8", True, checked)


def lemma9(base: BipartiteBaseGraph, ell, alpha, d: int) -> CheckResult:
    """|cl^d(X)| < |X|/(1−dα) for |X| ≤ ℓ(1−dα)−d+1; needs meagerness and dα < 1."""
    alpha, ell = Fraction(alpha), Fraction(ell)
    if d * alpha >= 1:
        return CheckResult("lemma9", False, 0, ["needs d*alpha < 1"])
    verdict = check_meager(base, ell, alpha, "exhaustive")
    if not verdict.ok:
        return CheckResult("lemma9", False, 0, [f"base is not ({ell}, {alpha})-meager: X = {verdict.witness}"])
    bound = ell * (1 - d * alpha) - d + 1
    checked = 0
    for xs in _subsets(base.right_count, max(0, int(bound))):
        cl = closure(base, xs, d)
        checked += 1
        if not len(cl) * (1 - d * alpha) < len(xs):
            return CheckResult("lemma9", False, checked, [f"X = {xs}: closure has {len(cl)} elements"])
    return CheckResult("lemma9", True, checked)


def rigid(g: ColoredGraph, max_nodes: int = 5_000_000) -> CheckResult:
    auts = brute_force_automorphisms(g, max_nodes, limit=2)
    return CheckResult("rigid", len(auts) == 1, 1, [] if len(auts) == 1 else ["nontrivial automorphism found"])


def meager(base: BipartiteBaseGraph, ell, alpha) -> CheckResult:
    v = check_meager(base, ell, alpha, "exhaustive")
    return CheckResult("meager", v.ok, v.checked, [] if v.ok else [f"violating X = {v.witness}"])


def components(g: ColoredGraph, mode: str = "exhaustive") -> CheckResult:
    """Color-components of the 1-WL coloring: either unions of classes, or
    their swap maps are automorphisms."""
    chi = color_refine(g)
    res = find_nontrivial_color_components(g, chi, mode)
    details = []
    ok = not res.partial
    for s in res.components:
        perm = swap_map(chi, s)
        if perm is None or not is_chi_automorphism(g, chi, perm):
            ok = False
            details.append(f"component {s} has no swap automorphism")
    if res.partial:
        details.append("search budget exhausted")
    details.append(f"{len(res.components)} nontrivial components")
    return CheckResult("components", ok, res.nodes, details)

