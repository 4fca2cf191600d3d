"""Seeded random base graphs and checks of the hard-instance conditions.

The random stream is SplitMix64, fixed bit for bit so instances reproduce
across platforms and implementations.  Each left vertex draws its r right
neighbors by a partial Fisher-Yates shuffle of a fresh array 0..n-1 using
``next_u64() % (n - i)``; the modulo bias is accepted.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, floor
from typing import Iterable

from .errors import GenerationError, ResourceLimitError
from .gf2 import f2_rank, incidence_matrix
from .graph import BipartiteBaseGraph
from .multipede import MultipedeGraph, build_multipede, rigidify

MASK64 = (1 << 64) - 1
DEFAULT_EXHAUSTIVE_BUDGET = 2_000_000


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


@dataclass(frozen=True)
class GenParams:
    n: int
    r: int
    seed: int = 0
    max_retries: int = 100_000
    strict: bool = True  # enforce r <= n/4 from the random process

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError("n and r must be positive")
        if self.r > self.n:
            raise ValueError("r cannot exceed n")
        if self.strict and 4 * self.r > self.n:
            raise ValueError(f"r={self.r} violates r <= n/4 for n={self.n}")


def _draw(rng: SplitMix64, n: int, r: int) -> BipartiteBaseGraph:
    nbrs = []
    for _ in range(n):
        idx = list(range(n))
        for i in range(r):
            j = i + rng.next_u64() % (n - i)
            idx[i], idx[j] = idx[j], idx[i]
        nbrs.append(sorted(idx[:r]))
    return BipartiteBaseGraph.from_neighborhoods(n, nbrs)


def random_base(p: GenParams) -> BipartiteBaseGraph:
    """The first draw of the seeded stream: every left vertex gets r distinct neighbors."""
    return _draw(SplitMix64(p.seed), p.n, p.r)


def check_overlap(base: BipartiteBaseGraph) -> bool:
    """True iff all distinct left vertices share fewer than 3 neighbors."""
    masks = [base.neighbor_mask(v) for v in range(base.left_count)]
    return all(bin(a & b).count("1") < 3 for a, b in combinations(masks, 2))


def check_rank(base: BipartiteBaseGraph, r: int) -> tuple[int, bool]:
    """(rank, rank >= (1 - 2^-r) n) with n = |W|, compared exactly."""
    rank = f2_rank(incidence_matrix(base))
    return rank, rank * 2 ** r >= (2 ** r - 1) * base.right_count


MODES = ("exhaustive", "sampled", "assumed")


@dataclass(frozen=True)
class Verdict:
    ok: bool
    mode: str
    checked: int
    witness: tuple[int, ...] | None = None  # violating set, if one was found


def _subsets_upto(universe: int, size_limit: int) -> int:
    return sum(comb(universe, i) for i in range(1, size_limit + 1))


def check_meager(base: BipartiteBaseGraph, ell, alpha, mode: str = "exhaustive",
                 samples: int = 10_000, seed: int = 0,
                 budget: int = DEFAULT_EXHAUSTIVE_BUDGET) -> Verdict:
    """(ℓ, α)-meagerness: |N⁻¹(X)| < α|X| for every nonempty X ⊆ W with |X| ≤ ℓ.

    ``exhaustive`` is exact; ``sampled`` tests random X and can only refute;
    ``assumed`` checks nothing and reports ok.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    alpha = Fraction(alpha)
    limit = min(floor(Fraction(ell)), base.right_count)
    masks = [base.neighbor_mask(v) for v in range(base.left_count)]

    def violates(xmask: int, size: int) -> bool:
        inside = sum(1 for nm in masks if nm & ~xmask == 0)
        return not inside < alpha * size

    if mode == "assumed" or limit < 1:
        return Verdict(True, mode if limit >= 1 else "exhaustive", 0)
    if mode == "exhaustive":
        total = _subsets_upto(base.right_count, limit)
        if total > budget:
            raise ResourceLimitError(f"exhaustive meagerness needs {total} subsets > budget {budget}")
        checked = 0
        for size in range(1, limit + 1):
            for xs in combinations(range(base.right_count), size):
                checked += 1
                xmask = sum(1 << w for w in xs)
                if violates(xmask, size):
                    return Verdict(False, mode, checked, xs)
        return Verdict(True, mode, checked)
    rng = random.Random(seed)
    for i in range(samples):
        size = rng.randint(1, limit)
        xs = tuple(sorted(rng.sample(range(base.right_count), size)))
        if violates(sum(1 << w for w in xs), size):
            return Verdict(False, mode, i + 1, xs)
    return Verdict(True, mode, samples)


def check_expander(base: BipartiteBaseGraph, gamma, beta, mode: str = "exhaustive",
                   samples: int = 10_000, seed: int = 0,
                   budget: int = DEFAULT_EXHAUSTIVE_BUDGET) -> Verdict:
    """(γ, β)-expansion of left sets: |N(Y)| ≥ β|Y| for all Y ⊆ V, 1 ≤ |Y| ≤ γ|V|."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    beta = Fraction(beta)
    limit = min(floor(Fraction(gamma) * base.left_count), base.left_count)
    masks = [base.neighbor_mask(v) for v in range(base.left_count)]

    def violates(ys) -> bool:
        union = 0
        for v in ys:
            union |= masks[v]
        return bin(union).count("1") < beta * len(ys)

    if mode == "assumed" or limit < 1:
        return Verdict(True, mode if limit >= 1 else "exhaustive", 0)
    if mode == "exhaustive":
        total = _subsets_upto(base.left_count, limit)
        if total > budget:
            raise ResourceLimitError(f"exhaustive expansion needs {total} subsets > budget {budget}")
        checked = 0
        for size in range(1, limit + 1):
            for ys in combinations(range(base.left_count), size):
                checked += 1
                if violates(ys):
                    return Verdict(False, mode, checked, ys)
        return Verdict(True, mode, checked)
    rng = random.Random(seed)
    for i in range(samples):
        ys = tuple(sorted(rng.sample(range(base.left_count), rng.randint(1, limit))))
        if violates(ys):
            return Verdict(False, mode, i + 1, ys)
    return Verdict(True, mode, samples)


@dataclass
class InstanceCertificate:
    n: int
    r: int
    k: int
    seed: int
    draws: int
    degrees_ok: bool
    overlap_ok: bool
    rank: int
    rank_ok: bool
    individualized: list[int]
    d: int
    meager_ell: str
    meager_alpha: str
    meager_mode: str
    meager_ok: bool
    expander_gamma: str
    expander_beta: str
    expander_mode: str
    expander_ok: bool
    required: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


REQUIREMENTS = ("overlap", "rank")


def generate_hard_instance(n: int, r: int, k: int = 1, seed: int = 0, *,
                           require: Iterable[str] = REQUIREMENTS, strict: bool = True,
                           max_retries: int = 100_000, verify: str = "exhaustive",
                           budget: int = DEFAULT_EXHAUSTIVE_BUDGET) -> tuple[MultipedeGraph, InstanceCertificate]:
    """Draw base graphs until the required conditions hold, then build R^I(G).

    ``require`` selects which of "overlap" and "rank" force a redraw; the
    unrequired ones are still evaluated and recorded.  Meagerness is checked
    with ℓ = n/(10r), α = 3/r and expansion with γ = 1/(10r), β = r/2, in the
    ``verify`` mode, falling back to ``sampled`` when exhaustive is over budget.
    """
    require = tuple(require)
    unknown = set(require) - set(REQUIREMENTS)
    if unknown:
        raise ValueError(f"unknown requirements {sorted(unknown)}")
    params = GenParams(n, r, seed, max_retries, strict)
    rng = SplitMix64(params.seed)
    failed = None
    for draw in range(1, max_retries + 1):
        base = _draw(rng, n, r)
        degrees_ok = all(base.degree(v) == r for v in range(n))
        overlap_ok = check_overlap(base)
        rank, rank_ok = check_rank(base, r)
        if not degrees_ok:
            failed = "degrees"
        elif "overlap" in require and not overlap_ok:
            failed = "overlap"
        elif "rank" in require and not rank_ok:
            failed = "rank"
        else:
            break
    else:
        raise GenerationError(f"no admissible base graph in {max_retries} draws (last failure: {failed})",
                              condition=failed)
    I = rigidify(base)
    ell, alpha = Fraction(n, 10 * r), Fraction(3, r)
    gamma, beta = Fraction(1, 10 * r), Fraction(r, 2)
    meager = _verdict_with_fallback(check_meager, base, ell, alpha, verify, seed, budget)
    expander = _verdict_with_fallback(check_expander, base, gamma, beta, verify, seed, budget)
    cert = InstanceCertificate(
        n=n, r=r, k=k, seed=seed, draws=draw, degrees_ok=degrees_ok, overlap_ok=overlap_ok,
        rank=rank, rank_ok=rank_ok, individualized=sorted(I), d=3 * k,
        meager_ell=str(ell), meager_alpha=str(alpha), meager_mode=meager.mode, meager_ok=meager.ok,
        expander_gamma=str(gamma), expander_beta=str(beta), expander_mode=expander.mode,
        expander_ok=expander.ok, required=list(require))
    return build_multipede(base, I), cert


def _verdict_with_fallback(check, base, p1, p2, mode, seed, budget) -> Verdict:
    try:
        return check(base, p1, p2, mode=mode, seed=seed, budget=budget)
    except ResourceLimitError:
        return check(base, p1, p2, mode="sampled", seed=seed, budget=budget)
