"""Polynomial-space solvers.

Every table here holds at most ``SpaceBudget.max_words`` entries; subset sums
are streamed in fixed-size chunks rather than stored.  Live table sizes are
reported to a :class:`SpaceMeter` so tests can audit the bound.

The large-d branch does not implement the random-walk element distinctness
algorithm usually cited for this step.  It runs Brent cycle finding on
``x -> g(w(S_x))`` over n-bit subset codes, where ``g`` is a keyed n-bit
permutation.  Since ``g`` is a bijection, a collision of the walk at distinct
codes is always a genuine equal-sum pair.  This is a heuristic without a
proven time bound; :func:`solve_ps` falls back to streamed bisection.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import bisection
from .instance import Instance, SolutionPair, prefix_reduce
from .larged import BudgetExhausted
from .metrics import Metrics
from .smalld import (SmallDQuery, StructureViolated, check_structure, delta_max,
                     DeltaOutOfRange, solve_query)


class SpaceExceeded(AssertionError):
    pass


@dataclass
class SpaceBudget:
    max_words: int

    @classmethod
    def for_n(cls, n: int) -> "SpaceBudget":
        return cls(64 * n * n)


@dataclass
class SpaceMeter:
    """Tracks live table entries against a budget."""

    budget: SpaceBudget
    live: int = 0
    peak: int = 0
    log: list = field(default_factory=list)

    @contextmanager
    def hold(self, words: int, what: str = ""):
        self.live += words
        self.peak = max(self.peak, self.live)
        self.log.append((what, words))
        if self.live > self.budget.max_words:
            self.live -= words
            raise SpaceExceeded(f"{what}: {self.live + words} > {self.budget.max_words} words")
        try:
            yield
        finally:
            self.live -= words


class SubsetStream:
    """Enumerates subsets of ``positions`` in ascending mask order, in chunks.

    The lowest ``L`` positions form a chunk table of 2^L sums; the remaining
    positions are walked one high mask at a time.
    """

    def __init__(self, inst: Instance, positions, max_words: int, metrics: Metrics):
        self.inst = inst
        self.positions = sorted(positions)
        k = len(self.positions)
        L = 0
        while L < k and 3 * (1 << (L + 1)) <= max_words:
            L += 1
        self.L = L
        self.words = 3 * (1 << L)
        self.low = self.positions[:L]
        self.high = self.positions[L:]
        self.metrics = metrics
        self.low_sums = None
        self.low_masks = None

    def open(self):
        sums = np.zeros(1, dtype=np.int64)
        masks = np.zeros(1, dtype=np.int64)
        for p in self.low:
            sums = np.concatenate((sums, sums + self.inst.weights[p]))
            masks = np.concatenate((masks, masks | np.int64(1 << p)))
        self.low_sums, self.low_masks = sums, masks

    def _high(self, hm: int) -> tuple[int, int]:
        mask, s, b = 0, 0, 0
        while hm:
            if hm & 1:
                p = self.high[b]
                mask |= 1 << p
                s += self.inst.weights[p]
            hm >>= 1
            b += 1
        return mask, s

    def count_le(self, t: int) -> int:
        if t < 0:
            return 0
        total = 0
        for hm in range(1 << len(self.high)):
            _, hs = self._high(hm)
            if hs <= t:
                total += int(np.count_nonzero(self.low_sums <= t - hs))
        self.metrics.subsets_enumerated += 1 << len(self.positions)
        return total

    def list_eq(self, t: int, limit: int | None = None) -> list[int]:
        out: list[int] = []
        if t < 0:
            return out
        for hm in range(1 << len(self.high)):
            self.metrics.subsets_enumerated += len(self.low_sums)
            mask, hs = self._high(hm)
            if hs > t:
                continue
            for i in np.flatnonzero(self.low_sums == t - hs):
                out.append(mask | int(self.low_masks[i]))
                if limit is not None and len(out) >= limit:
                    return out
        return out


def count_le_stream(inst: Instance, t: int, meter: SpaceMeter | None = None,
                    metrics: Metrics | None = None) -> int:
    meter = meter or SpaceMeter(SpaceBudget.for_n(inst.n))
    stream = SubsetStream(inst, range(inst.n), meter.budget.max_words, metrics or Metrics())
    with meter.hold(stream.words, "stream"):
        stream.open()
        return stream.count_le(t)


def solve_stream(inst: Instance, meter: SpaceMeter, metrics: Metrics) -> SolutionPair:
    """Bisection with brute-force streamed counts: O*(2^n) time, poly space."""
    stream = SubsetStream(inst, range(inst.n), meter.budget.max_words, metrics)
    with meter.hold(stream.words, "stream"):
        stream.open()
        target = bisection.run(inst, stream.count_le)
        return bisection.extract(inst, target, stream.list_eq)


def solve_smalld_ps(inst: Instance, delta: int, meter: SpaceMeter | None = None,
                    metrics: Metrics | None = None) -> SolutionPair:
    """Small-d solver whose block-A searches stream instead of meeting in the middle."""
    inst = prefix_reduce(inst)
    meter = meter or SpaceMeter(SpaceBudget.for_n(inst.n))
    metrics = metrics if metrics is not None else Metrics()
    rep = check_structure(inst, delta)
    if rep.split is None:
        raise DeltaOutOfRange(f"delta = {delta} > 2^n/(3n^2) for n = {inst.n}")
    if not rep.ok:
        raise StructureViolated(rep)
    stream = SubsetStream(inst, range(rep.split), meter.budget.max_words, metrics)
    with meter.hold(stream.words, "block-A stream"):
        stream.open()
        query = SmallDQuery(inst, rep, metrics, count_a=stream.count_le, list_a=stream.list_eq)
        return solve_query(inst, query)


def _permute(v: int, key: int, n: int) -> int:
    """Keyed bijection on n-bit integers (add, xorshift, odd multiply rounds)."""
    mask = (1 << n) - 1
    s1, s2 = max(1, (n + 1) // 2), max(1, (n + 2) // 3)
    v = (v + key) & mask
    v ^= v >> s1
    v = (v * 0x9E3779B97F4A7C15) & mask
    v ^= v >> s2
    v = (v * 0xBF58476D1CE4E5B9) & mask
    v ^= v >> s1
    return v


class _ChunkSums:
    """w(S_x) from per-chunk lookup tables of ``bits`` positions each."""

    def __init__(self, inst: Instance, max_words: int):
        n = inst.n
        bits = 1
        while bits < 8 and bits < n and (1 << (bits + 1)) * -(-n // (bits + 1)) <= max_words // 2:
            bits += 1
        self.bits = bits
        self.tables = []
        for start in range(0, n, bits):
            ws = inst.weights[start:start + bits]
            tab = [0]
            for w in ws:
                tab = tab + [s + w for s in tab]
            self.tables.append(tab)
        self.words = sum(len(t) for t in self.tables)
        self.chunk_mask = (1 << bits) - 1

    def __call__(self, x: int) -> int:
        s = 0
        for tab in self.tables:
            s += tab[x & self.chunk_mask]
            x >>= self.bits
        return s


def default_rho_budget(n: int) -> int:
    return 4 * n * (1 << ((n + 1) // 2))


def solve_larged_ps(inst: Instance, seed: int = 0, budget: int | None = None,
                    meter: SpaceMeter | None = None,
                    metrics: Metrics | None = None) -> SolutionPair:
    """Brent cycle finding for an equal-sum collision; ``budget`` caps evaluations."""
    n = inst.n
    meter = meter or SpaceMeter(SpaceBudget.for_n(n))
    metrics = metrics if metrics is not None else Metrics()
    budget = default_rho_budget(n) if budget is None else budget
    rng = np.random.default_rng([seed, 0x5EED])
    wsum = _ChunkSums(inst, meter.budget.max_words)
    evals = 0
    with meter.hold(wsum.words, "chunk sums"):
        while True:
            if evals >= budget:
                metrics.subsets_enumerated += evals
                raise BudgetExhausted(f"{evals} walk steps without a collision")
            key = int(rng.integers(0, 1 << n))
            x0 = int(rng.integers(0, 1 << n))
            metrics.attempts += 1

            def f(x: int) -> int:
                return _permute(wsum(x), key, n)

            power = lam = 1
            tort, hare = x0, f(x0)
            evals += 1
            while tort != hare:
                if evals >= budget:
                    metrics.subsets_enumerated += evals
                    raise BudgetExhausted(f"{evals} walk steps without a collision")
                if power == lam:
                    tort, power, lam = hare, power * 2, 0
                hare = f(hare)
                evals += 1
                lam += 1
            tort = hare = x0
            for _ in range(lam):
                hare = f(hare)
            evals += lam
            if tort == hare:
                continue  # start point lies on the cycle: no tail, no collision
            while True:
                nt, nh = f(tort), f(hare)
                evals += 2
                if nt == nh:
                    break
                tort, hare = nt, nh
            metrics.subsets_enumerated += evals
            return inst.pair_from_masks(tort, hare)


@dataclass
class LowSpaceOutcome:
    pair: SolutionPair
    branch: str
    delta: int | None


def solve_ps(inst: Instance, seed: int = 0, meter: SpaceMeter | None = None,
             metrics: Metrics | None = None, rho_budget: int | None = None) -> LowSpaceOutcome:
    """Small-d streaming at delta = 2^ceil(0.75 n), then the rho walk, then streamed bisection.

    Delta is clamped to 2^n/(3n^2); when even delta = 1 is out of range the
    small-d branch is skipped.
    """
    inst = prefix_reduce(inst)
    n = inst.n
    meter = meter or SpaceMeter(SpaceBudget.for_n(n))
    metrics = metrics if metrics is not None else Metrics()
    cap = delta_max(n)
    delta = None
    if cap >= 1:
        delta = min(1 << ((3 * n + 3) // 4), cap)
        try:
            return LowSpaceOutcome(solve_smalld_ps(inst, delta, meter, metrics), "small-d", delta)
        except StructureViolated:
            pass
    try:
        return LowSpaceOutcome(solve_larged_ps(inst, seed, rho_budget, meter, metrics), "rho", delta)
    except BudgetExhausted:
        return LowSpaceOutcome(solve_stream(inst, meter, metrics), "stream", delta)
