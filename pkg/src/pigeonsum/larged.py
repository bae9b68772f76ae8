"""Randomized solver for instances with many equal-sum pairs.

For a level j, sums hit by at least h = 2^j + 1 subsets are plentiful.  Hash
subsets into bins by their sum modulo a random prime p in [P, 2P], pick one
bin, keep each member independently with probability alpha, and look for two
kept subsets with the same sum.  Bin members are reached through a mod-p
subset-count table and rank-based unranking, so the bin itself is never
listed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from threading import Event

import numpy as np

from .instance import Instance, SolutionPair
from .metrics import Metrics
from .primes import sample_prime

DEFAULT_BUDGET_FACTOR = 8


class ParamOutOfRange(ValueError):
    pass


class RankOutOfRange(ValueError):
    pass


class BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class LargeDParams:
    j: int
    h: int
    m: int
    P: int
    k: int
    alpha: float


def params(n: int, delta: int, j: int) -> LargeDParams:
    if n < 3:
        raise ParamOutOfRange(f"n = {n} < 3")
    if not 0 <= j <= n - 1:
        raise ParamOutOfRange(f"j = {j} outside [0, {n - 1}]")
    if not (delta * delta >= (1 << n) and delta < (1 << n)):
        raise ParamOutOfRange(f"delta = {delta} outside [2^(n/2), 2^n)")
    h = (1 << j) + 1
    m = -(-delta // ((1 << (j + 1)) * n))
    P = prime_range(n, h, m)
    k = -(-m // (4 * P))
    return LargeDParams(j, h, m, P, k, sampling_rate(h, k))


def sampling_rate(h: int, k: int) -> float:
    return 1.0 / (2 * h * math.sqrt(k))


def prime_range(n: int, h: int, m: int) -> int:
    """P = 2m * min(1, (2^n / (h m^2))^(2/3)), floored and clamped to [2, 2m]."""
    ratio = (1 << n) / (h * m * m)
    P = int(math.floor(2 * m * min(1.0, ratio ** (2.0 / 3.0)) + 1e-9))
    return min(max(P, 2), 2 * m)


@dataclass(frozen=True)
class ModDpTable:
    """``table[i, r]`` = #{S within the first i weights : w(S) = r mod p}."""

    p: int
    table: np.ndarray
    residues: tuple[int, ...]  # w_i mod p, by sorted position

    def bin_size(self, r: int) -> int:
        return int(self.table[-1, r])


def build_dp(inst: Instance, p: int, metrics: Metrics | None = None) -> ModDpTable:
    table = np.zeros((inst.n + 1, p), dtype=np.int64)
    table[0, 0] = 1
    residues = tuple(w % p for w in inst.weights)
    for i, s in enumerate(residues, start=1):
        table[i] = table[i - 1] + np.roll(table[i - 1], s)
    if metrics is not None:
        metrics.dp_cells += (inst.n + 1) * p
    return ModDpTable(p, table, residues)


def unrank_many(dp: ModDpTable, inst: Instance, r: int, ranks: np.ndarray):
    """Vectorised unranking; returns (masks, sums) for 1-based ``ranks``.

    Order within a bin is ascending bitmask, i.e. compare indicator vectors
    starting from the largest index.
    """
    ranks = np.asarray(ranks, dtype=np.int64).copy()
    size = dp.bin_size(r)
    if len(ranks) and (ranks.min() < 1 or ranks.max() > size):
        raise RankOutOfRange(f"rank outside [1, {size}] for bin {r}")
    res = np.full(len(ranks), r, dtype=np.int64)
    masks = np.zeros(len(ranks), dtype=np.int64)
    sums = np.zeros(len(ranks), dtype=np.int64)
    for i in range(inst.n, 0, -1):
        without = dp.table[i - 1][res]
        take = ranks > without
        ranks -= np.where(take, without, 0)
        res = np.where(take, (res - dp.residues[i - 1]) % dp.p, res)
        masks |= np.where(take, np.int64(1 << (i - 1)), 0)
        sums += np.where(take, inst.weights[i - 1], 0)
    return masks, sums


def unrank(dp: ModDpTable, inst: Instance, r: int, rank: int) -> int:
    """Bitmask of the rank-th subset (1-based) of bin r."""
    size = dp.bin_size(r)
    if not 1 <= rank <= size:
        raise RankOutOfRange(f"rank {rank} outside [1, {size}] for bin {r}")
    mask = 0
    for i in range(inst.n, 0, -1):
        without = int(dp.table[i - 1, r])
        if rank > without:
            rank -= without
            r = (r - dp.residues[i - 1]) % dp.p
            mask |= 1 << (i - 1)
    return mask


def _distinct_ranks(size: int, c: int, rng) -> np.ndarray:
    if c * 2 > size:
        # dense regime: a permutation prefix is cheaper than rejection
        return np.sort(rng.permutation(size)[:c]) + 1
    picked = np.unique(rng.integers(1, size + 1, size=c))
    while len(picked) < c:
        more = rng.integers(1, size + 1, size=c - len(picked))
        picked = np.unique(np.concatenate((picked, more)))
    return picked


def sample_bin(dp: ModDpTable, inst: Instance, r: int, alpha: float, rng,
               metrics: Metrics | None = None):
    """Bernoulli(alpha) subsample of bin r: Binomial count, then distinct uniform ranks."""
    size = dp.bin_size(r)
    c = int(rng.binomial(size, alpha)) if size else 0
    ranks = _distinct_ranks(size, c, rng) if c else np.zeros(0, dtype=np.int64)
    if metrics is not None:
        metrics.samples_drawn += c
    return unrank_many(dp, inst, r, ranks)


def attempt(inst: Instance, prm: LargeDParams, rng,
            metrics: Metrics | None = None) -> SolutionPair | None:
    """One randomized round; returns a verified pair or None."""
    metrics = metrics if metrics is not None else Metrics()
    metrics.attempts += 1
    p = sample_prime(prm.P, rng)
    dp = build_dp(inst, p, metrics)
    r = int(rng.integers(0, p))
    if dp.bin_size(r) > ((1 << inst.n) // prm.P) * inst.n * inst.n:
        return None
    masks, sums = sample_bin(dp, inst, r, prm.alpha, rng, metrics)
    if len(sums) < 2:
        return None
    order = np.argsort(sums, kind="stable")
    metrics.sort_items += len(order)
    s = sums[order]
    eq = np.flatnonzero(s[1:] == s[:-1])
    if len(eq) == 0:
        return None
    x, y = int(masks[order[eq[0]]]), int(masks[order[eq[0] + 1]])
    return inst.pair_from_masks(x, y)


def default_budget(n: int) -> int:
    return DEFAULT_BUDGET_FACTOR * n * n


def solve(inst: Instance, delta: int, seed: int = 0, budget: int | None = None,
          metrics: Metrics | None = None, stop: Event | None = None,
          deadline: float | None = None) -> SolutionPair:
    """Sweep j = 0..n-1 with budget/n repetitions each.

    Attempt ``a`` at level ``j`` draws from a generator seeded by
    ``(seed, j, a)``.  Raises :class:`BudgetExhausted` on failure, on ``stop``
    being set, or past ``deadline`` (a ``time.monotonic`` value).
    """
    n = inst.n
    budget = default_budget(n) if budget is None else budget
    metrics = metrics if metrics is not None else Metrics()
    per_level = max(1, -(-budget // n))
    used = 0
    for j in range(n):
        prm = params(n, delta, j)
        for a in range(per_level):
            if used >= budget:
                raise BudgetExhausted(f"{used} attempts without a collision")
            if stop is not None and stop.is_set():
                raise BudgetExhausted("stopped")
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExhausted("time limit reached")
            used += 1
            rng = np.random.default_rng([seed, j, a])
            found = attempt(inst, prm, rng, metrics)
            if found is not None:
                return found
    raise BudgetExhausted(f"{used} attempts without a collision")
