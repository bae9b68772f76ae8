"""Brute-force ground truth over all 2^n subsets (small n only)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instance import Instance, SolutionPair

MAX_ORACLE_N = 26


class InstanceTooLarge(ValueError):
    pass


class NoWitness(ValueError):
    pass


def all_sums(weights) -> np.ndarray:
    """Subset sums indexed by bitmask: ``out[mask] = w(S_mask)``."""
    out = np.zeros(1, dtype=np.int64)
    for w in weights:
        out = np.concatenate((out, out + int(w)))
    return out


@dataclass(frozen=True)
class FrequencyTable:
    """Sparse map t -> f_t; only achieved sums are stored."""

    n: int
    sums: np.ndarray  # distinct achieved sums, ascending
    counts: np.ndarray  # f_t for each entry of ``sums``

    def __getitem__(self, t: int) -> int:
        i = np.searchsorted(self.sums, t)
        if i < len(self.sums) and self.sums[i] == t:
            return int(self.counts[i])
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.sums.tolist(), self.counts.tolist()))

    def cumulative(self, t) -> np.ndarray | int:
        """#{S : w(S) <= t}, vectorised over ``t``."""
        cum = np.concatenate(([0], np.cumsum(self.counts)))
        idx = np.searchsorted(self.sums, t, side="right")
        return cum[idx]


def frequencies(inst: Instance) -> FrequencyTable:
    if inst.n > MAX_ORACLE_N:
        raise InstanceTooLarge(f"n = {inst.n} > {MAX_ORACLE_N}")
    sums, counts = np.unique(all_sums(inst.weights), return_counts=True)
    return FrequencyTable(inst.n, sums, counts)


def d_by_surplus(ft: FrequencyTable) -> int:
    return int(np.sum(ft.counts - 1))


def d_by_zeros(ft: FrequencyTable) -> int:
    hit = int(np.count_nonzero(ft.sums < (1 << ft.n)))
    return (1 << ft.n) - hit


def count_at_most(inst: Instance, t: int) -> int:
    if t < 0:
        return 0
    return int(np.count_nonzero(all_sums(inst.weights) <= t))


def find_solution_brute(inst: Instance) -> SolutionPair:
    """First repeated sum in binary-counter order over subsets."""
    sums = all_sums(inst.weights)
    _, first = np.unique(sums, return_index=True)
    repeated = np.ones(len(sums), dtype=bool)
    repeated[first] = False
    hits = np.flatnonzero(repeated)
    if len(hits) == 0:
        raise AssertionError("no equal sums found; pigeonhole promise must be broken")
    y = int(hits[0])
    x = int(np.flatnonzero(sums == sums[y])[0])
    return inst.pair_from_masks(x, y)


def witness_j(ft: FrequencyTable, delta: int) -> int:
    """Smallest j with #{t : f_t > 2^j} > delta / (2^{j+1} n)."""
    n = ft.n
    for j in range(n):
        heavy = int(np.count_nonzero(ft.counts > (1 << j)))
        # heavy > delta / (2^{j+1} n), in integers
        if heavy * (1 << (j + 1)) * n > delta:
            return j
    raise NoWitness(f"no level j satisfies the bound for delta = {delta}")


def second_moment(ft: FrequencyTable) -> int:
    """F_2 = sum_t f_t^2, the number of ordered equal-sum pairs (including S = S)."""
    return int(np.sum(ft.counts.astype(object) ** 2))
