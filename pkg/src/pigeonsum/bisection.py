"""Pigeonhole binary search driven by an exact prefix-count oracle.

The interval [lo, hi] always satisfies ``hi - lo + 1 < #{S : lo <= w(S) <= hi}``.
"""

from __future__ import annotations

from typing import Callable

from .instance import Instance, SolutionPair

CountFn = Callable[[int], int]
Lister = Callable[[int, int], list]


class InvariantBroken(AssertionError):
    pass


def run(inst: Instance, count_fn: CountFn, trace: list | None = None) -> int:
    """Return a sum ``t`` with f_t >= 2, after at most n halvings."""
    lo, hi = 0, (1 << inst.n) - 2
    below = count_fn(lo - 1)
    upto = count_fn(hi)
    if not hi - lo + 1 < upto - below:
        raise InvariantBroken(f"initial interval [{lo}, {hi}] holds {upto - below} subsets")
    if trace is not None:
        trace.append((lo, hi))
    steps = 0
    while hi > lo:
        mid = (lo + hi) // 2
        at_mid = count_fn(mid)
        c1 = at_mid - below
        c2 = upto - at_mid
        if mid - lo + 1 < c1:
            hi, upto = mid, at_mid
        elif hi - mid < c2:
            lo, below = mid + 1, at_mid
        else:
            raise InvariantBroken(f"neither half of [{lo}, {hi}] is overfull")
        steps += 1
        if trace is not None:
            trace.append((lo, hi))
    if steps > inst.n:
        raise InvariantBroken(f"{steps} halvings for n = {inst.n}")
    if upto - below < 2:
        raise InvariantBroken(f"final sum {lo} has frequency {upto - below}")
    return lo


def extract(inst: Instance, target: int, lister: Lister) -> SolutionPair:
    """Two distinct subsets of sum ``target`` from an exact-sum lister, lifted."""
    found = lister(target, 2)
    if len(found) < 2:
        raise InvariantBroken(f"lister returned {len(found)} subsets for sum {target}")
    return inst.pair_from_masks(found[0], found[1])
