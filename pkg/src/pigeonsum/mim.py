"""Meet-in-the-middle counting and exact-sum listing over an index set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .instance import Instance
from .metrics import Metrics

MAX_MIM = 52


@dataclass(frozen=True)
class HalfTables:
    """Sorted (sum, mask) lists for the two halves of ``positions``.

    Masks are over the sorted positions of the whole instance, so a left mask
    OR a right mask is the combined subset.  Ties in sum are broken by mask.
    """

    positions: tuple[int, ...]
    left_sums: np.ndarray
    left_masks: np.ndarray
    right_sums: np.ndarray
    right_masks: np.ndarray


def _half(weights: Sequence[int], positions: Sequence[int]):
    sums = np.zeros(1, dtype=np.int64)
    masks = np.zeros(1, dtype=np.int64)
    for p in positions:
        sums = np.concatenate((sums, sums + int(weights[p])))
        masks = np.concatenate((masks, masks | np.int64(1 << p)))
    order = np.lexsort((masks, sums))
    return sums[order], masks[order]


def build(inst: Instance, subset_of: Sequence[int] | None = None,
          metrics: Metrics | None = None) -> HalfTables:
    positions = tuple(sorted(range(inst.n) if subset_of is None else subset_of))
    if len(positions) > MAX_MIM:
        raise ValueError(f"index set of size {len(positions)} exceeds {MAX_MIM}")
    h = len(positions) // 2
    ls, lm = _half(inst.weights, positions[:h])
    rs, rm = _half(inst.weights, positions[h:])
    if metrics is not None:
        metrics.subsets_enumerated += len(ls) + len(rs)
        metrics.sort_items += len(ls) + len(rs)
    return HalfTables(positions, ls, lm, rs, rm)


def count_le(ht: HalfTables, t: int, metrics: Metrics | None = None) -> int:
    """#{S within the index set : w(S) <= t}."""
    if t < 0:
        return 0
    if metrics is not None:
        metrics.subsets_enumerated += len(ht.left_sums)
    # for each left sum X, count right sums <= t - w(X)
    return int(np.searchsorted(ht.right_sums, t - ht.left_sums, side="right").sum())


def list_eq(ht: HalfTables, t: int, limit: int | None = None,
            metrics: Metrics | None = None) -> list[int]:
    """Subsets with sum exactly ``t`` as masks, ascending; at most ``limit``.

    Every left position precedes every right position, so ascending mask order
    is (right mask, left mask) lexicographic; the ``limit`` smallest results
    therefore use only the first ``limit`` entries of each matching right run.
    """
    if limit is not None and limit <= 0:
        return []
    if metrics is not None:
        metrics.subsets_enumerated += len(ht.left_sums)
    if t < 0:
        return []
    need = t - ht.left_sums
    lo = np.searchsorted(ht.right_sums, need, side="left")
    hi = np.searchsorted(ht.right_sums, need, side="right")
    live = np.flatnonzero(hi > lo)
    if len(live) == 0:
        return []
    lo, hi, lmask = lo[live], hi[live], ht.left_masks[live]
    if limit is None:
        runs = hi - lo
        rows = np.repeat(np.arange(len(live)), runs)
        offs = np.arange(runs.sum()) - np.repeat(np.cumsum(runs) - runs, runs)
        found = lmask[rows] | ht.right_masks[lo[rows] + offs]
    else:
        parts = []
        for off in range(limit):
            ok = lo + off < hi
            if not ok.any():
                break
            parts.append(lmask[ok] | ht.right_masks[lo[ok] + off])
        found = np.concatenate(parts)
    found = np.sort(found)
    if limit is not None:
        found = found[:limit]
    if metrics is not None:
        metrics.subsets_enumerated += len(found)
    return [int(x) for x in found]
