"""Deterministic solver for instances with few non-subset-sums.

When every weight stays within ``w_i - 2^{i-1} in [-i*delta, delta]`` the large
weights behave like powers of two.  Splitting the sorted positions at ``i*``
(smallest i with ``2^i >= 3 n^2 delta``) into a low block A and a high block B,
each subset B' of B has sum within ``n^2 delta`` of its binary value, which is
itself the bitmask of B'.  A prefix count then needs a closed form for the B'
far below the threshold and meet-in-the-middle over A for at most two B'
near it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import bisection, mim
from .instance import Instance, SolutionPair, prefix_reduce
from .metrics import Metrics


class DeltaOutOfRange(ValueError):
    pass


class StructureRequired(ValueError):
    pass


class StructureViolated(Exception):
    """The window check failed, which certifies d > delta."""

    def __init__(self, report: "StructureReport"):
        super().__init__(f"weight {report.first_violation} leaves the window at delta = {report.delta}")
        self.report = report


@dataclass(frozen=True)
class StructureReport:
    delta: int
    ok: bool
    first_violation: int | None
    split: int | None
    deviations: tuple[int, ...]


def delta_max(n: int) -> int:
    """Largest integer delta with delta <= 2^n / (3 n^2)."""
    return (1 << n) // (3 * n * n)


def split_point(n: int, delta: int) -> int:
    return max(1, (3 * n * n * delta - 1).bit_length())


def check_structure(inst: Instance, delta: int) -> StructureReport:
    """Per-weight window check.

    Any ``delta >= 1`` is accepted for the window itself; ``split`` is only
    defined (and queries only possible) when ``delta <= 2^n / (3 n^2)``.
    """
    if delta < 1:
        raise DeltaOutOfRange(f"delta = {delta} < 1")
    devs = tuple(w - (1 << i) for i, w in enumerate(inst.weights))
    first = None
    for i, dev in enumerate(devs, start=1):
        if not -i * delta <= dev <= delta:
            first = i
            break
    split = split_point(inst.n, delta) if delta <= delta_max(inst.n) else None
    return StructureReport(delta, first is None, first, split, devs)


class SmallDQuery:
    """Prefix counts and exact-sum listing for a structure-checked instance.

    ``count_a`` / ``list_a`` answer the same questions restricted to block A;
    by default they are meet-in-the-middle over A, built on first use.
    """

    def __init__(self, inst: Instance, rep: StructureReport,
                 metrics: Metrics | None = None,
                 count_a: Callable[[int], int] | None = None,
                 list_a: Callable[[int, int | None], list[int]] | None = None):
        if not rep.ok:
            raise StructureRequired(f"structure check failed at weight {rep.first_violation}")
        if rep.split is None:
            raise DeltaOutOfRange(f"delta = {rep.delta} > 2^n/(3n^2) for n = {inst.n}")
        self.inst = inst
        self.rep = rep
        self.metrics = metrics if metrics is not None else Metrics()
        n, delta = inst.n, rep.delta
        self.split = rep.split
        self.step = 1 << self.split
        self.n_multiples = 1 << (n - self.split)
        self.b_slack = n * n * delta
        self.a_slack = n * delta
        self.a_total = sum(inst.weights[: self.split])
        self._tables = None
        self._count_a = count_a or self._mim_count
        self._list_a = list_a or self._mim_list

    def _ensure_tables(self):
        if self._tables is None:
            self._tables = mim.build(self.inst, range(self.split), self.metrics)
        return self._tables

    def _mim_count(self, t: int) -> int:
        return mim.count_le(self._ensure_tables(), t, self.metrics)

    def _mim_list(self, t: int, limit: int | None) -> list[int]:
        return mim.list_eq(self._ensure_tables(), t, limit, self.metrics)

    def b_candidates(self, lo: int, hi: int) -> list[tuple[int, int]]:
        """B' with binary value in [lo, hi], as (mask, w(B')), ascending."""
        if hi < 0 or hi < lo:
            return []
        k_lo = max(0, -(-lo // self.step))
        k_hi = min(hi // self.step, self.n_multiples - 1)
        out = []
        for k in range(k_lo, k_hi + 1):
            mask = k << self.split
            out.append((mask, self.inst.subset_sum(mask)))
        return out

    def count_le(self, t: int) -> int:
        if t < 0:
            return 0
        n, delta = self.inst.n, self.rep.delta
        far = t - self.step - (n + n * n) * delta
        # B' whose binary value is <= far: every A' fits under t
        full = 0 if far < 0 else min(far // self.step + 1, self.n_multiples)
        total = full * self.step
        near = self.b_candidates(far + 1, t + self.b_slack)
        assert len(near) <= 2, f"{len(near)} boundary candidates"
        for _, wb in near:
            total += self._count_a(t - wb)
        return total

    def list_eq(self, t: int, limit: int | None = None) -> list[int]:
        """Subsets with sum exactly ``t`` as masks in ascending order."""
        if t < 0:
            return []
        # w(B') in [t - w(A), t] forces the binary value into this window
        cands = self.b_candidates(t - self.a_total - self.b_slack, t + self.b_slack)
        assert len(cands) <= 3, f"{len(cands)} listing candidates"
        out: list[int] = []
        for bmask, wb in cands:
            if wb > t:
                continue
            want = None if limit is None else limit - len(out)
            out.extend(bmask | am for am in self._list_a(t - wb, want))
            if limit is not None and len(out) >= limit:
                break
        return out


def candidate_Bprimes(rep: StructureReport, inst: Instance, t: int) -> list[tuple[int, int]]:
    """Boundary B' for a prefix count at ``t`` (the only ones needing a search over A)."""
    q = SmallDQuery(inst, rep)
    n, delta = inst.n, rep.delta
    return q.b_candidates(t - q.step - (n + n * n) * delta + 1, t + n * n * delta)


def count_le_fast(inst: Instance, rep: StructureReport, t: int,
                  metrics: Metrics | None = None) -> int:
    return SmallDQuery(inst, rep, metrics).count_le(t)


def list_eq_fast(inst: Instance, rep: StructureReport, t: int, limit: int | None = None,
                 metrics: Metrics | None = None) -> list[int]:
    return SmallDQuery(inst, rep, metrics).list_eq(t, limit)


def solve_query(inst: Instance, query: SmallDQuery) -> SolutionPair:
    target = bisection.run(inst, query.count_le)
    return bisection.extract(inst, target, query.list_eq)


def solve(inst: Instance, delta: int, metrics: Metrics | None = None) -> SolutionPair:
    """Prefix-reduce, check structure, then bisect with fast counts.

    Raises :class:`StructureViolated` (certifying d > delta) when the check fails.
    """
    inst = prefix_reduce(inst)
    rep = check_structure(inst, delta)
    if rep.split is None:
        raise DeltaOutOfRange(f"delta = {delta} > 2^n/(3n^2) for n = {inst.n}")
    if not rep.ok:
        raise StructureViolated(rep)
    return solve_query(inst, SmallDQuery(inst, rep, metrics))
