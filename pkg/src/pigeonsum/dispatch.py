"""Combined solver: small-d certificate check, large-d sampling, baseline fallback."""

from __future__ import annotations

import math
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from threading import Event
from typing import Sequence

from . import bisection, larged, lowspace, mim, smalld
from .instance import Instance, SolutionPair, prefix_reduce, validate, verify
from .metrics import Metrics

MODES = ("auto", "baseline", "small-d", "large-d", "lowspace")


@dataclass(frozen=True)
class SolveConfig:
    delta_override: int | None = None
    seed: int = 0
    budget: int | None = None
    mode: str = "auto"
    time_limit: float | None = None
    race: bool = False


@dataclass
class SolveResult:
    pair: SolutionPair
    algo: str
    delta: int | None = None
    metrics: Metrics = field(default_factory=Metrics)
    wall_ms: float = 0.0
    n: int | None = None


def sqrt_pow2_ceil(n: int) -> int:
    """ceil(2^(n/2))."""
    return math.isqrt((1 << n) - 1) + 1


def schedule_delta(n: int) -> int | None:
    """2^ceil(0.8 n) clamped to [ceil(2^(n/2)), 2^n/(3n^2)]; None if that is empty."""
    lo, hi = sqrt_pow2_ceil(n), smalld.delta_max(n)
    if lo > hi:
        return None
    return min(max(1 << ((4 * n + 4) // 5), lo), hi)


def small_delta_ok(n: int, delta: int) -> bool:
    return 1 <= delta <= smalld.delta_max(n)


def large_delta_ok(n: int, delta: int) -> bool:
    return n >= 3 and delta * delta >= (1 << n) and delta < (1 << n)


def solve_baseline(inst: Instance, metrics: Metrics | None = None) -> SolutionPair:
    """Bisection with meet-in-the-middle counts over all of [n]."""
    metrics = metrics if metrics is not None else Metrics()
    ht = mim.build(inst, None, metrics)
    target = bisection.run(inst, lambda t: mim.count_le(ht, t, metrics))
    return bisection.extract(inst, target, lambda t, k: mim.list_eq(ht, t, k, metrics))


def _race(inst: Instance, delta: int, cfg: SolveConfig, deadline):
    stop = Event()
    m_small, m_large = Metrics(), Metrics()
    with ThreadPoolExecutor(max_workers=2) as pool:
        futs = {
            pool.submit(smalld.solve, inst, delta, m_small): ("small-d", m_small),
            pool.submit(larged.solve, inst, delta, cfg.seed, cfg.budget, m_large, stop,
                        deadline): ("large-d", m_large),
        }
        pending = set(futs)
        winner = None
        while pending and winner is None:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                if fut.exception() is None:
                    winner = (fut.result(), futs[fut][0])
                    break
        stop.set()
    merged = Metrics()
    merged.merge(m_small)
    merged.merge(m_large)
    return winner, merged


def _auto(inst: Instance, cfg: SolveConfig, metrics: Metrics, deadline):
    n = inst.n
    delta = cfg.delta_override if cfg.delta_override is not None else schedule_delta(n)
    if delta is None:
        return solve_baseline(inst, metrics), "baseline", None
    small_ok, large_ok = small_delta_ok(n, delta), large_delta_ok(n, delta)
    if cfg.race and small_ok and large_ok:
        winner, used = _race(inst, delta, cfg, deadline)
        metrics.merge(used)
        if winner is not None:
            return winner[0], winner[1], delta
        return solve_baseline(inst, metrics), "baseline", delta
    if small_ok:
        try:
            return smalld.solve(inst, delta, metrics), "small-d", delta
        except smalld.StructureViolated:
            pass
    if large_ok:
        try:
            return larged.solve(inst, delta, cfg.seed, cfg.budget, metrics,
                                deadline=deadline), "large-d", delta
        except larged.BudgetExhausted:
            pass
    return solve_baseline(inst, metrics), "baseline", delta


def solve_with(raw: Sequence[int], cfg: SolveConfig = SolveConfig()) -> SolveResult:
    """Run the configured mode.

    Forced modes propagate their failures (``StructureViolated``,
    ``BudgetExhausted``, ``DeltaOutOfRange``, ``ParamOutOfRange``); ``auto``
    only raises on invalid input.
    """
    if cfg.mode not in MODES:
        raise ValueError(f"unknown mode {cfg.mode!r}")
    start = time.perf_counter()
    deadline = None if cfg.time_limit is None else time.monotonic() + cfg.time_limit
    metrics = Metrics()
    checked = validate(raw)
    if isinstance(checked, SolutionPair):
        return SolveResult(checked, "duplicate", None, metrics,
                           (time.perf_counter() - start) * 1e3, len(raw))
    inst = prefix_reduce(checked)
    n = inst.n
    delta = cfg.delta_override
    if cfg.mode == "auto":
        pair, algo, delta = _auto(inst, cfg, metrics, deadline)
    elif cfg.mode == "baseline":
        pair, algo = solve_baseline(inst, metrics), "baseline"
    elif cfg.mode == "small-d":
        if delta is None:
            delta = min(1 << ((4 * n + 4) // 5), smalld.delta_max(n))
        pair, algo = smalld.solve(inst, delta, metrics), "small-d"
    elif cfg.mode == "large-d":
        if delta is None:
            delta = min(max(1 << ((4 * n + 4) // 5), sqrt_pow2_ceil(n)), (1 << n) - 1)
        pair = larged.solve(inst, delta, cfg.seed, cfg.budget, metrics, deadline=deadline)
        algo = "large-d"
    else:
        out = lowspace.solve_ps(inst, cfg.seed, metrics=metrics, rho_budget=cfg.budget)
        pair, algo, delta = out.pair, f"lowspace/{out.branch}", out.delta
    if not verify(raw, pair):
        raise AssertionError(f"{algo} produced an unverifiable pair {pair}")
    return SolveResult(pair, algo, delta, metrics, (time.perf_counter() - start) * 1e3, n)


def solve_auto(raw: Sequence[int], cfg: SolveConfig = SolveConfig()) -> SolutionPair:
    if cfg.mode != "auto":
        cfg = SolveConfig(cfg.delta_override, cfg.seed, cfg.budget, "auto", cfg.time_limit, cfg.race)
    return solve_with(raw, cfg).pair
