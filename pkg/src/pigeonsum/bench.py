"""Benchmark harness: one CSV row per (instance, algorithm)."""

from __future__ import annotations

import csv
import io
import time
from typing import Iterable

import numpy as np

from . import larged, smalld
from .dispatch import SolveConfig, solve_with
from .gen import GenSpec, generate

COLUMNS = ("kind", "n", "seed", "algo", "delta", "success", "wall_ms",
           "subsets_enumerated", "dp_cells", "samples_drawn", "attempts")

SUITES = {
    # stated separation schedule: delta = 2^ceil(0.8n), clamped to the small-d range
    "separation": (("near-binary",), ("baseline", "small-d")),
    # delta = 2^ceil(0.8n) / (3n^2): split point near 0.8n
    "scaled-delta": (("near-binary",), ("baseline", "small-d")),
    "regimes": (("random", "dense", "near-binary"),
                ("auto", "baseline", "small-d", "large-d", "lowspace")),
}

_FAILURES = (larged.BudgetExhausted, smalld.StructureViolated, smalld.DeltaOutOfRange,
             larged.ParamOutOfRange)


def suite_delta(suite: str, algo: str, n: int) -> int | None:
    if algo != "small-d":
        return None
    top = 1 << ((4 * n + 4) // 5)
    if suite == "scaled-delta":
        return max(1, top // (3 * n * n))
    if smalld.delta_max(n) < 1:
        return None
    return min(top, smalld.delta_max(n))


def run_row(kind: str, n: int, seed: int, algo: str, suite: str = "regimes") -> dict:
    raw = generate(GenSpec(kind, n, seed))
    cfg = SolveConfig(delta_override=suite_delta(suite, algo, n), seed=seed, mode=algo)
    row = dict(kind=kind, n=n, seed=seed, algo=algo, delta=cfg.delta_override or "",
               success=False, wall_ms=0.0, subsets_enumerated=0, dp_cells=0,
               samples_drawn=0, attempts=0)
    start = time.perf_counter()
    try:
        res = solve_with(raw, cfg)
    except _FAILURES:
        row["wall_ms"] = round((time.perf_counter() - start) * 1e3, 3)
        return row
    row.update(res.metrics.to_dict())
    row.pop("sort_items")
    row.update(delta=res.delta if res.delta is not None else "", success=True,
               wall_ms=round(res.wall_ms, 3))
    return row


def run_suite(suite: str, ns: Iterable[int], seeds: Iterable[int]) -> list[dict]:
    kinds, algos = SUITES[suite]
    rows = []
    for kind in kinds:
        for n in ns:
            for seed in seeds:
                for algo in algos:
                    rows.append(run_row(kind, n, seed, algo, suite))
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def fit_exponent(ns, work) -> float:
    """Slope of log2(work) against n by least squares."""
    return float(np.polyfit(np.asarray(ns, float), np.log2(np.asarray(work, float)), 1)[0])
