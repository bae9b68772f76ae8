"""Empirical check of large-d success rate versus attempt budget on dense instances.

    python3 scripts/sampling_check.py --n 20 --log-delta 10 --runs 100
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from pigeonsum import larged
from pigeonsum.gen import GenSpec, generate
from pigeonsum.instance import validate
from pigeonsum.metrics import Metrics


@dataclass
class SamplingConfig:
    n: int = 20
    log_delta: int = 10
    runs: int = 100
    budget: int = 0


def run(cfg: SamplingConfig):
    budget = cfg.budget or 50 * cfg.n
    attempts, fails = [], 0
    for seed in range(cfg.runs):
        inst = validate(generate(GenSpec("dense", cfg.n, seed)))
        m = Metrics()
        try:
            larged.solve(inst, 1 << cfg.log_delta, seed=seed, budget=budget, metrics=m)
            attempts.append(m.attempts)
        except larged.BudgetExhausted:
            fails += 1
    a = np.array(attempts)
    print(f"n={cfg.n} delta=2^{cfg.log_delta} budget={budget}: "
          f"{len(a)}/{cfg.runs} solved, attempts median {np.median(a):.0f} max {a.max()}")
    return a, fails


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20)
    ap.add_argument("--log-delta", type=int, default=10)
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--budget", type=int, default=0)
    a = ap.parse_args(argv)
    run(SamplingConfig(a.n, a.log_delta, a.runs, a.budget))


if __name__ == "__main__":
    sys.exit(main())
