"""Fit work-count exponents on near-binary instances, baseline vs small-d.

    python3 scripts/separation.py --n 24 28 32 36 40 --out separation.csv
"""

import argparse
import sys
from dataclasses import dataclass, field

from pigeonsum import bench


@dataclass
class SeparationConfig:
    ns: list = field(default_factory=lambda: [24, 28, 32, 36, 40])
    seeds: list = field(default_factory=lambda: [0])
    suites: tuple = ("separation", "scaled-delta")
    out: str = ""


def run(cfg: SeparationConfig):
    rows = []
    for suite in cfg.suites:
        for algo in ("baseline", "small-d"):
            work = []
            for n in cfg.ns:
                for seed in cfg.seeds:
                    row = bench.run_row("near-binary", n, seed, algo, suite)
                    rows.append(row)
                work.append(min(r["subsets_enumerated"] for r in rows[-len(cfg.seeds):]))
            slope = bench.fit_exponent(cfg.ns, work)
            print(f"{suite:13s} {algo:9s} exponent {slope:.3f}  work {work}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(bench.to_csv(rows))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=SeparationConfig().ns)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--out", default="")
    a = ap.parse_args(argv)
    run(SeparationConfig(ns=a.n, seeds=a.seeds, out=a.out))


if __name__ == "__main__":
    sys.exit(main())
