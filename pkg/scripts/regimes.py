"""Run every solver mode on each generator family and summarize work per mode.

    python3 scripts/regimes.py --n 10 20 --seeds 0 1 2
"""

import argparse
import sys
from collections import defaultdict
from dataclasses import dataclass, field

from pigeonsum import bench


@dataclass
class RegimesConfig:
    ns: list = field(default_factory=lambda: [10, 14, 18, 22])
    seeds: list = field(default_factory=lambda: [0, 1, 2])
    out: str = ""


def run(cfg: RegimesConfig):
    rows = bench.run_suite("regimes", cfg.ns, cfg.seeds)
    agg = defaultdict(list)
    for r in rows:
        agg[(r["kind"], r["algo"])].append(r)
    print(f"{'kind':12s} {'algo':10s} {'ok':>5s} {'mean work':>12s} {'mean ms':>9s}")
    for (kind, algo), rs in sorted(agg.items()):
        ok = sum(bool(r["success"]) for r in rs)
        work = sum(r["subsets_enumerated"] + r["dp_cells"] + r["samples_drawn"] for r in rs) / len(rs)
        ms = sum(r["wall_ms"] for r in rs) / len(rs)
        print(f"{kind:12s} {algo:10s} {ok:>2d}/{len(rs):<2d} {work:12.0f} {ms:9.1f}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(bench.to_csv(rows))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=RegimesConfig().ns)
    ap.add_argument("--seeds", type=int, nargs="+", default=RegimesConfig().seeds)
    ap.add_argument("--out", default="")
    a = ap.parse_args(argv)
    run(RegimesConfig(ns=a.n, seeds=a.seeds, out=a.out))


if __name__ == "__main__":
    sys.exit(main())
