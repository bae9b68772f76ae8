"""Command-line interface: ``solve``, ``stats``, ``gen``, ``bench``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bench, larged, oracle, smalld
from .dispatch import MODES, SolveConfig, solve_with
from .gen import KINDS, GenSpec, Unsatisfiable, generate
from .instance import SolutionPair, ValidationError, format_text, parse_text, validate

EXIT_OK, EXIT_INVALID, EXIT_EXHAUSTED = 0, 2, 3


def _read(path: str) -> list[int]:
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_text(text)


def _default_seed() -> int:
    return int(os.environ.get("PIGEONSUM_SEED", "0"))


def cmd_solve(args) -> int:
    try:
        raw = _read(args.path)
        cfg = SolveConfig(delta_override=args.delta, seed=args.seed, budget=args.budget,
                          mode=args.algo, time_limit=args.time_limit, race=args.race)
        res = solve_with(raw, cfg)
    except (ValidationError, smalld.DeltaOutOfRange, larged.ParamOutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (larged.BudgetExhausted, smalld.StructureViolated) as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    metrics = {"algo": res.algo, "delta": res.delta, **res.metrics.to_dict(),
               "wall_ms": round(res.wall_ms, 3)}
    metrics.pop("sort_items")
    if args.json:
        print(json.dumps({"solution": res.pair.to_json(), "metrics": metrics}))
    else:
        print(res.pair.dumps())
        print(json.dumps(metrics))
    return EXIT_OK


def stats(raw: list[int]) -> dict:
    checked = validate(raw)
    if isinstance(checked, SolutionPair):
        raise ValidationError(f"duplicate weights at indices {sorted(checked.a | checked.b)}")
    inst = checked
    if inst.n > 24:
        raise ValidationError(f"stats needs n <= 24, got {inst.n}")
    ft = oracle.frequencies(inst)
    d1, d2 = oracle.d_by_surplus(ft), oracle.d_by_zeros(ft)
    assert d1 == d2, (d1, d2)
    ok_at = [1 << k for k in range(inst.n) if smalld.check_structure(inst, 1 << k).ok]
    return {
        "n": inst.n,
        "total": inst.total,
        "d_surplus": d1,
        "d_zeros": d2,
        "max_ft": int(ft.counts.max()),
        "witness_j": oracle.witness_j(ft, d1) if d1 >= 1 else None,
        "structure_ok_at": ok_at,
    }


def cmd_stats(args) -> int:
    try:
        print(json.dumps(stats(_read(args.path))))
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        text = format_text(generate(GenSpec(args.kind, args.n, args.seed)))
    except Unsatisfiable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _n_range(spec: str) -> list[int]:
    parts = [int(p) for p in spec.split(":")]
    if len(parts) == 1:
        return parts
    step = parts[2] if len(parts) > 2 else 1
    return list(range(parts[0], parts[1] + 1, step))


def cmd_bench(args) -> int:
    seeds = [int(s) for s in args.seeds.split(",")]
    rows = bench.run_suite(args.suite, _n_range(args.n_range), seeds)
    text = bench.to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pigeonsum", description="Pigeonhole Equal Sums solvers")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="find two distinct subsets with equal sums")
    p.add_argument("path", nargs="?", default="-", help="instance file, '-' for stdin")
    p.add_argument("--algo", choices=MODES, default="auto")
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--budget", type=int, default=None,
                   help="large-d attempts, or walk steps for lowspace")
    p.add_argument("--time-limit", type=float, default=None, help="seconds")
    p.add_argument("--race", action="store_true", help="run small-d and large-d concurrently")
    p.add_argument("--json", action="store_true", help="single JSON document output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stats", help="exact frequency statistics (n <= 24)")
    p.add_argument("path", nargs="?", default="-")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="work-count benchmark to CSV")
    p.add_argument("--suite", choices=sorted(bench.SUITES), default="separation")
    p.add_argument("--n-range", default="24:40:4", help="N, A:B or A:B:STEP (inclusive)")
    p.add_argument("--seeds", default="0")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
