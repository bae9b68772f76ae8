"""Instance generators for both regimes of the surplus d."""

from __future__ import annotations

import random
from dataclasses import dataclass

KINDS = ("random", "near-binary", "dense", "duplicate")


class Unsatisfiable(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    seed: int = 0


def _upper(n: int) -> int:
    # n values below this keep the total under 2^n - 1; widened to n when tiny
    return max(((1 << n) - 2) // n, n)


def _distinct(rng: random.Random, n: int, hi: int) -> list[int]:
    while True:
        vals = rng.sample(range(1, hi + 1), n)
        if sum(vals) < (1 << n) - 1:
            return vals


def generate(spec: GenSpec) -> list[int]:
    n, kind = spec.n, spec.kind
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < 2 or (kind != "duplicate" and n < 3):
        # two distinct positive weights always sum to at least 3 = 2^2 - 1
        raise Unsatisfiable(f"no {kind} instance with n = {n}")
    rng = random.Random(f"{kind}:{n}:{spec.seed}")
    if kind == "near-binary":
        return [1 << i for i in range(n - 1)] + [(1 << (n - 1)) - 1]
    if kind == "random":
        return _distinct(rng, n, _upper(n))
    if kind == "dense":
        return _distinct(rng, n, min(n ** 3, _upper(n)))
    vals = rng.sample(range(1, _upper(n) + 1), n - 1)
    vals.append(rng.choice(vals))
    rng.shuffle(vals)
    return vals
