"""Problem instances, solution pairs, and verification.

Weights are kept sorted ascending internally; ``orig_index`` maps each sorted
position back to the 0-based position in the raw input.  Subsets of an
instance are encoded as integer bitmasks over sorted positions (bit ``i`` is
the ``i``-th smallest weight).  All external formats are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_N = 62


class ValidationError(ValueError):
    pass


class PromiseViolated(ValidationError):
    pass


class NonPositive(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


@dataclass(frozen=True)
class SolutionPair:
    a: frozenset[int]
    b: frozenset[int]
    sum: int

    @classmethod
    def make(cls, a: Iterable[int], b: Iterable[int], total: int) -> "SolutionPair":
        """Build a pair in canonical order: ``a`` is smaller by (size, sorted indices)."""
        a, b = frozenset(a), frozenset(b)
        if (len(b), sorted(b)) < (len(a), sorted(a)):
            a, b = b, a
        return cls(a, b, int(total))

    def to_json(self) -> dict:
        return {"a": sorted(self.a), "b": sorted(self.b), "sum": self.sum}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> "SolutionPair":
        return cls(frozenset(obj["a"]), frozenset(obj["b"]), int(obj["sum"]))


@dataclass(frozen=True)
class Instance:
    n: int
    weights: tuple[int, ...]
    total: int
    orig_index: tuple[int, ...]

    def subset_sum(self, mask: int) -> int:
        s, i = 0, 0
        while mask:
            if mask & 1:
                s += self.weights[i]
            mask >>= 1
            i += 1
        return s

    def lift(self, mask: int) -> frozenset[int]:
        """Sorted-position bitmask -> set of 1-based original indices."""
        return frozenset(self.orig_index[i] + 1 for i in mask_positions(mask))

    def pair_from_masks(self, x: int, y: int) -> SolutionPair:
        sx, sy = self.subset_sum(x), self.subset_sum(y)
        if x == y or sx != sy:
            raise AssertionError(f"masks {x:#x}, {y:#x} are not an equal-sum pair")
        return SolutionPair.make(self.lift(x), self.lift(y), sx)


def mask_positions(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def validate(raw: Sequence[int]) -> Instance | SolutionPair:
    """Validate raw weights.

    Returns an :class:`Instance`, or a trivial :class:`SolutionPair` when two
    input values are equal (the first repeated value, scanning left to right).
    """
    values = [int(v) for v in raw]
    if not values:
        raise ValidationError("empty input")
    n = len(values)
    for v in values:
        if v <= 0:
            raise NonPositive(f"non-positive weight {v}")
    seen: dict[int, int] = {}
    for j, v in enumerate(values):
        if v in seen:
            i = seen[v]
            return SolutionPair.make({i + 1}, {j + 1}, v)
        seen[v] = j
    if n > MAX_N:
        raise TooLarge(f"n = {n} exceeds {MAX_N}")
    limit = 1 << n
    for v in values:
        if v >= limit:
            raise TooLarge(f"weight {v} >= 2^{n}")
    total = sum(values)
    if total >= limit - 1:
        raise PromiseViolated(f"sum {total} >= 2^{n} - 1")
    order = sorted(range(n), key=values.__getitem__)
    return Instance(
        n=n,
        weights=tuple(values[i] for i in order),
        total=total,
        orig_index=tuple(order),
    )


def prefix_reduce(inst: Instance) -> Instance:
    """Truncate to the shortest prefix that satisfies the pigeonhole promise.

    Returns ``inst`` itself when no prefix (including the whole) qualifies.
    """
    s = 0
    for i, w in enumerate(inst.weights, start=1):
        s += w
        if s < (1 << i) - 1:
            if i == inst.n:
                return inst
            return Instance(
                n=i,
                weights=inst.weights[:i],
                total=s,
                orig_index=inst.orig_index[:i],
            )
    return inst


def verify(raw: Sequence[int], sol: SolutionPair) -> bool:
    try:
        a, b = set(sol.a), set(sol.b)
        if a == b:
            return False
        n = len(raw)
        for i in a | b:
            if not isinstance(i, int) or not 1 <= i <= n:
                return False
        return sum(raw[i - 1] for i in a) == sum(raw[i - 1] for i in b)
    except (TypeError, AttributeError):
        return False


def parse_text(text: str) -> list[int]:
    """Parse the two-line instance format: ``n`` then ``n`` integers."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ValidationError("expected two lines: n, then n integers")
    try:
        n = int(lines[0].strip())
        values = [int(tok) for tok in " ".join(lines[1:]).split()]
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    if len(values) != n:
        raise ValidationError(f"header says n = {n} but {len(values)} values follow")
    return values


def format_text(values: Sequence[int]) -> str:
    return f"{len(values)}\n{' '.join(str(int(v)) for v in values)}\n"
