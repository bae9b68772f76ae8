"""Work counters shared by the solvers and the benchmark harness."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass
class Metrics:
    subsets_enumerated: int = 0
    dp_cells: int = 0
    samples_drawn: int = 0
    attempts: int = 0
    sort_items: int = 0

    def merge(self, other: "Metrics") -> None:
        self.subsets_enumerated += other.subsets_enumerated
        self.dp_cells += other.dp_cells
        self.samples_drawn += other.samples_drawn
        self.attempts += other.attempts
        self.sort_items += other.sort_items

    def to_dict(self) -> dict:
        return asdict(self)
