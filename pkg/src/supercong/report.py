"""Result rows and aggregate reports shared by all verification commands."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Row:
    spec_id: str
    p: int | None
    outcome: str  # "pass" | "fail" | "skip"
    detail: str = ""
    lhs: int | None = None
    rhs: int | None = None
    x: int | None = None
    y: int | None = None

    def sort_key(self):
        return (self.spec_id, self.p if self.p is not None else -1)


@dataclass
class Report:
    rows: list[Row] = field(default_factory=list)

    def add(self, row: Row) -> None:
        self.rows.append(row)

    def extend(self, rows) -> None:
        self.rows.extend(rows)

    def sort(self) -> None:
        self.rows.sort(key=Row.sort_key)

    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for row in self.rows:
            counts[row.outcome] += 1
        return counts

    def failures(self) -> list[Row]:
        return [r for r in self.rows if r.outcome == "fail"]

    def anomalies(self) -> list[Row]:
        return [r for r in self.rows if r.outcome == "skip" and "anomaly" in r.detail]
