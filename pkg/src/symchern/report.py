"""Structured outcome of a verification scan."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    name: str
    params: dict
    status: str  # "pass" | "fail" | "precondition-violated"
    counterexamples: list = field(default_factory=list)
    elapsed_ms: int = 0
    rows: list = field(default_factory=list)

    def __post_init__(self):
        if self.status == "fail" and not self.counterexamples:
            raise ValueError("a failing report must record at least one counterexample")

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "rows": self.rows,
            "counterexamples": self.counterexamples,
            "elapsed_ms": self.elapsed_ms,
        }


def report_from_counterexamples(
    name: str,
    params: dict,
    counterexamples: list,
    start_time: float,
    rows: list | None = None,
) -> VerificationReport:
    return VerificationReport(
        name=name,
        params=params,
        status="pass" if not counterexamples else "fail",
        counterexamples=counterexamples,
        elapsed_ms=int((time.perf_counter() - start_time) * 1000),
        rows=rows or [],
    )
