"""Verification reports and the JSON documents shared by every verifier."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a verifier run.

    ``counterexamples`` holds one JSON-ready dict per violation; a report
    passes iff it is empty.  ``extra`` carries verifier-specific fields
    that are emitted at the top level of the document.
    """

    theorem: str
    params: dict[str, Any]
    counts_by_degree: dict[str, int] = field(default_factory=dict)
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    elapsed_ms: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def bump(self, degree) -> None:
        key = str(degree)
        self.counts_by_degree[key] = self.counts_by_degree.get(key, 0) + 1

    def to_dict(self) -> dict[str, Any]:
        doc = dict(self.extra)
        doc.update(
            theorem=self.theorem,
            params=self.params,
            passed=self.passed,
            counts_by_degree=dict(sorted(self.counts_by_degree.items(), key=lambda kv: (len(kv[0]), kv[0]))),
            counterexamples=self.counterexamples,
            elapsed_ms=self.elapsed_ms,
        )
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.counterexamples)} counterexamples)"
        params = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.theorem} [{params}]: {status} in {self.elapsed_ms} ms"


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
