"""Structured pass/fail records for identity and theorem checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    """Outcome of one named check, with counterexample payloads on failure."""

    name: str
    status: str
    context: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "context": self.context,
            "details": self.details,
        }


class VerificationReport:
    """An ordered collection of check results with stable JSON output."""

    def __init__(self, context=None):
        self.context = dict(context or {})
        self.entries: list[CheckResult] = []

    def add(self, result: CheckResult) -> CheckResult:
        merged = dict(self.context)
        merged.update(result.context)
        result.context = merged
        self.entries.append(result)
        return result

    @property
    def failures(self):
        return [e for e in self.entries if e.status == FAIL]

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "context": self.context,
            "checks": [e.to_dict() for e in self.entries],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def summary_lines(self):
        for e in self.entries:
            yield f"[{e.status.upper():7}] {e.name}"
