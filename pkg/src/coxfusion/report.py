"""Pass/fail records shared by the axiom and lemma verifiers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """One named check; ``witness`` carries failing indices or residuals."""

    name: str
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def all_passed(report: list[CheckResult]) -> bool:
    return all(check.passed for check in report)


def failures(report: list[CheckResult]) -> list[CheckResult]:
    return [check for check in report if not check.passed]
