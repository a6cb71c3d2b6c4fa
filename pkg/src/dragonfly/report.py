"""Pass/fail reports returned by the structural checkers and oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "n/a"


@dataclass
class Report:
    name: str
    status: str
    witness: str | None = None
    detail: str = ""
    checked: int = 0
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def __bool__(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        """One-line serialization: ``theorem=<id> status=<...> witness=<...>``."""
        parts = [f"theorem={self.name}", f"status={self.status}"]
        if self.witness is not None:
            parts.append(f"witness={self.witness}")
        if self.checked:
            parts.append(f"checked={self.checked}")
        return " ".join(parts)


def passing(name: str, checked: int = 0, detail: str = "", **data: Any) -> Report:
    return Report(name, PASS, None, detail, checked, dict(data))


def failing(name: str, witness: str, checked: int = 0, detail: str = "", **data: Any) -> Report:
    return Report(name, FAIL, witness, detail, checked, dict(data))


def expect_failure(report: Report, name: str | None = None) -> Report:
    """Turn a required counterexample into a passing report.

    The returned report passes when ``report`` failed (the witness was found)
    and fails when the counterexample could not be produced.
    """
    name = name or f"{report.name}:must-fail"
    if report.failed:
        return Report(name, PASS, report.witness, report.detail, report.checked, report.data)
    if report.status == NOT_APPLICABLE:
        return Report(name, NOT_APPLICABLE, None, report.detail, report.checked, report.data)
    return Report(name, FAIL, "none-found", "expected counterexample was not found",
                  report.checked, report.data)
