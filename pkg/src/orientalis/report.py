"""Structured pass/fail reports shared by the checking functions."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    failures: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str):
        self.failures.append(message)

    def extend(self, other: "Report", prefix: str | None = None):
        for msg in other.failures:
            self.failures.append(f"{prefix}: {msg}" if prefix else msg)

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        head = f"{self.name}: {status}"
        if self.failures:
            shown = self.failures[:5]
            more = len(self.failures) - len(shown)
            head += "\n  " + "\n  ".join(shown)
            if more:
                head += f"\n  ... {more} more"
        return head

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "failures": list(self.failures), **({"info": self.info} if self.info else {})}
