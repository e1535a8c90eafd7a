"""Validation reports shared by the ring and Mackey validators."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        s = f"{self.law} fails at {self.witness}"
        return f"{s}: {self.detail}" if self.detail else s


@dataclass
class Report:
    subject: str
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness=(), detail: str = "") -> None:
        self.violations.append(Violation(law, tuple(witness), detail))

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "valid": self.ok,
            "violations": [
                {"law": v.law, "witness": [_jsonable(x) for x in v.witness], "detail": v.detail}
                for v in self.violations
            ],
        }

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (int, str, float)) or x is None:
        return x
    return int(x) if hasattr(x, "__index__") else str(x)
