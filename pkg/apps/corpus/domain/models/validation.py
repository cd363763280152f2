"""Invariant violations reported by dataset validation."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """A single broken dataset invariant; data, not an exception."""

    kind: str
    table: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.table}: {self.detail}"
