"""Small check/report containers shared by the verification operations."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One named verification with a human-readable detail string."""

    name: str
    ok: bool
    detail: str = ""
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("ok" if self.ok else "FAIL")
        out = f"[{status:>4}] {self.name}"
        if self.detail:
            out += f": {self.detail}"
        return out


@dataclass(frozen=True)
class Report:
    """An ordered bundle of checks produced by one verification operation."""

    title: str
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok or c.skipped for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not (c.ok or c.skipped))

    def __str__(self) -> str:
        return "\n".join([self.title] + ["  " + c.line() for c in self.checks])
