"""Validation reports: per-axiom findings with witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Finding:
    axiom: str
    ok: bool
    witness: str = ""
    level: int | None = None

    def render(self) -> str:
        status = "ok" if self.ok else "FAIL"
        where = f" level {self.level}" if self.level is not None else ""
        tail = f": {self.witness}" if self.witness else ""
        return f"[{status}] {self.axiom}{where}{tail}"


@dataclass
class ValidationReport:
    findings: list = field(default_factory=list)

    def add(self, axiom, ok, witness="", level=None):
        self.findings.append(Finding(axiom, ok, witness, level))

    def merge(self, other: "ValidationReport"):
        self.findings.extend(other.findings)

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.findings)

    def failures(self):
        return [f for f in self.findings if not f.ok]

    def render(self) -> str:
        return "\n".join(f.render() for f in self.findings)
