"""Validation reports shared by every module.

A report is a titled list of findings.  An empty findings list means the
checked object satisfied every invariant.  Reports render deterministically
to plain text and to a JSON-compatible dictionary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, List, Tuple


class StructureError(ValueError):
    """Malformed input: unknown names, ragged data, schema errors.

    Distinct from an invariant violation, which is reported, not raised.
    """


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str
    witness: Tuple[Any, ...] = ()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": self.message, "witness": _jsonable(self.witness)}


@dataclass
class Report:
    title: str
    findings: List[Finding] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    def __bool__(self) -> bool:
        return self.ok

    def add(self, kind: str, message: str, *witness) -> None:
        self.findings.append(Finding(kind, message, tuple(witness)))

    def note(self, line: str) -> None:
        self.notes.append(line)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for f in other.findings:
            self.findings.append(Finding(prefix + f.kind, f.message, f.witness))
        self.notes.extend(other.notes)

    def kinds(self) -> List[str]:
        return [f.kind for f in self.findings]

    def to_text(self) -> str:
        lines = [f"== {self.title} =="]
        lines.extend(self.notes)
        if self.findings:
            lines.append(f"violations: {len(self.findings)}")
            for f in self.findings:
                lines.append(f"  [{f.kind}] {f.message}")
        else:
            lines.append("status: ok")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "notes": list(self.notes),
            "findings": [f.to_dict() for f in self.findings],
            "data": _jsonable(self.data),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)
