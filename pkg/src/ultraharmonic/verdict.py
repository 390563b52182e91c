"""Three-valued verdicts with serializable rule-tree certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

HARMONIC = "harmonic"
ANHARMONIC = "anharmonic"
YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Rule:
    """One node of a derivation tree: a rule name, a short note, premises."""

    name: str
    note: str = ""
    children: tuple["Rule", ...] = ()

    def to_dict(self) -> dict:
        return {
            "rule": self.name,
            "note": self.note,
            "children": [c.to_dict() for c in self.children],
        }

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        line = f"{pad}- {self.name}" + (f": {self.note}" if self.note else "")
        return "\n".join([line] + [c.render(indent + 1) for c in self.children])


@dataclass
class Verdict:
    """A classification outcome.

    Definite verdicts carry a certificate (the derivation that proved
    them); unknown ones may carry a numeric diagnostic instead.
    """

    value: str
    certificate: Rule | None = None
    diagnostic: object = None
    notes: dict = field(default_factory=dict)

    @property
    def is_definite(self) -> bool:
        return self.value != UNKNOWN

    def to_dict(self) -> dict:
        diag = self.diagnostic
        if diag is not None and hasattr(diag, "to_dict"):
            diag = diag.to_dict()
        out = {
            "value": self.value,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "diagnostic": diag,
        }
        if self.notes:
            out["notes"] = dict(sorted(self.notes.items()))
        return out
