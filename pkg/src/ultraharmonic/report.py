"""Deterministic report assembly, serialization, and text rendering.

A report is plain data: schema tag, command echo, config snapshot, and
a list of typed result records (dicts built by the owning modules).
JSON output is key-sorted and carries no wall times, so identical
inputs yield byte-identical files; timings live on the in-memory
report and appear only in text mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaError

SCHEMA = "ultraharmonic/1"


def _version() -> str:
    from ultraharmonic import __version__

    return __version__


@dataclass
class Report:
    """One run's worth of results, ready to serialize."""

    command: str
    arguments: dict
    config: dict
    results: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def add(self, record: dict) -> None:
        self.results.append(record)

    def time(self, step: str, seconds: float) -> None:
        self.timings[step] = seconds

    def to_payload(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": _version(),
            "command": self.command,
            "arguments": self.arguments,
            "config": self.config,
            "results": self.results,
        }


def dump_json(report: Report | dict) -> str:
    payload = report.to_payload() if isinstance(report, Report) else report
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_report(path: str | Path) -> dict:
    """Read and validate a previously written JSON report."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read report: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not a valid JSON report: {exc}") from exc
    if not isinstance(payload, dict) or "schema" not in payload:
        raise SchemaError("not a report: missing top-level schema tag")
    got = payload["schema"]
    if got != SCHEMA:
        raise SchemaError(f"unsupported schema {got!r}; this tool reads {SCHEMA!r}")
    return payload


def _cap(value: str) -> str:
    return value[:1].upper() + value[1:] if value else value


def _rule_lines(node: dict, indent: int) -> list[str]:
    pad = "  " * indent
    line = f"{pad}- {node.get('rule', '?')}"
    if node.get("note"):
        line += f": {node['note']}"
    out = [line]
    for child in node.get("children", []):
        out.extend(_rule_lines(child, indent + 1))
    return out


def _diag_lines(diag, indent: int) -> list[str]:
    pad = "  " * indent
    out: list[str] = []
    if isinstance(diag, dict) and "table" in diag:
        mode = "exact" if diag.get("exact") else "double"
        out.append(f"{pad}partial sums ({mode}):")
        for row in diag["table"]:
            out.append(
                f"{pad}  horizon {row['horizon']:>10}  terms {row['terms']:>9}"
                f"  sum {row['sum']:.9f}"
            )
    elif isinstance(diag, dict) and "gap_histogram" in diag:
        out.extend(_profile_lines(diag, indent))
    elif diag is not None:
        out.append(f"{pad}diagnostic: {json.dumps(diag, sort_keys=True)}")
    return out


def _verdict_lines(label: str, verdict: dict, indent: int) -> list[str]:
    pad = "  " * indent
    out = [f"{pad}{label}: {_cap(verdict.get('value', '?'))}"]
    cert = verdict.get("certificate")
    if cert:
        out.extend(_rule_lines(cert, indent + 1))
    for key, val in sorted(verdict.get("notes", {}).items()):
        out.append(f"{pad}  note {key}: {val}")
    out.extend(_diag_lines(verdict.get("diagnostic"), indent + 1))
    return out


def _profile_lines(profile: dict, indent: int) -> list[str]:
    pad = "  " * indent
    out = [
        f"{pad}horizon {profile['horizon']}: {profile['count']} elements, "
        f"max gap {profile['max_gap']}"
    ]
    hist = profile.get("gap_histogram", {})
    if hist:
        body = ", ".join(f"{g}x{n}" for g, n in sorted(hist.items(), key=lambda kv: int(kv[0])))
        out.append(f"{pad}gap histogram: {body}")
    prof = profile.get("profile", {})
    if prof:
        body = ", ".join(
            f"<= {bound}: {prof[bound]}" for bound in sorted(prof, key=int)
        )
        out.append(f"{pad}longest window with gaps {body}")
    return out


def _witness_lines(record: dict, indent: int) -> list[str]:
    pad = "  " * indent
    w = record.get("witness")
    if not w:
        return [f"{pad}no progression found (k={record.get('k')}, horizon={record.get('horizon')})"]
    out = [
        f"{pad}start {w['start']}, difference {w['diff']}, length {w['length']}"
    ]
    terms = w.get("terms")
    if terms:
        out.append(f"{pad}terms: {', '.join(str(t) for t in terms)}")
    return out


def _base_lines(base: dict, indent: int) -> list[str]:
    pad = "  " * indent
    out = []
    for text, why in zip(base.get("elements", []), base.get("provenance", [])):
        out.append(f"{pad}{text}  [{why}]")
    irr = base.get("irreducible_pairs", [])
    if irr:
        out.append(f"{pad}irreducible pairs: {irr}")
    fip = base.get("fip")
    if fip:
        out.extend(_verdict_lines("finite intersection property", fip, indent))
    return out


def _certificate_table(cert: dict, indent: int) -> list[str]:
    pad = "  " * indent
    out = [
        f"{pad}gap bound {cert['bound']}: composite run of length {cert['length']}"
        f" starting at {cert['start']}"
    ]
    for value in sorted(cert.get("divisors", {}), key=int):
        out.append(f"{pad}  {value} divisible by {cert['divisors'][value]}")
    return out


def _record_lines(record: dict, index: int) -> list[str]:
    kind = record.get("kind", "?")
    head = f"[{index}] {kind}"
    if "expression" in record:
        head += f" {record['expression']}"
    out = [head]
    if kind == "classify":
        out.extend(_verdict_lines("harmonicity", record["verdict"], 1))
        if record.get("psyndetic"):
            out.extend(_verdict_lines("piecewise syndetic", record["psyndetic"], 1))
    elif kind == "gaps":
        out.extend(_profile_lines(record["profile"], 1))
    elif kind == "ap":
        out.extend(_witness_lines(record, 1))
    elif kind == "extract":
        out.append(f"  from {record['a']} avoiding the pace of {record['b']}")
        out.append(f"  elements: {', '.join(str(v) for v in record['elements'])}")
    elif kind == "glazer-principal":
        out.append(
            f"  e({record['n']}) + e({record['m']}) = e({record['point']})"
        )
        if "member" in record:
            out.append(f"  member {record['expression']}: {record['member']}")
    elif kind == "glazer-member":
        out.extend(_verdict_lines("membership in F+G", record["verdict"], 1))
    elif kind == "glazer-sum":
        out.append("  sum base:")
        out.extend(_base_lines(record["base"], 2))
        if record.get("harmonicity"):
            out.extend(_verdict_lines("harmonicity", record["harmonicity"], 1))
    elif kind == "gap-certificate":
        out.extend(_certificate_table(record["certificate"], 1))
    elif kind == "experiment":
        for prop in record.get("properties", []):
            mark = "PASS" if prop.get("passed") else "FAIL"
            line = f"  {mark} {prop.get('property')}"
            details = prop.get("details")
            if details not in (None, ""):
                if isinstance(details, (dict, list)):
                    details = json.dumps(details, sort_keys=True)
                line += f": {details}"
            out.append(line)
    elif kind == "error":
        out.append(f"  error: {record.get('message')}")
    else:
        out.append("  " + json.dumps(record, sort_keys=True))
    return out


def render_text(payload: Report | dict) -> str:
    """Human-readable rendering with indented derivation trees."""
    timings: dict = {}
    if isinstance(payload, Report):
        timings = payload.timings
        payload = payload.to_payload()
    lines = [f"ultraharmonic {payload.get('version', '?')} :: {payload.get('command', '?')}"]
    config = payload.get("config", {})
    if config:
        body = " ".join(f"{k}={config[k]}" for k in sorted(config))
        lines.append(f"config: {body}")
    for i, record in enumerate(payload.get("results", []), start=1):
        lines.append("")
        lines.extend(_record_lines(record, i))
    if timings:
        lines.append("")
        for step in sorted(timings):
            lines.append(f"time {step}: {timings[step]:.3f}s")
    return "\n".join(lines) + "\n"
