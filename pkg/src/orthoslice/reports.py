"""Verification reports: named checks with expected value, computed value,
verdict, provenance tag and tolerance context; JSON and markdown output."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .assets import EXPECTED, TRIVIAL

SCHEMA_VERSION = 1


def plain(v: Any) -> Any:
    """JSON-friendly copy with stable ordering."""
    if isinstance(v, dict):
        return {str(k): plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [plain(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(plain(x) for x in v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return float(f"{v:.12g}")
    if hasattr(v, "item"):  # numpy scalar
        return plain(v.item())
    return str(v)


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    passed: bool
    provenance: str = TRIVIAL
    tolerance: str = "exact"
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "expected": plain(self.expected),
            "computed": plain(self.computed),
            "verdict": "pass" if self.passed else "fail",
            "provenance": self.provenance,
            "tolerance": self.tolerance,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Table:
    title: str
    header: list
    rows: list

    def to_dict(self) -> dict:
        return {"title": self.title, "header": plain(self.header), "rows": plain(self.rows)}


@dataclass
class Section:
    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    tables: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str, expected: Any, computed: Any, passed: bool | None = None, *,
              key: str | None = None, provenance: str | None = None, tolerance: str = "exact",
              note: str = "") -> Check:
        """Add a check; ``key`` pulls the provenance (and note) from the assets."""
        if key is not None:
            e = EXPECTED[key]
            provenance = provenance or e.provenance
            note = note or e.note
        ok = (expected == computed) if passed is None else bool(passed)
        c = Check(name, expected, computed, ok, provenance or TRIVIAL, tolerance, note)
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.tables:
            d["tables"] = [t.to_dict() for t in self.tables]
        if self.data:
            d["data"] = plain(self.data)
        return d


@dataclass
class Report:
    command: str
    config: dict
    sections: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.sections)

    def section(self, name: str) -> Section:
        s = Section(name)
        self.sections.append(s)
        return s

    def payload(self) -> dict:
        """Everything except timings (byte-stable for a fixed configuration)."""
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "config": plain(self.config),
            "verdict": "pass" if self.passed else "fail",
            "sections": [s.to_dict() for s in self.sections],
        }

    def to_dict(self) -> dict:
        d = self.payload()
        d["timing"] = plain(self.timing)
        return d

    def extend(self, other: "Report") -> None:
        for s in other.sections:
            s.name = f"{other.command}: {s.name}"
            self.sections.append(s)
        for k, v in other.timing.items():
            self.timing[f"{other.command}.{k}"] = v


def to_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def from_json(text: str) -> dict:
    d = json.loads(text)
    validate(d)
    return d


def validate(d: dict) -> None:
    """Minimal structural validation of a serialized report."""
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError("unknown report schema")
    for k in ("command", "config", "verdict", "sections"):
        if k not in d:
            raise ValueError(f"missing field {k!r}")
    if d["verdict"] not in ("pass", "fail"):
        raise ValueError("bad verdict")
    for s in d["sections"]:
        for c in s["checks"]:
            for k in ("name", "expected", "computed", "verdict", "provenance", "tolerance"):
                if k not in c:
                    raise ValueError(f"check missing {k!r}")
    want = "pass" if all(c["verdict"] == "pass" for s in d["sections"] for c in s["checks"]) else "fail"
    if d["verdict"] != want:
        raise ValueError("overall verdict inconsistent with checks")


def _cell(v: Any) -> str:
    v = plain(v)
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def to_markdown(report: Report) -> str:
    lines = [f"# {report.command}: {'PASS' if report.passed else 'FAIL'}", ""]
    cfg = ", ".join(f"{k}={_cell(v)}" for k, v in report.config.items())
    lines += [f"Configuration: {cfg}", ""]
    for s in report.sections:
        lines += [f"## {s.name}: {'pass' if s.passed else 'fail'}", ""]
        if s.checks:
            lines += ["| check | expected | computed | verdict | provenance | tolerance |",
                      "|---|---|---|---|---|---|"]
            for c in s.checks:
                lines.append(
                    f"| {c.name} | {_cell(c.expected)} | {_cell(c.computed)} | "
                    f"{'pass' if c.passed else 'FAIL'} | {c.provenance} | {c.tolerance} |"
                )
            lines.append("")
        for t in s.tables:
            lines += [f"**{t.title}**", ""]
            lines.append("| " + " | ".join(_cell(h) for h in t.header) + " |")
            lines.append("|" + "---|" * len(t.header))
            for r in t.rows:
                lines.append("| " + " | ".join(_cell(x) for x in r) + " |")
            lines.append("")
    if report.timing:
        lines += ["## timing", ""]
        lines += [f"- {k}: {v:.2f} s" if isinstance(v, float) else f"- {k}: {v}" for k, v in report.timing.items()]
        lines.append("")
    return "\n".join(lines)


def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "markdown":
        return to_markdown(report)
    raise ValueError(f"unknown format {fmt!r}")
