"""Report rows and their CSV/JSON serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

CSV_HEADER = ("check", "instance", "lhs", "rhs", "slack", "pass", "conjecture")
JSON_FIELDS = (
    "check_name",
    "instance_descriptor",
    "lhs",
    "rhs",
    "slack",
    "pass",
    "conjecture_flag",
)


@dataclass(frozen=True)
class ReportRow:
    check_name: str
    instance_descriptor: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    conjecture_flag: bool

    def __post_init__(self):
        # verifiers hand over numpy scalars; store plain Python types
        for name, kind in (("lhs", float), ("rhs", float), ("slack", float),
                           ("passed", bool), ("conjecture_flag", bool)):
            object.__setattr__(self, name, kind(getattr(self, name)))

    def as_dict(self) -> dict:
        return dict(zip(JSON_FIELDS, (
            self.check_name,
            self.instance_descriptor,
            self.lhs,
            self.rhs,
            self.slack,
            self.passed,
            self.conjecture_flag,
        )))


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


def _parse_bool(s: str) -> bool:
    if s not in ("true", "false"):
        raise ValueError(f"not a boolean: {s!r}")
    return s == "true"


def write_table(header: Sequence[str], rows: Iterable[Sequence], comment: str | None = None) -> str:
    """CSV text for arbitrary rows; floats at 17 significant digits."""
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt_cell(x) for x in row])
    return buf.getvalue()


def rows_to_csv(rows: Iterable[ReportRow], comment: str | None = None) -> str:
    return write_table(
        CSV_HEADER,
        (
            (r.check_name, r.instance_descriptor, r.lhs, r.rhs, r.slack, r.passed, r.conjecture_flag)
            for r in rows
        ),
        comment,
    )


def rows_from_csv(text: str) -> list[ReportRow]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [
        ReportRow(c, i, float(lhs), float(rhs), float(s), _parse_bool(p), _parse_bool(cf))
        for c, i, lhs, rhs, s, p, cf in reader
    ]


def rows_to_json(rows: Iterable[ReportRow]) -> str:
    return json.dumps([r.as_dict() for r in rows], indent=1) + "\n"


def rows_from_json(text: str) -> list[ReportRow]:
    return [
        ReportRow(
            d["check_name"],
            d["instance_descriptor"],
            float(d["lhs"]),
            float(d["rhs"]),
            float(d["slack"]),
            bool(d["pass"]),
            bool(d["conjecture_flag"]),
        )
        for d in json.loads(text)
    ]
