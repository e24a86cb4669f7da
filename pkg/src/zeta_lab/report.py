"""Report rows and their CSV/JSON serialisation.

Every number is stored as a decimal string produced by mpmath.nstr at the
run's digit count, so a file written twice from the same inputs is
byte-identical and parsing a value back and reprinting it reproduces the text.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import mpmath
from mpmath import mp, mpc, mpf

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)


def decimal_text(x, digits: int) -> str:
    """Real number as a decimal string with `digits` significant digits."""
    if isinstance(x, (int, str)):
        return str(x)
    with mp.workdps(digits + 5):
        return mpmath.nstr(mpf(x), digits)


def reparse(text: str, digits: int) -> str:
    """Parse a decimal string and print it again at the same digit count."""
    with mp.workdps(digits + 5):
        return decimal_text(mpf(text), digits)


def flatten(values: dict, digits: int) -> dict:
    """Map names to decimal strings; complex entries become name_re / name_im."""
    out = {}
    for key, v in values.items():
        if isinstance(v, (mpc, complex)):
            # .real rounds to the active precision, so split at the target one
            with mp.workdps(digits + 5):
                re_, im = mpf(v.real), mpf(v.imag)
            out[f"{key}_re"] = decimal_text(re_, digits)
            out[f"{key}_im"] = decimal_text(im, digits)
        elif isinstance(v, bool) or v is None:
            out[key] = "" if v is None else str(v).lower()
        elif isinstance(v, (mpf, float)):
            out[key] = decimal_text(v, digits)
        else:
            out[key] = str(v)
    return out


@dataclass
class ReportRow:
    command: str
    label: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    passed: bool = True

    @classmethod
    def make(cls, command, label, digits, inputs=None, outputs=None, residuals=None, checks=None):
        checks = {k: bool(v) for k, v in (checks or {}).items()}
        return cls(
            command, label,
            flatten(inputs or {}, digits),
            flatten(outputs or {}, digits),
            flatten(residuals or {}, digits),
            checks,
            all(checks.values()),
        )

    def columns(self) -> dict:
        cols = {"command": self.command, "label": self.label}
        for section in (self.inputs, self.outputs, self.residuals):
            for k, v in section.items():
                if k in cols:
                    raise ValueError(f"duplicate report column {k!r}")
                cols[k] = v
        for k, v in self.checks.items():
            cols[f"check_{k}"] = str(v).lower()
        cols["passed"] = str(self.passed).lower()
        return cols


def render(rows, fmt: str) -> str:
    if not rows:
        raise ValueError("no rows to report")
    if fmt == JSON:
        return json.dumps({"rows": [asdict(r) for r in rows]}, indent=2) + "\n"
    if fmt != CSV:
        raise ValueError(f"unknown format {fmt!r}")
    flat = [r.columns() for r in rows]
    header = []
    for cols in flat:
        header.extend(k for k in cols if k not in header)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def emit_report(rows, fmt: str, path=None, stream=None) -> None:
    """Write rows to path (UTF-8) or to stream.  I/O failures propagate as OSError."""
    text = render(rows, fmt)
    if path is None:
        stream.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def parse_report(text: str, fmt: str):
    """Inverse of render: ReportRow objects for JSON, column dicts for CSV."""
    if fmt == JSON:
        return [ReportRow(**r) for r in json.loads(text)["rows"]]
    if fmt == CSV:
        return list(csv.DictReader(io.StringIO(text)))
    raise ValueError(f"unknown format {fmt!r}")
