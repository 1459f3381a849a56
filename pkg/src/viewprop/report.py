"""Check reports and their text, JSON and CSV renderings."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Sequence
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one oracle check.

    ``verdict`` is ``None`` for a skipped check. A failing report always
    carries a ``witness``: the encoded store on which the violation shows.
    """

    name: str
    verdict: bool | None
    instances: int = 0
    mode: str = "exhaustive"
    witness: str | None = None
    expected: str | None = None
    actual: str | None = None
    note: str | None = None
    details: dict = field(default_factory=dict)
    # (store, expected, actual) as domain tuples, for replaying a failure
    counterexample: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.verdict is False and self.witness is None:
            raise ValueError(f"failing check {self.name!r} needs a witness")

    @property
    def status(self) -> str:
        if self.verdict is None:
            return "SKIP"
        return "PASS" if self.verdict else "FAIL"

    def __bool__(self) -> bool:
        return self.verdict is not False

    def line(self) -> str:
        out = f"CHECK {self.name} {self.status} instances={self.instances}"
        if self.witness is not None and self.verdict is False:
            out += f" witness={self.witness.replace(' ', '')}"
        return out

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "instances": self.instances,
            "mode": self.mode,
        }
        for key in ("witness", "expected", "actual", "note"):
            val = getattr(self, key)
            if val is not None:
                d[key] = val
        if self.details:
            d["details"] = self.details
        return d


def render_text(reports: Sequence[CheckReport]) -> str:
    lines = [r.line() for r in reports]
    n_fail = sum(r.verdict is False for r in reports)
    n_skip = sum(r.verdict is None for r in reports)
    lines.append(f"SUMMARY checks={len(reports)} pass={len(reports) - n_fail - n_skip} fail={n_fail} skip={n_skip}")
    return "\n".join(lines) + "\n"


def render_json(reports: Sequence[CheckReport]) -> str:
    n_fail = sum(r.verdict is False for r in reports)
    doc = {
        "checks": [r.to_dict() for r in reports],
        "summary": {
            "checks": len(reports),
            "fail": n_fail,
            "skip": sum(r.verdict is None for r in reports),
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_csv(reports: Sequence[CheckReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "status", "instances", "mode", "witness"])
    for r in reports:
        w.writerow([r.name, r.status, r.instances, r.mode, r.witness or ""])
    return buf.getvalue()


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}
