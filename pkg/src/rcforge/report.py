"""Machine-readable verification reports."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from .exact import GaussianRational, PiPower, fraction_to_str

EXACT_ZERO = "exact-zero"


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, Fraction):
        return fraction_to_str(x)
    if isinstance(x, GaussianRational):
        return x.to_dict()
    if isinstance(x, PiPower):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return jsonable(x.item())
    return str(x)


def exact_residual(value) -> str:
    """'exact-zero' for an exact zero, otherwise the offending value as text."""
    if isinstance(value, GaussianRational):
        return EXACT_ZERO if value.is_zero() else str(value)
    if hasattr(value, "is_zero"):
        return EXACT_ZERO if value.is_zero() else str(value)
    return EXACT_ZERO if value == 0 else str(value)


@dataclass
class Report:
    command: str
    params: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    max_abs_residual: float = 0.0
    passed: bool = True
    wall_time_ms: int = 0
    notes: List[str] = field(default_factory=list)

    def add(self, row: Dict[str, Any], residual: float | None = None):
        """Append a row; the row's own ``pass`` flag feeds the report verdict."""
        self.rows.append(row)
        if residual is not None and math.isfinite(residual):
            self.max_abs_residual = max(self.max_abs_residual, float(residual))
        elif residual is not None:
            self.max_abs_residual = math.inf
        if not row.get("pass", True):
            self.passed = False

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "command": self.command,
            "params": self.params,
            "rows": self.rows,
            "max_abs_residual": self.max_abs_residual,
            "pass": self.passed,
            "wall_time_ms": self.wall_time_ms,
        }
        if self.notes:
            d["notes"] = self.notes
        return jsonable(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_csv(self, columns: List[str]) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in self.to_dict()["rows"]:
            writer.writerow([row.get(c, "") for c in columns])
        return buf.getvalue()

    def failures(self) -> List[Dict[str, Any]]:
        return [r for r in self.rows if not r.get("pass", True)]


@contextmanager
def timed(report: Report):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
