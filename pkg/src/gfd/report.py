"""Value objects for audited properties and their CSV serialisation."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class Verdict(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    AUDIT = "AUDIT"


# residuals above this are treated as genuine, not round-off
NONZERO_RESIDUAL = 1e-6


def fmt(v) -> str:
    """Shortest round-trip text for a float; blank for missing values."""
    if v is None:
        return ""
    if isinstance(v, (tuple, list)):
        return ";".join(fmt(x) for x in v)
    v = float(v)
    if math.isnan(v):
        return ""
    return repr(v)


@dataclass(frozen=True)
class PropertyReport:
    property_id: str
    inputs: dict
    points: tuple
    lhs: tuple
    rhs: tuple
    abs_residual: tuple
    rel_residual: tuple
    max_abs_residual: float
    max_rel_residual: float
    verdict: Verdict
    tolerance: float | None = None
    notes: tuple[str, ...] = field(default=())

    @classmethod
    def build(
        cls,
        property_id: str,
        inputs: dict,
        points: Sequence,
        lhs: Sequence[float],
        rhs: Sequence[float],
        *,
        tolerance: float | None = None,
        audit: bool = False,
        scale: Sequence[float] | None = None,
        notes: Iterable[str] = (),
    ) -> "PropertyReport":
        """Compute residuals and the verdict.

        The relative residual divides by ``max(1, |lhs|, |rhs|, scale)``,
        where ``scale`` carries the magnitude of intermediate terms so that
        cancellation is not mistaken for a failure.  With ``audit=True``
        the verdict is AUDIT regardless of the residuals.
        """
        lhs_a = np.asarray(lhs, dtype=float)
        rhs_a = np.asarray(rhs, dtype=float)
        ab = np.abs(lhs_a - rhs_a)
        denom = np.maximum(1.0, np.maximum(np.abs(lhs_a), np.abs(rhs_a)))
        if scale is not None:
            denom = np.maximum(denom, np.abs(np.asarray(scale, dtype=float)))
        rel = ab / denom
        max_abs = float(ab.max()) if ab.size else 0.0
        max_rel = float(rel.max()) if rel.size else 0.0
        notes = tuple(notes)
        if audit:
            verdict = Verdict.AUDIT
        elif not ab.size:
            verdict = Verdict.FAIL
            notes += ("no admissible grid points",)
        else:
            ok = tolerance is None or max_rel <= tolerance
            verdict = Verdict.PASS if ok else Verdict.FAIL
        return cls(
            property_id=property_id,
            inputs=dict(inputs),
            points=tuple(points),
            lhs=tuple(lhs_a.tolist()),
            rhs=tuple(rhs_a.tolist()),
            abs_residual=tuple(ab.tolist()),
            rel_residual=tuple(rel.tolist()),
            max_abs_residual=max_abs,
            max_rel_residual=max_rel,
            verdict=verdict,
            tolerance=tolerance,
            notes=notes,
        )

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def summary(self) -> dict:
        return {
            "property_id": self.property_id,
            "verdict": self.verdict.value,
            "max_abs_residual": self.max_abs_residual,
            "max_rel_residual": self.max_rel_residual,
            "tolerance": self.tolerance,
            "points": len(self.points),
            "inputs": self.inputs,
            "notes": list(self.notes),
        }

    def summary_line(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)

    def csv_rows(self) -> list[list[str]]:
        return [
            [self.property_id, fmt(p), fmt(l), fmt(r), fmt(a)]
            for p, l, r, a in zip(self.points, self.lhs, self.rhs, self.abs_residual)
        ]


CSV_HEADER = ["property_id", "t", "lhs", "rhs", "abs_residual"]


def reports_to_csv(reports: Iterable[PropertyReport], *, summaries: bool = True) -> str:
    """Rows of every report, then one ``# {...}`` summary line per report."""
    reports = list(reports)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rep in reports:
        writer.writerows(rep.csv_rows())
    if summaries:
        for rep in reports:
            buf.write("# " + rep.summary_line() + "\n")
    return buf.getvalue()


def merge_reports(property_id: str, reports: Sequence[PropertyReport], inputs: dict | None = None) -> PropertyReport:
    """Concatenate reports of one property over several inputs.

    The verdict is AUDIT if any part is AUDIT, PASS if every part passed,
    FAIL otherwise.
    """
    if not reports:
        raise ValueError("nothing to merge")
    verdicts = {r.verdict for r in reports}
    if Verdict.AUDIT in verdicts:
        verdict = Verdict.AUDIT
    elif verdicts == {Verdict.PASS}:
        verdict = Verdict.PASS
    else:
        verdict = Verdict.FAIL
    notes = []
    for r in reports:
        notes.extend(n for n in r.notes if n not in notes)
    cat = lambda name: tuple(x for r in reports for x in getattr(r, name))  # noqa: E731
    return PropertyReport(
        property_id=property_id,
        inputs=dict(inputs if inputs is not None else {"parts": len(reports)}),
        points=cat("points"),
        lhs=cat("lhs"),
        rhs=cat("rhs"),
        abs_residual=cat("abs_residual"),
        rel_residual=cat("rel_residual"),
        max_abs_residual=max(r.max_abs_residual for r in reports),
        max_rel_residual=max(r.max_rel_residual for r in reports),
        verdict=verdict,
        tolerance=reports[0].tolerance,
        notes=tuple(notes),
    )
