"""Pass/fail rows for theorem checks, with CSV and plain-text rendering.

A row relates a measured exact rational to a bound under <=, >=, or ==.
Soft rows are empirical step-count reports rather than theorem consequences;
they still carry a verdict but are flagged so callers can treat them
differently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional


def frac_str(x: Optional[Fraction]) -> str:
    if x is None:
        return "undefined"
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class VerdictReport:
    claim_id: str
    instance: str
    bound: Optional[Fraction]
    measured: Optional[Fraction]
    relation: str  # "<=", ">=", "=="
    passed: bool
    slack: Optional[Fraction]
    soft: bool = False


def make_verdict(
    claim_id: str,
    instance: str,
    bound,
    measured,
    relation: str,
    soft: bool = False,
) -> VerdictReport:
    """Evaluate ``measured <relation> bound`` exactly and record the slack."""
    bound = None if bound is None else Fraction(bound)
    measured = None if measured is None else Fraction(measured)
    if bound is None or measured is None:
        passed, slack = False, None
    else:
        if relation == "<=":
            passed = measured <= bound
        elif relation == ">=":
            passed = measured >= bound
        elif relation == "==":
            passed = measured == bound
        else:
            raise ValueError(f"unknown relation {relation!r}")
        slack = abs(bound - measured)
    return VerdictReport(claim_id, instance, bound, measured, relation, passed, slack, soft)


CSV_HEADER = "claim_id,instance,bound,measured,verdict,slack"


def render_csv(reports: Iterable[VerdictReport]) -> str:
    lines = [CSV_HEADER]
    for r in reports:
        verdict = "pass" if r.passed else "fail"
        inst = r.instance.replace('"', "'")
        inst = f'"{inst}"' if "," in inst else inst
        lines.append(
            f"{r.claim_id},{inst},{frac_str(r.bound)},{frac_str(r.measured)},"
            f"{verdict},{frac_str(r.slack)}"
        )
    return "\n".join(lines) + "\n"


def render_text(reports) -> str:
    reports = list(reports)
    rows = [("claim", "instance", "relation", "bound", "measured", "verdict")]
    for r in reports:
        rows.append(
            (
                r.claim_id,
                r.instance,
                r.relation,
                frac_str(r.bound),
                frac_str(r.measured),
                ("pass" if r.passed else "FAIL") + (" (soft)" if r.soft else ""),
            )
        )
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    failed = sum(1 for r in reports if not r.passed)
    lines.append("")
    lines.append(f"{len(reports)} checks, {len(reports) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n"
