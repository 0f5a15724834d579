#!/usr/bin/env python3
"""
Report Rendering

Turns SuiteReport documents, enumerated bases, states and history records
into the three output encodings of the command line:

- json: one sorted-key document, byte-stable for a fixed configuration
- csv: a flat pandas table with one row per check, dimension entry and
  series coefficient (rationals split into numerator and denominator)
- text: a short human summary
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Sequence

import pandas as pd

from models.types import CheckReport, OutputFormat, RunRecord, SuiteReport
from vertex.fock import BasisVector, State, dump_state, weight

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "kind",
    "check",
    "passed",
    "weight",
    "charge",
    "source",
    "value",
    "exponent",
    "numerator",
    "denominator",
]


def to_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def check_rows(check: CheckReport) -> List[Dict[str, Any]]:
    """Flatten one check into CSV rows."""
    rows = [{"kind": "check", "check": check.name, "passed": check.passed}]
    for dim in check.dimensions:
        for source, value in sorted(dim.values.items()):
            rows.append(
                {
                    "kind": "dimension",
                    "check": check.name,
                    "weight": dim.weight,
                    "charge": dim.charge,
                    "source": source,
                    "value": value,
                }
            )
    for table in check.series:
        for exponent, coeff in table.coeffs.items():
            c = Fraction(coeff)
            rows.append(
                {
                    "kind": "series",
                    "check": check.name,
                    "source": table.name,
                    "exponent": exponent,
                    "numerator": c.numerator,
                    "denominator": c.denominator,
                }
            )
    return rows


def report_to_dataframe(report: SuiteReport) -> pd.DataFrame:
    rows = [row for check in report.checks for row in check_rows(check)]
    df = pd.DataFrame(rows, columns=CSV_COLUMNS)
    # nullable ints keep "3" from turning into "3.0" next to empty cells
    for column in ("charge", "value", "numerator", "denominator"):
        df[column] = df[column].astype("Int64")
    return df


def _series_line(name: str, coeffs: Dict[str, str], limit: int = 12) -> str:
    """Coefficients along the exponent class that carries the series, labelled when not integral."""
    exponents = sorted(coeffs, key=Fraction)
    classes = {Fraction(e) % 1 for e in exponents if Fraction(coeffs[e])}
    if len(classes) > 1:
        label, shown = " [q^(k/2)]", exponents
    elif classes == {Fraction(1, 2)}:
        label, shown = " [q^(k+1/2)]", [e for e in exponents if Fraction(e) % 1]
    else:
        label, shown = "", [e for e in exponents if Fraction(e).denominator == 1]
    return f"    {name}{label}: " + " ".join(coeffs[e] for e in shown[:limit])


def report_to_text(report: SuiteReport) -> str:
    lines = [f"{report.subcommand}: {'PASSED' if report.passed else 'FAILED'} ({len(report.checks)} checks)"]
    for check in report.checks:
        flag = "ok  " if check.passed else "FAIL"
        evidence = " [bounded evidence]" if check.bounded_evidence else ""
        lines.append(f"  {flag} {check.name}{evidence}")
        for table in check.series:
            lines.append(_series_line(table.name, table.coeffs))
        if not check.passed:
            for w in check.witnesses[:3]:
                lines.append(f"    witness: {w.description}")
                if w.basis_vector:
                    lines.append(f"      on {w.basis_vector}")
                if w.expected is not None or w.actual is not None:
                    lines.append(f"      expected {w.expected}, got {w.actual}")
    return "\n".join(lines) + "\n"


def render_report(report: SuiteReport, fmt: OutputFormat = OutputFormat.JSON) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return to_json(report.model_dump(mode="json"))
    if fmt is OutputFormat.CSV:
        return report_to_dataframe(report).to_csv(index=False, lineterminator="\n")
    return report_to_text(report)


def render_basis(basis: Sequence[BasisVector], fmt: OutputFormat = OutputFormat.JSON) -> str:
    """JSON lines, a weight/vector CSV, or one vector per text line."""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return "".join(json.dumps({"weight": str(weight(bv)), **bv.to_json()}, sort_keys=True) + "\n" for bv in basis)
    if fmt is OutputFormat.CSV:
        df = pd.DataFrame([{"weight": str(weight(bv)), "vector": str(bv)} for bv in basis], columns=["weight", "vector"])
        return df.to_csv(index=False, lineterminator="\n")
    return "".join(f"{weight(bv)}\t{bv}\n" for bv in basis)


def render_state(state: State, fmt: OutputFormat = OutputFormat.JSON) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return to_json(dump_state(state))
    if fmt is OutputFormat.CSV:
        rows = []
        for bv, c in state.items():
            rows.append({"vector": str(bv), "numerator": c.numerator, "denominator": c.denominator})
        return pd.DataFrame(rows, columns=["vector", "numerator", "denominator"]).to_csv(index=False, lineterminator="\n")
    return f"{state}\n"


def render_runs(runs: Sequence[RunRecord], fmt: OutputFormat = OutputFormat.TEXT) -> str:
    fmt = OutputFormat(fmt)
    records = [r.model_dump(mode="json") for r in runs]
    if fmt is OutputFormat.JSON:
        return to_json(records)
    df = pd.DataFrame(
        records, columns=["id", "subcommand", "passed", "checks_count", "elapsed_seconds", "created_at"]
    )
    if fmt is OutputFormat.CSV:
        return df.to_csv(index=False, lineterminator="\n")
    if df.empty:
        return "no recorded runs\n"
    return df.to_string(index=False) + "\n"


__all__ = [
    "CSV_COLUMNS",
    "to_json",
    "check_rows",
    "report_to_dataframe",
    "report_to_text",
    "render_report",
    "render_basis",
    "render_state",
    "render_runs",
]
