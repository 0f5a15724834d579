#!/usr/bin/env python3
"""
Pydantic Models for the Free-Field Workbench

This module defines every value that crosses a process boundary: the run
configuration built from the command line, the Whittaker character input
file, check reports with their witnesses, series and dimension tables,
and the records read back from the run history database.

Exact rationals are carried as "num/den" strings so JSON output never
loses precision. Hot-path algebraic values (modes, states, series) are
plain frozen dataclasses in the vertex package, not models.
"""

import os
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SCHEMA_VERSION = "1.0.0"


class Subcommand(str, Enum):
    """Command-line subcommands."""

    ENUMERATE = "enumerate"
    APPLY = "apply"
    CHAR = "char"
    VERIFY_RELATIONS = "verify-relations"
    CENTER = "center"
    WHITTAKER = "whittaker"
    INVARIANTS = "invariants"
    SUITE = "suite"
    SCHEMA = "schema"
    HISTORY = "history"


class OutputFormat(str, Enum):
    """Report encodings."""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"


class CheckStatus(str, Enum):
    """Outcome of a single check."""

    PASSED = "passed"
    FAILED = "failed"


class CharIdentity(str, Enum):
    """Character identities reproducible by the `char` subcommand."""

    HP = "hp"
    V = "v"
    BOSON_FERMION = "boson-fermion"


class WhittakerCheck(str, Enum):
    """Checks on the Whittaker-type modules."""

    RELATIONS = "relations"
    REACH = "reach"
    CYCLICITY = "cyclicity"
    SUBMODULE = "submodule"
    HOMOGENEITY = "homogeneity"


class InvariantsCheck(str, Enum):
    """Checks on the gl_n fixed-point subalgebras."""

    FIXED = "fixed"
    STRONG_GEN = "strong-gen"
    CENTER = "center"
    M_STRONG_GEN = "m-strong-gen"
    BRACKETS = "brackets"
    ZERO_MODE = "zero-mode"
    DECOUPLING = "decoupling"
    GENERATORS = "generators"


def parse_rational(value: Any) -> Fraction:
    """Accept ints, Fractions and "p/q" strings; reject floats to stay exact."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"Rational values must be given exactly, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational number: {value!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def parse_window(value: Any) -> Tuple[int, int]:
    """Parse an integer window given as "A..B", a single integer or a pair."""
    if isinstance(value, (list, tuple)):
        lo, hi = (int(x) for x in value)
    elif isinstance(value, int):
        lo = hi = value
    else:
        text = str(value).strip()
        if ".." in text:
            left, right = text.split("..", 1)
            lo, hi = int(left), int(right)
        else:
            lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"Window lower end exceeds upper end: {lo}..{hi}")
    return lo, hi


# Reports
class CheckWitness(BaseModel):
    """A reproducible counterexample or sample attached to a check."""

    description: str = Field(..., description="What was evaluated")
    basis_vector: Optional[str] = Field(
        None, description="Basis vector the operators were applied to"
    )
    expected: Optional[str] = Field(None, description="Expected value, rendered")
    actual: Optional[str] = Field(None, description="Computed value, rendered")
    data: Dict[str, Any] = Field(
        default_factory=dict, description="Extra JSON-safe parameters of the witness"
    )


class DimensionRow(BaseModel):
    """Graded dimensions at one weight from several independent sources."""

    weight: str = Field(..., description="Weight as an exact half-integer string")
    charge: Optional[int] = Field(None, description="Charge sector of the row, when graded by charge")
    values: Dict[str, int] = Field(
        default_factory=dict, description="Dimension reported by each source"
    )

    @property
    def agrees(self) -> bool:
        return len(set(self.values.values())) <= 1


class SeriesTable(BaseModel):
    """Coefficients of one truncated q-series."""

    name: str = Field(..., min_length=1, description="Formula that produced the series")
    cutoff: str = Field(..., description="Inclusive truncation order")
    coeffs: Dict[str, str] = Field(
        default_factory=dict, description="Exponent to rational coefficient"
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def validate_coeffs(cls, v):
        """Normalize every coefficient to canonical num/den form."""
        if not isinstance(v, dict):
            raise ValueError("coeffs must map exponents to coefficients")
        return {str(k): format_rational(parse_rational(c)) for k, c in v.items()}


class CheckReport(BaseModel):
    """Result of one named check."""

    name: str = Field(..., min_length=1, description="Stable check key")
    passed: bool = Field(..., description="Whether every evaluated case held")
    bounded_evidence: bool = Field(
        False, description="True when the check is evidence at a cutoff, not a proof"
    )
    summary: Dict[str, Any] = Field(
        default_factory=dict, description="Counts, bounds and parameters of the check"
    )
    dimensions: List[DimensionRow] = Field(
        default_factory=list, description="Graded dimension comparison table"
    )
    series: List[SeriesTable] = Field(
        default_factory=list, description="Series computed by the check"
    )
    witnesses: List[CheckWitness] = Field(
        default_factory=list, description="Failures, or samples for passing checks"
    )

    @property
    def status(self) -> CheckStatus:
        return CheckStatus.PASSED if self.passed else CheckStatus.FAILED


class RelationCase(BaseModel):
    """One (label pair, r, s) cell of a relation suite."""

    left: str = Field(..., description="First generator label, e.g. E12")
    right: str = Field(..., description="Second generator label")
    r: int = Field(..., description="Mode of the first generator")
    s: int = Field(..., description="Mode of the second generator")
    anticommutator: bool = Field(..., description="Whether both generators are odd")
    vectors: int = Field(0, ge=0, description="Basis vectors the relation was applied to")
    passed: bool = Field(..., description="Whether both sides agreed on every vector")
    witness: Optional[CheckWitness] = Field(None, description="First failing vector")


class RelationReport(CheckReport):
    """Relation suite report with one entry per (label pair, r, s)."""

    cases: List[RelationCase] = Field(
        default_factory=list, description="Per-case results in deterministic order"
    )

    @model_validator(mode="before")
    @classmethod
    def derive_passed(cls, values):
        """Derive overall pass/fail from the cases when not given."""
        if isinstance(values, dict) and values.get("passed") is None:
            cases = values.get("cases", [])
            values["passed"] = all(
                c.passed if isinstance(c, RelationCase) else c.get("passed", False)
                for c in cases
            )
        return values

    @property
    def failures(self) -> List[RelationCase]:
        return [c for c in self.cases if not c.passed]


class SuiteReport(BaseModel):
    """Top-level document written to stdout by every checking subcommand."""

    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    subcommand: Subcommand = Field(..., description="Subcommand that produced the report")
    config: Dict[str, Any] = Field(default_factory=dict, description="Effective run configuration")
    passed: bool = Field(..., description="True iff every check passed")
    checks: List[CheckReport] = Field(default_factory=list, description="Checks in key order")

    model_config = ConfigDict(use_enum_values=True)


# Inputs
class WhittakerCharForm(BaseModel):
    """Whittaker character input: finite maps from mode index to rational scalar."""

    chi_plus: Dict[int, str] = Field(..., description="Nonzero coefficients of chi+")
    chi_minus: Dict[int, str] = Field(..., description="Nonzero coefficients of chi-")

    @field_validator("chi_plus", "chi_minus", mode="before")
    @classmethod
    def validate_character(cls, v):
        """Parse keys as integers and values as exact rationals; drop zeros."""
        if not isinstance(v, dict):
            raise ValueError("character must be an object mapping index to coefficient")
        out = {}
        for key, value in v.items():
            c = parse_rational(value)
            if c:
                out[int(key)] = format_rational(c)
        if not out:
            raise ValueError("character must have at least one nonzero coefficient")
        return out

    def as_fractions(self) -> Tuple[Dict[int, Fraction], Dict[int, Fraction]]:
        return (
            {k: Fraction(v) for k, v in self.chi_plus.items()},
            {k: Fraction(v) for k, v in self.chi_minus.items()},
        )


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


class RunConfig(BaseModel):
    """Effective configuration of one command-line run."""

    subcommand: Subcommand = Field(..., description="Subcommand to dispatch")
    weight: str = Field("5", description="Weight cutoff (half-integer)")
    r_window: Tuple[int, int] = Field((-3, 3), description="Mode window of the first generator")
    s_window: Tuple[int, int] = Field((-3, 3), description="Mode window of the second generator")
    r_max: int = Field(3, ge=0, description="Largest nonnegative mode in center checks")
    n: int = Field(1, ge=1, le=4, description="Number of species")
    sector: str = Field("full", description="fermion | boson | full")
    charge: Optional[int] = Field(None, description="Total charge constraint for enumerate")
    order: int = Field(30, ge=0, description="Series cutoff for char")
    identity: CharIdentity = Field(CharIdentity.HP, description="Identity selector for char")
    check: Optional[str] = Field(None, description="Check selector for whittaker/invariants")
    chi_path: Optional[str] = Field(None, description="Path of the Whittaker character JSON")
    charge_bound: int = Field(2, ge=0, description="Charge bound for cyclicity")
    trials: int = Field(3, ge=1, description="Random trials for submodule evidence")
    k_max: int = Field(3, ge=0, description="Largest k tested by the decoupling check")
    state_path: Optional[str] = Field(None, description="Path of a JSON state for apply")
    operator: Optional[str] = Field(None, description="Operator word for apply, e.g. 'E12:0 psi1+:-1/2'")
    output: OutputFormat = Field(OutputFormat.JSON, description="Report encoding")
    seed: int = Field(0, description="Seed for every randomized check")
    workers: int = Field(
        default_factory=lambda: max(_env_int("FREEFIELD_WORKERS", 1), 1),
        ge=1,
        description="Worker processes for parallel check blocks",
    )
    db_path: Optional[str] = Field(
        default_factory=lambda: os.environ.get("FREEFIELD_DB_PATH") or None,
        description="Run history database (unset disables persistence)",
    )
    limit: Optional[int] = Field(None, ge=1, description="Row limit for history")
    failed_only: bool = Field(False, description="History: only failed runs")

    @field_validator("weight", mode="before")
    @classmethod
    def validate_weight(cls, v):
        """Weight cutoffs are nonnegative half-integers."""
        w = parse_rational(v)
        if w < 0 or (2 * w).denominator != 1:
            raise ValueError(f"weight must be a nonnegative half-integer, got {v!r}")
        return format_rational(w)

    @field_validator("r_window", "s_window", mode="before")
    @classmethod
    def validate_window(cls, v):
        return parse_window(v)

    @field_validator("sector")
    @classmethod
    def validate_sector(cls, v):
        if v not in ("fermion", "boson", "full"):
            raise ValueError(f"sector must be fermion, boson or full, got {v!r}")
        return v

    @property
    def max_weight(self) -> Fraction:
        return Fraction(self.weight)

    def public_dict(self) -> Dict[str, Any]:
        """Configuration as echoed in reports; host-specific fields are left out."""
        data = self.model_dump(mode="json", exclude={"workers", "db_path"})
        return data


# History records
class BaseRecord(BaseModel):
    """Base model for all database records."""

    id: Optional[int] = Field(None, description="Unique identifier for the record")
    created_at: Optional[datetime] = Field(
        None, description="Timestamp when the record was created"
    )

    model_config = ConfigDict(from_attributes=True, use_enum_values=True)


class RunRecord(BaseRecord):
    """One recorded invocation of a checking subcommand."""

    subcommand: Subcommand = Field(..., description="Subcommand that was run")
    config: Dict[str, Any] = Field(default_factory=dict, description="Effective configuration")
    passed: bool = Field(..., description="Overall outcome")
    elapsed_seconds: float = Field(0.0, ge=0, description="Wall-clock duration")
    checks_count: int = Field(0, ge=0, description="Number of recorded checks")


class CheckRecord(BaseRecord):
    """One recorded check of a run."""

    run_id: int = Field(..., description="ID of the run this check belongs to")
    name: str = Field(..., min_length=1, description="Stable check key")
    passed: bool = Field(..., description="Outcome")
    summary: Dict[str, Any] = Field(default_factory=dict, description="Check summary")
    witnesses: List[CheckWitness] = Field(default_factory=list, description="Witnesses")


__all__ = [
    "SCHEMA_VERSION",
    "Subcommand",
    "OutputFormat",
    "CheckStatus",
    "CharIdentity",
    "WhittakerCheck",
    "InvariantsCheck",
    "parse_rational",
    "format_rational",
    "parse_window",
    "CheckWitness",
    "DimensionRow",
    "SeriesTable",
    "CheckReport",
    "RelationCase",
    "RelationReport",
    "SuiteReport",
    "WhittakerCharForm",
    "RunConfig",
    "BaseRecord",
    "RunRecord",
    "CheckRecord",
]
