#!/usr/bin/env python3
"""
Check Report Assembly and Parallel Merge

Small helpers shared by the checking modules: building CheckReport and
DimensionRow models from computed values, rendering witnesses, and
running independent check blocks on a process pool with a deterministic
merge.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, TypeVar

from models.types import CheckReport, CheckWitness, DimensionRow, SeriesTable
from vertex.fock import BasisVector, State
from vertex.qchar import HalfInt, QSeries

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], tasks: Sequence[T], workers: int = 1) -> List[R]:
    """Map fn over tasks, in order, optionally on a process pool."""
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    logger.debug(f"Dispatching {len(tasks)} blocks to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def witness(
    description: str,
    basis_vector: Optional[BasisVector] = None,
    expected: Optional[State] = None,
    actual: Optional[State] = None,
    **data: Any,
) -> CheckWitness:
    return CheckWitness(
        description=description,
        basis_vector=str(basis_vector) if basis_vector is not None else None,
        expected=str(expected) if expected is not None else None,
        actual=str(actual) if actual is not None else None,
        data={k: _json_safe(v) for k, v in data.items()},
    )


def _json_safe(value: Any) -> Any:
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    return str(value)


def dimension_rows(sources: Mapping[str, Mapping[HalfInt, int]], weights: Iterable[HalfInt]) -> List[DimensionRow]:
    """One row per weight with the dimension each source reports (missing counts as 0)."""
    return [
        DimensionRow(weight=str(w), values={name: int(dims.get(w, 0)) for name, dims in sources.items()})
        for w in weights
    ]


def integer_weights(max_weight) -> List[HalfInt]:
    top = HalfInt.of(max_weight)
    return [HalfInt(2 * m) for m in range(top.floor() + 1)]


def series_table(name: str, series: QSeries) -> SeriesTable:
    data = series.to_json_dict()
    return SeriesTable(name=name, cutoff=data["cutoff"], coeffs=data["coeffs"])


def make_report(
    name: str,
    passed: bool,
    summary: Optional[Dict[str, Any]] = None,
    witnesses: Optional[List[CheckWitness]] = None,
    dimensions: Optional[List[DimensionRow]] = None,
    series: Optional[List[SeriesTable]] = None,
    bounded_evidence: bool = False,
) -> CheckReport:
    report = CheckReport(
        name=name,
        passed=passed,
        bounded_evidence=bounded_evidence,
        summary=_json_safe(summary or {}),
        witnesses=witnesses or [],
        dimensions=dimensions or [],
        series=series or [],
    )
    if passed:
        logger.info(f"Check {name}: passed")
    else:
        first = report.witnesses[0].description if report.witnesses else "no witness"
        logger.warning(f"Check {name}: FAILED ({first})")
    return report


__all__ = [
    "parallel_map",
    "witness",
    "dimension_rows",
    "integer_weights",
    "series_table",
    "make_report",
]
