#!/usr/bin/env python3
"""
Run History Queries

Read side of the run history database written by store.py. Column names
and JSON encodings match ReportStore exactly; rows come back as the
pydantic records of models.types.
"""

import json
import logging
import sqlite3
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional

sys.path.insert(0, str(Path(__file__).parent.parent))
from models.types import CheckRecord, CheckWitness, RunRecord, Subcommand

logger = logging.getLogger(__name__)


class ReportQuerier:
    """Query operations over recorded runs and checks."""

    def __init__(self, db_path: str = "freefield_runs.db"):
        self.db_path = db_path

    def get_connection(self) -> sqlite3.Connection:
        """Get a database connection with row factory."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        return conn

    def get_runs(
        self,
        subcommand: Optional[Subcommand] = None,
        passed: Optional[bool] = None,
        limit: Optional[int] = None,
    ) -> List[RunRecord]:
        """Recorded runs, newest first, with optional filters."""
        where_conditions = []
        params: list = []
        if subcommand is not None:
            where_conditions.append("r.subcommand = ?")
            params.append(Subcommand(subcommand).value)
        if passed is not None:
            where_conditions.append("r.passed = ?")
            params.append(bool(passed))
        where_clause = f"WHERE {' AND '.join(where_conditions)}" if where_conditions else ""

        query = f"""
            SELECT r.id, r.subcommand, r.config_json, r.passed, r.elapsed_seconds, r.created_at,
                   (SELECT COUNT(*) FROM checks c WHERE c.run_id = r.id) AS checks_count
            FROM runs r
            {where_clause}
            ORDER BY r.id DESC
        """
        if limit:
            query += " LIMIT ?"
            params.append(int(limit))

        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(query, params)
            return [self._row_to_run_record(row) for row in cursor.fetchall()]

    def get_run_by_id(self, run_id: int) -> Optional[RunRecord]:
        """Get a specific run by ID."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                SELECT r.id, r.subcommand, r.config_json, r.passed, r.elapsed_seconds, r.created_at,
                       (SELECT COUNT(*) FROM checks c WHERE c.run_id = r.id) AS checks_count
                FROM runs r WHERE r.id = ?
            """,
                (run_id,),
            )
            row = cursor.fetchone()
            return self._row_to_run_record(row) if row else None

    def get_checks(self, run_id: int, failed_only: bool = False) -> List[CheckRecord]:
        """Checks of one run in insertion order."""
        query = """
            SELECT id, run_id, name, passed, summary_json, witness_json, created_at
            FROM checks WHERE run_id = ?
        """
        if failed_only:
            query += " AND passed = 0"
        query += " ORDER BY id"
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(query, (run_id,))
            return [self._row_to_check_record(row) for row in cursor.fetchall()]

    def latest_failure(self) -> Optional[RunRecord]:
        """The most recent failed run, if any."""
        runs = self.get_runs(passed=False, limit=1)
        return runs[0] if runs else None

    # Helper methods for converting database rows to Pydantic models
    def _row_to_run_record(self, row: sqlite3.Row) -> RunRecord:
        return RunRecord(
            id=row["id"],
            subcommand=Subcommand(row["subcommand"]),
            config=json.loads(row["config_json"]) if row["config_json"] else {},
            passed=bool(row["passed"]),
            elapsed_seconds=row["elapsed_seconds"] or 0.0,
            checks_count=row["checks_count"],
            created_at=(datetime.fromisoformat(row["created_at"]) if row["created_at"] else None),
        )

    def _row_to_check_record(self, row: sqlite3.Row) -> CheckRecord:
        witnesses = json.loads(row["witness_json"]) if row["witness_json"] else []
        return CheckRecord(
            id=row["id"],
            run_id=row["run_id"],
            name=row["name"],
            passed=bool(row["passed"]),
            summary=json.loads(row["summary_json"]) if row["summary_json"] else {},
            witnesses=[CheckWitness(**w) for w in witnesses],
            created_at=(datetime.fromisoformat(row["created_at"]) if row["created_at"] else None),
        )


def get_querier(db_path: str = "freefield_runs.db") -> ReportQuerier:
    """Get a ReportQuerier instance."""
    return ReportQuerier(db_path)
