#!/usr/bin/env python3
"""
Run History Store

Records every checking run of the command line in a small SQLite
database: one row per run in `runs` and one row per named check in
`checks`. Summaries and witnesses are stored as JSON text so a run can be
inspected later without recomputing it.
"""

import json
import logging
import sqlite3
import sys
from pathlib import Path
from typing import Sequence

sys.path.insert(0, str(Path(__file__).parent.parent))
from models.types import CheckReport, RunConfig

logger = logging.getLogger(__name__)


class ReportStore:
    """Writes runs and their check reports to the history database."""

    def __init__(self, db_path: str = "freefield_runs.db"):
        self.db_path = db_path

    def create_tables(self):
        """Create the runs and checks tables if they do not exist yet."""
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()

            cursor.execute(
                """
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    subcommand TEXT NOT NULL,
                    config_json TEXT NOT NULL DEFAULT '{}',
                    passed BOOLEAN NOT NULL,
                    elapsed_seconds REAL DEFAULT 0,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """
            )

            cursor.execute(
                """
                CREATE TABLE IF NOT EXISTS checks (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    run_id INTEGER NOT NULL,
                    name TEXT NOT NULL,
                    passed BOOLEAN NOT NULL,
                    summary_json TEXT NOT NULL DEFAULT '{}',
                    witness_json TEXT NOT NULL DEFAULT '[]',
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    FOREIGN KEY (run_id) REFERENCES runs (id)
                )
            """
            )

            cursor.execute("CREATE INDEX IF NOT EXISTS idx_runs_subcommand ON runs (subcommand)")
            cursor.execute("CREATE INDEX IF NOT EXISTS idx_checks_run_id ON checks (run_id)")

            conn.commit()
            logger.debug(f"History tables ready in {self.db_path}")

    def record_run(self, config: RunConfig, reports: Sequence[CheckReport], elapsed: float) -> int:
        """Store one run with all its checks and return the new run id."""
        passed = all(r.passed for r in reports)
        with sqlite3.connect(self.db_path) as conn:
            cursor = conn.cursor()
            cursor.execute(
                """
                INSERT INTO runs (subcommand, config_json, passed, elapsed_seconds)
                VALUES (?, ?, ?, ?)
            """,
                (
                    config.subcommand.value,
                    json.dumps(config.public_dict(), sort_keys=True),
                    passed,
                    float(elapsed),
                ),
            )
            run_id = cursor.lastrowid
            for report in reports:
                self._insert_check(cursor, run_id, report)
            conn.commit()
        logger.info(f"Recorded run {run_id} ({config.subcommand.value}, {len(reports)} checks, {elapsed:.2f}s)")
        return run_id

    def _insert_check(self, cursor: sqlite3.Cursor, run_id: int, report: CheckReport) -> int:
        cursor.execute(
            """
            INSERT INTO checks (run_id, name, passed, summary_json, witness_json)
            VALUES (?, ?, ?, ?, ?)
        """,
            (
                run_id,
                report.name,
                report.passed,
                json.dumps(report.summary, sort_keys=True),
                json.dumps([w.model_dump(mode="json") for w in report.witnesses], sort_keys=True),
            ),
        )
        return cursor.lastrowid
