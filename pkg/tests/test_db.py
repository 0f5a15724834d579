#!/usr/bin/env python3
"""
Tests for the run history store and its queries.
"""

import os
import sqlite3
import sys
import tempfile
import unittest
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from db.queries import ReportQuerier, get_querier
from db.store import ReportStore
from models.types import CheckReport, CheckWitness, RunConfig, Subcommand


class TestReportStore(unittest.TestCase):
    """Round trips through a temporary SQLite database."""

    def setUp(self):
        self.temp_db = tempfile.NamedTemporaryFile(delete=False, suffix=".db")
        self.temp_db.close()
        self.store = ReportStore(self.temp_db.name)
        self.store.create_tables()
        self.querier = ReportQuerier(self.temp_db.name)

    def tearDown(self):
        os.unlink(self.temp_db.name)

    def _record(self, subcommand="center", passed=True):
        config = RunConfig(subcommand=subcommand, weight="3")
        reports = [
            CheckReport(name="gl11.center_dimension", passed=True, summary={"max_weight": "3"}),
            CheckReport(
                name="gl11.hp_series",
                passed=passed,
                witnesses=[CheckWitness(description="theta form differs", data={"order": "30"})],
            ),
        ]
        return self.store.record_run(config, reports, elapsed=0.25)

    def test_tables_exist(self):
        with sqlite3.connect(self.temp_db.name) as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT name FROM sqlite_master WHERE type='table'")
            tables = {row[0] for row in cursor.fetchall()}
        self.assertTrue({"runs", "checks"} <= tables)

    def test_create_tables_is_idempotent(self):
        self.store.create_tables()
        self.assertEqual(self.querier.get_runs(), [])

    def test_record_and_read_back(self):
        run_id = self._record()
        run = self.querier.get_run_by_id(run_id)
        self.assertIsNotNone(run)
        self.assertEqual(run.subcommand, Subcommand.CENTER.value)
        self.assertTrue(run.passed)
        self.assertEqual(run.checks_count, 2)
        self.assertEqual(run.config["weight"], "3")
        self.assertAlmostEqual(run.elapsed_seconds, 0.25)
        self.assertIsNotNone(run.created_at)

    def test_checks(self):
        run_id = self._record(passed=False)
        checks = self.querier.get_checks(run_id)
        self.assertEqual([c.name for c in checks], ["gl11.center_dimension", "gl11.hp_series"])
        self.assertEqual(checks[0].summary, {"max_weight": "3"})
        failed = self.querier.get_checks(run_id, failed_only=True)
        self.assertEqual(len(failed), 1)
        self.assertEqual(failed[0].witnesses[0].description, "theta form differs")
        self.assertEqual(failed[0].witnesses[0].data, {"order": "30"})

    def test_filters_and_order(self):
        first = self._record("center", passed=True)
        second = self._record("char", passed=False)
        runs = self.querier.get_runs()
        self.assertEqual([r.id for r in runs], [second, first])
        self.assertEqual([r.id for r in self.querier.get_runs(subcommand="center")], [first])
        self.assertEqual([r.id for r in self.querier.get_runs(passed=False)], [second])
        self.assertEqual(len(self.querier.get_runs(limit=1)), 1)
        self.assertEqual(self.querier.latest_failure().id, second)

    def test_missing_run(self):
        self.assertIsNone(self.querier.get_run_by_id(999))
        self.assertIsNone(get_querier(self.temp_db.name).latest_failure())


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
