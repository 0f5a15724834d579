#!/usr/bin/env python3
"""
Validation Suite for the Free-Field Workbench

This module provides automated validation for:
- Series, Fock space and field engines
- gl(1|1), Whittaker module and gl_n invariant checks
- Pydantic models and the run history database
- End-to-end runs through the command line dispatcher

Run with: python -m pytest tests/validation.py -v
   or:    python tests/validation.py
"""

import io
import json
import os
import sys
import tempfile
import unittest
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from cli.app import run
from db.queries import ReportQuerier
from models.types import OutputFormat, RunConfig, Subcommand

from tests import (
    test_cli,
    test_db,
    test_fields,
    test_fock,
    test_gl11,
    test_invariants,
    test_linalg,
    test_models,
    test_qchar,
    test_whittaker,
)

MODULES = [
    test_qchar,
    test_fock,
    test_linalg,
    test_fields,
    test_gl11,
    test_whittaker,
    test_invariants,
    test_models,
    test_db,
    test_cli,
]


class TestEndToEndWorkflow(unittest.TestCase):
    """Several runs recorded to one database, then read back."""

    def setUp(self):
        self.temp_db = tempfile.NamedTemporaryFile(suffix=".db", delete=False)
        self.db_path = self.temp_db.name
        self.temp_db.close()

    def tearDown(self):
        os.unlink(self.db_path)

    def _run(self, **kwargs) -> dict:
        out = io.StringIO()
        config = RunConfig(db_path=self.db_path, output=OutputFormat.JSON, **kwargs)
        code = run(config, out)
        report = json.loads(out.getvalue())
        self.assertEqual(code, 0 if report["passed"] else 1)
        return report

    def test_complete_workflow(self):
        """Character, relation and invariant runs all pass and are recorded."""
        # Step 1: run checks at small bounds
        char = self._run(subcommand=Subcommand.CHAR, identity="v", order=4, weight="3")
        relations = self._run(subcommand=Subcommand.VERIFY_RELATIONS, r_window="0..1", s_window="-1..0", weight="1")
        invariants = self._run(subcommand=Subcommand.INVARIANTS, n=2, check="generators", weight="2")

        for report in (char, relations, invariants):
            with self.subTest(subcommand=report["subcommand"]):
                self.assertTrue(report["passed"])
                self.assertEqual(report["schema_version"], "1.0.0")
                self.assertEqual(report["checks"], sorted(report["checks"], key=lambda c: c["name"]))

        # Step 2: query the history
        querier = ReportQuerier(self.db_path)
        runs = querier.get_runs()
        self.assertEqual([r.subcommand for r in runs], ["invariants", "verify-relations", "char"])
        self.assertTrue(all(r.passed for r in runs))
        self.assertIsNone(querier.latest_failure())

        checks = querier.get_checks(runs[-1].id)
        self.assertEqual([c.name for c in checks], [c["name"] for c in char["checks"]])
        self.assertEqual(runs[1].config["r_window"], [0, 1])


def run_validation_suite():
    """Run the complete validation suite."""
    print("Running Free-Field Workbench Validation Suite")
    print("=" * 60)

    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for module in MODULES:
        suite.addTests(loader.loadTestsFromModule(module))
    suite.addTests(loader.loadTestsFromTestCase(TestEndToEndWorkflow))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    print("\n" + "=" * 60)
    if result.wasSuccessful():
        print("All checks passed.")
    else:
        print("Some tests failed. Please check the output above.")
        print(f"Failures: {len(result.failures)}")
        print(f"Errors: {len(result.errors)}")

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_validation_suite()
    sys.exit(0 if success else 1)
