#!/usr/bin/env python3
"""
Tests for the pydantic models: configuration, inputs and reports.
"""

import os
import sys
import unittest
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent.parent))

from models.types import (
    CheckReport,
    CheckStatus,
    DimensionRow,
    RelationCase,
    RelationReport,
    RunConfig,
    SeriesTable,
    Subcommand,
    SuiteReport,
    WhittakerCharForm,
    parse_rational,
    parse_window,
)


class TestParsing(unittest.TestCase):
    """Rational and window parsing helpers."""

    def test_parse_rational(self):
        self.assertEqual(parse_rational("3/4"), Fraction(3, 4))
        self.assertEqual(parse_rational(2), Fraction(2))
        self.assertEqual(parse_rational(" -1/2 "), Fraction(-1, 2))

    def test_parse_rational_rejects_floats(self):
        for value in (0.5, True, "x", "1/0"):
            with self.subTest(value=value):
                with self.assertRaises(ValueError):
                    parse_rational(value)

    def test_parse_window(self):
        self.assertEqual(parse_window("-3..3"), (-3, 3))
        self.assertEqual(parse_window("4"), (4, 4))
        self.assertEqual(parse_window([1, 2]), (1, 2))
        with self.assertRaises(ValueError):
            parse_window("2..1")


class TestRunConfig(unittest.TestCase):
    """Validated run configuration."""

    def test_defaults(self):
        config = RunConfig(subcommand=Subcommand.VERIFY_RELATIONS)
        self.assertEqual(config.max_weight, Fraction(5))
        self.assertEqual(config.r_window, (-3, 3))

    def test_half_integer_weight(self):
        config = RunConfig(subcommand="enumerate", weight="5/2")
        self.assertEqual(config.weight, "5/2")
        self.assertIs(config.subcommand, Subcommand.ENUMERATE)

    def test_invalid_weights(self):
        for weight in ("1/3", "-1", 0.5):
            with self.subTest(weight=weight):
                with self.assertRaises(ValidationError):
                    RunConfig(subcommand="center", weight=weight)

    def test_invalid_window_and_sector(self):
        with self.assertRaises(ValidationError):
            RunConfig(subcommand="verify-relations", r_window="3..1")
        with self.assertRaises(ValidationError):
            RunConfig(subcommand="enumerate", sector="ghost")
        with self.assertRaises(ValidationError):
            RunConfig(subcommand="invariants", n=0)

    def test_environment_defaults(self):
        with patch.dict(os.environ, {"FREEFIELD_WORKERS": "3", "FREEFIELD_DB_PATH": "/tmp/runs.db"}):
            config = RunConfig(subcommand="suite")
        self.assertEqual(config.workers, 3)
        self.assertEqual(config.db_path, "/tmp/runs.db")

    def test_public_dict_hides_host_options(self):
        config = RunConfig(subcommand="suite", workers=4, db_path="x.db")
        public = config.public_dict()
        self.assertNotIn("workers", public)
        self.assertNotIn("db_path", public)
        self.assertEqual(public["subcommand"], "suite")


class TestWhittakerCharForm(unittest.TestCase):
    """Character input files."""

    def test_parses_keys_and_values(self):
        form = WhittakerCharForm(chi_plus={"0": "1", "-2": "3/4"}, chi_minus={"1": 2})
        self.assertEqual(form.chi_plus, {0: "1", -2: "3/4"})
        plus, minus = form.as_fractions()
        self.assertEqual(minus, {1: Fraction(2)})

    def test_zero_entries_dropped(self):
        form = WhittakerCharForm(chi_plus={"0": "1", "1": "0"}, chi_minus={"0": "1"})
        self.assertEqual(list(form.chi_plus), [0])

    def test_rejects_empty_and_float(self):
        with self.assertRaises(ValidationError):
            WhittakerCharForm(chi_plus={"0": "0"}, chi_minus={"0": "1"})
        with self.assertRaises(ValidationError):
            WhittakerCharForm(chi_plus={"0": 0.5}, chi_minus={"0": "1"})
        with self.assertRaises(ValidationError):
            WhittakerCharForm(chi_plus=[1], chi_minus={"0": "1"})


class TestReports(unittest.TestCase):
    """Report documents."""

    def test_relation_report_derives_passed(self):
        bad = RelationCase(left="E12", right="E21", r=0, s=0, anticommutator=True, passed=False)
        good = RelationCase(left="E11", right="E11", r=0, s=0, anticommutator=False, passed=True)
        self.assertFalse(RelationReport(name="x", cases=[good, bad]).passed)
        self.assertTrue(RelationReport(name="x", cases=[good]).passed)
        self.assertEqual(RelationReport(name="x", cases=[good, bad]).failures, [bad])

    def test_status(self):
        self.assertEqual(CheckReport(name="a", passed=False).status, CheckStatus.FAILED)

    def test_series_table_normalizes(self):
        table = SeriesTable(name="s", cutoff="1", coeffs={"0": "2/4", "1": 3})
        self.assertEqual(table.coeffs, {"0": "1/2", "1": "3"})

    def test_series_table_rejects_inexact_coefficients(self):
        for bad in (0.5, True, "x/y"):
            with self.subTest(coeff=bad):
                with self.assertRaises(ValidationError):
                    SeriesTable(name="s", cutoff="1", coeffs={"0": bad})

    def test_dimension_row_agrees(self):
        self.assertTrue(DimensionRow(weight="1", values={"a": 3, "b": 3}).agrees)
        self.assertFalse(DimensionRow(weight="1", values={"a": 3, "b": 4}).agrees)

    def test_suite_report_serializes_enum_values(self):
        report = SuiteReport(subcommand=Subcommand.CHAR, passed=True)
        data = report.model_dump(mode="json")
        self.assertEqual(data["subcommand"], "char")
        self.assertEqual(data["schema_version"], "1.0.0")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
