#!/usr/bin/env python3
"""
Tests for the command line: dispatch, exit codes, encodings and history.
"""

import io
import json
import os
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path
from unittest.mock import patch

import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from cli.app import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    UsageError,
    apply_operator_word,
    join_window_args,
    main,
    parse_operator,
    parse_operator_word,
    report_schema,
    suite_checks,
)
from cli.views import CSV_COLUMNS, render_basis, report_to_text
from models.types import (
    SCHEMA_VERSION,
    CheckReport,
    RelationReport,
    RunConfig,
    SeriesTable,
    Subcommand,
    SuiteReport,
)
from vertex.fields import _basis_vertex_mode, vertex_mode_basis
from vertex.fock import VACUUM, BosonMode, FermionMode, Sign, State, enumerate_basis
from vertex.qchar import HalfInt
from vertex.whittaker import WhittakerChar

QUIET = ["--log-level", "ERROR"]
GOLDEN = Path(__file__).parent / "golden"


def schema_fields(schema):
    """Property names of every model in the report schema, and the values of its enums."""
    models = {schema["title"]: sorted(schema["properties"])}
    for name, definition in schema.get("$defs", {}).items():
        models[name] = sorted(definition["properties"] if "properties" in definition else definition["enum"])
    return models


def run_cli(*argv):
    out = io.StringIO()
    with redirect_stdout(out):
        code = main(list(argv) + QUIET)
    return code, out.getvalue()


class TestArguments(unittest.TestCase):
    """Argument handling before dispatch."""

    def test_window_arguments_are_joined(self):
        self.assertEqual(join_window_args(["--r", "-3..3", "--s", "0..2"]), ["--r=-3..3", "--s", "0..2"])
        self.assertEqual(join_window_args(["--weight", "-1"]), ["--weight", "-1"])

    def test_unknown_subcommand(self):
        with redirect_stdout(io.StringIO()), patch("sys.stderr", new=io.StringIO()):
            self.assertEqual(main(["nosuch"]), EXIT_USAGE)

    def test_bad_window(self):
        code, out = run_cli("verify-relations", "--r", "3..1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")

    def test_bad_weight(self):
        code, _ = run_cli("enumerate", "--weight", "1/3")
        self.assertEqual(code, EXIT_USAGE)

    def test_missing_character_file(self):
        code, _ = run_cli("whittaker", "--chi", "/nonexistent/chi.json", "--check", "reach")
        self.assertEqual(code, EXIT_USAGE)


class TestOperatorWords(unittest.TestCase):
    """Parsing and applying operator words."""

    def test_free_modes(self):
        vac = State.vacuum()
        word = parse_operator_word("psi1+:-1/2 a1-:-1/2")
        expected = State.from_modes(FermionMode(1, Sign.PLUS, HalfInt(-1)), BosonMode(1, Sign.MINUS, HalfInt(-1)))
        self.assertEqual(apply_operator_word(word, vac), expected)

    def test_rightmost_acts_first(self):
        word = parse_operator_word("alpha:1 alpha:-1")
        self.assertEqual(apply_operator_word(word, State.vacuum()), State.vacuum())

    def test_generator_and_module_modes(self):
        vac = State.vacuum()
        self.assertTrue(apply_operator_word([parse_operator("E22:1")], vac).is_zero())
        chi = WhittakerChar.of({0: 2}, {0: 3})
        self.assertEqual(apply_operator_word([parse_operator("E22:1", chi)], vac), vac.scale(6))

    def test_bad_tokens(self):
        for token in ("psi1+:1", "E13:0", "beta:1"):
            with self.subTest(token=token):
                with self.assertRaises(UsageError):
                    parse_operator(token)
        with self.assertRaises(UsageError):
            parse_operator_word("  ")


class TestSubcommands(unittest.TestCase):
    """End-to-end runs with small bounds."""

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.env = patch.dict(os.environ, {}, clear=False)
        self.env.start()
        os.environ.pop("FREEFIELD_DB_PATH", None)
        os.environ.pop("FREEFIELD_WORKERS", None)

    def tearDown(self):
        self.env.stop()
        self.tmpdir.cleanup()

    def _path(self, name):
        return os.path.join(self.tmpdir.name, name)

    def test_schema(self):
        code, out = run_cli("schema")
        self.assertEqual(code, EXIT_OK)
        schema = json.loads(out)
        self.assertEqual(schema["version"], SCHEMA_VERSION)
        self.assertIn("checks", schema["properties"])

    def test_enumerate_json_lines(self):
        code, out = run_cli("enumerate", "--weight", "1", "--charge", "0")
        self.assertEqual(code, EXIT_OK)
        lines = [json.loads(line) for line in out.splitlines()]
        self.assertEqual(len(lines), 5)
        self.assertEqual(lines[0], {"weight": "0", "ferm": [], "comm": []})
        self.assertEqual({line["weight"] for line in lines[1:]}, {"1"})

    def test_verify_relations_is_deterministic(self):
        args = ("verify-relations", "--r", "-1..1", "--s", "0..0", "--weight", "1")
        code, first = run_cli(*args)
        _, second = run_cli(*args)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(first, second)
        report = json.loads(first)
        self.assertTrue(report["passed"])
        self.assertEqual(report["subcommand"], "verify-relations")
        self.assertEqual(report["config"]["r_window"], [-1, 1])
        self.assertNotIn("workers", report["config"])

    def test_worker_count_does_not_change_report(self):
        args = ("verify-relations", "--r", "0..1", "--s", "0..0", "--weight", "1")
        _, serial = run_cli(*args, "--workers", "1")
        _, parallel = run_cli(*args, "--workers", "2")
        self.assertEqual(serial, parallel)

    def test_csv_matches_json(self):
        args = ("char", "--identity", "hp", "--order", "6", "--weight", "4")
        _, as_json = run_cli(*args)
        code, as_csv = run_cli(*args, "--output", "csv")
        self.assertEqual(code, EXIT_OK)
        df = pd.read_csv(io.StringIO(as_csv))
        self.assertEqual(list(df.columns), CSV_COLUMNS)
        theta = df[(df["kind"] == "series") & (df["source"] == "theta")]
        report = json.loads(as_json)
        coeffs = next(t for t in report["checks"][0]["series"] if t["name"] == "theta")["coeffs"]
        from_json = {Fraction(e): Fraction(c) for e, c in coeffs.items()}
        from_csv = {
            Fraction(str(e)): Fraction(int(n), int(d))
            for e, n, d in zip(theta["exponent"], theta["numerator"], theta["denominator"])
        }
        self.assertEqual(from_csv, from_json)

    def test_text_output(self):
        code, out = run_cli("char", "--identity", "boson-fermion", "--order", "4", "--weight", "2", "--output", "text")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("char: PASSED"))
        self.assertIn("ok   whittaker.boson_fermion", out)

    def test_apply(self):
        state_file = self._path("state.json")
        with open(state_file, "w") as f:
            json.dump([{"coeff": "1", "ferm": [[1, "+", "-1/2"]], "comm": []}], f)
        code, out = run_cli("apply", "--state", state_file, "--operator", "E21:0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), [{"coeff": "1", "ferm": [], "comm": [[1, "+", "-1/2"]]}])

    def test_apply_through_module(self):
        state_file = self._path("vac.json")
        chi_file = self._path("chi.json")
        with open(state_file, "w") as f:
            json.dump([{"coeff": "1", "ferm": [], "comm": []}], f)
        with open(chi_file, "w") as f:
            json.dump({"chi_plus": {"0": "2"}, "chi_minus": {"0": "3"}}, f)
        code, out = run_cli("apply", "--state", state_file, "--operator", "E22:1", "--chi", chi_file)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), [{"coeff": "6", "ferm": [], "comm": []}])

    def test_bad_character_file(self):
        chi_file = self._path("chi.json")
        with open(chi_file, "w") as f:
            json.dump({"chi_plus": {"0": "0"}, "chi_minus": {"0": "1"}}, f)
        code, _ = run_cli("whittaker", "--chi", chi_file, "--check", "reach")
        self.assertEqual(code, EXIT_USAGE)

    def test_whittaker_single_check(self):
        chi_file = self._path("chi.json")
        with open(chi_file, "w") as f:
            json.dump({"chi_plus": {"0": "1"}, "chi_minus": {"1": "-1", "0": "3"}}, f)
        code, out = run_cli("whittaker", "--chi", chi_file, "--check", "cyclicity", "--charge", "1", "--weight", "2")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual([c["name"] for c in report["checks"]], ["whittaker.cyclicity"])
        self.assertEqual(report["config"]["charge_bound"], 1)

    def test_failed_check_exit_code(self):
        failing = RelationReport(name="gl11.relations", passed=False)
        with patch("cli.app.check_relations", return_value=failing):
            code, out = run_cli("verify-relations", "--weight", "1")
        self.assertEqual(code, EXIT_FAILED)
        self.assertFalse(json.loads(out)["passed"])

    def test_unexpected_error_exit_code(self):
        with patch("cli.app.check_relations", side_effect=RuntimeError("boom")):
            with patch("sys.stderr", new=io.StringIO()):
                code, _ = run_cli("verify-relations", "--weight", "1")
        self.assertEqual(code, EXIT_FAILED)

    def test_history(self):
        db_path = self._path("runs.db")
        code, _ = run_cli("verify-relations", "--r", "0..0", "--s", "0..0", "--weight", "1", "--db-path", db_path)
        self.assertEqual(code, EXIT_OK)
        code, out = run_cli("history", "--db-path", db_path, "--output", "json")
        self.assertEqual(code, EXIT_OK)
        runs = json.loads(out)
        self.assertEqual(len(runs), 1)
        self.assertEqual(runs[0]["subcommand"], "verify-relations")
        self.assertTrue(runs[0]["passed"])
        self.assertEqual(runs[0]["checks_count"], 1)

    def test_suite_drops_product_cache_between_sections(self):
        _basis_vertex_mode.cache_clear()
        seen = []

        def section(config):
            vertex_mode_basis(VACUUM, -1, VACUUM)
            seen.append(_basis_vertex_mode.cache_info().currsize)
            return [CheckReport(name=f"section{len(seen)}", passed=True)]

        with patch("cli.app.SUITE_SECTIONS", (section, section)):
            checks = suite_checks(RunConfig(subcommand=Subcommand.SUITE))
            code, out = run_cli("suite")
        self.assertEqual([c.name for c in checks], ["section1", "section2"])
        self.assertEqual(seen[:2], [1, 1])
        self.assertEqual(_basis_vertex_mode.cache_info().currsize, 0)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual([c["name"] for c in json.loads(out)["checks"]], ["section3", "section4"])

    def test_history_needs_database(self):
        code, _ = run_cli("history")
        self.assertEqual(code, EXIT_USAGE)


class TestGoldenReports(unittest.TestCase):
    """Committed report bytes and the recorded report fields of each schema version."""

    def setUp(self):
        self.env = patch.dict(os.environ, {}, clear=False)
        self.env.start()
        os.environ.pop("FREEFIELD_DB_PATH", None)

    def tearDown(self):
        self.env.stop()

    def test_char_report_bytes(self):
        code, out = run_cli("char", "--identity", "hp", "--order", "1", "--weight", "1", "--seed", "0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, (GOLDEN / "char_hp_order1.json").read_text(encoding="utf-8"))

    def test_report_fields_are_recorded_for_schema_version(self):
        recorded = json.loads((GOLDEN / "report_schema.json").read_text(encoding="utf-8"))
        self.assertIn(SCHEMA_VERSION, recorded, "record the fields of the new schema version")
        self.assertEqual(
            schema_fields(report_schema()),
            recorded[SCHEMA_VERSION],
            "report fields changed without a SCHEMA_VERSION bump",
        )

    def test_field_change_is_detected(self):
        schema = report_schema()
        schema["$defs"]["DimensionRow"]["properties"]["sector"] = {"type": "string"}
        recorded = json.loads((GOLDEN / "report_schema.json").read_text(encoding="utf-8"))
        self.assertNotEqual(schema_fields(schema), recorded[SCHEMA_VERSION])


class TestViews(unittest.TestCase):
    """Rendering helpers."""

    def test_render_basis_text(self):
        text = render_basis(enumerate_basis(1, "1/2"), "text")
        self.assertEqual(text.splitlines()[0], "0\t|0>")

    def test_text_report_lists_witnesses(self):
        report = SuiteReport(
            subcommand=Subcommand.CENTER,
            passed=False,
            checks=[CheckReport(name="gl11.center_dimension", passed=False, witnesses=[{"description": "kernel vector outside M_0"}])],
        )
        text = report_to_text(report)
        self.assertIn("FAIL gl11.center_dimension", text)
        self.assertIn("witness: kernel vector outside M_0", text)

    def test_text_report_shows_half_integer_series(self):
        tables = [
            SeriesTable(name="even", cutoff="3/2", coeffs={"0": "1", "1/2": "0", "1": "3", "3/2": "0"}),
            SeriesTable(name="odd", cutoff="3/2", coeffs={"0": "0", "1/2": "1", "1": "0", "3/2": "2"}),
            SeriesTable(name="mixed", cutoff="1", coeffs={"0": "1", "1/2": "1", "1": "0"}),
        ]
        report = SuiteReport(
            subcommand=Subcommand.CHAR,
            passed=True,
            checks=[CheckReport(name="whittaker.boson_fermion", passed=True, series=tables)],
        )
        lines = report_to_text(report).splitlines()
        self.assertIn("    even: 1 3", lines)
        self.assertIn("    odd [q^(k+1/2)]: 1 2", lines)
        self.assertIn("    mixed [q^(k/2)]: 1 1 0", lines)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
