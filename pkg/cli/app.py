#!/usr/bin/env python3
"""
Free-Field Workbench Command Line

Entry point for every computation of the workbench. Run with:
    python -m cli.app <subcommand> [options]

Subcommands:
- enumerate: basis of F(n) (x) M(n) up to a weight, as JSON lines
- apply: apply an operator word to a JSON state
- char: character identities (hp, v, boson-fermion)
- verify-relations: the affine gl(1|1) relation suite at critical level
- center: checks on the center M_0 of V
- whittaker: checks on the Whittaker-type modules F(chi+, chi-)
- invariants: checks on the gl_n fixed-point algebras V_n
- suite: every acceptance check at its full bounds
- schema: JSON schema of the report document
- history: recorded runs from the history database

Reports go to stdout; logs go to stderr (and optionally a file), so the
report stream of a fixed configuration is byte-stable. Exit codes: 0 when
every check passes, 1 when a check fails or the run breaks, 2 on usage
errors.
"""

import argparse
import json
import logging
import os
import re
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from pydantic import ValidationError

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from cli.views import render_basis, render_report, render_runs, render_state, to_json
from db.queries import ReportQuerier
from db.store import ReportStore
from models.types import (
    SCHEMA_VERSION,
    CharIdentity,
    CheckReport,
    InvariantsCheck,
    OutputFormat,
    RunConfig,
    Subcommand,
    SuiteReport,
    WhittakerCharForm,
    WhittakerCheck,
)
from vertex.fields import apply_mode, clear_caches, heisenberg_mode, translate
from vertex.fock import BosonMode, ChargeConstraint, FermionMode, Sector, Sign, State, enumerate_basis, parse_state
from vertex.gl11 import (
    GenLabel,
    algebra_strong_generation_check,
    center_annihilation_check,
    center_dimension_check,
    center_strong_generation_check,
    check_relations,
    gen_mode,
    hp_series_check,
    pbw_injectivity_check,
    proof_identities_check,
    run_engine_checks,
    run_gl11_checks,
    surjectivity_evidence_check,
    v_character_check,
)
from vertex.invariants import (
    center_vn_check,
    decoupling_check,
    fixed_dimensions_check,
    generators_check,
    gl_bracket_check,
    m_invariants_strong_gen_check,
    strong_generation_check,
    zero_mode_agreement_check,
)
from vertex.qchar import HalfInt
from vertex.whittaker import (
    WhittakerChar,
    boson_fermion_check,
    cyclicity_check,
    default_characters,
    homogeneity_check,
    module_relations_check,
    reach_scalar_check,
    submodule_evidence_check,
    w_gen_mode,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    """Bad input file, operator word or option combination."""


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """Configure root logging to stderr, plus a file when one is given."""
    level_name = (level or os.environ.get("FREEFIELD_LOG_LEVEL") or "INFO").upper()
    log_file = log_file or os.environ.get("FREEFIELD_LOG_FILE")
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(level=getattr(logging, level_name, logging.INFO), format=LOG_FORMAT, handlers=handlers, force=True)


# Inputs
def load_character(path: str) -> WhittakerChar:
    """Read a {"chi_plus": {...}, "chi_minus": {...}} file."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"Cannot read character file {path}: {e}") from e
    if not isinstance(data, dict):
        raise UsageError(f"Character file {path} must hold a JSON object")
    return WhittakerChar.from_form(WhittakerCharForm(**data))


def load_state(path: str) -> State:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return parse_state(json.loads(text))
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise UsageError(f"Cannot read state {path}: {e}") from e


_MODE_TOKEN = re.compile(r"^(psi|a)(\d+)([+-]):(\S+)$")
_ALPHA_TOKEN = re.compile(r"^alpha(\d*):(-?\d+)$")
_GEN_TOKEN = re.compile(r"^(E\d\d):(-?\d+)$")

Operator = Callable[[State], State]


def parse_operator(token: str, chi: Optional[WhittakerChar] = None) -> Operator:
    """
    One letter of an operator word:
      psi1+:-1/2, a1-:-3/2   free modes
      alpha:1, alpha2:-1     Heisenberg modes (species defaults to 1)
      E12:0                  gl(1|1) modes (module action when chi is given)
      T                      translation
    """
    if token == "T":
        return translate
    match = _MODE_TOKEN.match(token)
    if match:
        kind, species, sign, index = match.groups()
        cls = FermionMode if kind == "psi" else BosonMode
        try:
            mode = cls(int(species), Sign.parse(sign), HalfInt.of(index))
        except ValueError as e:
            raise UsageError(f"Bad mode {token!r}: {e}") from e
        return lambda s: apply_mode(mode, s)
    match = _ALPHA_TOKEN.match(token)
    if match:
        species = int(match.group(1) or 1)
        r = int(match.group(2))
        return lambda s: heisenberg_mode(species, r, s)
    match = _GEN_TOKEN.match(token)
    if match:
        try:
            label = GenLabel.parse(match.group(1))
        except ValueError as e:
            raise UsageError(f"Bad generator {token!r}: {e}") from e
        r = int(match.group(2))
        if chi is not None:
            return lambda s: w_gen_mode(label, r, s, chi)
        return lambda s: gen_mode(label, r, s)
    raise UsageError(f"Unknown operator {token!r}")


def parse_operator_word(word: str, chi: Optional[WhittakerChar] = None) -> List[Operator]:
    tokens = word.split()
    if not tokens:
        raise UsageError("Operator word is empty")
    return [parse_operator(t, chi) for t in tokens]


def apply_operator_word(operators: Sequence[Operator], state: State) -> State:
    """Rightmost operator acts first."""
    for op in reversed(operators):
        state = op(state)
    return state


# Check selections
def _tagged(report: CheckReport, tag: str) -> CheckReport:
    return report.model_copy(update={"name": f"{report.name}[{tag}]"})


def whittaker_checks(config: RunConfig, chis: Sequence[WhittakerChar]) -> List[CheckReport]:
    selected = [WhittakerCheck(config.check)] if config.check else list(WhittakerCheck)
    top = config.max_weight
    checks: List[CheckReport] = []
    for idx, chi in enumerate(chis):
        tag = f"chi{idx}"
        for check in selected:
            if check is WhittakerCheck.RELATIONS:
                report = module_relations_check(chi, config.r_window, config.s_window, top, config.workers)
            elif check is WhittakerCheck.REACH:
                report = reach_scalar_check(chi, m_max=4)
            elif check is WhittakerCheck.CYCLICITY:
                report = cyclicity_check(chi, config.charge_bound, top)
            elif check is WhittakerCheck.SUBMODULE:
                report = submodule_evidence_check(chi, config.trials, top, config.seed)
            else:
                report = homogeneity_check(chi, t=2, m_max=4)
            checks.append(_tagged(report, tag) if len(chis) > 1 else report)
    return checks


def invariants_checks(config: RunConfig) -> List[CheckReport]:
    selected = [InvariantsCheck(config.check)] if config.check else list(InvariantsCheck)
    n, top = config.n, config.max_weight
    builders: Dict[InvariantsCheck, Callable[[], CheckReport]] = {
        InvariantsCheck.FIXED: lambda: fixed_dimensions_check(n, top),
        InvariantsCheck.STRONG_GEN: lambda: strong_generation_check(n, top),
        InvariantsCheck.CENTER: lambda: center_vn_check(n, top, config.r_max),
        InvariantsCheck.M_STRONG_GEN: lambda: m_invariants_strong_gen_check(n, top),
        InvariantsCheck.BRACKETS: lambda: gl_bracket_check(n, top),
        InvariantsCheck.ZERO_MODE: lambda: zero_mode_agreement_check(n, top),
        InvariantsCheck.DECOUPLING: lambda: decoupling_check(n, config.k_max, top),
        InvariantsCheck.GENERATORS: lambda: generators_check(n),
    }
    return [builders[check]() for check in selected]


def char_checks(config: RunConfig) -> List[CheckReport]:
    identity = CharIdentity(config.identity)
    if identity is CharIdentity.HP:
        return [hp_series_check(config.order, min(config.max_weight, config.order))]
    if identity is CharIdentity.V:
        return [v_character_check(config.order, config.max_weight)]
    return [boson_fermion_check(config.order, 4, config.max_weight)]


def center_checks(config: RunConfig) -> List[CheckReport]:
    top = config.max_weight
    small = min(top, 4)
    return run_gl11_checks(top, config.r_max, config.order) + [
        pbw_injectivity_check(small),
        algebra_strong_generation_check(small),
    ]


def _gl11_section(config: RunConfig) -> List[CheckReport]:
    return [
        check_relations((-3, 3), (-3, 3), 5, config.workers),
        proof_identities_check(),
        surjectivity_evidence_check(),
        hp_series_check(30, 8),
        v_character_check(8),
        center_annihilation_check(5, 5),
        center_dimension_check(4),
        center_strong_generation_check(6),
        pbw_injectivity_check(4),
        algebra_strong_generation_check(4),
        boson_fermion_check(12, 4, 6),
    ]


def _whittaker_section(config: RunConfig) -> List[CheckReport]:
    checks = []
    for idx, chi in enumerate(default_characters(config.seed)):
        tag = f"chi{idx}"
        checks += [
            _tagged(module_relations_check(chi, (-2, 2), (-2, 2), 4, config.workers), tag),
            _tagged(reach_scalar_check(chi, 4), tag),
            _tagged(cyclicity_check(chi, 2, 3), tag),
            _tagged(homogeneity_check(chi, 2, 4), tag),
            _tagged(submodule_evidence_check(chi, config.trials, 3, config.seed), tag),
        ]
    return checks


def _invariants_section(config: RunConfig) -> List[CheckReport]:
    return [
        generators_check(1),
        generators_check(2),
        fixed_dimensions_check(2, 3),
        strong_generation_check(2, 3),
        center_vn_check(2, 3),
        zero_mode_agreement_check(2, 3),
        decoupling_check(1, 3, 4),
    ]


def _engine_section(config: RunConfig) -> List[CheckReport]:
    return run_engine_checks(4, (-2, 2))


SUITE_SECTIONS = (_gl11_section, _whittaker_section, _invariants_section, _engine_section)


def suite_checks(config: RunConfig) -> List[CheckReport]:
    """Every acceptance check at its stated bounds; the n-th product cache is dropped after each section."""
    checks: List[CheckReport] = []
    for section in SUITE_SECTIONS:
        checks += section(config)
        clear_caches()
        logger.debug(f"Suite section {section.__name__} done, {len(checks)} checks so far")
    return checks


def report_schema() -> Dict:
    """JSON schema of the SuiteReport document, stamped with its version."""
    schema = SuiteReport.model_json_schema()
    schema["version"] = SCHEMA_VERSION
    return schema


# Dispatch
def _record(config: RunConfig, checks: Sequence[CheckReport], elapsed: float) -> None:
    if not config.db_path:
        return
    store = ReportStore(config.db_path)
    store.create_tables()
    store.record_run(config, checks, elapsed)


def _run_checks(config: RunConfig, stream: TextIO) -> int:
    builders: Dict[Subcommand, Callable[[RunConfig], List[CheckReport]]] = {
        Subcommand.CHAR: char_checks,
        Subcommand.VERIFY_RELATIONS: lambda c: [check_relations(c.r_window, c.s_window, c.max_weight, c.workers)],
        Subcommand.CENTER: center_checks,
        Subcommand.WHITTAKER: lambda c: whittaker_checks(
            c, [load_character(c.chi_path)] if c.chi_path else default_characters(c.seed)
        ),
        Subcommand.INVARIANTS: invariants_checks,
        Subcommand.SUITE: suite_checks,
    }
    start = time.perf_counter()
    checks = sorted(builders[config.subcommand](config), key=lambda c: c.name)
    elapsed = time.perf_counter() - start
    report = SuiteReport(
        subcommand=config.subcommand,
        config=config.public_dict(),
        passed=all(c.passed for c in checks),
        checks=checks,
    )
    logger.info(
        f"{config.subcommand.value}: {sum(c.passed for c in checks)}/{len(checks)} checks passed in {elapsed:.2f}s"
    )
    _record(config, checks, elapsed)
    stream.write(render_report(report, config.output))
    return EXIT_OK if report.passed else EXIT_FAILED


def run(config: RunConfig, stream: Optional[TextIO] = None) -> int:
    """Dispatch one configured run; returns the process exit code."""
    stream = stream or sys.stdout
    sub = config.subcommand
    if sub is Subcommand.ENUMERATE:
        constraint = ChargeConstraint(total=config.charge)
        basis = enumerate_basis(config.n, config.max_weight, Sector(config.sector), constraint)
        logger.info(f"Enumerated {len(basis)} basis vectors (n={config.n}, weight <= {config.weight})")
        stream.write(render_basis(basis, config.output))
        return EXIT_OK
    if sub is Subcommand.APPLY:
        if not config.state_path or not config.operator:
            raise UsageError("apply needs --state and --operator")
        chi = load_character(config.chi_path) if config.chi_path else None
        operators = parse_operator_word(config.operator, chi)
        result = apply_operator_word(operators, load_state(config.state_path))
        stream.write(render_state(result, config.output))
        return EXIT_OK
    if sub is Subcommand.SCHEMA:
        stream.write(to_json(report_schema()))
        return EXIT_OK
    if sub is Subcommand.HISTORY:
        if not config.db_path:
            raise UsageError("history needs --db-path or FREEFIELD_DB_PATH")
        querier = ReportQuerier(config.db_path)
        runs = querier.get_runs(passed=False if config.failed_only else None, limit=config.limit)
        stream.write(render_runs(runs, config.output))
        return EXIT_OK
    return _run_checks(config, stream)


# Argument parsing
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value, help="Report encoding")
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized checks")
    common.add_argument("--workers", type=int, default=None, help="Worker processes (default: FREEFIELD_WORKERS or 1)")
    common.add_argument("--db-path", default=None, help="Run history database (default: FREEFIELD_DB_PATH)")
    common.add_argument("--log-level", default=None, help="Logging level (default: FREEFIELD_LOG_LEVEL or INFO)")
    common.add_argument("--log-file", default=None, help="Also log to this file (default: FREEFIELD_LOG_FILE)")

    parser = argparse.ArgumentParser(prog="freefield", description="Exact free-field vertex algebra workbench")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    p = subparsers.add_parser(Subcommand.ENUMERATE.value, parents=[common], help="Enumerate a Fock basis")
    p.add_argument("--n", type=int, default=1, help="Number of species")
    p.add_argument("--weight", default="3", help="Weight cutoff")
    p.add_argument("--sector", choices=[s.value for s in Sector], default=Sector.FULL.value)
    p.add_argument("--charge", type=int, default=None, help="Total charge constraint")

    p = subparsers.add_parser(Subcommand.APPLY.value, parents=[common], help="Apply an operator word to a state")
    p.add_argument("--state", dest="state_path", required=True, help="JSON state file, or - for stdin")
    p.add_argument("--operator", required=True, help="Operator word, e.g. 'E12:0 psi1+:-1/2 alpha:1'")
    p.add_argument("--chi", dest="chi_path", default=None, help="Act through the Whittaker module of this character")

    p = subparsers.add_parser(Subcommand.CHAR.value, parents=[common], help="Character identities")
    p.add_argument("--identity", choices=[i.value for i in CharIdentity], default=CharIdentity.HP.value)
    p.add_argument("--order", type=int, default=30, help="Series cutoff")
    p.add_argument("--weight", default="8", help="Enumeration cutoff for the dimension comparison")

    p = subparsers.add_parser(Subcommand.VERIFY_RELATIONS.value, parents=[common], help="gl(1|1) relation suite")
    p.add_argument("--r", dest="r_window", default="-3..3", help="Window of the first mode, A..B")
    p.add_argument("--s", dest="s_window", default="-3..3", help="Window of the second mode, A..B")
    p.add_argument("--weight", default="5", help="Weight cutoff of the basis")

    p = subparsers.add_parser(Subcommand.CENTER.value, parents=[common], help="Checks on the center M_0")
    p.add_argument("--weight", default="5", help="Weight cutoff")
    p.add_argument("--r-max", type=int, default=3, help="Largest nonnegative mode tested")
    p.add_argument("--order", type=int, default=30, help="Series cutoff")

    p = subparsers.add_parser(Subcommand.WHITTAKER.value, parents=[common], help="Whittaker-type module checks")
    p.add_argument("--chi", dest="chi_path", default=None, help="Character JSON (default: built-in samples)")
    p.add_argument("--check", choices=[c.value for c in WhittakerCheck], default=None, help="Single check (default: all)")
    p.add_argument("--charge", dest="charge_bound", type=int, default=2, help="Charge bound for cyclicity")
    p.add_argument("--weight", default="3", help="Weight cutoff")
    p.add_argument("--trials", type=int, default=3, help="Random states for submodule evidence")
    p.add_argument("--r", dest="r_window", default="-2..2", help="Window of the first mode, A..B")
    p.add_argument("--s", dest="s_window", default="-2..2", help="Window of the second mode, A..B")

    p = subparsers.add_parser(Subcommand.INVARIANTS.value, parents=[common], help="gl_n fixed-point checks")
    p.add_argument("--n", type=int, default=2, help="Number of species")
    p.add_argument("--check", choices=[c.value for c in InvariantsCheck], default=None, help="Single check (default: all)")
    p.add_argument("--weight", default="3", help="Weight cutoff")
    p.add_argument("--k-max", type=int, default=3, help="Largest k for decoupling")
    p.add_argument("--r-max", type=int, default=3, help="Largest nonnegative mode in the center check")

    p = subparsers.add_parser(Subcommand.SUITE.value, parents=[common], help="Every acceptance check")
    p.add_argument("--trials", type=int, default=3, help="Random states for submodule evidence")

    subparsers.add_parser(Subcommand.SCHEMA.value, parents=[common], help="Report JSON schema")

    p = subparsers.add_parser(Subcommand.HISTORY.value, parents=[common], help="Recorded runs")
    p.add_argument("--limit", type=int, default=None, help="Show at most this many runs")
    p.add_argument("--failed", dest="failed_only", action="store_true", help="Only failed runs")

    return parser


_HOST_OPTIONS = ("log_level", "log_file")
_WINDOW_OPTIONS = ("--r", "--s")
_WINDOW_VALUE = re.compile(r"^-\d+(\.\.-?\d+)?$")


def join_window_args(argv: Sequence[str]) -> List[str]:
    """Glue "--r -3..3" into "--r=-3..3"; argparse reads a leading dash as an option."""
    out: List[str] = []
    args = list(argv)
    i = 0
    while i < len(args):
        token = args[i]
        if token in _WINDOW_OPTIONS and i + 1 < len(args) and _WINDOW_VALUE.match(args[i + 1]):
            out.append(f"{token}={args[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Build the validated RunConfig; unset host options fall back to the environment."""
    values = {k: v for k, v in vars(args).items() if k not in _HOST_OPTIONS}
    for key in ("workers", "db_path"):
        if values.get(key) is None:
            values.pop(key, None)
    return RunConfig(**values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run, and map the outcome to an exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(join_window_args(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.log_level, args.log_file)
    try:
        config = config_from_args(args)
        logger.info(f"Starting {config.subcommand.value}")
        return run(config)
    except (ValidationError, UsageError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Run failed: {e}", exc_info=True)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
