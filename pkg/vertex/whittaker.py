#!/usr/bin/env python3
"""
Whittaker-Type Modules F(chi+, chi-)

On F the commutative fields a+(z), a-(z) act through the characters
chi+(z), chi-(z) = sum_p chi_p z^(-p-1). The generator modes become

    E12(n) = sum_p chi-_p psi+(n - 1/2 - p)
    E21(n) = sum_p chi+_p psi-(n - 1/2 - p)
    E11(n) = alpha(n)
    E22(n) = c_n - alpha(n),   c_n = sum_p chi+_p chi-_(n-1-p)

Characters have finite support; coefficients with large negative index
only ever meet annihilation modes, so no finite computation loses them.
The checks here are bounded evidence for cyclicity and irreducibility.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from models.types import DimensionRow, RelationReport, WhittakerCharForm
from vertex.fields import apply_fermion_mode, heisenberg_mode
from vertex.fock import (
    BasisVector,
    ChargeConstraint,
    FermionMode,
    Sector,
    Sign,
    State,
    charge,
    enumerate_basis,
    graded_dimensions,
    lowest_charge_vector,
    weight,
)
from vertex.gl11 import E11, E12, E21, E22, LABELS, GenLabel, relation_suite
from vertex.linalg import GradedSubspace, Raiser, RowSpace, span_closure
from vertex.qchar import HalfInt, char_fermion_two_variable, char_heisenberg_sector, series_from_dimensions
from vertex.reports import dimension_rows, make_report, series_table, witness

logger = logging.getLogger(__name__)


class EmptyCharacter(ValueError):
    """Raised when chi+ or chi- has no nonzero coefficient."""


class NotProportional(ValueError):
    """Raised when a reached state is not a multiple of the expected charge vector."""


def _clean(chi: Mapping[int, object]) -> Dict[int, Fraction]:
    return {int(k): Fraction(v) for k, v in chi.items() if Fraction(v)}


@dataclass(frozen=True)
class WhittakerChar:
    """A pair of finitely supported characters; p_plus and p_minus are their top indices."""

    chi_plus: Tuple[Tuple[int, Fraction], ...]
    chi_minus: Tuple[Tuple[int, Fraction], ...]

    @classmethod
    def of(cls, chi_plus: Mapping[int, object], chi_minus: Mapping[int, object]) -> "WhittakerChar":
        plus = _clean(chi_plus)
        minus = _clean(chi_minus)
        if not plus:
            raise EmptyCharacter("chi+ must be nonzero")
        if not minus:
            raise EmptyCharacter("chi- must be nonzero")
        return cls(tuple(sorted(plus.items())), tuple(sorted(minus.items())))

    @classmethod
    def from_form(cls, form: WhittakerCharForm) -> "WhittakerChar":
        plus, minus = form.as_fractions()
        return cls.of(plus, minus)

    @property
    def plus(self) -> Dict[int, Fraction]:
        return dict(self.chi_plus)

    @property
    def minus(self) -> Dict[int, Fraction]:
        return dict(self.chi_minus)

    @property
    def p_plus(self) -> int:
        return max(self.plus)

    @property
    def p_minus(self) -> int:
        return max(self.minus)

    def c(self, n: int) -> Fraction:
        """z^(-n-1) coefficient of chi+(z) chi-(z)."""
        minus = self.minus
        return sum((cp * minus.get(n - 1 - p, 0) for p, cp in self.chi_plus), Fraction(0))

    def scaled(self, t_plus=1, t_minus=1) -> "WhittakerChar":
        t_plus, t_minus = Fraction(t_plus), Fraction(t_minus)
        return WhittakerChar.of(
            {p: t_plus * c for p, c in self.chi_plus},
            {p: t_minus * c for p, c in self.chi_minus},
        )

    def to_form(self) -> WhittakerCharForm:
        return WhittakerCharForm(
            chi_plus={p: str(c) for p, c in self.chi_plus},
            chi_minus={p: str(c) for p, c in self.chi_minus},
        )

    def __str__(self) -> str:
        fmt = lambda chi: "{" + ", ".join(f"{p}: {c}" for p, c in chi) + "}"
        return f"chi+={fmt(self.chi_plus)} chi-={fmt(self.chi_minus)}"


def random_character(rng: random.Random, p_plus: int, p_minus: int, low: int = -1) -> WhittakerChar:
    """Random rational character with the given top indices and support down to `low`."""

    def draw(top: int) -> Dict[int, Fraction]:
        chi = {}
        for p in range(low, top + 1):
            if p == top or rng.random() < 0.5:
                value = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))
                chi[p] = value
        return chi

    return WhittakerChar.of(draw(p_plus), draw(p_minus))


def _require_fermionic(v: State) -> None:
    if v.has_bosons():
        raise ValueError("Whittaker modes act on states of F only")


def _psi_sum(sign: Sign, chi: Sequence[Tuple[int, Fraction]], n: int, v: State) -> State:
    out = State()
    for p, c in chi:
        mode = FermionMode(1, sign, HalfInt(2 * (n - p) - 1))
        out = out + apply_fermion_mode(mode, v).scale(c)
    return out


def w_gen_mode(label: GenLabel, n: int, v: State, chi: WhittakerChar) -> State:
    """E_ij(n) acting on F(chi+, chi-)."""
    _require_fermionic(v)
    if label == E11:
        return heisenberg_mode(1, n, v)
    if label == E12:
        return _psi_sum(Sign.PLUS, chi.chi_minus, n, v)
    if label == E21:
        return _psi_sum(Sign.MINUS, chi.chi_plus, n, v)
    return v.scale(chi.c(n)) - heisenberg_mode(1, n, v)


def _mode_fn(chi: WhittakerChar):
    return partial(_w_mode_positional, chi)


def _w_mode_positional(chi: WhittakerChar, label: GenLabel, n: int, v: State) -> State:
    return w_gen_mode(label, n, v, chi)


def f_basis(max_weight, fermion_total: Optional[int] = None) -> List[BasisVector]:
    return enumerate_basis(1, max_weight, Sector.FERMION, ChargeConstraint(fermion_total=fermion_total))


def module_relations_check(
    chi: WhittakerChar, r_window=(-2, 2), s_window=(-2, 2), max_weight=4, workers: int = 1, name: Optional[str] = None
) -> RelationReport:
    """The affine gl(1|1) relations for the module operators on every F basis vector up to max_weight."""
    return relation_suite(
        _mode_fn(chi),
        f_basis(max_weight),
        r_window,
        s_window,
        name=name or "whittaker.relations",
        workers=workers,
        summary={"chi": str(chi), "max_weight": str(HalfInt.of(max_weight))},
    )


def reach_charge_vector(m: int, chi: WhittakerChar) -> Tuple[Fraction, BasisVector]:
    """
    Apply E12(p- - m + 1) ... E12(p-) to the vacuum (E21 and p+ for m < 0).

    Returns (scalar, e^(m alpha)) with the result equal to scalar * e^(m alpha).
    """
    if m == 0:
        raise ValueError("m must be nonzero")
    label, top = (E12, chi.p_minus) if m > 0 else (E21, chi.p_plus)
    state = State.vacuum()
    for n in range(top, top - abs(m), -1):
        state = w_gen_mode(label, n, state, chi)
    target = lowest_charge_vector(m)
    if len(state) != 1 or target not in state:
        raise NotProportional(f"E-string for m={m} gave {state}, not a multiple of {target}")
    return state.coefficient(target), target


def reach_scalar_check(chi: WhittakerChar, m_max: int = 4):
    """reach_charge_vector(m) has scalar (chi-_(p-))^m for m > 0 and (chi+_(p+))^|m| for m < 0."""
    failures = []
    for m in [k for k in range(-m_max, m_max + 1) if k]:
        lead = chi.minus[chi.p_minus] if m > 0 else chi.plus[chi.p_plus]
        expected = lead ** abs(m)
        try:
            scalar, target = reach_charge_vector(m, chi)
        except NotProportional as exc:
            failures.append(witness(str(exc), m=m))
            continue
        if scalar != expected:
            failures.append(witness(f"scalar for m={m}", target, State.basis(target, expected), State.basis(target, scalar)))
    return make_report(
        "whittaker.reach",
        not failures,
        {"chi": str(chi), "m_max": m_max},
        failures,
    )


def homogeneity_check(chi: WhittakerChar, t=2, m_max: int = 4):
    """Scaling chi- by t scales reach(m > 0) by t^m; scaling chi+ scales reach(m < 0) by t^|m|."""
    t = Fraction(t)
    failures = []
    for m in [k for k in range(-m_max, m_max + 1) if k]:
        base, _ = reach_charge_vector(m, chi)
        scaled_chi = chi.scaled(t_minus=t) if m > 0 else chi.scaled(t_plus=t)
        scaled, _ = reach_charge_vector(m, scaled_chi)
        if scaled != base * t ** abs(m):
            failures.append(witness(f"homogeneity fails for m={m}", expected=None, actual=None, base=base, scaled=scaled, t=t))
    return make_report("whittaker.homogeneity", not failures, {"chi": str(chi), "t": str(t), "m_max": m_max}, failures)


def _alpha_raiser(r: int) -> Raiser:
    return Raiser(f"alpha({r})", HalfInt(-2 * r), partial(heisenberg_mode, 1, r))


def cyclicity_check(chi: WhittakerChar, charge_bound: int = 2, max_weight=3):
    """
    Every e^(l alpha) with |l| <= charge_bound is reached from the vacuum, and
    the alpha(r < 0) closure of those vectors fills each F_l up to max_weight.
    """
    top = HalfInt.of(max_weight)
    failures = []
    seeds = []
    for ell in range(-charge_bound, charge_bound + 1):
        if ell == 0:
            seeds.append(State.vacuum())
            continue
        try:
            scalar, target = reach_charge_vector(ell, chi)
        except NotProportional as exc:
            failures.append(witness(str(exc), ell=ell))
            continue
        seeds.append(State.basis(target, scalar))
    raisers = [_alpha_raiser(r) for r in range(-top.floor(), 0)]
    closure = span_closure(seeds, raisers, top)
    rows = []
    for ell in range(-charge_bound, charge_bound + 1):
        sector = [bv for bv in f_basis(top, ell)]
        enumerated = graded_dimensions(sector)
        spanned = GradedSubspace.from_states(
            (s for s in closure.all_generators() if charge(next(iter(s))).fermion_total == ell), top
        )
        weights = [HalfInt(h) for h in range(top.halves + 1)]
        for row in dimension_rows({"closure": spanned.dims(), "enumerated": enumerated}, weights):
            if row.values["enumerated"] or row.values["closure"]:
                row.charge = ell
                rows.append(row)
                if row.values["closure"] != row.values["enumerated"]:
                    failures.append(witness("closure misses part of a charge sector", ell=ell, weight=row.weight))
        missing = [bv for bv in sector if not closure.contains(State.basis(bv))]
        if missing:
            failures.append(witness("basis vector not reached", missing[0], ell=ell))
    return make_report(
        "whittaker.cyclicity",
        not failures,
        {"chi": str(chi), "charge_bound": charge_bound, "max_weight": str(top)},
        failures[:10],
        rows,
        bounded_evidence=True,
    )


def _charge_components(s: State) -> List[State]:
    # projection onto alpha(0)-eigenspaces is a polynomial in E11(0)
    parts: Dict[int, State] = {}
    for bv, c in s.terms.items():
        parts.setdefault(charge(bv).fermion_total, State()).add_term(bv, c)
    return [parts[k] for k in sorted(parts)]


def mode_window(chi: WhittakerChar, max_weight) -> Tuple[int, int]:
    top = HalfInt.of(max_weight).floor()
    p_bar = max(chi.p_plus, chi.p_minus, 0)
    return -(top + p_bar + 1), top + p_bar + 1


def random_f_state(rng: random.Random, max_weight) -> State:
    """Random nonzero combination of F basis vectors of one weight in (0, max_weight]."""
    blocks: Dict[HalfInt, List[BasisVector]] = {}
    for bv in f_basis(max_weight):
        if weight(bv).halves > 0:
            blocks.setdefault(weight(bv), []).append(bv)
    w = rng.choice(sorted(blocks))
    block = blocks[w]
    chosen = rng.sample(block, k=rng.randint(1, min(len(block), 4)))
    return State({bv: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2])) for bv in chosen})


def submodule_closure(v: State, chi: WhittakerChar, max_weight, max_steps: int = 200000) -> Tuple[List[int], int]:
    """
    Close {v} under all module modes in the search window, keeping results
    inside the weight cap. Returns (charges l whose e^(l alpha) lies in the span, span dimension).
    """
    top = HalfInt.of(max_weight)
    lo, hi = mode_window(chi, top)
    space = RowSpace()
    pending = []
    for part in _charge_components(v):
        if space.add(part):
            pending.append(part)
    steps = 0
    while pending and steps < max_steps:
        current = pending.pop()
        for label in LABELS:
            for n in range(lo, hi + 1):
                image = w_gen_mode(label, n, current, chi)
                steps += 1
                if not image or any(weight(bv) > top for bv in image):
                    continue
                for part in _charge_components(image):
                    if space.add(part):
                        pending.append(part)
    if pending:
        logger.warning(f"submodule_closure stopped after {steps} mode applications")
    reached = [
        ell
        for ell in range(-top.floor() - 1, top.floor() + 2)
        if HalfInt(ell * ell) <= top and space.contains(State.basis(lowest_charge_vector(ell)))
    ]
    return reached, len(space)


def submodule_evidence_check(chi: WhittakerChar, trials: int = 3, max_weight=3, seed: int = 0, states: Optional[List[State]] = None):
    """Bounded evidence of irreducibility: closures of random states reach a charge vector."""
    rng = random.Random(seed)
    samples = list(states) if states is not None else [random_f_state(rng, max_weight) for _ in range(trials)]
    failures = []
    reached = []
    for idx, v in enumerate(samples):
        charges, dim = submodule_closure(v, chi, max_weight)
        if not charges:
            failures.append(witness("closure reached no charge vector", actual=v, trial=idx, span=dim))
        else:
            reached.append(witness(f"trial {idx} reached charge vectors", actual=v, trial=idx, span=dim, charges=charges))
    return make_report(
        "whittaker.submodule",
        not failures,
        {"chi": str(chi), "trials": len(samples), "max_weight": str(HalfInt.of(max_weight)), "seed": seed},
        failures if failures else reached,
        bounded_evidence=True,
    )


def boson_fermion_check(cutoff=12, charge_bound: int = 4, enum_weight=6):
    """
    Charge-l part of the fermionic character equals q^(l^2/2)/(q)_inf for
    |l| <= charge_bound, and matches dim F_l from enumeration up to enum_weight.
    """
    n = HalfInt.of(cutoff)
    enum_top = min(HalfInt.of(enum_weight), n)
    fermionic = char_fermion_two_variable(n)
    failures = []
    series = []
    rows = []
    for ell in range(-charge_bound, charge_bound + 1):
        sector = fermionic.coefficient(ell)
        bosonic = char_heisenberg_sector(ell, n)
        series.append(series_table(f"fermion[{ell}]", sector))
        if not sector.equals_up_to(bosonic):
            failures.append(witness("charge sector differs from the Heisenberg character", ell=ell))
        enumerated = series_from_dimensions(graded_dimensions(f_basis(enum_top, ell)), enum_top)
        if not enumerated.equals_up_to(sector):
            failures.append(witness("enumerated charge sector differs from the character", ell=ell))
        for h in range(enum_top.halves + 1):
            w = HalfInt(h)
            dims = {"enumerated": int(enumerated.coefficient(w)), "heisenberg": int(bosonic.coefficient(w))}
            if any(dims.values()):
                rows.append(DimensionRow(weight=str(w), charge=ell, values=dims))
    return make_report(
        "whittaker.boson_fermion",
        not failures,
        {"cutoff": str(n), "charge_bound": charge_bound, "enum_weight": str(enum_top)},
        failures,
        rows,
        series,
    )


def default_characters(seed: int = 0) -> List[WhittakerChar]:
    """chi+- = {0: 1}, a second fixed sample and a seeded random one with p+ = 1, p- = 2."""
    rng = random.Random(seed)
    return [
        WhittakerChar.of({0: 1}, {0: 1}),
        WhittakerChar.of({0: 2, -1: Fraction(1, 2)}, {1: -1, 0: 3}),
        random_character(rng, 1, 2),
    ]


__all__ = [
    "EmptyCharacter",
    "NotProportional",
    "WhittakerChar",
    "random_character",
    "w_gen_mode",
    "f_basis",
    "module_relations_check",
    "reach_charge_vector",
    "reach_scalar_check",
    "homogeneity_check",
    "cyclicity_check",
    "mode_window",
    "random_f_state",
    "submodule_closure",
    "submodule_evidence_check",
    "boson_fermion_check",
    "default_characters",
]
