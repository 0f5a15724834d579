#!/usr/bin/env python3
"""
Critical-Level gl(1|1) Inside F (x) M

The four generators E_ij of V = (F (x) M)_0, their modes (closed-form
fast paths checked against the general n-th product engine), the
super-commutation relation suite with K = 1, and the checks on the
center M_0: annihilation, joint-kernel dimension, strong generation
and the Hilbert-Poincare series.

Parity convention: bar(1) = 0, bar(2) = 1, so E12 and E21 are odd.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from models.types import RelationCase, RelationReport
from vertex.fields import (
    apply_word,
    borcherds_check,
    clifford_check,
    heisenberg_mode,
    single_generator_check,
    translation_check,
    vacuum_axioms_check,
    vertex_mode,
)
from vertex.fock import (
    BasisVector,
    BosonMode,
    ChargeConstraint,
    FermionMode,
    Sector,
    Sign,
    State,
    enumerate_basis,
    graded_dimensions,
    weight,
)
from vertex.linalg import GradedSubspace, Raiser, joint_kernel, rank_of_states, same_span, span_closure
from vertex.qchar import (
    HalfInt,
    QSeries,
    char_pbw_gl11,
    char_v_constant_term,
    hp_alternating_form,
    hp_constant_term,
    hp_ramanujan_form,
    hp_theta_form,
    series_from_dimensions,
)
from vertex.reports import (
    dimension_rows,
    integer_weights,
    make_report,
    parallel_map,
    series_table,
    witness,
)

logger = logging.getLogger(__name__)

ModeFn = Callable[["GenLabel", int, State], State]


def bar(i: int) -> int:
    return 0 if i == 1 else 1


@dataclass(frozen=True, order=True)
class GenLabel:
    """Matrix unit label E_ij of gl(1|1)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i not in (1, 2) or self.j not in (1, 2):
            raise ValueError(f"gl(1|1) labels need i, j in {{1, 2}}, got ({self.i}, {self.j})")

    @property
    def parity(self) -> int:
        return (bar(self.i) + bar(self.j)) % 2

    @property
    def is_odd(self) -> bool:
        return self.parity == 1

    @classmethod
    def parse(cls, text: str) -> "GenLabel":
        text = text.strip().upper()
        if len(text) != 3 or text[0] != "E":
            raise ValueError(f"Expected a label like E12, got {text!r}")
        return cls(int(text[1]), int(text[2]))

    def __str__(self) -> str:
        return f"E{self.i}{self.j}"


LABELS: Tuple[GenLabel, ...] = tuple(GenLabel(i, j) for i in (1, 2) for j in (1, 2))
E11, E12, E21, E22 = LABELS


def psi(sign: Sign, index, species: int = 1) -> FermionMode:
    return FermionMode(species, sign, HalfInt.of(index))


def boson(sign: Sign, index, species: int = 1) -> BosonMode:
    return BosonMode(species, sign, HalfInt.of(index))


HALF = HalfInt(1)


def alpha_state(species: int = 1) -> State:
    """The charge field psi+(-1/2) psi-(-1/2)|0>."""
    return State.from_modes(psi(Sign.PLUS, -HALF, species), psi(Sign.MINUS, -HALF, species))


def generator(label: GenLabel) -> State:
    if label == E11:
        return alpha_state()
    if label == E12:
        return State.from_modes(psi(Sign.PLUS, -HALF), boson(Sign.MINUS, -HALF))
    if label == E21:
        return State.from_modes(psi(Sign.MINUS, -HALF), boson(Sign.PLUS, -HALF))
    return State.from_modes(boson(Sign.PLUS, -HALF), boson(Sign.MINUS, -HALF)) - alpha_state()


# Mode fast paths
def _odd_mode(boson_sign: Sign, fermion_sign: Sign, r: int, v: State) -> State:
    # sum_{j>=0} a(-j-1/2) psi(r+j+1/2); the psi factor vanishes once its index exceeds wt(v)
    out = State()
    for bv, c in v.terms.items():
        j_max = (weight(bv).halves - 2 * r - 1) // 2
        start = State.basis(bv, c)
        for j in range(0, j_max + 1):
            word = (boson(boson_sign, HalfInt(-2 * j - 1)), psi(fermion_sign, HalfInt(2 * (r + j) + 1)))
            out = out + apply_word(word, start)
    return out


def _boson_pair_mode(r: int, v: State) -> State:
    out = State()
    for j in range(0, -r):
        k = -r - 1 - j
        word = (boson(Sign.PLUS, HalfInt(-2 * j - 1)), boson(Sign.MINUS, HalfInt(-2 * k - 1)))
        out = out + apply_word(word, v)
    return out


def gen_mode(label: GenLabel, r: int, v: State) -> State:
    """E_ij(r) v through the closed-form mode expansions."""
    if label == E11:
        return heisenberg_mode(1, r, v)
    if label == E12:
        return _odd_mode(Sign.MINUS, Sign.PLUS, r, v)
    if label == E21:
        return _odd_mode(Sign.PLUS, Sign.MINUS, r, v)
    return _boson_pair_mode(r, v) - heisenberg_mode(1, r, v)


def gen_mode_via_vertex(label: GenLabel, r: int, v: State) -> State:
    return vertex_mode(generator(label), r, v)


# Relation suite
def super_commutator(mode_fn: ModeFn, x: GenLabel, r: int, y: GenLabel, s: int, v: State) -> State:
    """[x(r), y(s)] v, an anticommutator exactly when both labels are odd."""
    xy = mode_fn(x, r, mode_fn(y, s, v))
    yx = mode_fn(y, s, mode_fn(x, r, v))
    return xy + yx if (x.is_odd and y.is_odd) else xy - yx


def relation_rhs(mode_fn: ModeFn, x: GenLabel, r: int, y: GenLabel, s: int, v: State) -> State:
    """Right side of the gl(1|1) affine relation with m = n = 1 and K = 1."""
    i, j = x.i, x.j
    k, l = y.i, y.j
    out = State()
    if k == j:
        out = out + mode_fn(GenLabel(i, l), r + s, v)
    if i == l:
        sign = -1 if ((bar(i) + bar(j)) * (bar(k) + bar(l))) % 2 else 1
        out = out - mode_fn(GenLabel(k, j), r + s, v).scale(sign)
    if i == j and k == l and r + s == 0:
        sign = -1 if (bar(i) + bar(k)) % 2 else 1
        out = out + v.scale(sign * r)
    return out


def _relation_pair_block(payload) -> List[RelationCase]:
    mode_fn, x, y, r_window, s_window, basis = payload
    cases = []
    for r in range(r_window[0], r_window[1] + 1):
        for s in range(s_window[0], s_window[1] + 1):
            failure = None
            for bv in basis:
                v = State.basis(bv)
                lhs = super_commutator(mode_fn, x, r, y, s, v)
                rhs = relation_rhs(mode_fn, x, r, y, s, v)
                if lhs != rhs:
                    failure = witness(
                        f"[{x}({r}), {y}({s})] disagrees with the relation", bv, rhs, lhs, r=r, s=s
                    )
                    break
            cases.append(
                RelationCase(
                    left=str(x),
                    right=str(y),
                    r=r,
                    s=s,
                    anticommutator=x.is_odd and y.is_odd,
                    vectors=len(basis),
                    passed=failure is None,
                    witness=failure,
                )
            )
    return cases


def relation_suite(
    mode_fn: ModeFn,
    basis: Sequence[BasisVector],
    r_window: Tuple[int, int],
    s_window: Tuple[int, int],
    name: str = "relations",
    workers: int = 1,
    summary: Optional[Dict] = None,
) -> RelationReport:
    """All 16 label pairs over the windows, applied to every vector of basis."""
    basis = list(basis)
    payloads = [(mode_fn, x, y, tuple(r_window), tuple(s_window), basis) for x in LABELS for y in LABELS]
    logger.info(
        f"Relation suite {name}: 16 label pairs, r in {r_window}, s in {s_window}, {len(basis)} vectors"
    )
    blocks = parallel_map(_relation_pair_block, payloads, workers)
    cases = sorted((c for block in blocks for c in block), key=lambda c: (c.left, c.right, c.r, c.s))
    failures = [c for c in cases if not c.passed]
    for c in failures[:5]:
        logger.warning(f"{name}: {c.witness.description} on {c.witness.basis_vector}")
    info = dict(summary or {})
    info.update(
        {
            "r_window": f"{r_window[0]}..{r_window[1]}",
            "s_window": f"{s_window[0]}..{s_window[1]}",
            "vectors": len(basis),
            "cases": len(cases),
            "failures": len(failures),
        }
    )
    return RelationReport(
        name=name,
        passed=not failures,
        summary=info,
        cases=cases,
        witnesses=[c.witness for c in failures[:5]],
    )


def v_basis(max_weight) -> List[BasisVector]:
    """Basis of V = (F (x) M)_0 up to max_weight."""
    return enumerate_basis(1, max_weight, Sector.FULL, ChargeConstraint(total=0))


def m0_basis(max_weight) -> List[BasisVector]:
    """Basis of the charge-zero commutative sector M_0 up to max_weight."""
    return enumerate_basis(1, max_weight, Sector.BOSON, ChargeConstraint(boson_total=0))


def check_relations(
    r_window: Tuple[int, int] = (-3, 3),
    s_window: Tuple[int, int] = (-3, 3),
    max_weight=5,
    workers: int = 1,
) -> RelationReport:
    return relation_suite(
        gen_mode,
        v_basis(max_weight),
        r_window,
        s_window,
        name="gl11.relations",
        workers=workers,
        summary={"max_weight": str(HalfInt.of(max_weight))},
    )


def gen_mode_consistency_check(max_weight=3, r_window: Tuple[int, int] = (-3, 3)):
    """Fast-path modes agree with the general n-th product of the generator states."""
    basis = v_basis(max_weight)
    failures = []
    checked = 0
    for label in LABELS:
        for r in range(r_window[0], r_window[1] + 1):
            for bv in basis:
                v = State.basis(bv)
                fast = gen_mode(label, r, v)
                slow = gen_mode_via_vertex(label, r, v)
                checked += 1
                if fast != slow and len(failures) < 5:
                    failures.append(witness(f"{label}({r}) fast path disagrees", bv, slow, fast))
    return make_report(
        "gl11.mode_consistency",
        not failures,
        {"max_weight": str(HalfInt.of(max_weight)), "r_window": f"{r_window[0]}..{r_window[1]}", "evaluations": checked},
        failures,
    )


# Center M_0
def negative_controls(max_weight=2) -> List[BasisVector]:
    """Charge-zero basis vectors of V with a fermionic factor."""
    return [bv for bv in v_basis(max_weight) if bv.ferm]


def _annihilating_failure(bv: BasisVector, r_max: int) -> Optional[Tuple[GenLabel, int, State]]:
    v = State.basis(bv)
    for label in LABELS:
        for r in range(0, r_max + 1):
            image = gen_mode(label, r, v)
            if image:
                return label, r, image
    return None


def center_annihilation_check(max_weight=5, r_max: int = 3, control_weight=2):
    """Every M_0 basis vector is killed by all E_ij(r), 0 <= r <= r_max; fermionic controls are not."""
    basis = m0_basis(max_weight)
    failures = []
    for bv in basis:
        hit = _annihilating_failure(bv, r_max)
        if hit is not None:
            label, r, image = hit
            failures.append(witness(f"{label}({r}) does not annihilate an M_0 vector", bv, State(), image))
    controls = negative_controls(control_weight)
    bad_controls = []
    samples = []
    for bv in controls:
        hit = _annihilating_failure(bv, r_max)
        if hit is None:
            bad_controls.append(witness("negative control is annihilated by every mode", bv))
        elif len(samples) < 3:
            samples.append(witness(f"control detected by {hit[0]}({hit[1]})", bv, actual=hit[2]))
    passed = not failures and not bad_controls and len(controls) >= 3
    return make_report(
        "gl11.center_annihilation",
        passed,
        {
            "max_weight": str(HalfInt.of(max_weight)),
            "r_max": r_max,
            "m0_vectors": len(basis),
            "controls": len(controls),
            "controls_detected": len(controls) - len(bad_controls),
        },
        (failures + bad_controls)[:10] if not passed else samples,
    )


def center_dimension_check(max_weight=4):
    """At each weight the joint kernel of E_ij(r), 0 <= r <= weight, on V is exactly M_0."""
    v_blocks: Dict[HalfInt, List[BasisVector]] = {}
    for bv in v_basis(max_weight):
        v_blocks.setdefault(weight(bv), []).append(bv)
    m0_dims = graded_dimensions(m0_basis(max_weight))
    kernel_dims: Dict[HalfInt, int] = {}
    failures = []
    for w, block in sorted(v_blocks.items()):
        ops = [partial(gen_mode, label, r) for label in LABELS for r in range(0, w.floor() + 1)]
        kernel = joint_kernel(block, ops)
        kernel_dims[w] = len(kernel)
        for state in kernel:
            if state.has_fermions():
                failures.append(witness("kernel vector outside M_0", actual=state, weight=str(w)))
                break
    weights = integer_weights(max_weight)
    rows = dimension_rows({"kernel": kernel_dims, "m0": m0_dims}, weights)
    passed = not failures and all(row.agrees for row in rows)
    return make_report(
        "gl11.center_dimension",
        passed,
        {"max_weight": str(HalfInt.of(max_weight))},
        failures,
        rows,
    )


def center_generators(max_weight) -> List[State]:
    """a+(-1/2) a-(-m-1/2)|0> for m + 1 <= max_weight."""
    top = HalfInt.of(max_weight)
    return [
        State.from_modes(boson(Sign.PLUS, -HALF), boson(Sign.MINUS, HalfInt(-2 * m - 1)))
        for m in range(0, top.floor())
    ]


def vertex_raisers(generators: Iterable[State], max_weight, prefix: str = "u") -> List[Raiser]:
    """u(-k) for every generator u and k >= 1 with wt(u) + k - 1 <= max_weight."""
    top = HalfInt.of(max_weight)
    raisers = []
    for idx, u in enumerate(generators):
        wt_u = u.weight()
        k = 1
        while wt_u + HalfInt(2 * (k - 1)) <= top:
            raisers.append(Raiser(f"{prefix}{idx}(-{k})", wt_u + HalfInt(2 * (k - 1)), partial(_vertex_raise, u, -k)))
            k += 1
    return raisers


def _vertex_raise(u: State, n: int, w: State) -> State:
    return vertex_mode(u, n, w)


def center_strong_generation_check(max_weight=6):
    """Span closure of the M_0 generators from the vacuum equals the enumerated M_0."""
    raisers = vertex_raisers(center_generators(max_weight), max_weight)
    closure = span_closure([State.vacuum()], raisers, max_weight)
    target = GradedSubspace.from_states((State.basis(bv) for bv in m0_basis(max_weight)), max_weight)
    weights = integer_weights(max_weight)
    rows = dimension_rows({"closure": closure.dims(), "m0": target.dims()}, weights)
    passed = same_span(closure, target)
    return make_report(
        "gl11.center_strong_generation",
        passed,
        {"max_weight": str(HalfInt.of(max_weight)), "generators": len(center_generators(max_weight)), "raisers": len(raisers)},
        [] if passed else [witness("closure differs from M_0", data_dims=[r.values for r in rows])],
        rows,
    )


def hp_series_check(order=30, enum_weight=8):
    """Constant-term, theta and Ramanujan forms agree, and match dim M_0 from enumeration."""
    forms = {
        "constant_term": hp_constant_term(order),
        "theta": hp_theta_form(order),
        "alternating": hp_alternating_form(order),
        "ramanujan": hp_ramanujan_form(order),
    }
    reference = forms["constant_term"]
    mismatched = [name for name, s in forms.items() if not s.equals_up_to(reference)]
    enum_top = min(HalfInt.of(enum_weight), HalfInt.of(order))
    m0_dims = graded_dimensions(m0_basis(enum_top))
    weights = integer_weights(enum_top)
    series_dims = {w: int(reference.coefficient(w)) for w in weights}
    rows = dimension_rows({"enumeration": m0_dims, "series": series_dims}, weights)
    integral = all(c.denominator == 1 for c in reference.terms)
    passed = not mismatched and integral and all(row.agrees for row in rows)
    failures = [witness(f"{name} form differs from the constant term") for name in mismatched]
    return make_report(
        "gl11.hp_series",
        passed,
        {"order": str(HalfInt.of(order)), "enum_weight": str(enum_top), "first": [str(c) for c in reference.integer_coefficients()[:8]]},
        failures,
        rows,
        [series_table(name, s) for name, s in forms.items()],
    )


# Character of V and isomorphism evidence
def char_v_enumerated(max_weight) -> QSeries:
    top = HalfInt.of(max_weight)
    return series_from_dimensions(graded_dimensions(v_basis(top)), top)


def v_character_check(max_weight=8, enum_weight=None):
    """PBW and constant-term characters of V agree through max_weight; enumeration agrees through enum_weight."""
    top = HalfInt.of(max_weight)
    enum_top = top if enum_weight is None else min(HalfInt.of(enum_weight), top)
    forms = {
        "pbw": char_pbw_gl11(top),
        "constant_term": char_v_constant_term(top),
        "enumerated": char_v_enumerated(enum_top),
    }
    mismatched = [name for name, s in forms.items() if not s.equals_up_to(forms["pbw"])]
    return make_report(
        "gl11.v_character",
        not mismatched,
        {"max_weight": str(top), "enum_weight": str(enum_top), "first": [str(c) for c in forms["pbw"].integer_coefficients()[:8]]},
        [witness(f"{name} character differs from the PBW character") for name in mismatched],
        series=[series_table(name, s) for name, s in forms.items()],
    )


def surjectivity_evidence_check():
    """E21(0) psi+(-1/2)|0> = a+(-1/2)|0> and E12(0) psi-(-1/2)|0> = a-(-1/2)|0>."""
    cases = [
        (E21, State.from_modes(psi(Sign.PLUS, -HALF)), State.from_modes(boson(Sign.PLUS, -HALF))),
        (E12, State.from_modes(psi(Sign.MINUS, -HALF)), State.from_modes(boson(Sign.MINUS, -HALF))),
    ]
    failures = []
    for label, v, expected in cases:
        for name, fn in (("fast", gen_mode), ("vertex", gen_mode_via_vertex)):
            actual = fn(label, 0, v)
            if actual != expected:
                failures.append(witness(f"{label}(0) identity fails ({name})", expected=expected, actual=actual))
    return make_report("gl11.surjectivity_evidence", not failures, {"identities": len(cases)}, failures)


def run_engine_checks(max_weight=4, window: Tuple[int, int] = (-2, 2), sample_weight=3):
    """Vacuum, translation, Clifford and commutator-formula consistency of the n-th product engine."""
    samples = [State.basis(bv) for bv in enumerate_basis(1, sample_weight, Sector.FULL)]
    small = [State.basis(bv) for bv in v_basis(min(HalfInt.of(max_weight), HalfInt(4)))][:12]
    vectors = [State.basis(bv) for bv in v_basis(max_weight)]
    generators = [(str(label), generator(label)) for label in LABELS]
    return [
        vacuum_axioms_check(samples),
        translation_check(samples[:20], small, window),
        borcherds_check(generators, vectors, window, name="gl11.borcherds"),
        clifford_check(enumerate_basis(1, max_weight, Sector.FULL, ChargeConstraint(total=0))),
        single_generator_check(enumerate_basis(1, min(HalfInt.of(max_weight), HalfInt(4)), Sector.FERMION)),
        gen_mode_consistency_check(min(HalfInt.of(max_weight), HalfInt(6)), window),
    ]


def proof_product_table() -> List[Tuple[GenLabel, GenLabel, Callable[[int], State]]]:
    """Nonnegative products E_x(n) E_y of the generators."""
    vac = State.vacuum()
    zero = State()
    return [
        (E11, E11, lambda n: vac if n == 1 else zero),
        (E11, E12, lambda n: generator(E12) if n == 0 else zero),
        (E11, E21, lambda n: -generator(E21) if n == 0 else zero),
        (E11, E22, lambda n: -vac if n == 1 else zero),
        (E22, E12, lambda n: -generator(E12) if n == 0 else zero),
        (E22, E21, lambda n: generator(E21) if n == 0 else zero),
        (E12, E21, lambda n: generator(E11) + generator(E22) if n == 0 else zero),
    ]


def proof_identities_check(n_max: int = 3):
    failures = []
    count = 0
    for x, y, expected_fn in proof_product_table():
        for n in range(0, n_max + 1):
            expected = expected_fn(n)
            actual = vertex_mode(generator(x), n, generator(y))
            count += 1
            if actual != expected:
                failures.append(witness(f"{x}({n}){y}", expected=expected, actual=actual))
    return make_report("gl11.proof_identities", not failures, {"n_max": n_max, "identities": count}, failures)


# PBW injectivity
def pbw_letters(max_weight) -> List[Tuple[GenLabel, int]]:
    top = HalfInt.of(max_weight)
    return [(label, k) for k in range(1, top.floor() + 1) for label in LABELS]


def pbw_monomials(max_weight) -> Dict[int, List[Tuple[Tuple[GenLabel, int], ...]]]:
    """Ordered PBW words by weight; odd letters appear at most once."""
    top = HalfInt.of(max_weight).floor()
    letters = pbw_letters(max_weight)
    by_weight: Dict[int, List[Tuple[Tuple[GenLabel, int], ...]]] = {0: [()]}

    def extend(word: Tuple[Tuple[GenLabel, int], ...], start: int, total: int):
        for pos in range(start, len(letters)):
            label, k = letters[pos]
            if total + k > top:
                continue
            new = word + ((label, k),)
            by_weight.setdefault(total + k, []).append(new)
            extend(new, pos + 1 if label.is_odd else pos, total + k)

    extend((), 0, 0)
    return by_weight


def pbw_image(word: Sequence[Tuple[GenLabel, int]]) -> State:
    state = State.vacuum()
    for label, k in reversed(word):
        state = gen_mode(label, -k, state)
    return state


def pbw_injectivity_check(max_weight=4):
    """PBW monomials map to linearly independent vectors of V, as many as the PBW character predicts."""
    top = HalfInt.of(max_weight)
    pbw = char_pbw_gl11(top)
    monomials = pbw_monomials(top)
    counts: Dict[HalfInt, int] = {}
    ranks: Dict[HalfInt, int] = {}
    predicted: Dict[HalfInt, int] = {}
    for m in range(top.floor() + 1):
        w = HalfInt(2 * m)
        words = monomials.get(m, [])
        counts[w] = len(words)
        ranks[w] = rank_of_states(pbw_image(word) for word in words)
        predicted[w] = int(pbw.coefficient(w))
    weights = integer_weights(top)
    rows = dimension_rows({"monomials": counts, "rank": ranks, "pbw_character": predicted}, weights)
    passed = all(row.agrees for row in rows)
    return make_report("gl11.pbw_injectivity", passed, {"max_weight": str(top)}, [], rows)


def algebra_strong_generation_check(max_weight=4):
    """Span closure of E_ij(-k) acting from the vacuum equals all of V up to max_weight."""
    top = HalfInt.of(max_weight)
    raisers = [
        Raiser(f"{label}(-{k})", HalfInt(2 * k), partial(gen_mode, label, -k))
        for label in LABELS
        for k in range(1, top.floor() + 1)
    ]
    closure = span_closure([State.vacuum()], raisers, top)
    target = GradedSubspace.from_states((State.basis(bv) for bv in v_basis(top)), top)
    rows = dimension_rows({"closure": closure.dims(), "v": target.dims()}, integer_weights(top))
    passed = same_span(closure, target)
    return make_report("gl11.strong_generation", passed, {"max_weight": str(top), "raisers": len(raisers)}, [], rows)


def run_gl11_checks(max_weight=5, r_max: int = 3, order=30):
    """Everything the `center` subcommand reports, in key order."""
    top = HalfInt.of(max_weight)
    return [
        center_annihilation_check(top, r_max),
        center_dimension_check(min(top, HalfInt(8))),
        center_strong_generation_check(top),
        hp_series_check(order, top),
        proof_identities_check(),
        surjectivity_evidence_check(),
    ]


__all__ = [
    "bar",
    "GenLabel",
    "LABELS",
    "E11",
    "E12",
    "E21",
    "E22",
    "psi",
    "boson",
    "alpha_state",
    "generator",
    "gen_mode",
    "gen_mode_via_vertex",
    "super_commutator",
    "relation_rhs",
    "relation_suite",
    "v_basis",
    "m0_basis",
    "check_relations",
    "gen_mode_consistency_check",
    "negative_controls",
    "center_annihilation_check",
    "center_dimension_check",
    "center_generators",
    "vertex_raisers",
    "center_strong_generation_check",
    "hp_series_check",
    "char_v_enumerated",
    "v_character_check",
    "surjectivity_evidence_check",
    "run_engine_checks",
    "proof_product_table",
    "proof_identities_check",
    "pbw_monomials",
    "pbw_image",
    "pbw_injectivity_check",
    "algebra_strong_generation_check",
    "run_gl11_checks",
]
