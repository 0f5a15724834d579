#!/usr/bin/env python3
"""
gl_n Fixed Points of F(n) (x) M(n)

The gl_n action by derivations on both tensor factors, fixed-point
subspaces computed as exact joint kernels weight by weight, the
generators j^{0,k}, j^{1,k}, j^{+,k}, j^{-,k} of V_n and the checks on
strong generation, the center (M(n))^{gl_n} and the decoupling of
j^{0,k} for k >= n.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import List, Optional, Tuple

from vertex.fields import apply_word, vertex_mode
from vertex.fock import (
    BosonMode,
    ChargeConstraint,
    FermionMode,
    Sector,
    Sign,
    State,
    basis_by_weight,
    enumerate_basis,
)
from vertex.gl11 import E11, E12, E21, E22, generator, vertex_raisers
from vertex.linalg import GradedSubspace, joint_kernel, same_span, span_closure
from vertex.qchar import HalfInt
from vertex.reports import dimension_rows, integer_weights, make_report, witness

logger = logging.getLogger(__name__)

HALF = HalfInt(1)


@dataclass(frozen=True, order=True)
class GLnUnit:
    """Matrix unit e_ij of gl_n."""

    i: int
    j: int

    def __post_init__(self):
        if self.i < 1 or self.j < 1:
            raise ValueError(f"matrix unit indices start at 1, got ({self.i}, {self.j})")

    def __str__(self) -> str:
        return f"e{self.i}{self.j}"


def units(n: int) -> List[GLnUnit]:
    return [GLnUnit(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def _substitute(unit: GLnUnit, mode):
    """Image of one free mode under e_ij: (coefficient, mode) or None."""
    if mode.sign is Sign.PLUS:
        if mode.species == unit.j:
            return 1, type(mode)(unit.i, Sign.PLUS, mode.index)
        return None
    if mode.species == unit.i:
        return -1, type(mode)(unit.j, Sign.MINUS, mode.index)
    return None


def gl_action(unit: GLnUnit, v: State) -> State:
    """
    e_ij as an even derivation: e_ij.x_k^+ = delta_jk x_i^+ and
    e_ij.x_k^- = -delta_ik x_j^- for both psi and a.
    """
    out = State()
    vac = State.vacuum()
    for bv, c in v.terms.items():
        factors = list(bv.factors)
        for pos, mode in enumerate(factors):
            image = _substitute(unit, mode)
            if image is None:
                continue
            coeff, new_mode = image
            word = factors[:pos] + [new_mode] + factors[pos + 1 :]
            out = out + apply_word(word, vac, coeff * c)
    return out


def unit_state(unit: GLnUnit) -> State:
    """psi_i+(-1/2) psi_j-(-1/2)|0>, the weight-one field of e_ij in F(n)."""
    return State.from_modes(FermionMode(unit.i, Sign.PLUS, -HALF), FermionMode(unit.j, Sign.MINUS, -HALF))


def gl_action_zero_mode(unit: GLnUnit, v: State) -> State:
    """Fermionic action of e_ij through the zero mode of its bilinear field."""
    return vertex_mode(unit_state(unit), 0, v)


def fixed_space(n: int, max_weight, restrict_to_M: bool = False, sector: Optional[Sector] = None) -> GradedSubspace:
    """
    Weightwise joint kernel of all e_ij on the enumerated basis.

    Only total-charge-zero vectors are enumerated; the sum of the diagonal
    units is the total charge, so nothing outside that sector is invariant.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    top = HalfInt.of(max_weight)
    sector = Sector.BOSON if restrict_to_M else Sector(sector or Sector.FULL)
    basis = enumerate_basis(n, top, sector, ChargeConstraint(total=0))
    ops = [partial(gl_action, u) for u in units(n)]
    space = GradedSubspace(top)
    for w, block in basis_by_weight(basis).items():
        kernel = joint_kernel(block, ops)
        for state in kernel:
            space.add(state)
        logger.debug(f"fixed_space(n={n}, {sector.value}) weight {w}: {len(block)} vectors, kernel {len(kernel)}")
    return space


class VnKind(str, Enum):
    """Families of V_n generators."""

    ZERO = "0"
    ONE = "1"
    PLUS = "+"
    MINUS = "-"


def vn_generator(kind: VnKind, k: int, n: int) -> State:
    """j^{kind,k} of V_n, a sum over species of a weight-(k+1) bilinear."""
    kind = VnKind(kind)
    if k < 0:
        raise ValueError("k must be >= 0")
    deep = HalfInt(-2 * k - 1)
    out = State()
    for i in range(1, n + 1):
        if kind is VnKind.ZERO:
            term = State.from_modes(FermionMode(i, Sign.PLUS, -HALF), FermionMode(i, Sign.MINUS, deep), coeff=-1)
        elif kind is VnKind.ONE:
            term = State.from_modes(BosonMode(i, Sign.PLUS, -HALF), BosonMode(i, Sign.MINUS, deep))
        elif kind is VnKind.PLUS:
            term = State.from_modes(FermionMode(i, Sign.PLUS, -HALF), BosonMode(i, Sign.MINUS, deep), coeff=-1)
        else:
            term = State.from_modes(BosonMode(i, Sign.PLUS, -HALF), FermionMode(i, Sign.MINUS, deep))
        out = out + term
    return out


def vn_generators(n: int, k_max: Optional[int] = None) -> List[Tuple[str, State]]:
    """The 4n generators with 0 <= k <= k_max (default n - 1)."""
    top = n - 1 if k_max is None else k_max
    return [
        (f"j{kind.value},{k}", vn_generator(kind, k, n))
        for k in range(0, top + 1)
        for kind in VnKind
    ]


def m_invariant_generators(n: int, max_weight) -> List[State]:
    """sum_i a_i+(-1/2) a_i-(-m-1/2)|0> for m + 1 <= max_weight."""
    top = HalfInt.of(max_weight)
    return [vn_generator(VnKind.ONE, m, n) for m in range(0, top.floor())]


def _generators_within(n: int, max_weight) -> List[State]:
    top = HalfInt.of(max_weight)
    return [s for _, s in vn_generators(n) if s.weight() <= top]


def generators_check(n: int = 1):
    """Every generator is gl_n invariant; for n = 1 they reduce to -E11, E11+E22, -E12, E21."""
    failures = []
    for name, state in vn_generators(n):
        for u in units(n):
            image = gl_action(u, state)
            if image:
                failures.append(witness(f"{u} does not annihilate {name}", actual=image))
    if n == 1:
        expected = {
            "j0,0": -generator(E11),
            "j1,0": generator(E11) + generator(E22),
            "j+,0": -generator(E12),
            "j-,0": generator(E21),
        }
        for name, state in vn_generators(1):
            if state != expected[name]:
                failures.append(witness(f"{name} differs from its gl(1|1) counterpart", expected=expected[name], actual=state))
    return make_report(f"invariants.generators.n{n}", not failures, {"n": n, "generators": 4 * n}, failures)


def _closure_of(generators: List[State], max_weight):
    raisers = vertex_raisers(generators, max_weight, prefix="j")
    return span_closure([State.vacuum()], raisers, max_weight), len(raisers)


def strong_generation_check(n: int, max_weight=3):
    """The vertex span closure of the 4n generators equals the fixed space up to max_weight."""
    top = HalfInt.of(max_weight)
    closure, raisers = _closure_of(_generators_within(n, top), top)
    fixed = fixed_space(n, top)
    rows = dimension_rows({"closure": closure.dims(), "fixed": fixed.dims()}, integer_weights(top))
    passed = same_span(closure, fixed)
    return make_report(
        f"invariants.strong_generation.n{n}",
        passed,
        {"n": n, "max_weight": str(top), "raisers": raisers},
        [] if passed else [witness("closure and fixed space differ")],
        rows,
    )


def m_invariants_strong_gen_check(n: int, max_weight=2):
    """Closure of sum_i a_i+ a_i-(-m-1/2) equals (M(n))^{gl_n} up to max_weight."""
    top = HalfInt.of(max_weight)
    closure, raisers = _closure_of(m_invariant_generators(n, top), top)
    fixed = fixed_space(n, top, restrict_to_M=True)
    rows = dimension_rows({"closure": closure.dims(), "fixed_m": fixed.dims()}, integer_weights(top))
    passed = same_span(closure, fixed)
    return make_report(
        f"invariants.m_strong_generation.n{n}",
        passed,
        {"n": n, "max_weight": str(top), "raisers": raisers},
        [] if passed else [witness("closure and invariant space differ")],
        rows,
    )


def _central_failure(w: State, generators: List[Tuple[str, State]], r_max: int) -> Optional[Tuple[str, int, State]]:
    for name, g in generators:
        for r in range(0, r_max + 1):
            image = vertex_mode(g, r, w)
            if image:
                return name, r, image
    return None


def center_vn_check(n: int, max_weight=3, r_max: int = 3):
    """
    (M(n))^{gl_n} is killed by every nonnegative generator mode; fixed
    vectors with a fermionic factor are not.
    """
    top = HalfInt.of(max_weight)
    gens = vn_generators(n)
    candidate = fixed_space(n, top, restrict_to_M=True)
    full = fixed_space(n, top)
    failures = []
    candidates = 0
    for w in sorted(candidate.blocks):
        for state in candidate.basis(w):
            candidates += 1
            hit = _central_failure(state, gens, r_max)
            if hit is not None:
                failures.append(witness(f"{hit[0]}({hit[1]}) does not annihilate a candidate", actual=state))
    controls = 0
    detected = 0
    for w in sorted(full.blocks):
        for state in full.basis(w):
            if not state.has_fermions():
                continue
            controls += 1
            if _central_failure(state, gens, r_max) is not None:
                detected += 1
            else:
                failures.append(witness("fermionic fixed vector passes the centrality test", actual=state))
    rows = dimension_rows({"center": candidate.dims(), "fixed": full.dims()}, integer_weights(top))
    return make_report(
        f"invariants.center.n{n}",
        not failures,
        {"n": n, "max_weight": str(top), "r_max": r_max, "candidates": candidates, "controls": controls, "controls_detected": detected},
        failures[:10],
        rows,
        bounded_evidence=True,
    )


def gl_bracket_check(n: int = 2, max_weight=3, total_charge: Optional[int] = 0):
    """[e_ij, e_kl] = delta_jk e_il - delta_li e_kj on every basis vector up to max_weight."""
    basis = enumerate_basis(n, max_weight, Sector.FULL, ChargeConstraint(total=total_charge))
    failures = []
    for a in units(n):
        for b in units(n):
            for bv in basis:
                v = State.basis(bv)
                lhs = gl_action(a, gl_action(b, v)) - gl_action(b, gl_action(a, v))
                rhs = State()
                if a.j == b.i:
                    rhs = rhs + gl_action(GLnUnit(a.i, b.j), v)
                if b.j == a.i:
                    rhs = rhs - gl_action(GLnUnit(b.i, a.j), v)
                if lhs != rhs:
                    failures.append(witness(f"[{a}, {b}] bracket fails", bv, rhs, lhs))
                    break
    return make_report(
        f"invariants.brackets.n{n}",
        not failures,
        {"n": n, "max_weight": str(HalfInt.of(max_weight)), "vectors": len(basis)},
        failures[:10],
    )


def zero_mode_agreement_check(n: int = 2, max_weight=3):
    """The substitution action and the bilinear zero mode agree on F(n)."""
    basis = enumerate_basis(n, max_weight, Sector.FERMION)
    failures = []
    for u in units(n):
        for bv in basis:
            v = State.basis(bv)
            direct = gl_action(u, v)
            zero_mode = gl_action_zero_mode(u, v)
            if direct != zero_mode:
                failures.append(witness(f"{u} actions disagree", bv, direct, zero_mode))
                break
    return make_report(
        f"invariants.zero_mode.n{n}",
        not failures,
        {"n": n, "max_weight": str(HalfInt.of(max_weight)), "vectors": len(basis)},
        failures,
    )


def decoupling_check(n: int, k_max: int = 3, max_weight=4):
    """j^{0,k} for n <= k <= k_max lies in the closure of the generators with k <= n - 1."""
    top = HalfInt.of(max_weight)
    closure, _ = _closure_of(_generators_within(n, top), top)
    failures = []
    tested = 0
    for k in range(n, k_max + 1):
        state = vn_generator(VnKind.ZERO, k, n)
        if state.weight() > top:
            continue
        tested += 1
        if not closure.contains(state):
            failures.append(witness(f"j0,{k} is outside the generated span", actual=state))
    return make_report(
        f"invariants.decoupling.n{n}",
        not failures and tested > 0,
        {"n": n, "k_max": k_max, "max_weight": str(top), "tested": tested},
        failures,
        bounded_evidence=True,
    )


def fixed_dimensions_check(n: int, max_weight=3):
    """Dimension table of the fixed space over F, M and F (x) M."""
    top = HalfInt.of(max_weight)
    sources = {
        "full": fixed_space(n, top).dims(),
        "fermion": fixed_space(n, top, sector=Sector.FERMION).dims(),
        "boson": fixed_space(n, top, restrict_to_M=True).dims(),
    }
    rows = dimension_rows(sources, integer_weights(top))
    passed = all(row.values["full"] >= max(row.values["fermion"], row.values["boson"]) for row in rows)
    return make_report(f"invariants.fixed.n{n}", passed, {"n": n, "max_weight": str(top)}, [], rows)


__all__ = [
    "GLnUnit",
    "units",
    "gl_action",
    "unit_state",
    "gl_action_zero_mode",
    "fixed_space",
    "VnKind",
    "vn_generator",
    "vn_generators",
    "m_invariant_generators",
    "generators_check",
    "strong_generation_check",
    "m_invariants_strong_gen_check",
    "center_vn_check",
    "gl_bracket_check",
    "zero_mode_agreement_check",
    "decoupling_check",
    "fixed_dimensions_check",
]
