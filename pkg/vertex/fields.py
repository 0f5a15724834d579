#!/usr/bin/env python3
"""
Mode Operator Engine

Free-field modes acting on States, the Heisenberg modes alpha_i(r), the
n-th products A(n)v of the state-field correspondence and the translation
operator T.

Conventions:
- A weight-1/2 free field phi(z) = sum_s phi(s) z^(-s-1/2); its n-th
  product mode is phi(n + 1/2), converted through ModeIndex.
- Normal ordering puts creation parts left and annihilation parts right,
  with a sign for every odd field moved past another odd field.
- Bosonic annihilation modes vanish on F (x) M.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Sequence, Tuple

from vertex.fock import (
    VACUUM,
    BasisVector,
    BosonMode,
    FermionMode,
    FreeMode,
    Sign,
    State,
    canonicalize,
    sort_comm,
    weight,
)
from vertex.qchar import HalfInt
from vertex.reports import make_report, witness

logger = logging.getLogger(__name__)


class SpeciesMismatch(ValueError):
    """Raised when a state uses a species beyond the declared species count."""


@dataclass(frozen=True)
class ModeIndex:
    """Physical half-integer mode r of a weight-1/2 field and its product index n = r - 1/2."""

    physical: HalfInt

    @classmethod
    def from_product_index(cls, n: int) -> "ModeIndex":
        return cls(HalfInt(2 * n + 1))

    @classmethod
    def from_physical(cls, r) -> "ModeIndex":
        return cls(HalfInt.of(r))

    @property
    def product_index(self) -> int:
        return (self.physical.halves - 1) // 2


def binomial(p: int, m: int) -> int:
    """Generalized binomial C(p, m) for any integer p and m >= 0."""
    if m < 0:
        return 0
    if p >= 0:
        return comb(p, m)
    return (-1) ** m * comb(m - p - 1, m)


# Single basis vector actions
def _fermion_on_basis(mode: FermionMode, bv: BasisVector) -> Optional[Tuple[int, BasisVector]]:
    if mode.is_creation:
        canon = canonicalize((mode,) + bv.ferm)
        if canon is None:
            return None
        parity, mono = canon
        return parity, BasisVector(mono, bv.comm)
    partner = FermionMode(mode.species, mode.sign.flip(), -mode.index)
    for pos, factor in enumerate(bv.ferm):
        if factor == partner:
            sign = -1 if pos % 2 else 1
            return sign, BasisVector(bv.ferm[:pos] + bv.ferm[pos + 1 :], bv.comm)
    return None


def _boson_on_basis(mode: BosonMode, bv: BasisVector) -> Optional[Tuple[int, BasisVector]]:
    if not mode.is_creation:
        return None
    return 1, BasisVector(bv.ferm, sort_comm(bv.comm + (mode,)))


def _act(mode: FreeMode, bv: BasisVector) -> Optional[Tuple[int, BasisVector]]:
    if isinstance(mode, FermionMode):
        return _fermion_on_basis(mode, bv)
    return _boson_on_basis(mode, bv)


def apply_fermion_mode(mode: FermionMode, s: State) -> State:
    """Psi(r) on s: left multiplication for r < 0, signed contraction for r > 0."""
    out = State()
    for bv, c in s.terms.items():
        hit = _fermion_on_basis(mode, bv)
        if hit is not None:
            out.add_term(hit[1], hit[0] * c)
    return out


def apply_boson_mode(mode: BosonMode, s: State) -> State:
    """a(r) on s: commutative multiplication for r < 0, zero for r > 0."""
    if not mode.is_creation:
        return State()
    out = State()
    for bv, c in s.terms.items():
        out.add_term(_boson_on_basis(mode, bv)[1], c)
    return out


def apply_mode(mode: FreeMode, s: State) -> State:
    if isinstance(mode, FermionMode):
        return apply_fermion_mode(mode, s)
    return apply_boson_mode(mode, s)


def apply_word(modes: Sequence[FreeMode], s: State, coeff=1) -> State:
    """coeff * modes[0] modes[1] ... modes[-1] applied to s (rightmost first)."""
    out = State()
    for bv, c in s.terms.items():
        sign, cur = 1, bv
        for mode in reversed(modes):
            hit = _act(mode, cur)
            if hit is None:
                cur = None
                break
            sign *= hit[0]
            cur = hit[1]
        if cur is not None:
            out.add_term(cur, sign * c * Fraction(coeff))
    return out


def _heisenberg_on_basis(i: int, r: int, bv: BasisVector) -> State:
    # k runs over the half-integers for which :psi+(k) psi-(r-k): can act nonzero on bv
    candidates = set()
    for factor in bv.ferm:
        if factor.species != i:
            continue
        if factor.sign is Sign.PLUS:
            candidates.add(2 * r + factor.index.halves)
        else:
            candidates.add(-factor.index.halves)
    low, high = sorted((0, 2 * r))
    candidates.update(range(low + 1, high, 2))
    out = State()
    start = State.basis(bv)
    for k in sorted(candidates):
        plus = FermionMode(i, Sign.PLUS, HalfInt(k))
        minus = FermionMode(i, Sign.MINUS, HalfInt(2 * r - k))
        if not plus.is_creation and minus.is_creation:
            out = out + apply_word((minus, plus), start, -1)
        else:
            out = out + apply_word((plus, minus), start)
    return out


def heisenberg_mode(i: int, r: int, s: State) -> State:
    """alpha_i(r) = sum_k :psi_i+(k) psi_i-(r-k): on s."""
    out = State()
    for bv, c in s.terms.items():
        out = out + _heisenberg_on_basis(i, r, bv).scale(c)
    return out


# n-th products
def _field_mode(phi: FreeMode, m: int, j: int) -> Tuple[int, Optional[FreeMode]]:
    """Coefficient and mode of (d^(m) phi)_(j) = C(m-j-1, m) phi(j-m+1/2)."""
    coeff = binomial(m - j - 1, m)
    if not coeff:
        return 0, None
    mode = type(phi)(phi.species, phi.sign, HalfInt(2 * (j - m) + 1))
    return coeff, mode


def _leading_factor(A: BasisVector) -> Tuple[FreeMode, int, BasisVector]:
    phi = A.factors[0]
    m = (-phi.index.halves - 1) // 2
    if isinstance(phi, FermionMode):
        rest = BasisVector(A.ferm[1:], A.comm)
    else:
        rest = BasisVector((), A.comm[1:])
    return phi, m, rest


@lru_cache(maxsize=200_000)
def _basis_vertex_mode(A: BasisVector, n: int, v: BasisVector) -> Tuple[Tuple[BasisVector, Fraction], ...]:
    return tuple(_compute_vertex_mode(A, n, v).terms.items())


def _compute_vertex_mode(A: BasisVector, n: int, v: BasisVector) -> State:
    if A == VACUUM:
        return State.basis(v) if n == -1 else State()
    target = weight(A).halves + weight(v).halves - 2 * n - 2
    if target < 0:
        return State()
    phi, m, B = _leading_factor(A)
    room = weight(B).halves + weight(v).halves
    out = State()
    # creation part: sum_{j<0} phi_(j) B_(n-j-1) v with B_(n-j-1) v of weight >= 0
    j_min = n - room // 2 - 1
    for j in range(min(j_min, -1), 0):
        coeff, mode = _field_mode(phi, m, j)
        if mode is None:
            continue
        inner = vertex_mode_basis(B, n - j - 1, v)
        if inner:
            out = out + apply_mode(mode, inner).scale(coeff)
    if isinstance(phi, BosonMode):
        return out
    # annihilation part: sign * sum_{j>=m} B_(n-j-1) phi_(j) v, nonzero only while phi(j-m+1/2) <= wt(v)
    sign = -1 if B.fermion_parity else 1
    j = m
    while 2 * (j - m) + 1 <= weight(v).halves:
        coeff, mode = _field_mode(phi, m, j)
        hit = _fermion_on_basis(mode, v) if mode is not None else None
        if hit is not None:
            inner = vertex_mode_basis(B, n - j - 1, hit[1])
            if inner:
                out = out + inner.scale(sign * coeff * hit[0])
        j += 1
    return out


def vertex_mode_basis(A: BasisVector, n: int, v: BasisVector) -> State:
    return State(dict(_basis_vertex_mode(A, n, v)))


def _check_species(species: Optional[int], *states: State) -> None:
    if species is None:
        return
    for s in states:
        if s.max_species > species:
            raise SpeciesMismatch(f"state uses species {s.max_species} but only {species} declared")


def vertex_mode(A: State, n: int, v: State, species: Optional[int] = None) -> State:
    """A(n)v: the coefficient of z^(-n-1) in Y(A, z)v."""
    _check_species(species, A, v)
    out = State()
    for a_bv, a_c in A.terms.items():
        for v_bv, v_c in v.terms.items():
            out = out + vertex_mode_basis(a_bv, n, v_bv).scale(a_c * v_c)
    return out


def translate(A: State) -> State:
    """
    Translation operator T, a derivation with T|0> = 0 and
    [T, phi(s)] = (1/2 - s) phi(s - 1), so that Y(TA, z) = d/dz Y(A, z).
    """
    out = State()
    for bv, c in A.terms.items():
        factors = list(bv.factors)
        for pos, phi in enumerate(factors):
            m = (-phi.index.halves - 1) // 2
            raised = type(phi)(phi.species, phi.sign, phi.index - HalfInt(2))
            word = factors[:pos] + [raised] + factors[pos + 1 :]
            out = out + apply_word(word, State.vacuum(), c * (m + 1))
    return out


# Engine self-consistency
def _parity(s: State) -> int:
    return next(iter(s.terms)).fermion_parity if s else 0


def vacuum_axioms_check(samples: Sequence[State], n_max: int = 3):
    """A(-1)|0> = A and A(n)|0> = 0 for 0 <= n <= n_max."""
    vac = State.vacuum()
    failures = []
    for A in samples:
        created = vertex_mode(A, -1, vac)
        if created != A:
            failures.append(witness("A(-1)|0> differs from A", expected=A, actual=created))
        for n in range(0, n_max + 1):
            image = vertex_mode(A, n, vac)
            if image:
                failures.append(witness(f"A({n})|0> is nonzero", expected=State(), actual=image, state=str(A)))
    return make_report("fields.vacuum_axioms", not failures, {"samples": len(samples), "n_max": n_max}, failures[:10])


def translation_check(samples: Sequence[State], vectors: Sequence[State], n_window: Tuple[int, int] = (-2, 2)):
    """(TA)(n)v = -n A(n-1)v on every sample pair."""
    failures = []
    count = 0
    for A in samples:
        TA = translate(A)
        for v in vectors:
            for n in range(n_window[0], n_window[1] + 1):
                lhs = vertex_mode(TA, n, v)
                rhs = vertex_mode(A, n - 1, v).scale(-n)
                count += 1
                if lhs != rhs:
                    failures.append(witness(f"(TA)({n})v differs from -{n} A({n - 1})v", expected=rhs, actual=lhs, state=str(A), vector=str(v)))
    return make_report("fields.translation", not failures, {"evaluations": count}, failures[:10])


def borcherds_commutator(a: State, m: int, b: State, k: int, v: State) -> Tuple[State, State]:
    """
    Both sides of [a(m), b(k)]v = sum_{j>=0} C(m, j) (a(j)b)(m+k-j)v, the
    bracket taken with the super sign of a and b.
    """
    sign = -1 if _parity(a) and _parity(b) else 1
    lhs = vertex_mode(a, m, vertex_mode(b, k, v)) - vertex_mode(b, k, vertex_mode(a, m, v)).scale(sign)
    rhs = State()
    # a(j)b has weight wt(a) + wt(b) - j - 1, so the sum stops there
    top = (a.weight() + b.weight()).floor()
    for j in range(0, top + 1):
        coeff = binomial(m, j)
        if not coeff:
            continue
        ab = vertex_mode(a, j, b)
        if ab:
            rhs = rhs + vertex_mode(ab, m + k - j, v).scale(coeff)
    return lhs, rhs


def borcherds_check(
    generators: Sequence[Tuple[str, State]],
    vectors: Sequence[State],
    window: Tuple[int, int] = (-2, 2),
    name: str = "fields.borcherds",
):
    """Commutator formula for every ordered generator pair, m, k in window."""
    failures = []
    count = 0
    for a_name, a in generators:
        for b_name, b in generators:
            for m in range(window[0], window[1] + 1):
                for k in range(window[0], window[1] + 1):
                    for v in vectors:
                        lhs, rhs = borcherds_commutator(a, m, b, k, v)
                        count += 1
                        if lhs != rhs:
                            failures.append(
                                witness(f"[{a_name}({m}), {b_name}({k})] breaks the commutator formula", expected=rhs, actual=lhs, vector=str(v))
                            )
                            break
    logger.info(f"Borcherds check: {len(generators)} generators, {len(vectors)} vectors, {count} evaluations")
    return make_report(
        name,
        not failures,
        {"generators": [g for g, _ in generators], "window": f"{window[0]}..{window[1]}", "vectors": len(vectors), "evaluations": count},
        failures[:10],
    )


def clifford_check(vectors: Sequence[BasisVector], species: int = 1, max_index: int = 2):
    """
    {psi_i(r), psi_j(s)} acts as delta_ij delta_(r+s,0) for opposite signs and
    as zero otherwise, for |r|, |s| <= max_index - 1/2.
    """
    indices = [HalfInt(h) for h in range(-2 * max_index + 1, 2 * max_index, 2)]
    modes = [
        FermionMode(i, sign, r)
        for i in range(1, species + 1)
        for sign in (Sign.PLUS, Sign.MINUS)
        for r in indices
    ]
    failures = []
    for x in modes:
        for y in modes:
            expected_scalar = 1 if (x.species == y.species and x.sign is not y.sign and x.index + y.index == HalfInt(0)) else 0
            for bv in vectors:
                v = State.basis(bv)
                anti = apply_word((x, y), v) + apply_word((y, x), v)
                expected = v.scale(expected_scalar)
                if anti != expected:
                    failures.append(witness(f"{{{x}, {y}}} is not {expected_scalar}", bv, expected, anti))
                    break
    return make_report(
        "fields.clifford",
        not failures,
        {"modes": len(modes), "vectors": len(vectors)},
        failures[:10],
    )


def single_generator_check(vectors: Sequence[BasisVector], n_window: Tuple[int, int] = (-3, 3)):
    """
    vertex_mode of a single free generator phi(-1/2)|0> reproduces phi(n + 1/2),
    and every n-th product has the expected weight.
    """
    generators = [
        FermionMode(1, Sign.PLUS, HalfInt(-1)),
        FermionMode(1, Sign.MINUS, HalfInt(-1)),
        BosonMode(1, Sign.PLUS, HalfInt(-1)),
        BosonMode(1, Sign.MINUS, HalfInt(-1)),
    ]
    failures = []
    for phi in generators:
        A = State.from_modes(phi)
        for n in range(n_window[0], n_window[1] + 1):
            mode = type(phi)(phi.species, phi.sign, ModeIndex.from_product_index(n).physical)
            for bv in vectors:
                v = State.basis(bv)
                direct = apply_mode(mode, v)
                product = vertex_mode(A, n, v)
                if direct != product:
                    failures.append(witness(f"{phi}|0> ({n}) differs from {mode}", bv, direct, product))
                    break
                expected_weight = HalfInt(1) + weight(bv) - HalfInt(2 * n + 2)
                if product and product.weight() != expected_weight:
                    failures.append(witness(f"weight of {phi}|0> ({n})v", bv, actual=product, expected_weight=str(expected_weight)))
                    break
    return make_report(
        "fields.single_generator",
        not failures,
        {"vectors": len(vectors), "n_window": f"{n_window[0]}..{n_window[1]}"},
        failures[:10],
    )


def clear_caches() -> None:
    _basis_vertex_mode.cache_clear()


__all__ = [
    "SpeciesMismatch",
    "ModeIndex",
    "binomial",
    "apply_fermion_mode",
    "apply_boson_mode",
    "apply_mode",
    "apply_word",
    "heisenberg_mode",
    "vertex_mode",
    "vertex_mode_basis",
    "translate",
    "vacuum_axioms_check",
    "translation_check",
    "borcherds_commutator",
    "borcherds_check",
    "clifford_check",
    "single_generator_check",
    "clear_caches",
]
