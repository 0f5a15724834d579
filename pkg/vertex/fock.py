#!/usr/bin/env python3
"""
Fock Space Bases for the Fermionic and Commutative Free Fields

This module defines the mode and monomial types of F(n) (x) M(n), the
canonical ordering of fermionic monomials with its super-sign, the
weight and charge gradings, and complete basis enumeration under
charge constraints.

Canonical order of fermionic creation modes: species ascending, then
psi+ before psi-, then index ascending (most negative first). Bosonic
monomials are sorted multisets with the same key. A basis vector lists
its fermionic factors first.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from vertex.qchar import HalfInt

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class ModeError(ValueError):
    """Raised for a mode with an invalid species or a non half-odd index."""


class Sign(IntEnum):
    """Charge sign of a free field."""

    PLUS = 1
    MINUS = -1

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @property
    def order(self) -> int:
        return 0 if self is Sign.PLUS else 1

    @classmethod
    def parse(cls, value: Union[str, int, "Sign"]) -> "Sign":
        if isinstance(value, Sign):
            return value
        if value in ("+", 1, "1"):
            return cls.PLUS
        if value in ("-", -1, "-1"):
            return cls.MINUS
        raise ModeError(f"Unknown sign: {value!r}")

    def flip(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class Sector(str, Enum):
    """Which tensor factors of F (x) M a basis may use."""

    FERMION = "fermion"
    BOSON = "boson"
    FULL = "full"


@dataclass(frozen=True)
class _Mode:
    species: int
    sign: Sign
    index: HalfInt

    def __post_init__(self):
        object.__setattr__(self, "sign", Sign.parse(self.sign))
        object.__setattr__(self, "index", HalfInt.of(self.index))
        if not isinstance(self.species, int) or self.species < 1:
            raise ModeError(f"species must be a positive integer, got {self.species!r}")
        if self.index.is_integer():
            raise ModeError(f"mode index must lie in Z+1/2, got {self.index}")

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.species, self.sign.order, self.index.halves)

    @property
    def is_creation(self) -> bool:
        return self.index.halves < 0

    @property
    def weight(self) -> HalfInt:
        return -self.index

    def to_triple(self) -> List[Any]:
        return [self.species, self.sign.symbol, str(self.index)]


@dataclass(frozen=True)
class FermionMode(_Mode):
    """Psi_i^sign(index); creation for index < 0, annihilation for index > 0."""

    def __str__(self) -> str:
        return f"psi{self.species}{self.sign.symbol}({self.index})"

    @property
    def is_odd(self) -> bool:
        return True


@dataclass(frozen=True)
class BosonMode(_Mode):
    """a_i^sign(index) of the commutative vertex algebra M; only index < 0 acts nontrivially."""

    def __str__(self) -> str:
        return f"a{self.species}{self.sign.symbol}({self.index})"

    @property
    def is_odd(self) -> bool:
        return False


FreeMode = Union[FermionMode, BosonMode]
FermMonomial = Tuple[FermionMode, ...]
CommMonomial = Tuple[BosonMode, ...]


def canonicalize(raw: Sequence[FermionMode]) -> Optional[Tuple[int, FermMonomial]]:
    """
    Sort fermionic creation modes into canonical order.

    Returns (parity, monomial) where parity is the sign of the sorting
    permutation, or None when a mode repeats.
    """
    modes = list(raw)
    parity = 1
    # insertion sort; each adjacent swap of two odd modes flips the sign
    for i in range(1, len(modes)):
        j = i
        while j > 0:
            left, right = modes[j - 1].key, modes[j].key
            if left == right:
                return None
            if left < right:
                break
            modes[j - 1], modes[j] = modes[j], modes[j - 1]
            parity = -parity
            j -= 1
    return parity, tuple(modes)


def sort_comm(raw: Iterable[BosonMode]) -> CommMonomial:
    return tuple(sorted(raw, key=lambda m: m.key))


@dataclass(frozen=True)
class BasisVector:
    """A canonical fermionic monomial times a bosonic monomial applied to the vacuum."""

    ferm: FermMonomial = ()
    comm: CommMonomial = ()

    @property
    def key(self) -> Tuple[Any, ...]:
        return (
            (weight(self).halves,)
            + tuple(m.key for m in self.ferm)
            + ((99, 99, 99),)
            + tuple(m.key for m in self.comm)
        )

    @property
    def factors(self) -> Tuple[FreeMode, ...]:
        return self.ferm + self.comm

    @property
    def fermion_parity(self) -> int:
        return len(self.ferm) % 2

    @property
    def max_species(self) -> int:
        return max((m.species for m in self.factors), default=0)

    def __str__(self) -> str:
        if not self.factors:
            return "|0>"
        return " ".join(str(m) for m in self.factors) + " |0>"

    def to_json(self) -> Dict[str, List[List[Any]]]:
        return {
            "ferm": [m.to_triple() for m in self.ferm],
            "comm": [m.to_triple() for m in self.comm],
        }


VACUUM = BasisVector()


def make_basis_vector(
    ferm: Iterable[FermionMode] = (), comm: Iterable[BosonMode] = ()
) -> Tuple[int, Optional[BasisVector]]:
    """Build a basis vector from unordered creation modes; returns (sign, vector or None)."""
    ferm = list(ferm)
    comm = list(comm)
    for m in ferm + comm:
        if not m.is_creation:
            raise ModeError(f"basis vectors contain creation modes only, got {m}")
    canon = canonicalize(ferm)
    if canon is None:
        return 0, None
    parity, mono = canon
    return parity, BasisVector(mono, sort_comm(comm))


def weight(v: BasisVector) -> HalfInt:
    """Sum of -index over every factor."""
    return HalfInt(-sum(m.index.halves for m in v.factors))


@dataclass(frozen=True)
class ChargeProfile:
    """Per-species fermionic and bosonic charges (#plus - #minus) with their totals."""

    fermion: Tuple[int, ...]
    boson: Tuple[int, ...]

    @property
    def fermion_total(self) -> int:
        return sum(self.fermion)

    @property
    def boson_total(self) -> int:
        return sum(self.boson)

    @property
    def total(self) -> int:
        return self.fermion_total + self.boson_total

    @property
    def per_species_total(self) -> Tuple[int, ...]:
        return tuple(f + b for f, b in zip(self.fermion, self.boson))


def charge(v: BasisVector, n: Optional[int] = None) -> ChargeProfile:
    """Charge profile of v over species 1..n (n defaults to the largest species present)."""
    n = max(n or 0, v.max_species, 1)
    ferm = [0] * n
    boson = [0] * n
    for m in v.ferm:
        ferm[m.species - 1] += int(m.sign)
    for m in v.comm:
        boson[m.species - 1] += int(m.sign)
    return ChargeProfile(tuple(ferm), tuple(boson))


@dataclass(frozen=True)
class ChargeConstraint:
    """Optional restrictions on the charge of enumerated basis vectors."""

    fermion_total: Optional[int] = None
    boson_total: Optional[int] = None
    total: Optional[int] = None
    species_balanced: bool = False

    def accepts_totals(self, lf: int, lm: int) -> bool:
        if self.fermion_total is not None and lf != self.fermion_total:
            return False
        if self.boson_total is not None and lm != self.boson_total:
            return False
        if self.total is not None and lf + lm != self.total:
            return False
        return True

    def accepts(self, profile: ChargeProfile) -> bool:
        if not self.accepts_totals(profile.fermion_total, profile.boson_total):
            return False
        if self.species_balanced and any(profile.per_species_total):
            return False
        return True


NO_CONSTRAINT = ChargeConstraint()


class State:
    """Finite rational combination of basis vectors; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[BasisVector, Rational]] = None):
        self._terms: Dict[BasisVector, Fraction] = {}
        if terms:
            for bv, c in terms.items():
                c = Fraction(c)
                if c:
                    self._terms[bv] = c

    @classmethod
    def zero(cls) -> "State":
        return cls()

    @classmethod
    def basis(cls, bv: BasisVector, coeff: Rational = 1) -> "State":
        return cls({bv: coeff})

    @classmethod
    def vacuum(cls) -> "State":
        return cls({VACUUM: 1})

    @classmethod
    def from_modes(cls, *modes: FreeMode, coeff: Rational = 1) -> "State":
        """The product of creation modes (left to right) applied to the vacuum."""
        ferm = [m for m in modes if isinstance(m, FermionMode)]
        comm = [m for m in modes if isinstance(m, BosonMode)]
        sign, bv = make_basis_vector(ferm, comm)
        if bv is None:
            return cls()
        return cls({bv: sign * Fraction(coeff)})

    @property
    def terms(self) -> Dict[BasisVector, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[BasisVector, Fraction]]:
        """Terms in deterministic basis order."""
        return sorted(self._terms.items(), key=lambda t: t[0].key)

    def coefficient(self, bv: BasisVector) -> Fraction:
        return self._terms.get(bv, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[BasisVector]:
        return iter(self._terms)

    def __contains__(self, bv: object) -> bool:
        return bv in self._terms

    def add_term(self, bv: BasisVector, coeff: Rational) -> None:
        """In-place accumulation, used by the mode engine while building results."""
        c = self._terms.get(bv, Fraction(0)) + coeff
        if c:
            self._terms[bv] = c
        else:
            self._terms.pop(bv, None)

    def __add__(self, other: "State") -> "State":
        out = State(self._terms)
        for bv, c in other._terms.items():
            out.add_term(bv, c)
        return out

    def __sub__(self, other: "State") -> "State":
        return self + other.scale(-1)

    def __neg__(self) -> "State":
        return self.scale(-1)

    def scale(self, c: Rational) -> "State":
        c = Fraction(c)
        if not c:
            return State()
        out = State()
        out._terms = {bv: c * x for bv, x in self._terms.items()}
        return out

    def __mul__(self, c: Rational) -> "State":
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def weights(self) -> List[HalfInt]:
        return sorted({weight(bv) for bv in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def weight(self) -> Optional[HalfInt]:
        """Common weight of a homogeneous state; None for zero or mixed states."""
        ws = self.weights()
        return ws[0] if len(ws) == 1 else None

    def charges(self, n: Optional[int] = None) -> List[ChargeProfile]:
        profiles = {charge(bv, n) for bv in self._terms}
        return sorted(profiles, key=lambda p: (p.fermion, p.boson))

    @property
    def max_species(self) -> int:
        return max((bv.max_species for bv in self._terms), default=0)

    def has_fermions(self) -> bool:
        return any(bv.ferm for bv in self._terms)

    def has_bosons(self) -> bool:
        return any(bv.comm for bv in self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for bv, c in self.items():
            parts.append(f"({c}) {bv}")
        return " + ".join(parts)

    __repr__ = __str__


# Enumeration
def _fermion_modes(n: int, max_weight: HalfInt) -> List[FermionMode]:
    modes = []
    for species in range(1, n + 1):
        for sign in (Sign.PLUS, Sign.MINUS):
            for h in range(1, max_weight.halves + 1, 2):
                modes.append(FermionMode(species, sign, HalfInt(-h)))
    return sorted(modes, key=lambda m: m.key)


def _boson_modes(n: int, max_weight: HalfInt) -> List[BosonMode]:
    modes = []
    for species in range(1, n + 1):
        for sign in (Sign.PLUS, Sign.MINUS):
            for h in range(1, max_weight.halves + 1, 2):
                modes.append(BosonMode(species, sign, HalfInt(-h)))
    return sorted(modes, key=lambda m: m.key)


def _subsets(modes: List[FermionMode], room: int, start: int = 0) -> Iterator[Tuple[FermionMode, ...]]:
    # modes are canonical, so increasing positions give canonical monomials
    yield ()
    for pos in range(start, len(modes)):
        cost = -modes[pos].index.halves
        if cost > room:
            continue
        for rest in _subsets(modes, room - cost, pos + 1):
            yield (modes[pos],) + rest


def _multisets(modes: List[BosonMode], room: int, start: int = 0) -> Iterator[Tuple[BosonMode, ...]]:
    yield ()
    for pos in range(start, len(modes)):
        cost = -modes[pos].index.halves
        if cost > room:
            continue
        for rest in _multisets(modes, room - cost, pos):
            yield (modes[pos],) + rest


def _bucket(monomials: Iterable[Tuple[_Mode, ...]]) -> Dict[Tuple[int, int], List[Tuple[_Mode, ...]]]:
    buckets: Dict[Tuple[int, int], List[Tuple[_Mode, ...]]] = defaultdict(list)
    for mono in monomials:
        w = -sum(m.index.halves for m in mono)
        q = sum(int(m.sign) for m in mono)
        buckets[(w, q)].append(mono)
    return buckets


def enumerate_basis(
    n: int,
    max_weight,
    sector: Sector = Sector.FULL,
    constraint: ChargeConstraint = NO_CONSTRAINT,
    min_weight=0,
) -> List[BasisVector]:
    """
    Every basis vector of F(n) (x) M(n) with min_weight <= weight <= max_weight
    satisfying the charge constraint, sorted by (weight, canonical key).
    """
    if n < 1:
        raise ModeError(f"species count must be >= 1, got {n}")
    top = HalfInt.of(max_weight)
    low = HalfInt.of(min_weight)
    if top.halves < 0:
        return []
    sector = Sector(sector)

    if sector is Sector.BOSON:
        ferm_buckets = {(0, 0): [()]}
    else:
        ferm_buckets = _bucket(_subsets(_fermion_modes(n, top), top.halves))
    if sector is Sector.FERMION:
        comm_buckets = {(0, 0): [()]}
    else:
        comm_buckets = _bucket(_multisets(_boson_modes(n, top), top.halves))

    result: List[BasisVector] = []
    for (wf, lf), ferms in ferm_buckets.items():
        for (wm, lm), comms in comm_buckets.items():
            if not low.halves <= wf + wm <= top.halves:
                continue
            if not constraint.accepts_totals(lf, lm):
                continue
            for f, c in product(ferms, comms):
                bv = BasisVector(f, c)
                if constraint.species_balanced and not constraint.accepts(charge(bv, n)):
                    continue
                result.append(bv)
    result.sort(key=lambda bv: bv.key)
    logger.debug(f"enumerate_basis(n={n}, max_weight={top}, sector={sector.value}): {len(result)} vectors")
    return result


def basis_by_weight(basis: Iterable[BasisVector]) -> Dict[HalfInt, List[BasisVector]]:
    """Group an enumerated basis into weight blocks, preserving order."""
    blocks: Dict[HalfInt, List[BasisVector]] = defaultdict(list)
    for bv in basis:
        blocks[weight(bv)].append(bv)
    return dict(sorted(blocks.items()))


def graded_dimensions(basis: Iterable[BasisVector]) -> Dict[HalfInt, int]:
    return {w: len(block) for w, block in basis_by_weight(basis).items()}


def lowest_charge_vector(ell: int, species: int = 1) -> BasisVector:
    """psi+(-l+1/2)...psi+(-1/2)|0> for l > 0, the psi- analogue for l < 0, the vacuum for l = 0."""
    if ell == 0:
        return VACUUM
    sign = Sign.PLUS if ell > 0 else Sign.MINUS
    modes = [FermionMode(species, sign, HalfInt(1 - 2 * k)) for k in range(abs(ell), 0, -1)]
    parity, mono = canonicalize(modes)
    return BasisVector(mono)


# JSON codec
def _parse_mode(cls, triple: Sequence[Any]) -> _Mode:
    if len(triple) != 3:
        raise ModeError(f"mode must be [species, sign, index], got {triple!r}")
    species, sign, index = triple
    return cls(int(species), Sign.parse(sign), HalfInt.of(str(index)))


def parse_basis_vector(data: Mapping[str, Any]) -> Tuple[int, Optional[BasisVector]]:
    ferm = [_parse_mode(FermionMode, t) for t in data.get("ferm", [])]
    comm = [_parse_mode(BosonMode, t) for t in data.get("comm", [])]
    return make_basis_vector(ferm, comm)


def parse_state(data: Iterable[Mapping[str, Any]]) -> State:
    """
    Decode a list of {"coeff": "p/q", "ferm": [[i, "+", "-1/2"], ...], "comm": [...]}.

    Fermionic factors are read left to right and canonicalized with their sign.
    """
    out = State()
    for entry in data:
        sign, bv = parse_basis_vector(entry)
        if bv is None:
            continue
        out.add_term(bv, sign * Fraction(str(entry.get("coeff", "1"))))
    return out


def dump_state(state: State) -> List[Dict[str, Any]]:
    return [{"coeff": str(c), **bv.to_json()} for bv, c in state.items()]


__all__ = [
    "ModeError",
    "Sign",
    "Sector",
    "FermionMode",
    "BosonMode",
    "FreeMode",
    "FermMonomial",
    "CommMonomial",
    "BasisVector",
    "VACUUM",
    "State",
    "ChargeProfile",
    "ChargeConstraint",
    "NO_CONSTRAINT",
    "canonicalize",
    "sort_comm",
    "make_basis_vector",
    "weight",
    "charge",
    "enumerate_basis",
    "basis_by_weight",
    "graded_dimensions",
    "lowest_charge_vector",
    "parse_basis_vector",
    "parse_state",
    "dump_state",
]
