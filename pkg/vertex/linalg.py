#!/usr/bin/env python3
"""
Exact Linear Algebra over Enumerated Bases

Rank, reduced echelon form and nullspaces of sparse rational matrices via
sympy's DomainMatrix over QQ, plus the weight-graded subspace type and the
span-closure search shared by the center, Whittaker and invariant checks.

Vectors are States; their coordinates are taken over the BasisVectors
that occur in them, with columns sorted by the canonical basis key so
that echelon forms are reproducible.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from vertex.fock import BasisVector, State, weight
from vertex.qchar import HalfInt

logger = logging.getLogger(__name__)

SparseRow = Dict[int, Fraction]


def _to_domain(rows: Sequence[SparseRow], ncols: int) -> DomainMatrix:
    data = {}
    for i, row in enumerate(rows):
        entries = {j: QQ(c.numerator, c.denominator) for j, c in row.items() if c}
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rref(rows: Sequence[SparseRow], ncols: int) -> Tuple[List[SparseRow], Tuple[int, ...]]:
    """Reduced row echelon form: nonzero rows and pivot columns."""
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _to_domain(rows, ncols).rref()
    out: List[SparseRow] = [dict() for _ in pivots]
    for (i, j), x in reduced.to_dok().items():
        if i < len(pivots) and x:
            out[i][j] = _to_fraction(x)
    return out, tuple(pivots)


def rank(rows: Sequence[SparseRow], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return _to_domain(rows, ncols).rank()


def nullspace(rows: Sequence[SparseRow], ncols: int) -> List[SparseRow]:
    """Basis of {x : Ax = 0} in reduced echelon form; one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec: SparseRow = {free: Fraction(1)}
        for row, p in zip(reduced, pivots):
            c = row.get(free)
            if c:
                vec[p] = -c
        kernel.append(vec)
    echelon, _ = rref(kernel, ncols)
    return echelon


def coordinates(states: Iterable[State]) -> Tuple[List[BasisVector], List[SparseRow]]:
    """Sorted column basis and one sparse row per state."""
    states = list(states)
    columns = sorted({bv for s in states for bv in s}, key=lambda bv: bv.key)
    index = {bv: j for j, bv in enumerate(columns)}
    rows = [{index[bv]: c for bv, c in s.terms.items()} for s in states]
    return columns, rows


def rank_of_states(states: Iterable[State]) -> int:
    columns, rows = coordinates(states)
    return rank(rows, len(columns))


def row_to_state(row: SparseRow, columns: Sequence[BasisVector]) -> State:
    return State({columns[j]: c for j, c in row.items()})


def echelon_states(states: Iterable[State]) -> List[State]:
    """Reduced echelon basis of the span, as States."""
    columns, rows = coordinates(states)
    reduced, _ = rref(rows, len(columns))
    return [row_to_state(r, columns) for r in reduced]


def joint_kernel(
    basis: Sequence[BasisVector], operators: Iterable[Callable[[State], State]]
) -> List[State]:
    """
    States in span(basis) annihilated by every operator.

    Rows of the stacked matrix are output coordinates, columns the input basis.
    """
    rows: List[SparseRow] = []
    for op in operators:
        local: Dict[BasisVector, int] = {}
        for col, bv in enumerate(basis):
            for out_bv, c in op(State.basis(bv)).terms.items():
                if out_bv not in local:
                    local[out_bv] = len(rows)
                    rows.append({})
                rows[local[out_bv]][col] = c
    kernel = nullspace(rows, len(basis))
    return [State({basis[j]: c for j, c in vec.items()}) for vec in kernel]


class RowSpace:
    """
    Fully reduced incremental row space; columns are added as basis vectors appear.

    Span closures add vectors one at a time and ask after each one whether the
    rank grew, so rows are kept reduced against each other over Fraction instead
    of rebuilding a DomainMatrix per candidate. Batch rank and kernels still go
    through rref and nullspace above.
    """

    def __init__(self):
        self.columns: Dict[BasisVector, int] = {}
        self.rows: Dict[int, SparseRow] = {}
        self.vectors: List[State] = []

    def __len__(self) -> int:
        return len(self.rows)

    def _coords(self, s: State) -> SparseRow:
        row = {}
        for bv, c in s.terms.items():
            j = self.columns.setdefault(bv, len(self.columns))
            row[j] = c
        return row

    def _reduce(self, row: SparseRow) -> SparseRow:
        row = dict(row)
        for p, prow in self.rows.items():
            c = row.get(p)
            if c:
                for j, x in prow.items():
                    v = row.get(j, Fraction(0)) - c * x
                    if v:
                        row[j] = v
                    else:
                        row.pop(j, None)
        return row

    def add(self, s: State) -> bool:
        row = self._reduce(self._coords(s))
        if not row:
            return False
        p = min(row)
        lead = row[p]
        row = {j: x / lead for j, x in row.items()}
        for q, qrow in self.rows.items():
            c = qrow.get(p)
            if c:
                for j, x in row.items():
                    v = qrow.get(j, Fraction(0)) - c * x
                    if v:
                        qrow[j] = v
                    else:
                        qrow.pop(j, None)
        self.rows[p] = row
        self.vectors.append(s)
        return True

    def contains(self, s: State) -> bool:
        # no row has support on an unseen basis vector
        if any(bv not in self.columns for bv in s):
            return False
        return not self._reduce(self._coords(s))


@dataclass
class GradedSubspace:
    """A subspace of F (x) M given weight by weight up to a cutoff."""

    cutoff: HalfInt
    blocks: Dict[HalfInt, RowSpace] = field(default_factory=dict)

    @classmethod
    def from_states(cls, states: Iterable[State], cutoff) -> "GradedSubspace":
        space = cls(HalfInt.of(cutoff))
        for s in states:
            space.add(s)
        return space

    def _block(self, w: HalfInt) -> RowSpace:
        if w not in self.blocks:
            self.blocks[w] = RowSpace()
        return self.blocks[w]

    def add(self, s: State) -> bool:
        """Add a homogeneous state; returns True when it enlarged the span."""
        if not s:
            return False
        w = s.weight()
        if w is None:
            raise ValueError("GradedSubspace.add needs a weight-homogeneous state")
        if w > self.cutoff:
            return False
        return self._block(w).add(s)

    def contains(self, s: State) -> bool:
        if not s:
            return True
        parts: Dict[HalfInt, State] = defaultdict(State)
        for bv, c in s.terms.items():
            parts[weight(bv)].add_term(bv, c)
        for w, part in parts.items():
            if w > self.cutoff or w not in self.blocks or not self.blocks[w].contains(part):
                return False
        return True

    def dim(self, w) -> int:
        block = self.blocks.get(HalfInt.of(w))
        return len(block.rows) if block else 0

    def dims(self) -> Dict[HalfInt, int]:
        """Dimension at every weight from 0 to the cutoff in steps of 1/2."""
        return {HalfInt(h): self.dim(HalfInt(h)) for h in range(self.cutoff.halves + 1)}

    def generators(self, w) -> List[State]:
        """The states that were added as independent vectors at weight w."""
        block = self.blocks.get(HalfInt.of(w))
        return list(block.vectors) if block else []

    def basis(self, w) -> List[State]:
        """Reduced echelon basis at weight w over sorted columns."""
        return echelon_states(self.generators(w))

    def all_generators(self) -> List[State]:
        return [s for w in sorted(self.blocks) for s in self.blocks[w].vectors]

    def is_subspace_of(self, other: "GradedSubspace") -> bool:
        return all(other.contains(s) for s in self.all_generators())


@dataclass(frozen=True)
class Raiser:
    """A linear operator raising weight by a fixed amount, used in span closures."""

    label: str
    shift: HalfInt
    apply: Callable[[State], State]


def span_closure(
    seeds: Iterable[State], raisers: Sequence[Raiser], max_weight, on_add: Optional[Callable[[State], None]] = None
) -> GradedSubspace:
    """
    Smallest graded subspace containing the seeds and closed under the
    raisers, truncated at max_weight.
    """
    cutoff = HalfInt.of(max_weight)
    space = GradedSubspace(cutoff)
    pending: List[State] = []
    for s in seeds:
        if space.add(s):
            pending.append(s)
    steps = 0
    while pending:
        current = pending.pop()
        w = current.weight()
        for raiser in raisers:
            if w + raiser.shift > cutoff:
                continue
            image = raiser.apply(current)
            steps += 1
            if image and space.add(image):
                pending.append(image)
                if on_add is not None:
                    on_add(image)
    logger.debug(f"span_closure: {steps} raiser applications, dims {list(space.dims().values())}")
    return space


def same_span(a: GradedSubspace, b: GradedSubspace) -> bool:
    return a.dims() == b.dims() and a.is_subspace_of(b)


__all__ = [
    "rref",
    "rank",
    "nullspace",
    "coordinates",
    "rank_of_states",
    "row_to_state",
    "echelon_states",
    "joint_kernel",
    "RowSpace",
    "GradedSubspace",
    "Raiser",
    "span_closure",
    "same_span",
]
