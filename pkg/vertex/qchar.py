#!/usr/bin/env python3
"""
Exact Truncated q-Series and Character Formulas

This module provides exact arithmetic on formal power series in q^(1/2)
with rational coefficients, two-variable (z, q) series for constant-term
extraction, and every character formula used by the workbench:

- q-Pochhammer symbols (q)_k and (q)_inf
- the three forms of the Hilbert-Poincare series of the commutative
  center M_0 (constant term, theta sum, Ramanujan sum)
- characters of the charge-zero vertex algebra V = (F (x) M)_0
- charge-sector characters of the fermionic Fock space F

Exponents of q live in (1/2)Z>=0 and are stored in half-units as
integers, so no floating point is ever involved.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


class InvertNonUnit(ValueError):
    """Raised when inverting a series whose constant term is zero."""


@dataclass(frozen=True, order=True)
class HalfInt:
    """An exact element of (1/2)Z stored as a count of half-units."""

    halves: int

    @classmethod
    def of(cls, value: Union["HalfInt", int, Fraction, str]) -> "HalfInt":
        """Coerce an int, Fraction, 'p/q' string or HalfInt to a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise ValueError(f"Not a half-integer: {value!r}")
        if isinstance(value, int):
            return cls(2 * value)
        frac = Fraction(value)
        doubled = 2 * frac
        if doubled.denominator != 1:
            raise ValueError(f"Not a half-integer: {value!r}")
        return cls(int(doubled))

    def to_fraction(self) -> Fraction:
        return Fraction(self.halves, 2)

    def is_integer(self) -> bool:
        return self.halves % 2 == 0

    def floor(self) -> int:
        return self.halves // 2

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.halves + HalfInt.of(other).halves)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.halves - HalfInt.of(other).halves)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.halves)

    def __mul__(self, k: int) -> "HalfInt":
        return HalfInt(self.halves * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return str(self.to_fraction())

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def _as_fraction(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class QSeries:
    """
    Truncated power series in q^(1/2) with exact rational coefficients.

    ``terms[h]`` is the coefficient of q^(h/2) for 0 <= h <= cutoff.halves.
    Arithmetic between series of different cutoffs truncates at the
    smaller one.
    """

    cutoff: HalfInt
    terms: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.cutoff.halves < 0:
            raise ValueError(f"cutoff must be >= 0, got {self.cutoff}")
        if len(self.terms) != self.cutoff.halves + 1:
            raise ValueError("terms length must equal cutoff in half-units plus one")

    # Constructors
    @classmethod
    def zero(cls, cutoff) -> "QSeries":
        n = HalfInt.of(cutoff)
        return cls(n, (Fraction(0),) * (n.halves + 1))

    @classmethod
    def one(cls, cutoff) -> "QSeries":
        return cls.monomial(0, 1, cutoff)

    @classmethod
    def monomial(cls, exponent, coeff: Rational, cutoff) -> "QSeries":
        """c * q^exponent truncated at cutoff (zero when exponent > cutoff)."""
        n = HalfInt.of(cutoff)
        e = HalfInt.of(exponent)
        if e.halves < 0:
            raise ValueError(f"negative exponent {e}")
        terms = [Fraction(0)] * (n.halves + 1)
        if e.halves <= n.halves:
            terms[e.halves] = _as_fraction(coeff)
        return cls(n, tuple(terms))

    @classmethod
    def from_coeffs(cls, coeffs: Mapping, cutoff) -> "QSeries":
        """Build from a map exponent -> coefficient; exponents above cutoff are dropped."""
        n = HalfInt.of(cutoff)
        terms = [Fraction(0)] * (n.halves + 1)
        for exponent, coeff in coeffs.items():
            e = HalfInt.of(exponent)
            if e.halves < 0:
                raise ValueError(f"negative exponent {e}")
            if e.halves <= n.halves:
                terms[e.halves] += _as_fraction(coeff)
        return cls(n, tuple(terms))

    @classmethod
    def from_integer_list(cls, values: Iterable[Rational], cutoff=None) -> "QSeries":
        """Series sum_m values[m] q^m; cutoff defaults to the last listed exponent."""
        values = list(values)
        n = HalfInt.of(cutoff if cutoff is not None else max(len(values) - 1, 0))
        return cls.from_coeffs({m: v for m, v in enumerate(values)}, n)

    # Accessors
    @property
    def coeffs(self) -> Dict[HalfInt, Fraction]:
        """Nonzero coefficients keyed by exponent."""
        return {HalfInt(h): c for h, c in enumerate(self.terms) if c}

    def coefficient(self, exponent) -> Fraction:
        e = HalfInt.of(exponent)
        if e.halves < 0:
            return Fraction(0)
        if e.halves > self.cutoff.halves:
            raise ValueError(f"exponent {e} beyond cutoff {self.cutoff}")
        return self.terms[e.halves]

    def __getitem__(self, exponent) -> Fraction:
        return self.coefficient(exponent)

    def integer_coefficients(self) -> List[Fraction]:
        """Coefficients of q^0, q^1, ..., q^floor(cutoff)."""
        return [self.terms[2 * m] for m in range(self.cutoff.floor() + 1)]

    def truncate(self, cutoff) -> "QSeries":
        n = HalfInt.of(cutoff)
        if n.halves > self.cutoff.halves:
            raise ValueError(f"cannot extend series from {self.cutoff} to {n}")
        return QSeries(n, self.terms[: n.halves + 1])

    # Arithmetic
    def _aligned(self, other: "QSeries") -> Tuple[int, Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        top = min(self.cutoff.halves, other.cutoff.halves)
        return top, self.terms[: top + 1], other.terms[: top + 1]

    def __add__(self, other: "QSeries") -> "QSeries":
        top, a, b = self._aligned(other)
        return QSeries(HalfInt(top), tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "QSeries") -> "QSeries":
        top, a, b = self._aligned(other)
        return QSeries(HalfInt(top), tuple(x - y for x, y in zip(a, b)))

    def __neg__(self) -> "QSeries":
        return QSeries(self.cutoff, tuple(-x for x in self.terms))

    def scale(self, c: Rational) -> "QSeries":
        c = _as_fraction(c)
        return QSeries(self.cutoff, tuple(c * x for x in self.terms))

    def __mul__(self, other: Union["QSeries", Rational]) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scale(other)
        top, a, b = self._aligned(other)
        out = [Fraction(0)] * (top + 1)
        nonzero_b = [(j, y) for j, y in enumerate(b) if y]
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in nonzero_b:
                if i + j > top:
                    break
                out[i + j] += x * y
        return QSeries(HalfInt(top), tuple(out))

    def __rmul__(self, other: Rational) -> "QSeries":
        return self.scale(other)

    def invert(self) -> "QSeries":
        """Multiplicative inverse through the cutoff."""
        a = self.terms
        if not a[0]:
            raise InvertNonUnit("series has zero constant term")
        top = self.cutoff.halves
        inv0 = 1 / a[0]
        out = [Fraction(0)] * (top + 1)
        out[0] = inv0
        support = [(i, x) for i, x in enumerate(a) if x and i > 0]
        for k in range(1, top + 1):
            acc = Fraction(0)
            for i, x in support:
                if i > k:
                    break
                acc += x * out[k - i]
            out[k] = -inv0 * acc
        return QSeries(self.cutoff, tuple(out))

    def __truediv__(self, other: Union["QSeries", Rational]) -> "QSeries":
        if isinstance(other, QSeries):
            return self * other.invert()
        return self.scale(1 / _as_fraction(other))

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.invert() ** (-k)
        result = QSeries.one(self.cutoff)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exponent) -> "QSeries":
        """Multiply by q^exponent, keeping the cutoff."""
        e = HalfInt.of(exponent)
        if e.halves < 0:
            raise ValueError("shift exponent must be >= 0")
        top = self.cutoff.halves
        out = [Fraction(0)] * e.halves + list(self.terms)
        return QSeries(self.cutoff, tuple(out[: top + 1]))

    def times_binomial(self, exponent, coeff: Rational) -> "QSeries":
        """Multiply by (1 + coeff * q^exponent) in linear time."""
        e = HalfInt.of(exponent).halves
        c = _as_fraction(coeff)
        out = list(self.terms)
        for h in range(len(out) - 1, e - 1, -1):
            out[h] += c * self.terms[h - e]
        return QSeries(self.cutoff, tuple(out))

    def equals_up_to(self, other: "QSeries", cutoff=None) -> bool:
        """Coefficientwise equality through cutoff (default: the common cutoff)."""
        top = min(self.cutoff.halves, other.cutoff.halves)
        if cutoff is not None:
            n = HalfInt.of(cutoff).halves
            if n > top:
                raise ValueError(f"cannot compare beyond common cutoff {HalfInt(top)}")
            top = n
        return self.terms[: top + 1] == other.terms[: top + 1]

    # Serialization
    def to_json_dict(self) -> Dict[str, object]:
        """{"cutoff": "N", "coeffs": {"0": "1", "1/2": "0", ...}} with every exponent listed."""
        return {
            "cutoff": str(self.cutoff),
            "coeffs": {str(HalfInt(h)): str(c) for h, c in enumerate(self.terms)},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, object]) -> "QSeries":
        coeffs = {HalfInt.of(str(k)): Fraction(str(v)) for k, v in dict(data["coeffs"]).items()}
        return cls.from_coeffs(coeffs, HalfInt.of(str(data["cutoff"])))

    def to_rows(self) -> List[Tuple[str, int, int]]:
        """(exponent, numerator, denominator) rows for CSV output."""
        return [(str(HalfInt(h)), c.numerator, c.denominator) for h, c in enumerate(self.terms)]

    def __str__(self) -> str:
        parts = []
        for h, c in enumerate(self.terms):
            if not c:
                continue
            e = HalfInt(h)
            if h == 0:
                parts.append(str(c))
            else:
                coeff = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                parts.append(f"{coeff}q^{e}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{HalfInt(self.cutoff.halves + 1)})"


@dataclass(frozen=True)
class ZQPoly:
    """
    Finite Laurent polynomial in z whose coefficients are truncated q-series.

    Every coefficient shares one cutoff, and the z-support is kept inside
    ``window``. The default window [-2N, 2N] is lossless for products of
    factors q^h z^(+-1) with h >= 1/2, because each unit of |z| costs at
    least half a unit of q.
    """

    cutoff: HalfInt
    terms: Mapping[int, QSeries] = field(default_factory=dict)
    window: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.window is None:
            object.__setattr__(self, "window", (-self.cutoff.halves, self.cutoff.halves))
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"empty window {self.window}")
        clean = {}
        for z, series in sorted(self.terms.items()):
            if lo <= z <= hi and any(series.terms):
                clean[z] = series.truncate(self.cutoff) if series.cutoff != self.cutoff else series
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls, cutoff, window: Optional[Tuple[int, int]] = None) -> "ZQPoly":
        n = HalfInt.of(cutoff)
        return cls(n, {0: QSeries.one(n)}, window)

    def coefficient(self, z: int) -> QSeries:
        return self.terms.get(z, QSeries.zero(self.cutoff))

    def constant_term(self) -> QSeries:
        """Coefficient of z^0, i.e. the residue Res_z z^-1 of the series."""
        return self.coefficient(0)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self.terms))

    def _with_terms(self, terms: Dict[int, QSeries]) -> "ZQPoly":
        return ZQPoly(self.cutoff, terms, self.window)

    def __add__(self, other: "ZQPoly") -> "ZQPoly":
        out = dict(self.terms)
        for z, series in other.terms.items():
            out[z] = out[z] + series if z in out else series
        return ZQPoly(min(self.cutoff, other.cutoff), out, _meet(self.window, other.window))

    def __sub__(self, other: "ZQPoly") -> "ZQPoly":
        return self + other.scale(-1)

    def scale(self, c: Rational) -> "ZQPoly":
        return self._with_terms({z: s.scale(c) for z, s in self.terms.items()})

    def __mul__(self, other: "ZQPoly") -> "ZQPoly":
        cutoff = min(self.cutoff, other.cutoff)
        window = _meet(self.window, other.window)
        out: Dict[int, QSeries] = {}
        for z1, s1 in self.terms.items():
            for z2, s2 in other.terms.items():
                z = z1 + z2
                if not window[0] <= z <= window[1]:
                    continue
                prod = s1.truncate(cutoff) * s2.truncate(cutoff)
                out[z] = out[z] + prod if z in out else prod
        return ZQPoly(cutoff, out, window)

    def invert(self) -> "ZQPoly":
        """
        Multiplicative inverse through the cutoff, inside the window.

        Needs a unit z^0 coefficient and no q^0 term at any other power of z,
        so that the geometric series in the remainder terminates.
        """
        head = self.constant_term()
        if not head.terms[0]:
            raise InvertNonUnit("z^0 coefficient has zero constant term")
        for z, series in self.terms.items():
            if z and series.terms[0]:
                raise InvertNonUnit(f"z^{z} coefficient has a nonzero constant term")
        head_inv = ZQPoly(self.cutoff, {0: head.invert()}, self.window)
        rest = self._with_terms({z: s for z, s in self.terms.items() if z})
        step = (head_inv * rest).scale(-1)
        total = power = ZQPoly.one(self.cutoff, self.window)
        for _ in range(self.cutoff.halves):
            power = power * step
            if not power.terms:
                break
            total = total + power
        return total * head_inv

    def equals_up_to(self, other: "ZQPoly", cutoff=None) -> bool:
        zs = set(self.terms) | set(other.terms)
        return all(self.coefficient(z).equals_up_to(other.coefficient(z), cutoff) for z in zs)

    def _dense(self) -> Dict[int, List[Fraction]]:
        lo, hi = self.window
        width = self.cutoff.halves + 1
        rows = {z: [Fraction(0)] * width for z in range(lo, hi + 1)}
        for z, series in self.terms.items():
            rows[z] = list(series.terms)
        return rows

    def _from_dense(self, rows: Dict[int, List[Fraction]]) -> "ZQPoly":
        return self._with_terms({z: QSeries(self.cutoff, tuple(r)) for z, r in rows.items()})

    def divide_by_one_minus(self, q_exponent, z_exponent: int) -> "ZQPoly":
        """Multiply by the geometric series 1/(1 - q^h z^d) = sum_t q^(ht) z^(dt)."""
        h = HalfInt.of(q_exponent).halves
        if h <= 0:
            raise ValueError("geometric factor needs a positive q-exponent")
        old = self._dense()
        new: Dict[int, List[Fraction]] = {}
        lo, hi = self.window
        order = range(lo, hi + 1) if z_exponent >= 0 else range(hi, lo - 1, -1)
        for z in order:
            row = list(old[z])
            prev = new.get(z - z_exponent) if z_exponent else row
            if prev is not None:
                for e in range(h, len(row)):
                    row[e] += prev[e - h]
            new[z] = row
        return self._from_dense(new)

    def multiply_by_one_plus(self, q_exponent, z_exponent: int) -> "ZQPoly":
        """Multiply by (1 + q^h z^d)."""
        h = HalfInt.of(q_exponent).halves
        old = self._dense()
        new: Dict[int, List[Fraction]] = {}
        for z, base in old.items():
            row = list(base)
            src = old.get(z - z_exponent)
            if src is not None:
                for e in range(h, len(row)):
                    row[e] += src[e - h]
            new[z] = row
        return self._from_dense(new)


def _meet(a: Tuple[int, int], b: Tuple[int, int]) -> Tuple[int, int]:
    return (max(a[0], b[0]), min(a[1], b[1]))


# Character formulas
def qpochhammer_inf(cutoff) -> QSeries:
    """(q)_inf = prod_{i>=1} (1 - q^i) truncated at cutoff."""
    n = HalfInt.of(cutoff)
    if n.halves < 0:
        raise ValueError("cutoff must be >= 0")
    series = QSeries.one(n)
    for i in range(1, n.floor() + 1):
        series = series.times_binomial(i, -1)
    return series


def qpochhammer(k: int, cutoff) -> QSeries:
    """(q)_k = prod_{i=1}^k (1 - q^i) truncated at cutoff."""
    if k < 0:
        raise ValueError("k must be >= 0")
    series = QSeries.one(cutoff)
    for i in range(1, k + 1):
        series = series.times_binomial(i, -1)
    return series


def theta_sum(cutoff) -> QSeries:
    """sum_{n in Z} sign(n) q^(2n^2+n) with sign(0) = +1."""
    n = HalfInt.of(cutoff)
    coeffs: Dict[int, Fraction] = {}
    m = 0
    while 2 * m * m - m <= n.floor():
        # n = m and n = -m; the two exponents coincide only at m = 0
        if 2 * m * m + m <= n.floor():
            coeffs[2 * m * m + m] = coeffs.get(2 * m * m + m, Fraction(0)) + 1
        if m > 0:
            coeffs[2 * m * m - m] = coeffs.get(2 * m * m - m, Fraction(0)) - 1
        m += 1
    return QSeries.from_coeffs(coeffs, n)


def hp_theta_form(cutoff) -> QSeries:
    """(1/(q)_inf^2) * sum_n sign(n) q^(2n^2+n)."""
    n = HalfInt.of(cutoff)
    return theta_sum(n) * (qpochhammer_inf(n) ** 2).invert()


def hp_alternating_form(cutoff) -> QSeries:
    """(1/(q)_inf^2) * sum_{k>=0} (-1)^k q^((k^2+k)/2)."""
    n = HalfInt.of(cutoff)
    coeffs = {}
    k = 0
    while (k * k + k) // 2 <= n.floor():
        coeffs[(k * k + k) // 2] = (-1) ** k
        k += 1
    return QSeries.from_coeffs(coeffs, n) * (qpochhammer_inf(n) ** 2).invert()


def hp_ramanujan_form(cutoff) -> QSeries:
    """(1/(q)_inf) * sum_{k>=0} q^(k^2+k) / (q)_k^2."""
    n = HalfInt.of(cutoff)
    total = QSeries.zero(n)
    k = 0
    while k * k + k <= n.floor():
        total = total + (qpochhammer(k, n) ** 2).invert().shift(k * k + k)
        k += 1
    return total * qpochhammer_inf(n).invert()


def hp_constant_term(cutoff) -> QSeries:
    """Constant term in z of prod_{k>=1} 1/((1 - q^(k-1/2) z)(1 - q^(k-1/2) z^-1))."""
    n = HalfInt.of(cutoff)
    poly = ZQPoly.one(n)
    for h in range(1, n.halves + 1, 2):
        poly = poly.divide_by_one_minus(HalfInt(h), 1)
        poly = poly.divide_by_one_minus(HalfInt(h), -1)
    logger.debug(f"hp_constant_term: z-support {poly.support[:1]}..{poly.support[-1:]} at cutoff {n}")
    return poly.constant_term()


def char_pbw_gl11(cutoff) -> QSeries:
    """prod_{k>=1} (1+q^k)^2 / (1-q^k)^2: two even and two odd generators per mode depth."""
    n = HalfInt.of(cutoff)
    numerator = QSeries.one(n)
    denominator = QSeries.one(n)
    for k in range(1, n.floor() + 1):
        numerator = numerator.times_binomial(k, 1).times_binomial(k, 1)
        denominator = denominator.times_binomial(k, -1).times_binomial(k, -1)
    return numerator * denominator.invert()


def char_fermion_two_variable(cutoff) -> ZQPoly:
    """prod_{k>=1} (1 + q^(k-1/2) z)(1 + q^(k-1/2) z^-1): F graded by weight and charge."""
    n = HalfInt.of(cutoff)
    poly = ZQPoly.one(n)
    for h in range(1, n.halves + 1, 2):
        poly = poly.multiply_by_one_plus(HalfInt(h), 1)
        poly = poly.multiply_by_one_plus(HalfInt(h), -1)
    return poly


def char_v_two_variable(cutoff) -> ZQPoly:
    """Total-charge generating series of F (x) M; z tracks psi+, a+ (z) and psi-, a- (1/z)."""
    n = HalfInt.of(cutoff)
    poly = char_fermion_two_variable(n)
    for h in range(1, n.halves + 1, 2):
        poly = poly.divide_by_one_minus(HalfInt(h), 1)
        poly = poly.divide_by_one_minus(HalfInt(h), -1)
    return poly


def char_v_constant_term(cutoff) -> QSeries:
    """Character of V = (F (x) M)_0 as the constant term of char_v_two_variable."""
    return char_v_two_variable(cutoff).constant_term()


def char_heisenberg_sector(charge: int, cutoff) -> QSeries:
    """q^(l^2/2) / (q)_inf: the character of M(1).e^(l alpha)."""
    n = HalfInt.of(cutoff)
    lowest = HalfInt(charge * charge)
    if lowest.halves > n.halves:
        return QSeries.zero(n)
    return qpochhammer_inf(n).invert().shift(lowest)


def series_from_dimensions(dims: Mapping[HalfInt, int], cutoff) -> QSeries:
    """Graded dimension table to a QSeries."""
    return QSeries.from_coeffs(dict(dims), cutoff)


__all__ = [
    "HalfInt",
    "InvertNonUnit",
    "QSeries",
    "ZQPoly",
    "qpochhammer_inf",
    "qpochhammer",
    "theta_sum",
    "hp_theta_form",
    "hp_alternating_form",
    "hp_ramanujan_form",
    "hp_constant_term",
    "char_pbw_gl11",
    "char_fermion_two_variable",
    "char_v_two_variable",
    "char_v_constant_term",
    "char_heisenberg_sector",
    "series_from_dimensions",
]
