#!/usr/bin/env python3
"""
Tests for the free-mode actions, the Heisenberg field and the n-th product engine.
"""

import sys
import unittest
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from vertex.fields import (
    ModeIndex,
    SpeciesMismatch,
    apply_mode,
    apply_word,
    binomial,
    borcherds_commutator,
    clifford_check,
    heisenberg_mode,
    single_generator_check,
    translate,
    translation_check,
    vacuum_axioms_check,
    vertex_mode,
)
from vertex.fock import BosonMode, ChargeConstraint, FermionMode, Sector, Sign, State, enumerate_basis
from vertex.qchar import HalfInt

HALF = HalfInt(1)


def psi(sign, index, species=1):
    return FermionMode(species, sign, HalfInt.of(index))


def a(sign, index, species=1):
    return BosonMode(species, sign, HalfInt.of(index))


VAC = State.vacuum()
ALPHA = State.from_modes(psi(Sign.PLUS, "-1/2"), psi(Sign.MINUS, "-1/2"))


class TestHelpers(unittest.TestCase):
    """Index conventions and binomials."""

    def test_mode_index(self):
        self.assertEqual(ModeIndex.from_product_index(0).physical, HALF)
        self.assertEqual(ModeIndex.from_physical("-1/2").product_index, -1)
        self.assertEqual(ModeIndex.from_physical("5/2").product_index, 2)

    def test_binomial(self):
        self.assertEqual(binomial(5, 2), 10)
        self.assertEqual(binomial(2, 3), 0)
        self.assertEqual(binomial(-1, 3), -1)
        self.assertEqual(binomial(-2, 2), 3)
        self.assertEqual(binomial(4, -1), 0)


class TestFreeModes(unittest.TestCase):
    """Single-mode actions on basis states."""

    def test_clifford_contraction(self):
        v = State.from_modes(psi(Sign.PLUS, "-1/2"))
        self.assertEqual(apply_mode(psi(Sign.MINUS, "1/2"), v), VAC)
        self.assertTrue(apply_mode(psi(Sign.PLUS, "1/2"), v).is_zero())

    def test_annihilator_sign(self):
        v = State.from_modes(psi(Sign.PLUS, "-3/2"), psi(Sign.PLUS, "-1/2"), psi(Sign.MINUS, "-1/2"))
        expected = State.from_modes(psi(Sign.PLUS, "-3/2"), psi(Sign.MINUS, "-1/2"), coeff=-1)
        self.assertEqual(apply_mode(psi(Sign.MINUS, "1/2"), v), expected)

    def test_creation_repeat_vanishes(self):
        v = State.from_modes(psi(Sign.PLUS, "-1/2"))
        self.assertTrue(apply_mode(psi(Sign.PLUS, "-1/2"), v).is_zero())

    def test_boson_annihilators_vanish(self):
        v = State.from_modes(a(Sign.PLUS, "-1/2"), a(Sign.MINUS, "-1/2"))
        self.assertTrue(apply_mode(a(Sign.MINUS, "1/2"), v).is_zero())
        self.assertTrue(apply_mode(a(Sign.PLUS, "3/2"), v).is_zero())

    def test_boson_multiplicity(self):
        twice = apply_mode(a(Sign.MINUS, "-1/2"), apply_mode(a(Sign.MINUS, "-1/2"), VAC))
        self.assertEqual(twice, State.from_modes(a(Sign.MINUS, "-1/2"), a(Sign.MINUS, "-1/2")))

    def test_word_acts_rightmost_first(self):
        word = (psi(Sign.PLUS, "-1/2"), psi(Sign.MINUS, "-1/2"))
        self.assertEqual(apply_word(word, VAC), ALPHA)
        self.assertEqual(apply_word(word, VAC, coeff=3), ALPHA.scale(3))


class TestHeisenberg(unittest.TestCase):
    """Normally ordered charge field modes."""

    def test_zero_mode_is_charge(self):
        v = State.from_modes(psi(Sign.PLUS, "-1/2"))
        self.assertEqual(heisenberg_mode(1, 0, v), v)
        w = State.from_modes(psi(Sign.MINUS, "-3/2"))
        self.assertEqual(heisenberg_mode(1, 0, w), -w)
        self.assertTrue(heisenberg_mode(1, 0, VAC).is_zero())

    def test_creates_alpha(self):
        self.assertEqual(heisenberg_mode(1, -1, VAC), ALPHA)

    def test_one_mode_removes_alpha(self):
        self.assertEqual(heisenberg_mode(1, 1, ALPHA), VAC)

    def test_ignores_bosons(self):
        v = State.from_modes(a(Sign.PLUS, "-1/2"), a(Sign.MINUS, "-1/2"))
        self.assertTrue(heisenberg_mode(1, 0, v).is_zero())

    def test_matches_vertex_mode(self):
        vectors = [State.basis(bv) for bv in enumerate_basis(1, 2, Sector.FERMION)]
        for r in range(-2, 3):
            for v in vectors:
                with self.subTest(r=r, vector=str(v)):
                    self.assertEqual(heisenberg_mode(1, r, v), vertex_mode(ALPHA, r, v))

    @given(st.integers(min_value=1, max_value=3), st.integers(min_value=1, max_value=3))
    @settings(max_examples=9, deadline=None)
    def test_commutator_is_central(self, r, s):
        lhs = heisenberg_mode(1, r, heisenberg_mode(1, -s, VAC)) - heisenberg_mode(1, -s, heisenberg_mode(1, r, VAC))
        self.assertEqual(lhs, VAC.scale(r) if r == s else State())


class TestVertexMode(unittest.TestCase):
    """The n-th product A(n)v of basis states."""

    def test_generator_mode(self):
        e21 = State.from_modes(psi(Sign.MINUS, "-1/2"), a(Sign.PLUS, "-1/2"))
        v = State.from_modes(psi(Sign.PLUS, "-1/2"))
        self.assertEqual(vertex_mode(e21, 0, v), State.from_modes(a(Sign.PLUS, "-1/2")))

    def test_vacuum_is_identity(self):
        v = State.from_modes(psi(Sign.PLUS, "-3/2"), a(Sign.MINUS, "-1/2"))
        self.assertEqual(vertex_mode(VAC, -1, v), v)
        self.assertTrue(vertex_mode(VAC, 0, v).is_zero())

    def test_species_mismatch(self):
        other = State.from_modes(psi(Sign.PLUS, "-1/2", species=2))
        with self.assertRaises(SpeciesMismatch):
            vertex_mode(other, 0, VAC, species=1)

    def test_translation(self):
        self.assertTrue(translate(VAC).is_zero())
        self.assertEqual(translate(State.from_modes(a(Sign.MINUS, "-1/2"))), State.from_modes(a(Sign.MINUS, "-3/2")))
        self.assertEqual(
            translate(State.from_modes(psi(Sign.PLUS, "-3/2"))),
            State.from_modes(psi(Sign.PLUS, "-5/2"), coeff=2),
        )

    def test_commutator_formula_on_generators(self):
        e12 = State.from_modes(psi(Sign.PLUS, "-1/2"), a(Sign.MINUS, "-1/2"))
        e21 = State.from_modes(psi(Sign.MINUS, "-1/2"), a(Sign.PLUS, "-1/2"))
        vectors = [State.basis(bv) for bv in enumerate_basis(1, 1, Sector.FULL, ChargeConstraint(total=0))]
        for x, y in ((e12, e21), (ALPHA, e12), (ALPHA, ALPHA)):
            for m in (-1, 0, 1):
                for k in (-1, 0, 1):
                    for v in vectors:
                        lhs, rhs = borcherds_commutator(x, m, y, k, v)
                        self.assertEqual(lhs, rhs)


class TestEngineChecks(unittest.TestCase):
    """Self-consistency reports of the product engine."""

    def setUp(self):
        self.samples = [State.basis(bv) for bv in enumerate_basis(1, 1, Sector.FULL)]
        self.vectors = [State.basis(bv) for bv in enumerate_basis(1, 1, Sector.FULL, ChargeConstraint(total=0))]

    def test_vacuum_axioms(self):
        report = vacuum_axioms_check(self.samples, n_max=2)
        self.assertTrue(report.passed, report.witnesses)
        self.assertEqual(report.name, "fields.vacuum_axioms")

    def test_translation(self):
        report = translation_check(self.samples, self.vectors, (-1, 1))
        self.assertTrue(report.passed, report.witnesses)

    def test_clifford(self):
        report = clifford_check(enumerate_basis(1, 1, Sector.FULL, ChargeConstraint(total=0)), max_index=1)
        self.assertTrue(report.passed, report.witnesses)

    def test_single_generator(self):
        report = single_generator_check(enumerate_basis(1, "3/2", Sector.FERMION), (-2, 2))
        self.assertTrue(report.passed, report.witnesses)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
