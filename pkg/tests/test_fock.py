#!/usr/bin/env python3
"""
Tests for modes, basis vectors, states and basis enumeration.
"""

import sys
import unittest
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from vertex.fock import (
    VACUUM,
    BasisVector,
    BosonMode,
    ChargeConstraint,
    FermionMode,
    ModeError,
    Sector,
    Sign,
    State,
    canonicalize,
    charge,
    dump_state,
    enumerate_basis,
    graded_dimensions,
    lowest_charge_vector,
    make_basis_vector,
    parse_state,
    weight,
)
from vertex.qchar import HalfInt

PSI_P = FermionMode(1, Sign.PLUS, HalfInt(-1))
PSI_M = FermionMode(1, Sign.MINUS, HalfInt(-1))
PSI_P3 = FermionMode(1, Sign.PLUS, HalfInt(-3))
A_P = BosonMode(1, Sign.PLUS, HalfInt(-1))
A_M = BosonMode(1, Sign.MINUS, HalfInt(-1))


def integer_dims(basis, top):
    dims = graded_dimensions(basis)
    return [dims.get(HalfInt.of(m), 0) for m in range(top + 1)]


class TestModes(unittest.TestCase):
    """Mode validation and rendering."""

    def test_integer_index_rejected(self):
        with self.assertRaises(ModeError):
            FermionMode(1, Sign.PLUS, HalfInt(2))

    def test_species_must_be_positive(self):
        with self.assertRaises(ModeError):
            BosonMode(0, Sign.MINUS, HalfInt(-1))

    def test_sign_parsing(self):
        self.assertIs(Sign.parse("+"), Sign.PLUS)
        self.assertIs(Sign.parse("-"), Sign.MINUS)
        self.assertIs(Sign.PLUS.flip(), Sign.MINUS)

    def test_rendering(self):
        self.assertEqual(str(PSI_P), "psi1+(-1/2)")
        self.assertEqual(str(A_M), "a1-(-1/2)")
        self.assertEqual(str(VACUUM), "|0>")

    def test_creation_and_weight(self):
        self.assertTrue(PSI_P3.is_creation)
        self.assertFalse(FermionMode(1, "-", "1/2").is_creation)
        self.assertEqual(PSI_P3.weight, HalfInt(3))


class TestCanonicalOrder(unittest.TestCase):
    """Sorting fermionic monomials with their sign."""

    def test_transposition_sign(self):
        parity, mono = canonicalize([PSI_M, PSI_P])
        self.assertEqual(parity, -1)
        self.assertEqual(mono, (PSI_P, PSI_M))

    def test_repeat_is_none(self):
        self.assertIsNone(canonicalize([PSI_P, PSI_M, PSI_P]))
        self.assertEqual(make_basis_vector([PSI_P, PSI_P]), (0, None))

    def test_annihilators_are_not_basis_factors(self):
        with self.assertRaises(ModeError):
            make_basis_vector([FermionMode(1, Sign.PLUS, HalfInt(1))])

    def test_bosons_commute(self):
        _, bv1 = make_basis_vector([], [A_M, A_P])
        _, bv2 = make_basis_vector([], [A_P, A_M])
        self.assertEqual(bv1, bv2)

    @given(st.permutations([PSI_P3, PSI_P, PSI_M, FermionMode(2, Sign.PLUS, HalfInt(-1))]))
    @settings(max_examples=30, deadline=None)
    def test_parity_is_permutation_sign(self, modes):
        order = sorted(modes, key=lambda m: m.key)
        positions = [order.index(m) for m in modes]
        inversions = sum(1 for i in range(len(positions)) for j in range(i + 1, len(positions)) if positions[i] > positions[j])
        parity, mono = canonicalize(modes)
        self.assertEqual(parity, (-1) ** inversions)
        self.assertEqual(list(mono), order)


class TestState(unittest.TestCase):
    """Linear combinations of basis vectors."""

    def test_repeated_fermion_is_zero(self):
        self.assertTrue(State.from_modes(PSI_P, PSI_P).is_zero())

    def test_from_modes_sign(self):
        self.assertEqual(State.from_modes(PSI_M, PSI_P), -State.from_modes(PSI_P, PSI_M))

    def test_arithmetic(self):
        s = State.from_modes(PSI_P, A_M) + State.from_modes(PSI_M, A_P, coeff=Fraction(1, 2))
        self.assertTrue((s - s).is_zero())
        self.assertEqual(len(s.scale(3)), 2)
        self.assertEqual(s * 0, State())
        self.assertEqual(s.weight(), HalfInt(2))

    def test_zero_coefficients_are_dropped(self):
        s = State({VACUUM: 0})
        self.assertFalse(s)

    def test_inhomogeneous_weight(self):
        s = State.vacuum() + State.from_modes(PSI_P)
        self.assertFalse(s.is_homogeneous())
        self.assertIsNone(s.weight())

    def test_rendering(self):
        self.assertEqual(str(State.from_modes(PSI_P)), "(1) psi1+(-1/2) |0>")

    def test_charges(self):
        _, bv = make_basis_vector([PSI_P3, PSI_P], [A_M])
        profile = charge(bv)
        self.assertEqual(profile.fermion_total, 2)
        self.assertEqual(profile.boson_total, -1)
        self.assertEqual(profile.total, 1)


class TestEnumeration(unittest.TestCase):
    """Graded dimensions of enumerated bases."""

    def test_v_dimensions(self):
        basis = enumerate_basis(1, 3, Sector.FULL, ChargeConstraint(total=0))
        self.assertEqual(integer_dims(basis, 3), [1, 4, 12, 32])
        self.assertTrue(all(weight(bv).is_integer() for bv in basis))

    def test_m0_dimensions(self):
        basis = enumerate_basis(1, 6, Sector.BOSON, ChargeConstraint(boson_total=0))
        self.assertEqual(integer_dims(basis, 6), [1, 1, 3, 6, 12, 21, 38])

    def test_fermion_charge_zero_dimensions(self):
        basis = enumerate_basis(1, 3, Sector.FERMION, ChargeConstraint(fermion_total=0))
        self.assertEqual(integer_dims(basis, 3), [1, 1, 2, 3])

    def test_half_weight_of_fermion_sector(self):
        basis = enumerate_basis(1, "1/2", Sector.FERMION)
        self.assertEqual(graded_dimensions(basis), {HalfInt(0): 1, HalfInt(1): 2})

    def test_sorted_by_weight(self):
        basis = enumerate_basis(1, 2, Sector.FULL)
        weights = [weight(bv) for bv in basis]
        self.assertEqual(weights, sorted(weights))
        self.assertEqual(basis[0], VACUUM)

    def test_min_weight(self):
        basis = enumerate_basis(1, 2, Sector.BOSON, min_weight=1)
        self.assertTrue(all(weight(bv) >= HalfInt(2) for bv in basis))

    def test_species_balanced(self):
        basis = enumerate_basis(2, 1, Sector.FERMION, ChargeConstraint(species_balanced=True))
        for bv in basis:
            with self.subTest(vector=str(bv)):
                self.assertFalse(any(charge(bv, 2).per_species_total))

    def test_bad_species_count(self):
        with self.assertRaises(ModeError):
            enumerate_basis(0, 2)

    def test_lowest_charge_vector(self):
        self.assertEqual(lowest_charge_vector(0), VACUUM)
        top = lowest_charge_vector(2)
        self.assertEqual(weight(top), HalfInt(4))
        self.assertEqual(str(top), "psi1+(-3/2) psi1+(-1/2) |0>")
        self.assertEqual(charge(lowest_charge_vector(-3)).fermion_total, -3)


class TestStateCodec(unittest.TestCase):
    """JSON encoding of states."""

    def test_parse_canonicalizes_with_sign(self):
        data = [{"coeff": "2", "ferm": [[1, "-", "-1/2"], [1, "+", "-1/2"]], "comm": []}]
        state = parse_state(data)
        self.assertEqual(state, State.from_modes(PSI_P, PSI_M, coeff=-2))

    def test_dump_then_parse(self):
        state = State.from_modes(PSI_P3, PSI_M, A_P, coeff=Fraction(-3, 4))
        self.assertEqual(parse_state(dump_state(state)), state)

    def test_dump_format(self):
        self.assertEqual(
            dump_state(State.from_modes(A_P)),
            [{"coeff": "1", "ferm": [], "comm": [[1, "+", "-1/2"]]}],
        )

    def test_bad_mode_triple(self):
        with self.assertRaises(ModeError):
            parse_state([{"coeff": "1", "ferm": [[1, "+"]], "comm": []}])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
