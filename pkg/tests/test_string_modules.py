"""
Tests for string and band modules, substring submodules and irreducible monomorphisms.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algebra.iso_classes import IsoClass
from algebra.quivers import band_words, build_cycle_quiver, enumerate_strings, validate_string
from algebra.string_modules import (
    BandModule, Representation, StringModule, covering_transport, embedded_interval,
    irreducible_mono_extensions, substring_submodules,
)
from utils.error_handler import RepresentationError


class TestStringModules:

    @pytest.fixture
    def projective(self, kronecker):
        return validate_string(kronecker, ["a0", "-a1"])

    @pytest.fixture
    def injective(self, kronecker):
        return validate_string(kronecker, ["-a0", "a1"])

    def test_representation_matrices(self, kronecker, projective):
        rep = StringModule(kronecker, projective).representation
        assert rep.dims == (1, 2)
        assert rep.matrix("a0") == ((Fraction(0),), (Fraction(1),))
        assert rep.matrix("a1") == ((Fraction(1),), (Fraction(0),))

    def test_projective_has_two_simple_submodules(self, projective):
        proper = [(s.start, s.stop) for s in substring_submodules(projective) if s.is_proper]
        assert proper == [(0, 0), (2, 2)]

    def test_injective_submodules_and_quotients(self, injective):
        proper = [s for s in substring_submodules(injective) if s.is_proper]
        assert [(s.start, s.stop) for s in proper] == [(0, 1), (1, 1), (1, 2)]
        first = proper[0]
        assert first.length == 2
        assert first.has_uniserial_quotient
        middle = proper[1]
        assert len(middle.quotient_words) == 2
        assert not middle.has_uniserial_quotient

    def test_embedded_interval(self, kronecker, injective):
        simple = validate_string(kronecker, [], vertex=1)
        found = embedded_interval(simple, injective)
        assert (found.start, found.stop) == (1, 1)
        assert embedded_interval(validate_string(kronecker, [], vertex=0), injective) is None

    @pytest.mark.parametrize("word", ["+-", "++-", "+-+-"])
    def test_covering_transport_agrees_with_interval_rule(self, word):
        q = build_cycle_quiver(word)
        for C in enumerate_strings(q, 4):
            transport = covering_transport(C)
            by_closure = {(s.start, s.stop) for s in transport.interval_submodules()}
            by_rule = {(s.start, s.stop) for s in substring_submodules(C)}
            assert by_closure == by_rule, str(C)
            for inclusion in substring_submodules(C):
                assert transport.from_cover(transport.to_cover(inclusion)) == inclusion


class TestIrreducibleMonos:

    def test_simple_projective_of_kronecker(self, kronecker):
        simple = validate_string(kronecker, [], vertex=1)
        targets = irreducible_mono_extensions(kronecker, simple)
        assert [t.dims(2) for t in targets] == [(1, 2)]

    @given(st.sampled_from(["+-", "++-", "+-+-", "+++--"]), st.integers(min_value=0, max_value=500))
    def test_source_is_a_submodule_of_every_target(self, word, pick):
        q = build_cycle_quiver(word)
        words = enumerate_strings(q, 3)
        C = words[pick % len(words)]
        for D in irreducible_mono_extensions(q, C):
            assert D.length > C.length
            assert embedded_interval(C, D) is not None


class TestBandModules:

    def test_homogeneous_dims(self, three_two):
        band = band_words(three_two)[0]
        assert BandModule(three_two, band, 2, Fraction(1)).dims == (2, 2, 2, 2, 2)

    def test_iso_class_descriptor(self, kronecker):
        H2 = IsoClass.from_band(kronecker, band_words(kronecker)[0], 2, Fraction(1, 2))
        assert H2.length == 4
        assert H2.descriptor().endswith("^2@1/2")
        assert H2.with_multiplicity(1).length == 2


class TestRepresentationDocuments:

    def test_round_trip(self, kronecker):
        rep = Representation.from_document(kronecker, {"dims": [1, 1], "matrices": {"a0": [["1"]], "a1": [["1/2"]]}})
        assert rep.matrix("a1") == ((Fraction(1, 2),),)
        assert Representation.from_document(kronecker, rep.to_document()) == rep

    @pytest.mark.parametrize("doc", [
        {"dims": [1, 1], "matrices": {"a0": [["1", "0"]]}},
        {"dims": [1, 1], "matrices": {"zz": [["1"]]}},
        {"matrices": {}},
        {"dims": [1], "matrices": {}},
    ])
    def test_shape_errors(self, kronecker, doc):
        with pytest.raises(RepresentationError) as info:
            Representation.from_document(kronecker, doc)
        assert info.value.code == "shape_mismatch"
