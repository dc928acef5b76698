"""
Tests for exact hom spaces, generic ranks and indecomposability.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fractions import Fraction

import pytest

from algebra import linear
from algebra.iso_classes import IsoClass
from algebra.quivers import band_words, build_cycle_quiver, enumerate_strings, validate_string
from algebra.string_modules import Representation
from utils.config import EngineSettings
from utils.error_handler import RepresentationError


@pytest.fixture
def modules(kronecker):
    band = band_words(kronecker)[0]
    return {
        'S0': IsoClass.from_string(kronecker, validate_string(kronecker, [], vertex=0)),
        'S1': IsoClass.from_string(kronecker, validate_string(kronecker, [], vertex=1)),
        'P0': IsoClass.from_string(kronecker, validate_string(kronecker, ["a0", "-a1"])),
        'H1': IsoClass.from_band(kronecker, band, 1, 1),
        'H1@2': IsoClass.from_band(kronecker, band, 1, 2),
        'H2': IsoClass.from_band(kronecker, band, 2, 1),
    }


class TestExactLinearAlgebra:

    def test_rank_and_nullspace(self):
        assert linear.rank_of([[1, 2], [2, 4]], 2) == 1
        assert linear.rank_of([], 3) == 0
        assert linear.nullspace([[1, 2]], 2) == [[Fraction(-2), Fraction(1)]]
        assert len(linear.nullspace([], 2)) == 2

    def test_row_basis_is_reduced(self):
        basis = linear.row_basis([[2, 4], [1, 2], [0, 3]], 2)
        assert basis == [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


class TestHomSpaces:

    def test_socle_of_projective(self, modules):
        basis = linear.hom_basis(modules['S1'].representation, modules['P0'].representation)
        assert basis.dimension == 2
        assert basis.residual_free()

    def test_different_quivers_are_rejected(self, modules):
        other = build_cycle_quiver("++-")
        S = IsoClass.from_string(other, validate_string(other, [], vertex=0))
        with pytest.raises(RepresentationError):
            linear.hom_basis(modules['S0'].representation, S.representation)

    @pytest.mark.parametrize("word", ["+-", "++-"])
    def test_graph_maps_span_hom(self, word):
        q = build_cycle_quiver(word)
        words = enumerate_strings(q, 2)
        for C in words:
            for D in words:
                graph = linear.graph_map_basis(q, C, D)
                assert graph.dimension == linear.hom_basis(graph.domain, graph.codomain).dimension, f"{C} -> {D}"
                assert graph.residual_free()


class TestMonoEpi:

    def test_monomorphisms(self, modules):
        assert linear.embeds(modules['S1'].representation, modules['P0'].representation)
        assert not linear.embeds(modules['S0'].representation, modules['P0'].representation)
        assert linear.embeds(modules['H1'].representation, modules['H2'].representation)
        assert not linear.embeds(modules['H1'].representation, modules['H1@2'].representation)

    def test_epimorphisms(self, modules):
        assert linear.surjects(modules['P0'].representation, modules['S0'].representation)
        assert not linear.surjects(modules['P0'].representation, modules['S1'].representation)
        assert linear.surjects(modules['H2'].representation, modules['H1'].representation)

    def test_mono_epi_test(self, modules):
        result = linear.mono_epi_test(modules['P0'].representation, modules['S0'].representation)
        assert result.exists_epi and not result.exists_mono
        result = linear.mono_epi_test(modules['H1'].representation, modules['H2'].representation)
        assert result.exists_mono and not result.exists_epi
        assert result.certificate.rank == 2

    def test_combined_maps(self, modules):
        basis = linear.hom_basis(modules['S1'].representation, modules['P0'].representation)
        single = basis.combine((1, 0))
        assert linear.rank_of(single[1], 1) == 1
        assert linear.rank_of(basis.combine((0, 0))[1], 1) == 0

    def test_symbolic_path_agrees(self, modules):
        symbolic = EngineSettings(random_fast_path=False)
        for X in modules.values():
            for Y in modules.values():
                assert linear.embeds(X.representation, Y.representation) == \
                    linear.embeds(X.representation, Y.representation, symbolic)

    def test_certificate_methods(self, modules):
        basis = linear.hom_basis(modules['H1'].representation, modules['H2'].representation)
        symbolic = linear.generic_rank(basis, EngineSettings(random_fast_path=False))
        sampled = linear.generic_rank(basis)
        assert symbolic.rank == sampled.rank == 2
        assert symbolic.method != "randomized"
        assert symbolic.witness is None


class TestIndecomposable:

    def test_string_and_band_modules(self, modules):
        for name in ('S0', 'P0', 'H1', 'H2'):
            assert linear.is_indecomposable(modules[name].representation), name

    def test_zero_maps_decompose(self, kronecker):
        rep = Representation.from_lists(kronecker, (1, 1), {})
        assert not linear.is_indecomposable(rep)

    def test_split_homogeneous_sum(self, kronecker):
        rep = Representation.from_lists(kronecker, (2, 2), {
            'a0': [[1, 0], [0, 1]],
            'a1': [[1, 0], [0, 2]],
        })
        assert not linear.is_indecomposable(rep)
