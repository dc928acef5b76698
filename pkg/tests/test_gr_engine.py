"""
Tests for GR measures, GR submodules and filtrations.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure
from algebra.quivers import build_cycle_quiver, build_line_quiver, validate_string
from algebra.string_modules import Representation
from algebra.tubes import all_tubes, quasi_chain
from analysis import gr_engine
from analysis.gr_engine import GREngine, get_engine
from utils.config import EngineSettings
from utils.error_handler import EngineError, RepresentationError


def string(q, *tokens, vertex=None):
    return IsoClass.from_string(q, validate_string(q, list(tokens), vertex=vertex))


class TestKroneckerMeasures:

    def test_enumeration_up_to_length_two(self, kronecker_engine):
        classes = kronecker_engine.enumerate_indecomposables(2)
        assert len(classes) == 5
        assert sum(1 for X in classes if X.is_band) == 1

    @pytest.mark.parametrize("tokens,expected", [
        ((), [1]),
        (("a0",), [1, 2]),
        (("a0", "-a1"), [1, 3]),
        (("-a0", "a1"), [1, 2, 3]),
    ])
    def test_string_measures(self, kronecker, kronecker_engine, tokens, expected):
        M = string(kronecker, *tokens, vertex=1 if not tokens else None)
        assert kronecker_engine.measure(M) == GRMeasure(expected)

    def test_homogeneous_measures(self, kronecker_engine):
        assert kronecker_engine.measure(kronecker_engine.homogeneous(1)) == GRMeasure([1, 2])
        assert kronecker_engine.measure(kronecker_engine.homogeneous(2)) == GRMeasure([1, 2, 4])

    def test_parameter_does_not_change_the_measure(self, kronecker_engine):
        assert kronecker_engine.measure(kronecker_engine.homogeneous(2, lam=3)) == GRMeasure([1, 2, 4])

    def test_gr_submodules_of_projective(self, kronecker, kronecker_engine):
        result = kronecker_engine.gr_submodules(string(kronecker, "a0", "-a1"))
        assert result.gr_submodules == (string(kronecker, vertex=1),)
        assert result.gr_count == 1
        assert len(result.quotients) == 2
        assert result.all_quotients_uniserial

    def test_gr_submodules_of_h2(self, kronecker_engine):
        H1, H2 = kronecker_engine.homogeneous(1), kronecker_engine.homogeneous(2)
        result = kronecker_engine.gr_submodules(H2)
        assert H1 in result.gr_submodules
        assert [X.length for X in result.filtration] == [1, 2, 4]
        assert result.filtration[-1] == H2

    def test_simple_modules_have_no_gr_submodule(self, kronecker, kronecker_engine):
        with pytest.raises(EngineError) as info:
            kronecker_engine.gr_submodules(string(kronecker, vertex=0))
        assert info.value.code == "simple_input"

    def test_gr_inclusions(self, kronecker, kronecker_engine):
        P0 = string(kronecker, "a0", "-a1")
        assert kronecker_engine.is_gr_inclusion(string(kronecker, vertex=1), P0)
        assert not kronecker_engine.is_gr_inclusion(string(kronecker, vertex=0), P0)
        assert not kronecker_engine.is_gr_inclusion(P0, P0)

    def test_functional_wrappers(self, kronecker):
        P0 = string(kronecker, "a0", "-a1")
        assert gr_engine.gr_measure(kronecker, P0) == GRMeasure([1, 3])
        assert gr_engine.gr_submodules(kronecker, P0).measure == GRMeasure([1, 3])
        assert len(gr_engine.enumerate_indecomposables(kronecker, 2)) == 5


class TestFiltrations:

    def test_projective_filtration(self, kronecker, kronecker_engine):
        P0, S1 = string(kronecker, "a0", "-a1"), string(kronecker, vertex=1)
        assert kronecker_engine.filtration(P0) == (S1, P0)
        assert kronecker_engine.gr_submodules(P0).filtration == (S1, P0)

    def test_band_filtration(self, kronecker, kronecker_engine):
        H1, H2 = kronecker_engine.homogeneous(1), kronecker_engine.homogeneous(2)
        chain = kronecker_engine.filtration(H2)
        assert chain == (string(kronecker, vertex=1), H1, H2)
        assert [kronecker_engine.measure(X) for X in chain] == [GRMeasure([1]), GRMeasure([1, 2]), GRMeasure([1, 2, 4])]

    def test_filtration_through_a_string(self, sink_source_quiver):
        engine = get_engine(sink_source_quiver)
        chain = engine.filtration(engine.homogeneous(1))
        assert [X.length for X in chain] == [1, 3, 4]
        assert chain[1].is_string

    def test_gr_results_are_memoized(self, kronecker_engine):
        H2 = kronecker_engine.homogeneous(2)
        assert kronecker_engine.gr_submodules(H2) is kronecker_engine.gr_submodules(H2)

    def test_simple_filtration(self, kronecker, kronecker_engine):
        S0 = string(kronecker, vertex=0)
        assert kronecker_engine.filtration(S0) == (S0,)


class TestExplicitRepresentations:

    def test_homogeneous_with_other_parameter(self, kronecker, kronecker_engine):
        rep = Representation.from_lists(kronecker, (1, 1), {'a0': [[1]], 'a1': [[2]]})
        result = kronecker_engine.measure_of_representation(rep)
        assert result.measure == GRMeasure([1, 2])
        assert result.gr_submodules == (string(kronecker, vertex=1),)

    def test_band_submodules_take_the_given_parameter(self, kronecker, kronecker_engine):
        rep = kronecker_engine.homogeneous(2, lam=2).representation
        result = kronecker_engine.measure_of_representation(rep, lambdas=[2])
        assert result.measure == GRMeasure([1, 2, 4])
        assert result.gr_submodules == (kronecker_engine.homogeneous(1, lam=2),)
        assert [X.length for X in result.filtration] == [1, 2, 4]

    def test_decomposable_is_rejected(self, kronecker, kronecker_engine):
        rep = Representation.from_lists(kronecker, (1, 1), {})
        with pytest.raises(RepresentationError) as info:
            kronecker_engine.measure_of_representation(rep)
        assert info.value.code == "decomposable"


class TestOtherOrientations:

    def test_sink_source_h1(self, sink_source_quiver):
        engine = get_engine(sink_source_quiver)
        assert engine.measure(engine.homogeneous(1)) == GRMeasure([1, 3, 4])
        assert len(engine.gr_submodules(engine.homogeneous(1)).gr_submodules) == 2

    def test_three_two_h1_and_paths(self, three_two):
        engine = get_engine(three_two)
        assert engine.measure(engine.homogeneous(1)) == GRMeasure([1, 2, 3, 4, 5])
        assert engine.measure(string(three_two, "a2", "a1", "a0")) == GRMeasure([1, 2, 3, 4])
        assert engine.measure(string(three_two, "a3", "a4")) == GRMeasure([1, 2, 3])

    def test_exceptional_tube_top_matches_h1(self, three_two):
        engine = get_engine(three_two)
        h1 = engine.measure(engine.homogeneous(1))
        X = string(three_two, "a2", "a1", "a0")
        assert engine.measure(quasi_chain(three_two, X, 2)) == h1

    def test_line_quiver_strings(self):
        q = build_line_quiver("+-")
        engine = GREngine(q)
        M = string(q, "-a1", "a0")
        assert engine.is_band_free(M)
        assert engine.measure(M) == GRMeasure([1, 2, 3])
        with pytest.raises(EngineError) as info:
            engine.homogeneous(1)
        assert info.value.code == "out_of_scope"


class TestEngineSettings:

    @pytest.mark.parametrize("word", ["+-", "++-"])
    def test_fast_and_general_paths_agree(self, word):
        engine = get_engine(build_cycle_quiver(word))
        for M in engine.enumerate_indecomposables(6):
            assert engine.general_measure(M) == engine.measure(M), str(M)

    def test_pruning_is_sound(self):
        q = build_cycle_quiver("++-")
        plain = get_engine(q)
        pruned = get_engine(q, EngineSettings(ar_pruning=True, verify_pruning=True))
        classes = plain.enumerate_indecomposables(7)
        assert pruned.measures(classes) == plain.measures(classes)

    def test_worker_pool_and_symbolic_ranks(self):
        q = build_cycle_quiver("+-+-")
        plain = get_engine(q)
        threaded = get_engine(q, EngineSettings(workers=4, random_fast_path=False))
        classes = plain.enumerate_indecomposables(6)
        assert threaded.measures(classes) == plain.measures(classes)

    def test_dimension_count_mode(self, kronecker):
        engine = get_engine(kronecker, EngineSettings(gr_count_mode="dimension"))
        assert engine.gr_submodules(engine.homogeneous(2)).gr_count == 1

    def test_registry_reuses_engines(self, kronecker):
        assert get_engine(kronecker) is get_engine(kronecker)
        assert get_engine(kronecker) is not get_engine(kronecker, EngineSettings(seed=7))


class TestRegistry:

    def test_registry_is_bounded(self, kronecker):
        for seed in range(gr_engine.ENGINE_REGISTRY_SIZE + 3):
            get_engine(kronecker, EngineSettings(seed=seed))
        assert gr_engine.registered_engine_count() == gr_engine.ENGINE_REGISTRY_SIZE

    def test_least_recently_used_engine_is_dropped(self, kronecker):
        first = get_engine(kronecker, EngineSettings(seed=0))
        for seed in range(1, gr_engine.ENGINE_REGISTRY_SIZE + 1):
            get_engine(kronecker, EngineSettings(seed=seed))
        assert get_engine(kronecker, EngineSettings(seed=0)) is not first

    def test_reset_empties_the_registry(self, kronecker):
        get_engine(kronecker)
        assert gr_engine.registered_engine_count() == 1
        gr_engine.reset_engines()
        assert gr_engine.registered_engine_count() == 0
