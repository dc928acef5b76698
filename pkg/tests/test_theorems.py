"""
Bounded checks of the structural results: worked examples, string theorems, partition,
successors, predecessors and the central preinjective dichotomy.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from algebra.measures import GRMeasure
from algebra.quivers import build_cycle_quiver
from algebra.tubes import ARKind, all_tubes, quasi_chain
from analysis.gr_engine import get_engine
from analysis.oracles import oracle_disagreements
from analysis.partition import (
    ASSUMED, CENTRAL, CERTIFIED, LANDING, TAKE_OFF, UNDETERMINED, direct_successor, no_predecessor_report,
    partition_prefix,
)
from analysis.properties import central_preinjective_count, verify_properties, verify_property
from cli.experiments import one_source_one_sink, sink_source, worked_examples

STRING_ORIENTATIONS = ["++-", "+-+-", "++-+", "+++--", "++-+-"]
BIGPROP_IDS = ["bigprop_1a", "bigprop_1b", "bigprop_1c", "bigprop_1d", "bigprop_2", "bigprop_3",
               "bigprop_5", "bigprop_6", "bigprop_7", "onemap"]


def _failed(results):
    return [r.to_dict() for r in results if not r.passed]


class TestWorkedExamples:

    @pytest.mark.parametrize("n", [3, 5])
    def test_sink_source(self, n):
        assert _failed(sink_source(n)) == []

    @pytest.mark.parametrize("p,q", [(3, 2), (2, 1), (2, 2)])
    def test_one_source_one_sink(self, p, q):
        assert _failed(one_source_one_sink(p, q)) == []

    def test_all_examples(self):
        assert _failed(worked_examples()) == []


@pytest.mark.slow
class TestStringTheorems:

    @pytest.mark.parametrize("word", STRING_ORIENTATIONS)
    def test_band_free_strings(self, word):
        q = build_cycle_quiver(word)
        for report in verify_properties(q, ["two_gr_string", "uniserial_factors"], 12):
            assert report.passed, (word, report.property_id, report.failures)
            assert report.checked > 0

    @pytest.mark.parametrize("word", ["++-", "+++--", "++-+"])
    def test_exceptional_regulars_with_two_gr_submodules(self, word):
        report = verify_property(build_cycle_quiver(word), "prop_2gr", 10)
        assert report.passed, report.failures


@pytest.mark.slow
class TestOracleAgreement:

    @pytest.mark.parametrize("word", ["+-", "++-", "++-+"])
    def test_three_computations_agree(self, word):
        assert oracle_disagreements(build_cycle_quiver(word), 8) == []


class TestKroneckerPartition:

    def test_labels_follow_the_components(self, kronecker, kronecker_engine):
        report = partition_prefix(kronecker, 9)
        labels = report.labels()
        expected = {ARKind.PREPROJECTIVE: TAKE_OFF, ARKind.REGULAR: CENTRAL, ARKind.PREINJECTIVE: LANDING}
        for M in kronecker_engine.enumerate_indecomposables(9):
            if M.length == 1:
                continue
            kind = kronecker_engine.classify(M).kind
            assert labels[kronecker_engine.measure(M)] == expected[kind], str(M)

    def test_measure_prefixes(self, kronecker):
        labels = partition_prefix(kronecker, 9).labels()
        for value in ([1], [1, 3], [1, 3, 5]):
            assert labels[GRMeasure(value)] == TAKE_OFF
        for value in ([1, 2], [1, 2, 4]):
            assert labels[GRMeasure(value)] == CENTRAL

    def test_landing_goes_beyond_the_first_injective(self, kronecker, kronecker_engine):
        report = partition_prefix(kronecker, 9)
        landing = [row for row in report.rows if row.label == LANDING]
        assert len(landing) >= 2
        assert all(row.witness_kind == ARKind.PREINJECTIVE.value for row in landing)
        lengths = [row.witness.length for row in landing]
        assert lengths == sorted(lengths, reverse=True)
        assert landing[-1].measure == GRMeasure([1, 2, 3])

    @pytest.mark.slow
    def test_prefixes_agree_with_the_oracle(self, kronecker):
        assert oracle_disagreements(kronecker, 9) == []


class TestSuccessorStructure:

    @pytest.mark.parametrize("i", [1, 2, 3, 4])
    def test_homogeneous_successors(self, kronecker, kronecker_engine, i):
        current = kronecker_engine.measure(kronecker_engine.homogeneous(i))
        following = kronecker_engine.measure(kronecker_engine.homogeneous(i + 1))
        result = direct_successor(kronecker, current, 12)
        assert result.successor == following
        assert result.certification == CERTIFIED

    @pytest.mark.slow
    @pytest.mark.parametrize("j", [4, 5])
    def test_exceptional_chain_successors(self, j):
        q = build_cycle_quiver("++-")
        engine = get_engine(q)
        tube = next(t for t in all_tubes(q) if t.tube_id == "T-")
        X = next(Z for Z in tube.quasi_simples if Z.length == 2)
        assert tube.rank == 2
        assert engine.measure(quasi_chain(q, X, 2)) == engine.measure(engine.homogeneous(1))
        result = direct_successor(q, engine.measure(quasi_chain(q, X, j)), 10)
        assert result.successor == engine.measure(quasi_chain(q, X, j + 1))
        assert result.certification != UNDETERMINED

    def test_preinjective_predecessors(self, kronecker):
        report = verify_property(kronecker, "prepre", 9)
        assert report.passed, report.failures


class TestPredecessorReport:

    def test_report_is_stable_as_the_bound_grows(self, kronecker, kronecker_engine):
        delta = kronecker.vertex_count
        smaller = no_predecessor_report(kronecker, 4 * delta, window=4)
        larger = no_predecessor_report(kronecker, 5 * delta, window=4)
        assert [e.measure for e in smaller] == [e.measure for e in larger]
        h1 = kronecker_engine.measure(kronecker_engine.homogeneous(1))
        assert [e.certification for e in larger if e.measure == h1] == [ASSUMED]


@pytest.mark.slow
class TestCentralPreinjectives:

    def test_sink_source_has_none(self, sink_source_quiver):
        delta = sink_source_quiver.vertex_count
        for bound in (3 * delta, 4 * delta):
            assert central_preinjective_count(sink_source_quiver, bound) == 0
        report = verify_property(sink_source_quiver, "sink_source_dichotomy", 3 * delta)
        assert report.passed, report.failures

    def test_count_grows_on_a_non_sink_source_quiver(self, three_two):
        delta = three_two.vertex_count
        before = central_preinjective_count(three_two, 3 * delta)
        after = central_preinjective_count(three_two, 4 * delta)
        assert after > before
        report = verify_property(three_two, "inf_central", 4 * delta)
        assert report.passed, report.failures
        assert report.checked == 1


@pytest.mark.slow
class TestBigpropSuite:

    @pytest.mark.parametrize("word", ["+++--", "++-", "++-+"])
    @pytest.mark.parametrize("property_id", BIGPROP_IDS)
    def test_items_hold_at_three_delta(self, word, property_id):
        q = build_cycle_quiver(word)
        report = verify_property(q, property_id, 3 * q.vertex_count)
        assert report.passed, (word, property_id, report.failures)
