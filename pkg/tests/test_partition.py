"""
Tests for the measure index, direct successors, predecessors and the partition labels.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure, starts_with
from algebra.quivers import build_line_quiver, validate_string
from algebra.tubes import quasi_chain
from analysis.gr_engine import get_engine
from analysis.partition import (
    ASSUMED, BOUNDED, CENTRAL, CERTIFIED, LANDING, TAKE_OFF, b_value, direct_successor, measure_index,
    mu_ij_table, no_predecessor_report, partition_prefix, successor_chain,
)
from utils.error_handler import EngineError


class TestMeasureIndex:

    def test_neighbours(self, kronecker_engine):
        index = measure_index(kronecker_engine, 7)
        assert index.below(GRMeasure([1, 3])) == GRMeasure([1])
        assert index.above(GRMeasure([1])) == GRMeasure([1, 3])
        assert index.below(GRMeasure([1])) is None
        assert index.witness(GRMeasure([1])).descriptor() == "string[e0]"
        assert index.ordered == sorted(index.ordered)

    def test_index_is_memoized(self, kronecker_engine):
        assert measure_index(kronecker_engine, 5) is measure_index(kronecker_engine, 5)

    def test_b_value_of_bands(self, kronecker_engine):
        assert b_value(kronecker_engine, [kronecker_engine.homogeneous(1)]) == 4


class TestSuccessors:

    def test_take_off_start(self, kronecker):
        chain = successor_chain(kronecker, GRMeasure([1]), 7, 2)
        assert [r.successor for r in chain] == [GRMeasure([1, 3]), GRMeasure([1, 3, 5])]
        assert all(r.certification == CERTIFIED for r in chain)
        assert chain[0].b_value == 3

    def test_large_realizers_are_bounded(self, kronecker):
        result = direct_successor(kronecker, GRMeasure([1, 3, 5, 7]), 8)
        assert result.b_value == 9
        assert result.certification == BOUNDED

    def test_unrealized_measure(self, kronecker):
        with pytest.raises(EngineError) as info:
            direct_successor(kronecker, GRMeasure([1, 2, 3, 4, 5, 6]), 4)
        assert info.value.code == "unrealized_measure"

    def test_to_dict(self, kronecker):
        document = direct_successor(kronecker, GRMeasure([1]), 5).to_dict()
        assert document['measure'] == [1]
        assert document['successor'] == [1, 3]
        assert document['bound'] == 5


class TestPredecessors:

    def test_h1_has_no_direct_predecessor(self, kronecker, kronecker_engine):
        h1 = kronecker_engine.measure(kronecker_engine.homogeneous(1))
        entries = no_predecessor_report(kronecker, 8, 4)
        status = {e.measure: e.certification for e in entries}
        assert status[GRMeasure([1])] == CERTIFIED
        assert status[h1] == ASSUMED
        assert all(e.measure.maximum <= 4 for e in entries)

    def test_only_the_least_measure_is_certified(self, kronecker, kronecker_engine):
        h1 = kronecker_engine.measure(kronecker_engine.homogeneous(1))
        entries = no_predecessor_report(kronecker, 8, 4)
        for entry in entries:
            if entry.measure == GRMeasure([1]):
                assert entry.predecessor is None
            elif entry.measure != h1:
                assert entry.certification == BOUNDED
        assert [e.measure for e in entries if e.certification == CERTIFIED] == [GRMeasure([1])]

    def test_listed_measures_have_no_certified_predecessor(self, kronecker):
        for entry in no_predecessor_report(kronecker, 8, 4):
            if entry.predecessor is not None:
                result = direct_successor(kronecker, entry.predecessor, 8)
                assert result.certification != CERTIFIED


class TestPartition:

    def test_kronecker_labels(self, kronecker):
        report = partition_prefix(kronecker, 6)
        labels = report.labels()
        for value in ([1], [1, 3], [1, 3, 5]):
            assert labels[GRMeasure(value)] == TAKE_OFF
        assert labels[GRMeasure([1, 2])] == CENTRAL
        assert labels[GRMeasure([1, 2, 3])] == LANDING
        assert report.count(TAKE_OFF) == 3
        assert report.h1_measure == GRMeasure([1, 2])

    def test_rows_follow_the_order(self, kronecker):
        rows = partition_prefix(kronecker, 6).rows
        values = [row.measure for row in rows]
        assert values == sorted(values)
        document = partition_prefix(kronecker, 6).to_dict()
        assert document['rows'][0]['rational'] == "1/2"

    def test_needs_a_cycle_quiver(self):
        with pytest.raises(EngineError) as info:
            partition_prefix(build_line_quiver("++"), 4)
        assert info.value.code == "out_of_scope"


@pytest.mark.slow
class TestLadder:

    def test_ladder_rows_extend_mu_of_x_i(self, three_two):
        engine = get_engine(three_two)
        X = IsoClass.from_string(three_two, validate_string(three_two, ["a2", "a1", "a0"]))
        table = mu_ij_table(three_two, X, 4, 14)
        assert table.rank == 2
        assert table.passed
        for row in table.rows:
            base = engine.measure(quasi_chain(three_two, X, row.i))
            assert starts_with(base, row.measure)
            assert len(row.measure) == len(base) + 1
            assert row.realizers

