"""
Tests for AR classification, tubes and the Coxeter transformation.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
from hypothesis import given, strategies as st

from algebra.iso_classes import IsoClass
from algebra.quivers import build_cycle_quiver, build_line_quiver, validate_string
from algebra.tubes import (
    ARKind, HOMOGENEOUS, all_tubes, apply_coxeter, class_dims, classify, defect, injective_dims,
    projective_dims, quasi_chain, tau_class, tubes,
)
from analysis.gr_engine import get_engine
from utils.error_handler import ClassificationError, QuiverError

ORIENTATIONS = ["+-", "++-", "+-+-", "+++--"]


class TestCoxeter:

    @pytest.mark.parametrize("word", ORIENTATIONS)
    def test_delta_is_fixed(self, word):
        q = build_cycle_quiver(word)
        assert apply_coxeter(q, q.delta) == q.delta
        assert defect(q, q.delta) == 0

    @given(st.sampled_from(ORIENTATIONS), st.lists(st.integers(min_value=0, max_value=6), min_size=5, max_size=5))
    def test_inverse_round_trip(self, word, values):
        q = build_cycle_quiver(word)
        d = tuple(values[:q.vertex_count])
        assert apply_coxeter(q, apply_coxeter(q, d, 1), -1) == d

    def test_kronecker_projectives_and_injectives(self, kronecker):
        assert projective_dims(kronecker) == [(1, 2), (0, 1)]
        assert injective_dims(kronecker) == [(1, 0), (2, 1)]
        assert defect(kronecker, (1, 2)) == -1
        assert defect(kronecker, (2, 1)) == 1

    def test_line_quiver_is_rejected(self):
        with pytest.raises(QuiverError):
            defect(build_line_quiver("+"), (1, 1))


class TestTubes:

    def test_kronecker_has_no_exceptional_tube(self, kronecker):
        assert {t.tube_id: t.rank for t in all_tubes(kronecker)} == {"T+": 1, "T-": 1, HOMOGENEOUS: 1}
        assert [t.tube_id for t in tubes(kronecker)] == [HOMOGENEOUS]

    def test_three_two_tube_ranks(self, three_two):
        assert {t.tube_id: t.rank for t in all_tubes(three_two)} == {"T+": 2, "T-": 3, HOMOGENEOUS: 1}

    @pytest.mark.parametrize("word", ORIENTATIONS)
    def test_quasi_simples_add_up_to_delta(self, word):
        q = build_cycle_quiver(word)
        for tube in all_tubes(q):
            total = tuple(sum(X.dims[v] for X in tube.quasi_simples) for v in range(q.vertex_count))
            assert total == q.delta
            for X in tube.quasi_simples:
                top = quasi_chain(q, X, tube.rank)
                assert top.dims == q.delta
                assert classify(q, top).quasi_length == tube.rank

    def test_tau_rotates_quasi_simples(self, three_two):
        tube = next(t for t in all_tubes(three_two) if t.tube_id == "T-")
        X = tube.quasi_simples[0]
        c = classify(three_two, X)
        seen = [c.quasi_socle]
        for _ in range(tube.rank - 1):
            c = tau_class(three_two, c)
            seen.append(c.quasi_socle)
        assert set(seen) == set(tube.quasi_simples)
        assert tau_class(three_two, c).quasi_socle == X

    def test_quasi_length_must_be_positive(self, three_two):
        X = all_tubes(three_two)[0].quasi_simples[0]
        with pytest.raises(ClassificationError):
            quasi_chain(three_two, X, 0)


class TestClassification:

    def test_kronecker_components(self, kronecker, kronecker_engine):
        P0 = IsoClass.from_string(kronecker, validate_string(kronecker, ["a0", "-a1"]))
        I1 = IsoClass.from_string(kronecker, validate_string(kronecker, ["-a0", "a1"]))
        X = IsoClass.from_string(kronecker, validate_string(kronecker, ["a0"]))
        assert classify(kronecker, P0).kind is ARKind.PREPROJECTIVE
        assert classify(kronecker, I1).kind is ARKind.PREINJECTIVE
        regular = classify(kronecker, X)
        assert (regular.kind, regular.tube, regular.quasi_length) == (ARKind.REGULAR, "T+", 1)
        H2 = kronecker_engine.homogeneous(2)
        assert classify(kronecker, H2).to_dict()['tube'] == HOMOGENEOUS
        assert classify(kronecker, H2).quasi_length == 2

    @pytest.mark.parametrize("word", ["+-", "++-", "+-+-"])
    def test_class_dims_inverts_classify(self, word):
        q = build_cycle_quiver(word)
        for M in get_engine(q).enumerate_indecomposables(2 * q.vertex_count):
            assert class_dims(q, classify(q, M)) == M.dims, str(M)

    def test_tau_of_projective_fails(self, kronecker):
        S1 = IsoClass.from_string(kronecker, validate_string(kronecker, [], vertex=1))
        with pytest.raises(ClassificationError) as info:
            tau_class(kronecker, classify(kronecker, S1))
        assert info.value.code == "projective_tau"
