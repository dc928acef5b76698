"""
Cross-checks of the measure engine against the brute-force chain oracle.
"""

import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from algebra.measures import GRMeasure
from algebra.quivers import build_cycle_quiver, build_line_quiver
from analysis.gr_engine import get_engine
from analysis.oracles import ChainOracle, oracle_disagreements, oracle_measures


class TestChainOracle:

    def test_homogeneous_measure(self, kronecker, kronecker_engine):
        oracle = ChainOracle(kronecker, 4)
        assert oracle.measure(kronecker_engine.homogeneous(2)) == GRMeasure([1, 2, 4])

    def test_chains_end_at_the_module(self, kronecker, kronecker_engine):
        oracle = ChainOracle(kronecker, 4)
        H2 = kronecker_engine.homogeneous(2)
        assert all(chain[-1] == 4 for chain in oracle.chains(H2))
        assert (1, 2, 4) in oracle.chains(H2)

    def test_line_quiver(self):
        values = oracle_measures(build_line_quiver("+-"), 3)
        assert max(values.values()) == GRMeasure([1, 2, 3])


class TestAgreement:

    def test_kronecker(self, kronecker):
        assert oracle_disagreements(kronecker, 5) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("word", ["++-", "+-+-"])
    def test_small_cycles(self, word):
        assert oracle_disagreements(build_cycle_quiver(word), 6) == []
