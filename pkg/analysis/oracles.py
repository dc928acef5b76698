"""
Brute-force measure oracle.

Builds the embedding graph among enumerated indecomposables with symbolic
generic ranks (no graph maps, no candidate pruning, no engine memo) and
reads each measure off the set of all chains ending at a module.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from algebra import linear
from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure, maximum
from algebra.quivers import Quiver, band_words, dominated, enumerate_strings
from analysis.gr_engine import GREngine
from utils.config import EngineSettings
from utils.logging_config import get_logger

logger = get_logger(__name__)

SYMBOLIC = EngineSettings(random_fast_path=False)

ChainSet = FrozenSet[Tuple[int, ...]]


class ChainOracle:
    """Measures of every indecomposable up to a bound, from explicit chains"""

    def __init__(self, quiver: Quiver, max_len: int, lam=1):
        self.quiver = quiver
        self.max_len = max_len
        self.classes = self._classes(lam)
        self.below: Dict[IsoClass, List[IsoClass]] = {}
        self._chains: Dict[IsoClass, ChainSet] = {}

    def _classes(self, lam) -> List[IsoClass]:
        q = self.quiver
        classes = [IsoClass.from_string(q, w) for w in enumerate_strings(q, self.max_len - 1)]
        bands = band_words(q)
        if bands:
            classes.extend(IsoClass.from_band(q, bands[0], m, lam)
                           for m in range(1, self.max_len // q.vertex_count + 1))
        return sorted(classes, key=lambda X: X.key)

    def embedded(self, M: IsoClass) -> List[IsoClass]:
        """Enumerated classes with a monomorphism into M, M excluded"""
        if M not in self.below:
            found = []
            for X in self.classes:
                if X.length >= M.length or not dominated(X.dims, M.dims):
                    continue
                if linear.mono_epi_test(X.representation, M.representation, SYMBOLIC).exists_mono:
                    found.append(X)
            self.below[M] = found
        return self.below[M]

    def chains(self, M: IsoClass) -> ChainSet:
        """Length sets of all chains X_1 < ... < X_t = M of indecomposables"""
        if M not in self._chains:
            found: Set[Tuple[int, ...]] = {(M.length,)}
            for N in self.embedded(M):
                found.update(chain + (M.length,) for chain in self.chains(N))
            self._chains[M] = frozenset(found)
        return self._chains[M]

    def measure(self, M: IsoClass) -> GRMeasure:
        return maximum([GRMeasure(chain) for chain in self.chains(M)])

    def measures(self) -> Dict[IsoClass, GRMeasure]:
        values = {M: self.measure(M) for M in self.classes}
        logger.debug(f"Oracle measured {len(values)} modules on {self.quiver.label()} up to length {self.max_len}")
        return values


def oracle_measures(q: Quiver, max_len: int, lam=1) -> Dict[IsoClass, GRMeasure]:
    return ChainOracle(q, max_len, lam).measures()


def oracle_disagreements(q: Quiver, max_len: int,
                         settings: Optional[EngineSettings] = None) -> List[Tuple[IsoClass, GRMeasure, GRMeasure, GRMeasure]]:
    """(module, engine measure, general-path measure, oracle measure) wherever they differ"""
    engine = GREngine(q, settings)
    lam = engine.settings.band_lambda
    found = []
    for M, value in oracle_measures(q, max_len, lam).items():
        computed = engine.measure(M)
        general = engine.general_measure(M)
        if computed != value or general != value:
            found.append((M, computed, general, value))
    if found:
        logger.warning(f"{len(found)} oracle disagreements on {q.label()} up to length {max_len}")
    return found
