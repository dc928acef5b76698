"""
Take-off / central / landing labels, direct successors and predecessors,
and the ladder of measures mu(X_i) + {a} below mu(X_{i+1}).

Every answer that depends on the enumeration bound carries a certification:
`certified` when the bound provably covers the question, `bounded` otherwise.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure, starts_with, to_rational, fraction_text
from algebra.quivers import Quiver
from algebra.string_modules import irreducible_mono_extensions
from algebra.tubes import ARKind, HOMOGENEOUS, all_tubes, quasi_chain
from analysis.gr_engine import GREngine, get_engine
from utils.config import EngineSettings
from utils.error_handler import EngineError
from utils.logging_config import get_logger

logger = get_logger(__name__)

CERTIFIED = "certified"
BOUNDED = "bounded"
UNDETERMINED = "undetermined"
# taken from the structure theory of homogeneous tubes, not from a finite search
ASSUMED = "assumed"

TAKE_OFF = "take-off"
CENTRAL = "central"
LANDING = "landing"
UNDETERMINED_AT_BOUND = "undetermined-at-bound"


@dataclass
class MeasureIndex:
    """Realized measures of all enumerated indecomposables up to a bound"""
    engine: GREngine
    bound: int
    realizers: Dict[GRMeasure, List[IsoClass]] = field(default_factory=dict)
    ordered: List[GRMeasure] = field(default_factory=list)

    @classmethod
    def build(cls, engine: GREngine, bound: int) -> "MeasureIndex":
        classes = engine.enumerate_indecomposables(bound)
        measures = engine.measures(classes)
        index = cls(engine, bound)
        for X, value in zip(classes, measures):
            index.realizers.setdefault(value, []).append(X)
        index.ordered = sorted(index.realizers)
        logger.info(f"Indexed {len(index.ordered)} realized measures from {len(classes)} modules at bound {bound}")
        return index

    def above(self, I: GRMeasure) -> Optional[GRMeasure]:
        """Smallest realized measure strictly above I"""
        k = bisect.bisect_right(self.ordered, I)
        return self.ordered[k] if k < len(self.ordered) else None

    def below(self, I: GRMeasure) -> Optional[GRMeasure]:
        """Largest realized measure strictly below I"""
        k = bisect.bisect_left(self.ordered, I)
        return self.ordered[k - 1] if k > 0 else None

    def between(self, low: GRMeasure, high: GRMeasure) -> List[GRMeasure]:
        lo = bisect.bisect_right(self.ordered, low)
        hi = bisect.bisect_left(self.ordered, high)
        return self.ordered[lo:hi]

    def witness(self, I: GRMeasure) -> IsoClass:
        return min(self.realizers[I], key=lambda X: X.key)


def measure_index(engine: GREngine, bound: int) -> MeasureIndex:
    return engine.cache.get_or_compute("index", bound, lambda: MeasureIndex.build(engine, bound))


def b_value(engine: GREngine, realizers: List[IsoClass]) -> int:
    """Largest target length of an irreducible monomorphism leaving a realizer"""
    best = 0
    for N in realizers:
        if N.is_band:
            best = max(best, N.length + engine.quiver.vertex_count)
        elif N.is_string:
            for word in irreducible_mono_extensions(engine.quiver, N.word):
                best = max(best, word.length + 1)
    return best


@dataclass(frozen=True)
class SuccessorResult:
    measure: GRMeasure
    successor: Optional[GRMeasure]
    certification: str
    b_value: int
    bound: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            'measure': self.measure.to_list(),
            'successor': self.successor.to_list() if self.successor is not None else None,
            'certification': self.certification,
            'b_value': self.b_value,
            'bound': self.bound,
        }


def direct_successor(q: Quiver, I: GRMeasure, max_len: int,
                     settings: Optional[EngineSettings] = None) -> SuccessorResult:
    engine = get_engine(q, settings)
    index = measure_index(engine, max_len)
    if I not in index.realizers:
        raise EngineError(f"{I} is not realized by a module of length <= {max_len}", code="unrealized_measure",
                          measure=str(I))
    successor = index.above(I)
    b = b_value(engine, index.realizers[I])
    if successor is None:
        status = UNDETERMINED
    elif b <= max_len:
        status = CERTIFIED
    else:
        status = BOUNDED
        logger.warning(f"Successor of {I} at bound {max_len} is bounded (B = {b})")
    return SuccessorResult(I, successor, status, b, max_len)


def successor_chain(q: Quiver, I: GRMeasure, max_len: int, steps: int,
                    settings: Optional[EngineSettings] = None) -> List[SuccessorResult]:
    chain = []
    current = I
    for _ in range(steps):
        result = direct_successor(q, current, max_len, settings)
        chain.append(result)
        if result.successor is None:
            break
        current = result.successor
    return chain


@dataclass(frozen=True)
class PredecessorEntry:
    measure: GRMeasure
    certification: str
    predecessor: Optional[GRMeasure]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'measure': self.measure.to_list(),
            'certification': self.certification,
            'predecessor': self.predecessor.to_list() if self.predecessor is not None else None,
        }


def _no_predecessor_status(J: GRMeasure, below: Optional[GRMeasure], h1: Optional[GRMeasure]) -> str:
    # {1} is the least measure of any module, so nothing can precede it
    if below is None and J == GRMeasure([1]):
        return CERTIFIED
    if J == h1:
        return ASSUMED
    return BOUNDED


def no_predecessor_report(q: Quiver, max_len: int, window: Optional[int] = None,
                          settings: Optional[EngineSettings] = None) -> List[PredecessorEntry]:
    """Realized measures (realizers of length <= window) without a certified direct predecessor.

    Only {1} is certified by the search itself; mu(H_1) is reported as assumed
    and every other entry as bounded.
    """
    window = max_len // 2 if window is None else window
    engine = get_engine(q, settings)
    index = measure_index(engine, max_len)
    h1 = engine.measure(engine.homogeneous(1)) if engine.bands and q.is_cycle_quiver else None
    entries = []
    for J in index.ordered:
        if J.maximum > window:
            continue
        below = index.below(J)
        if below is not None and direct_successor(q, below, max_len, settings).certification == CERTIFIED:
            continue
        entries.append(PredecessorEntry(J, _no_predecessor_status(J, below, h1), below))
    logger.info(f"{len(entries)} measures without a certified predecessor (bound {max_len}, window {window})")
    return entries


@dataclass(frozen=True)
class PartitionRow:
    measure: GRMeasure
    label: str
    certification: str
    witness: IsoClass
    witness_kind: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            'measure': self.measure.to_list(),
            'rational': fraction_text(to_rational(self.measure)),
            'label': self.label,
            'certification': self.certification,
            'witness': self.witness.descriptor(),
            'witness_kind': self.witness_kind,
        }


@dataclass(frozen=True)
class PartitionReport:
    bound: int
    rows: Tuple[PartitionRow, ...]
    h1_measure: Optional[GRMeasure]

    def labels(self) -> Dict[GRMeasure, str]:
        return {row.measure: row.label for row in self.rows}

    def count(self, label: str, kind: Optional[str] = None) -> int:
        return sum(1 for row in self.rows if row.label == label and (kind is None or row.witness_kind == kind))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bound': self.bound,
            'h1_measure': self.h1_measure.to_list() if self.h1_measure is not None else None,
            'rows': [row.to_dict() for row in self.rows],
        }


def _take_off_chain(q: Quiver, index: MeasureIndex, settings: Optional[EngineSettings]) -> List[GRMeasure]:
    chain = [GRMeasure([1])]
    while True:
        result = direct_successor(q, chain[-1], index.bound, settings)
        if result.certification != CERTIFIED or result.successor is None:
            return chain
        chain.append(result.successor)


def regular_ceiling(engine: GREngine, X: IsoClass, rank: int, length: int) -> List[GRMeasure]:
    """Measures of X_r, ..., X_{i0} where i0 is the first i >= r with |X_i| >= length"""
    values = []
    i = rank
    while True:
        Xi = quasi_chain(engine.quiver, X, i)
        values.append(engine.measure(Xi))
        if Xi.length >= length:
            return values
        i += 1


def is_landing_module(engine: GREngine, M: IsoClass, h1: GRMeasure) -> bool:
    """mu(M) exceeds the measure of every regular module"""
    q = engine.quiver
    if engine.classify(M).kind is not ARKind.PREINJECTIVE:
        return False
    value = engine.measure(M)
    width = q.vertex_count
    j = 1
    while True:
        if not engine.measure(engine.homogeneous(j)) < value:
            return False
        if j * width >= M.length:
            break
        j += 1
    for tube in all_tubes(q):
        if tube.homogeneous:
            continue
        for X in tube.quasi_simples:
            top = engine.measure(quasi_chain(q, X, tube.rank))
            if top < h1:
                continue
            if any(not m < value for m in regular_ceiling(engine, X, tube.rank, M.length)):
                return False
    return True


def partition_prefix(q: Quiver, max_len: int, settings: Optional[EngineSettings] = None) -> PartitionReport:
    if not q.is_cycle_quiver:
        raise EngineError("The take-off/central/landing partition needs a cycle quiver", code="out_of_scope")
    engine = get_engine(q, settings)
    index = measure_index(engine, max_len)
    h1 = engine.measure(engine.homogeneous(1))
    chain = set(_take_off_chain(q, index, settings))
    preprojective_top = None
    for J in index.ordered:
        if any(engine.classify(X).kind is ARKind.PREPROJECTIVE for X in index.realizers[J]):
            preprojective_top = J
    rows = []
    for J in index.ordered:
        witness = index.witness(J)
        landing = []
        if J not in chain and (preprojective_top is None or preprojective_top < J):
            landing = [M for M in index.realizers[J] if is_landing_module(engine, M, h1)]
        if J in chain or (preprojective_top is not None and not preprojective_top < J):
            label = TAKE_OFF
        elif landing:
            label = LANDING
            witness = min(landing, key=lambda X: X.key)
        elif not J < h1:
            label = CENTRAL
        else:
            label = UNDETERMINED_AT_BOUND
        status = BOUNDED if label == UNDETERMINED_AT_BOUND else CERTIFIED
        rows.append(PartitionRow(J, label, status, witness, engine.classify(witness).kind.value))
    undetermined = sum(1 for row in rows if row.label == UNDETERMINED_AT_BOUND)
    if undetermined:
        logger.warning(f"{undetermined} measures undetermined at bound {max_len}")
    logger.info(f"Partition of {q.label()} at bound {max_len}: {len(rows)} measures")
    return PartitionReport(max_len, tuple(rows), h1)


@dataclass(frozen=True)
class LadderRow:
    i: int
    j: int
    a: int
    measure: GRMeasure
    realizers: Tuple[IsoClass, ...]
    below_next: bool
    preinjective: bool
    gap_free: bool

    @property
    def passed(self) -> bool:
        return self.below_next and self.preinjective and self.gap_free

    def to_dict(self) -> Dict[str, Any]:
        return {
            'i': self.i,
            'j': self.j,
            'a': self.a,
            'measure': self.measure.to_list(),
            'realizers': [X.descriptor() for X in self.realizers],
            'below_next': self.below_next,
            'preinjective': self.preinjective,
            'gap_free': self.gap_free,
        }


@dataclass(frozen=True)
class LadderTable:
    quasi_simple: IsoClass
    rank: int
    bound: int
    rows: Tuple[LadderRow, ...]
    cross_order: bool

    @property
    def passed(self) -> bool:
        return self.cross_order and all(row.passed for row in self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'quasi_simple': self.quasi_simple.descriptor(),
            'rank': self.rank,
            'bound': self.bound,
            'cross_order': self.cross_order,
            'passed': self.passed,
            'rows': [row.to_dict() for row in self.rows],
        }


def _tube_rank(q: Quiver, X: IsoClass) -> int:
    for tube in all_tubes(q):
        if X in tube.quasi_simples:
            return tube.rank
    raise EngineError(f"{X} is not a quasi-simple of a string tube", code="precondition")


def mu_ij_table(q: Quiver, X: IsoClass, i_max: int, max_len: int,
                settings: Optional[EngineSettings] = None) -> LadderTable:
    engine = get_engine(q, settings)
    r = _tube_rank(q, X)
    h1 = engine.measure(engine.homogeneous(1))
    if engine.measure(quasi_chain(q, X, r)) < h1:
        raise EngineError(f"mu(X_{r}) is below mu(H_1) for {X}", code="precondition")
    index = measure_index(engine, max_len)
    rows: List[LadderRow] = []
    per_i: List[List[GRMeasure]] = []
    for i in range(2 * r, i_max + 1):
        Xi = quasi_chain(q, X, i)
        next_length = quasi_chain(q, X, i + 1).length
        base = engine.measure(Xi)
        found = []
        for J in index.ordered:
            if len(J) == len(base) + 1 and starts_with(base, J) and J.maximum != next_length:
                found.append(J)
        found.sort(reverse=True)
        per_i.append(found)
        for j, J in enumerate(found, start=1):
            realizers = tuple(sorted(index.realizers[J], key=lambda Y: Y.key))
            gap_free = j == 1 or not index.between(J, found[j - 2])
            rows.append(LadderRow(i, j, J.maximum, J, realizers, J.maximum < next_length,
                                  all(engine.classify(Y).kind is ARKind.PREINJECTIVE for Y in realizers),
                                  gap_free))
    cross_order = all(a > b for k, earlier in enumerate(per_i) for later in per_i[k + 1:]
                      for a in earlier for b in later)
    table = LadderTable(X, r, max_len, tuple(rows), cross_order)
    logger.info(f"Ladder over {X}: {len(rows)} entries, passed={table.passed}")
    return table
