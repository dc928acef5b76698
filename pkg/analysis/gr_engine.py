"""
Gabriel-Roiter measure engine.

Measures are computed recursively, mu(M) = max mu(N) over indecomposable
proper submodules N, extended by |M|, and memoized per iso-class.
Band-free string modules only need their substring submodules; every other
module is compared against enumerated candidates with mono tests.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from algebra import linear
from algebra.iso_classes import IsoClass
from algebra.linear import graph_map_basis, is_indecomposable
from algebra.measures import EMPTY, GRMeasure, extend
from algebra.quivers import Quiver, band_words, dominated, enumerate_strings
from algebra.string_modules import Representation, SubstringInclusion, substring_submodules
from algebra.tubes import ARClass, ARKind, classify, defect
from utils.cache_manager import MISSING, MeasureCache
from utils.config import EngineSettings
from utils.error_handler import EngineError, RepresentationError
from utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GRQuotient:
    """One substring realization of a GR submodule and its quotient"""
    submodule: IsoClass
    interval: Tuple[int, int]
    quotient_words: Tuple[str, ...]
    uniserial: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'submodule': self.submodule.descriptor(),
            'interval': list(self.interval),
            'quotients': list(self.quotient_words),
            'uniserial': self.uniserial,
        }


@dataclass(frozen=True)
class GRResult:
    module: IsoClass
    measure: GRMeasure
    gr_submodules: Tuple[IsoClass, ...]
    gr_count: int
    filtration: Tuple[IsoClass, ...]
    quotients: Tuple[GRQuotient, ...] = field(default=())

    @property
    def all_quotients_uniserial(self) -> bool:
        return all(x.uniserial for x in self.quotients)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'module': self.module.descriptor(),
            'measure': self.measure.to_list(),
            'gr_count': self.gr_count,
            'gr_submodules': [N.descriptor() for N in self.gr_submodules],
            'filtration': [N.descriptor() for N in self.filtration],
            'quotients': [x.to_dict() for x in self.quotients],
        }


class GREngine:
    """Per-quiver measure engine with a shared memo"""

    def __init__(self, quiver: Quiver, settings: Optional[EngineSettings] = None,
                 cache: Optional[MeasureCache] = None):
        self.quiver = quiver
        self.settings = settings or EngineSettings()
        self.cache = cache or MeasureCache(name=quiver.label())
        self.bands = band_words(quiver)
        self._enumeration_lock = threading.Lock()
        self._enumerated_bound = -1
        self._enumerated: List[IsoClass] = []
        if self.bands and not quiver.is_cycle_quiver:
            logger.warning(f"{quiver.label()} has bands but is not a cycle quiver; only strings are supported")

    # ---- enumeration ----

    def homogeneous(self, multiplicity: int = 1, lam=None) -> IsoClass:
        if not self.quiver.is_cycle_quiver:
            raise EngineError("Homogeneous modules exist only for cycle quivers", code="out_of_scope")
        lam = self.settings.band_lambda if lam is None else lam
        return IsoClass.from_band(self.quiver, self.bands[0], multiplicity, lam)

    def enumerate_indecomposables(self, max_len: int) -> List[IsoClass]:
        """Strings of length <= max_len and homogeneous H_m with m|delta| <= max_len"""
        if max_len < 1:
            return []
        with self._enumeration_lock:
            if max_len > self._enumerated_bound:
                self._enumerated = self._enumerate(max_len)
                self._enumerated_bound = max_len
            classes = [X for X in self._enumerated if X.length <= max_len]
        return classes

    def _enumerate(self, max_len: int) -> List[IsoClass]:
        q = self.quiver
        if self.bands and not q.is_cycle_quiver:
            raise EngineError(f"Band enumeration on {q.label()} is out of scope", code="out_of_scope")
        classes = [IsoClass.from_string(q, w) for w in enumerate_strings(q, max_len - 1)]
        if self.bands:
            width = q.vertex_count
            classes.extend(self.homogeneous(m) for m in range(1, max_len // width + 1))
        classes.sort(key=lambda X: X.key)
        logger.debug(f"Enumerated {len(classes)} indecomposables of length <= {max_len} on {q.label()}")
        return classes

    # ---- hom tests ----

    def embeds(self, N: IsoClass, M: IsoClass) -> bool:
        if N.length > M.length or not dominated(N.dims, M.dims):
            return False
        key = (N, M)
        cached = self.cache.get("mono", key)
        if cached is not MISSING:
            return cached
        if N.is_string and M.is_string:
            basis = graph_map_basis(self.quiver, N.word, M.word)
            result = any(label.is_mono for label in basis.labels) or \
                linear.embeds(N.representation, M.representation, self.settings, basis)
        else:
            result = linear.embeds(N.representation, M.representation, self.settings)
        return self.cache.set("mono", key, result)

    def surjects(self, Y: IsoClass, M: IsoClass) -> bool:
        key = (Y, M)
        cached = self.cache.get("epi", key)
        if cached is not MISSING:
            return cached
        basis = graph_map_basis(self.quiver, Y.word, M.word) if Y.is_string and M.is_string else None
        result = linear.surjects(Y.representation, M.representation, self.settings, basis)
        return self.cache.set("epi", key, result)

    def classify(self, M: IsoClass) -> ARClass:
        return self.cache.get_or_compute("ar", M, lambda: classify(self.quiver, M))

    # ---- measures ----

    def is_band_free(self, M: IsoClass) -> bool:
        """No homogeneous module embeds into M"""
        if not M.is_string:
            return False
        if not self.bands:
            return True
        q = self.quiver
        if not q.is_cycle_quiver:
            raise EngineError(f"Band submodules on {q.label()} are out of scope", code="out_of_scope")
        if not dominated(q.delta, M.dims):
            return True
        if defect(q, M.dims) <= 0:
            if self.settings.verify_pruning and self.embeds(self.homogeneous(1), M):
                raise EngineError(f"Homogeneous module embeds into {M} of defect <= 0", code="precondition")
            return True
        return not self.embeds(self.homogeneous(1), M)

    def measure(self, M: IsoClass) -> GRMeasure:
        cached = self.cache.get("measure", M)
        if cached is not MISSING:
            return cached
        if M.length == 0:
            raise EngineError("The zero module has no measure", code="not_indecomposable")
        if M.length == 1:
            value = GRMeasure([1])
        elif self.is_band_free(M):
            logger.debug(f"Fast path for {M}")
            value = extend(self._substring_bound(M), M.length)
        else:
            logger.debug(f"General path for {M}")
            value = extend(self._general_bound(M), M.length)
        return self.cache.set("measure", M, value)

    def general_measure(self, M: IsoClass) -> GRMeasure:
        """Measure of M through mono tests against all candidates, bypassing the substring fast path"""
        if M.length <= 1:
            return self.measure(M)
        return extend(self._general_bound(M), M.length)

    def _substring_classes(self, M: IsoClass) -> List[Tuple[SubstringInclusion, IsoClass]]:
        return [(inc, IsoClass.from_string(self.quiver, inc.substring))
                for inc in substring_submodules(M.word) if inc.is_proper]

    def _substring_bound(self, M: IsoClass) -> GRMeasure:
        best = EMPTY
        for _, N in self._substring_classes(M):
            value = self.measure(N)
            if best < value:
                best = value
        return best

    def _lower_bound(self, M: IsoClass) -> GRMeasure:
        if M.is_string:
            return self._substring_bound(M)
        if M.is_band and M.multiplicity > 1:
            return self.measure(M.with_multiplicity(M.multiplicity - 1))
        return EMPTY

    def _candidates(self, M: IsoClass, pruned: bool) -> List[IsoClass]:
        found = []
        mclass = self.classify(M) if pruned else None
        for X in self.enumerate_indecomposables(M.length - 1):
            if not dominated(X.dims, M.dims):
                continue
            if X.is_band and M.is_band:
                X = X.with_lambda(M.lam)
            if pruned and not self._allowed_by_ar(X, mclass):
                continue
            found.append(X)
        return found

    def _allowed_by_ar(self, X: IsoClass, mclass: ARClass) -> bool:
        xclass = self.classify(X)
        if xclass.kind is ARKind.PREINJECTIVE:
            return mclass.kind is ARKind.PREINJECTIVE
        if mclass.kind is ARKind.PREPROJECTIVE:
            return xclass.kind is ARKind.PREPROJECTIVE
        if mclass.kind is ARKind.REGULAR and xclass.kind is ARKind.REGULAR:
            return xclass.tube == mclass.tube
        return True

    def _best_embedded(self, M: IsoClass, lower: GRMeasure, candidates: Iterable[IsoClass]) -> GRMeasure:
        scored = [(self.measure(X.with_lambda(self.settings.band_lambda)), X) for X in candidates]
        scored = [(value, X) for value, X in scored if lower < value]
        scored.sort(key=lambda pair: pair[1].key)
        scored.sort(key=lambda pair: pair[0], reverse=True)
        for value, X in scored:
            if self.embeds(X, M):
                return value
        return lower

    def _general_bound(self, M: IsoClass) -> GRMeasure:
        lower = self._lower_bound(M)
        pruned = self.settings.ar_pruning and self.quiver.is_cycle_quiver and M.kind != "explicit"
        best = self._best_embedded(M, lower, self._candidates(M, pruned))
        if pruned and self.settings.verify_pruning:
            unpruned = self._best_embedded(M, lower, self._candidates(M, False))
            if unpruned != best:
                raise EngineError(f"AR pruning changed the measure of {M}: {best} vs {unpruned}",
                                  code="precondition")
        return best

    def measures(self, classes: Sequence[IsoClass]) -> List[GRMeasure]:
        """Measures of many classes; batches of equal length run on the worker pool"""
        ordered = sorted(set(classes), key=lambda X: X.key)
        if self.settings.workers > 1 and len(ordered) > 1:
            lengths = sorted({X.length for X in ordered})
            with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
                for length in lengths:
                    batch = [X for X in ordered if X.length == length]
                    list(pool.map(self.measure, batch))
        else:
            for X in ordered:
                self.measure(X)
        logger.debug(f"Measure cache stats: {self.cache.stats()}")
        return [self.measure(X) for X in classes]

    # ---- GR submodules ----

    def gr_submodules(self, M: IsoClass) -> GRResult:
        if M.length <= 1:
            raise EngineError(f"{M} is simple and has no proper submodule", code="simple_input")
        cached = self.cache.get("gr", M)
        if cached is not MISSING:
            return cached
        value = self.measure(M)
        target = GRMeasure(value.elements[:-1])
        quotients: List[GRQuotient] = []
        if self.is_band_free(M):
            found: Dict[IsoClass, None] = {}
            for inc, N in self._substring_classes(M):
                if self.measure(N) == target:
                    found.setdefault(N, None)
                    quotients.append(GRQuotient(N, (inc.start, inc.stop),
                                                tuple(str(w) for w in inc.quotient_words),
                                                inc.has_uniserial_quotient))
            submodules = sorted(found, key=lambda X: X.key)
        else:
            submodules = []
            for X in self._candidates(M, False):
                if X.length == target.maximum and self.measure(X.with_lambda(self.settings.band_lambda)) == target \
                        and self.embeds(X, M):
                    submodules.append(X)
            submodules.sort(key=lambda X: X.key)
        if not submodules:
            raise EngineError(f"No GR submodule found for {M}", code="precondition")
        chain = self.filtration(submodules[0]) + (M,)
        result = GRResult(M, value, tuple(submodules), self._count(submodules), chain, tuple(quotients))
        return self.cache.set("gr", M, result)

    def _count(self, submodules: Sequence[IsoClass]) -> int:
        if self.settings.gr_count_mode == "dimension":
            return len({X.dims for X in submodules})
        return len({X.with_lambda(self.settings.band_lambda) for X in submodules})

    def filtration(self, M: IsoClass) -> Tuple[IsoClass, ...]:
        """GR filtration ending in M, choosing the smallest descriptor at each step"""
        if M.length == 1:
            return (M,)
        return self.gr_submodules(M).filtration

    def is_gr_inclusion(self, N: IsoClass, M: IsoClass) -> bool:
        if N == M or N.length >= M.length:
            return False
        if not self.embeds(N, M):
            return False
        return self.measure(M) == extend(self.measure(N), M.length)

    def measure_of_representation(self, rep: Representation, lambdas: Sequence = ()) -> GRResult:
        """Measure of an explicit indecomposable representation"""
        if not is_indecomposable(rep):
            raise RepresentationError("Representation is decomposable", code="decomposable")
        M = IsoClass.from_representation(rep)
        if M.length == 1:
            return GRResult(M, GRMeasure([1]), (), 0, (M,))
        best, best_classes = EMPTY, []
        lams = [self.settings.band_lambda] + [x for x in lambdas if x != self.settings.band_lambda]
        for X in self._candidates(M, False):
            trials = [X.with_lambda(lam) for lam in lams] if X.is_band else [X]
            for trial in trials:
                value = self.measure(trial)
                if value < best or not self.embeds(trial, M):
                    continue
                if best < value:
                    best, best_classes = value, []
                best_classes.append(trial)
                break
        value = extend(best, M.length)
        self.cache.set("measure", M, value)
        best_classes.sort(key=lambda X: X.key)
        chain = self.filtration(best_classes[0]) + (M,) if best_classes else (M,)
        return GRResult(M, value, tuple(best_classes), self._count(best_classes), chain)


# Engines hold unbounded per-module memos; only the most recently used ones stay registered
ENGINE_REGISTRY_SIZE = 8
_REGISTRY_LOCK = threading.Lock()


@lru_cache(maxsize=ENGINE_REGISTRY_SIZE)
def _registered_engine(q: Quiver, settings: EngineSettings) -> GREngine:
    return GREngine(q, settings)


def get_engine(q: Quiver, settings: Optional[EngineSettings] = None) -> GREngine:
    settings = settings or EngineSettings()
    with _REGISTRY_LOCK:
        return _registered_engine(q, settings)


def registered_engine_count() -> int:
    return _registered_engine.cache_info().currsize


def reset_engines():
    with _REGISTRY_LOCK:
        _registered_engine.cache_clear()


def enumerate_indecomposables(q: Quiver, max_len: int, settings: Optional[EngineSettings] = None) -> List[IsoClass]:
    return get_engine(q, settings).enumerate_indecomposables(max_len)


def gr_measure(q: Quiver, M: IsoClass, settings: Optional[EngineSettings] = None) -> GRMeasure:
    return get_engine(q, settings).measure(M)


def gr_submodules(q: Quiver, M: IsoClass, settings: Optional[EngineSettings] = None) -> GRResult:
    return get_engine(q, settings).gr_submodules(M)


def is_gr_inclusion(q: Quiver, N: IsoClass, M: IsoClass, settings: Optional[EngineSettings] = None) -> bool:
    return get_engine(q, settings).is_gr_inclusion(N, M)
