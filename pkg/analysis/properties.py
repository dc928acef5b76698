"""
Registered structural properties of GR measures over cycle quivers.

Each property is a check class that walks the enumerated indecomposables up
to a bound and records one verdict per applicable module (or pair of
modules). Claims about infinitely many modules are checked on the prefix
the bound covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Type

from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure
from algebra.quivers import Quiver
from algebra.string_modules import irreducible_mono_extensions
from algebra.tubes import ARClass, ARKind, HOMOGENEOUS, Tube, all_tubes, hom_nonzero, quasi_chain
from analysis.gr_engine import GREngine, GRResult, get_engine
from analysis.partition import (
    CENTRAL, LANDING, TAKE_OFF, CERTIFIED, MeasureIndex, PartitionReport,
    direct_successor, measure_index, partition_prefix,
)
from utils.config import EngineSettings
from utils.error_handler import EngineError, PropertyError
from utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass
class PropertyReport:
    property_id: str
    description: str
    bound: int
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    witnesses: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, subject: str):
        self.checked += 1
        if condition:
            self.witnesses.append(subject)
        else:
            self.failures.append(subject)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'property': self.property_id,
            'description': self.description,
            'bound': self.bound,
            'passed': self.passed,
            'checked': self.checked,
            'failures': list(self.failures),
            'witnesses': list(self.witnesses),
        }


class CheckContext:
    """Shared lazily computed data for one (quiver, bound) verification run"""

    def __init__(self, quiver: Quiver, max_len: int, settings: Optional[EngineSettings] = None):
        self.quiver = quiver
        self.max_len = max_len
        self.settings = settings
        self.engine: GREngine = get_engine(quiver, settings)

    @cached_property
    def classes(self) -> List[IsoClass]:
        return self.engine.enumerate_indecomposables(self.max_len)

    @property
    def non_simple(self) -> List[IsoClass]:
        return [M for M in self.classes if M.length > 1]

    @cached_property
    def index(self) -> MeasureIndex:
        return measure_index(self.engine, self.max_len)

    @cached_property
    def partition(self) -> PartitionReport:
        return self.engine.cache.get_or_compute(
            "partition", self.max_len, lambda: partition_prefix(self.quiver, self.max_len, self.settings))

    @cached_property
    def labels(self) -> Dict[GRMeasure, str]:
        return self.partition.labels()

    @cached_property
    def h1(self) -> GRMeasure:
        return self.measure(self.engine.homogeneous(1))

    @property
    def delta_length(self) -> int:
        return self.quiver.vertex_count

    @cached_property
    def string_tubes(self) -> List[Tube]:
        return [t for t in all_tubes(self.quiver) if not t.homogeneous]

    @cached_property
    def exceptional_tubes(self) -> List[Tube]:
        return [t for t in self.string_tubes if t.rank > 1]

    def measure(self, X: IsoClass) -> GRMeasure:
        return self.engine.measure(X)

    def ar(self, X: IsoClass) -> ARClass:
        return self.engine.classify(X)

    def kind(self, X: IsoClass) -> ARKind:
        return self.ar(X).kind

    def gr(self, M: IsoClass) -> GRResult:
        return self.engine.gr_submodules(M)

    def label(self, X: IsoClass) -> str:
        return self.labels[self.measure(X)]

    def of_kind(self, kind: ARKind) -> List[IsoClass]:
        return [M for M in self.classes if self.kind(M) is kind]

    def chain(self, X: IsoClass, length: Optional[int] = None) -> List[IsoClass]:
        """X_1, X_2, ... while |X_i| <= length (the bound by default)"""
        length = self.max_len if length is None else length
        found = []
        i = 1
        while True:
            Xi = quasi_chain(self.quiver, X, i)
            if Xi.length > length:
                return found
            found.append(Xi)
            i += 1

    def irreducible_targets(self, N: IsoClass) -> List[IsoClass]:
        """Targets of the irreducible monomorphisms leaving N"""
        if N.is_band:
            return [N.with_multiplicity(N.multiplicity + 1)]
        if N.is_string:
            return [IsoClass.from_string(self.quiver, w) for w in irreducible_mono_extensions(self.quiver, N.word)]
        return []

    def quasi_simple_pairs(self) -> List[tuple]:
        """(quasi-simple, rank) for every string tube plus H_1"""
        pairs = [(X, t.rank) for t in self.string_tubes for X in t.quasi_simples]
        pairs.append((self.engine.homogeneous(1), 1))
        return pairs


class PropertyCheck:
    """Base class for registered properties"""

    property_id = ""
    description = ""
    needs_cycle = True

    def run(self, ctx: CheckContext, report: PropertyReport):
        raise NotImplementedError()


PROPERTY_REGISTRY: Dict[str, Type[PropertyCheck]] = {}


def register(cls: Type[PropertyCheck]) -> Type[PropertyCheck]:
    PROPERTY_REGISTRY[cls.property_id] = cls
    return cls


def _gr_subject(N: IsoClass, M: IsoClass) -> str:
    return f"{N} < {M}"


@register
class EpiFactorization(PropertyCheck):
    property_id = "epi_factorization"
    description = "every GR inclusion N < M factors as an irreducible mono N -> Y and an epi Y -> M"
    needs_cycle = False

    def run(self, ctx, report):
        for M in ctx.non_simple:
            for N in ctx.gr(M).gr_submodules:
                targets = ctx.irreducible_targets(N)
                ok = any(Y == M or ctx.engine.surjects(Y, M) for Y in targets)
                report.check(ok, _gr_subject(N, M))


@register
class EpiLength(PropertyCheck):
    property_id = "epi_length"
    description = "mu(N) < mu(Y) < mu(M) with N a GR submodule of M forces |Y| > |M|"
    needs_cycle = False

    def run(self, ctx, report):
        for M in ctx.non_simple:
            value = ctx.measure(M)
            below = GRMeasure(value.elements[:-1])
            between = ctx.index.between(below, value)
            for J in between:
                for Y in ctx.index.realizers[J]:
                    report.check(Y.length > M.length, f"{Y} between the GR submodule and {M}")


@register
class PreprojectiveIrreducible(PropertyCheck):
    property_id = "bigprop_1a"
    description = "GR inclusions into preprojective modules are irreducible monomorphisms"

    def run(self, ctx, report):
        for M in ctx.of_kind(ARKind.PREPROJECTIVE):
            if M.length == 1:
                continue
            for N in ctx.gr(M).gr_submodules:
                report.check(M in ctx.irreducible_targets(N), _gr_subject(N, M))


@register
class QuasiSimpleSubmodules(PropertyCheck):
    property_id = "bigprop_1b"
    description = "GR submodules of quasi-simple modules are preprojective"

    def run(self, ctx, report):
        for M in ctx.of_kind(ARKind.REGULAR):
            if M.length == 1 or ctx.ar(M).quasi_length != 1:
                continue
            for N in ctx.gr(M).gr_submodules:
                report.check(ctx.kind(N) is ARKind.PREPROJECTIVE, _gr_subject(N, M))


@register
class RegularChainSubmodules(PropertyCheck):
    property_id = "bigprop_1c"
    description = "GR submodules of X_i (i > 1) are preprojective or X_(i-1)"

    def run(self, ctx, report):
        for M in ctx.of_kind(ARKind.REGULAR):
            c = ctx.ar(M)
            if c.quasi_socle is None or c.quasi_length is None or c.quasi_length < 2:
                continue
            previous = quasi_chain(ctx.quiver, c.quasi_socle, c.quasi_length - 1)
            for N in ctx.gr(M).gr_submodules:
                ok = N == previous or ctx.kind(N) is ARKind.PREPROJECTIVE
                report.check(ok, _gr_subject(N, M))


@register
class PreinjectiveSubmodules(PropertyCheck):
    property_id = "bigprop_1d"
    description = "GR submodules of preinjective modules are regular"

    def run(self, ctx, report):
        for M in ctx.of_kind(ARKind.PREINJECTIVE):
            if M.length == 1:
                continue
            for N in ctx.gr(M).gr_submodules:
                report.check(ctx.kind(N) is ARKind.REGULAR, _gr_subject(N, M))


@register
class PreprojectiveTakeOff(PropertyCheck):
    property_id = "bigprop_2"
    description = "preprojective modules are take-off modules with measure below mu(H_1)"

    def run(self, ctx, report):
        for X in ctx.of_kind(ARKind.PREPROJECTIVE):
            ok = ctx.measure(X) < ctx.h1 and ctx.label(X) == TAKE_OFF
            report.check(ok, str(X))


@register
class HomogeneousCentral(PropertyCheck):
    property_id = "bigprop_3"
    description = "mu(H_1) is central and preinjectives with dimension vector above delta exceed it"

    def run(self, ctx, report):
        report.check(ctx.labels.get(ctx.h1) == CENTRAL, f"label of {ctx.h1}")
        delta = ctx.quiver.delta
        for M in ctx.of_kind(ARKind.PREINJECTIVE):
            above = M.dims != delta and all(a >= b for a, b in zip(M.dims, delta))
            if above:
                report.check(ctx.h1 < ctx.measure(M), str(M))


@register
class TubeComparison(PropertyCheck):
    property_id = "bigprop_4"
    description = "mu(X_r) against mu(H_1) decides how the tube of X compares with homogeneous modules"

    def run(self, ctx, report):
        homogeneous = [ctx.measure(H) for H in ctx.chain(ctx.engine.homogeneous(1))]
        for tube in ctx.string_tubes:
            r = tube.rank
            for X in tube.quasi_simples:
                chain = ctx.chain(X, max(ctx.max_len, ctx.delta_length))
                top = ctx.measure(chain[r - 1])
                if top < ctx.h1:
                    for i, Xi in enumerate(chain, start=1):
                        report.check(all(ctx.measure(Xi) < h for h in homogeneous), f"{X} at quasi-length {i}")
                    continue
                for i in range(r, len(chain)):
                    Xi, Xnext = chain[i - 1], chain[i]
                    gr = ctx.gr(Xnext).gr_submodules
                    report.check(gr == (Xi,), f"{Xi} unique GR submodule of {Xnext}")
                    if r > 1:
                        report.check(all(h < ctx.measure(Xnext) for h in homogeneous),
                                     f"{Xnext} above every homogeneous measure")


@register
class ExceptionalTubeAboveH1(PropertyCheck):
    property_id = "bigprop_5"
    description = "every tube of rank r > 1 has a quasi-simple X with mu(X_r) >= mu(H_1)"

    def run(self, ctx, report):
        for tube in ctx.exceptional_tubes:
            tops = [ctx.measure(quasi_chain(ctx.quiver, X, tube.rank)) for X in tube.quasi_simples]
            report.check(any(not m < ctx.h1 for m in tops), tube.tube_id)


@register
class SimpleQuasiSimpleBelowH1(PropertyCheck):
    property_id = "bigprop_6"
    description = "a simple quasi-simple S of rank r has mu(S_j) < mu(H_1) for all j"

    def run(self, ctx, report):
        for tube in ctx.string_tubes:
            for S in tube.quasi_simples:
                if not S.is_simple:
                    continue
                chain = ctx.chain(S, max(ctx.max_len, ctx.delta_length))
                for j, Sj in enumerate(chain, start=1):
                    report.check(ctx.measure(Sj) < ctx.h1, f"{S} at quasi-length {j}")


@register
class PreinjectiveAboveItsTube(PropertyCheck):
    property_id = "bigprop_7"
    description = "a non-take-off preinjective M with GR submodule X_i exceeds every mu(X_j)"

    def run(self, ctx, report):
        for M in ctx.of_kind(ARKind.PREINJECTIVE):
            if M.length == 1 or ctx.label(M) == TAKE_OFF:
                continue
            value = ctx.measure(M)
            for N in ctx.gr(M).gr_submodules:
                socle = ctx.ar(N).quasi_socle
                if socle is None:
                    continue
                for Xj in ctx.chain(socle):
                    report.check(ctx.measure(Xj) < value, f"{Xj} below {M}")


@register
class OneQuasiSimplePerTube(PropertyCheck):
    property_id = "onemap"
    description = "each preinjective has nonzero maps from exactly one quasi-simple per tube"

    def run(self, ctx, report):
        H1 = ctx.engine.homogeneous(1)
        for M in ctx.of_kind(ARKind.PREINJECTIVE):
            for tube in ctx.string_tubes:
                hits = [X for X in tube.quasi_simples if hom_nonzero(ctx.quiver, X, M)]
                report.check(len(hits) == 1, f"{M} in {tube.tube_id}")
            report.check(hom_nonzero(ctx.quiver, H1, M), f"{M} in {HOMOGENEOUS}")
            if M.length == 1:
                continue
            per_tube: Dict[str, set] = {}
            for N in ctx.gr(M).gr_submodules:
                per_tube.setdefault(ctx.ar(N).tube, set()).add(N)
            report.check(all(len(v) <= 1 for v in per_tube.values()), f"GR submodules of {M}")


@register
class TwoGRStrings(PropertyCheck):
    property_id = "two_gr_string"
    description = "band-free string modules have at most two GR submodules"
    needs_cycle = False

    def run(self, ctx, report):
        for M in ctx.non_simple:
            if ctx.engine.is_band_free(M):
                report.check(len(ctx.gr(M).gr_submodules) <= 2, str(M))


@register
class UniserialFactors(PropertyCheck):
    property_id = "uniserial_factors"
    description = "factors of GR inclusions into band-free string modules are uniserial"
    needs_cycle = False

    def run(self, ctx, report):
        for M in ctx.non_simple:
            if ctx.engine.is_band_free(M):
                report.check(ctx.gr(M).all_quotients_uniserial, str(M))


@register
class ExceptionalTwoGR(PropertyCheck):
    property_id = "prop_2gr"
    description = "an exceptional regular with two GR submodules has an irreducible GR inclusion"

    def run(self, ctx, report):
        exceptional = {t.tube_id for t in ctx.exceptional_tubes}
        for M in ctx.of_kind(ARKind.REGULAR):
            if M.length == 1 or ctx.ar(M).tube not in exceptional:
                continue
            submodules = ctx.gr(M).gr_submodules
            preprojective = [N for N in submodules if ctx.kind(N) is ARKind.PREPROJECTIVE]
            report.check(len(preprojective) <= 1, f"preprojective GR submodules of {M}")
            if len(submodules) == 2:
                report.check(any(M in ctx.irreducible_targets(N) for N in submodules), str(M))


@register
class DimensionCount(PropertyCheck):
    property_id = "gr_remark_7"
    description = "GR submodules of a module other than H_1 have at most two dimension vectors"
    needs_cycle = False

    def run(self, ctx, report):
        for M in ctx.non_simple:
            if M.is_band and M.multiplicity == 1:
                continue
            dims = {N.dims for N in ctx.gr(M).gr_submodules}
            report.check(len(dims) <= 2, str(M))


@register
class HomogeneousProjectiveCover(PropertyCheck):
    property_id = "gr_h1_cover"
    description = "gr(H_1) is at most the number of summands of the projective cover of H_1"

    def run(self, ctx, report):
        H1 = ctx.engine.homogeneous(1)
        count = len(ctx.gr(H1).gr_submodules)
        report.check(count <= len(ctx.quiver.sources()), f"gr(H_1) = {count}")


@register
class PreinjectivePredecessor(PropertyCheck):
    property_id = "prepre"
    description = "a direct predecessor of a non-take-off preinjective is preinjective and longer"

    def run(self, ctx, report):
        for M in ctx.of_kind(ARKind.PREINJECTIVE):
            if ctx.label(M) == TAKE_OFF:
                continue
            value = ctx.measure(M)
            below = ctx.index.below(value)
            if below is None:
                continue
            result = direct_successor(ctx.quiver, below, ctx.max_len, ctx.settings)
            if result.certification != CERTIFIED or result.successor != value:
                continue
            for N in ctx.index.realizers[below]:
                ok = ctx.kind(N) is ARKind.PREINJECTIVE and N.length > M.length
                report.check(ok, f"{N} precedes {M}")


@register
class TubeMeasureComparison(PropertyCheck):
    property_id = "lemma2"
    description = "measures of two tubes whose top exceeds mu(H_1) compare uniformly"

    def run(self, ctx, report):
        pairs = ctx.quasi_simple_pairs()
        chains = {X: ctx.chain(X, max(ctx.max_len, ctx.delta_length)) for X, _ in pairs}
        for X, r in pairs:
            cx = chains[X]
            if ctx.measure(cx[r - 1]) < ctx.h1:
                continue
            for Y, s in pairs:
                if Y == X:
                    continue
                cy = chains[Y]
                mx = [ctx.measure(Z) for Z in cx]
                my = [ctx.measure(Z) for Z in cy]
                if my[s - 1] < mx[r - 1]:
                    ok = all(b < a for a in mx[r - 1:] for b in my)
                    report.check(ok, f"{X} over {Y} from quasi-length {r}")
                if len(mx) >= 2 * r and len(my) >= 2 * s and my[2 * s - 1] < mx[2 * r - 1]:
                    ok = all(b < a for a in mx[2 * r - 1:] for b in my)
                    report.check(ok, f"{X} over {Y} from quasi-length {2 * r}")
                for i in range(2 * r, len(mx) + 1):
                    if mx[i - 1] in my:
                        top = min(len(mx), len(my))
                        ok = r == s and all(mx[t - 1] == my[t - 1] for t in range(r, top + 1))
                        report.check(ok, f"{X}_{i} and {Y} share a measure")
                        break


def _regular_measures(ctx: CheckContext) -> List[GRMeasure]:
    return [ctx.measure(X) for X in ctx.of_kind(ARKind.REGULAR)]


def _landing_modules(ctx: CheckContext) -> List[IsoClass]:
    return [M for M in ctx.classes if ctx.label(M) == LANDING]


@register
class LandingCharacterization(PropertyCheck):
    property_id = "landing_iff"
    description = "landing modules are exactly those above every regular measure"

    def run(self, ctx, report):
        regular = _regular_measures(ctx)
        ordered = ctx.index.ordered
        landing = [J for J in ordered if ctx.labels[J] == LANDING]
        for J in landing:
            realizers = ctx.index.realizers[J]
            report.check(all(ctx.kind(M) is ARKind.PREINJECTIVE for M in realizers), f"realizers of {J}")
            report.check(all(m < J for m in regular), f"{J} above the regular measures")
        if landing:
            first = ordered.index(landing[0])
            upper = ordered[first:]
            report.check(all(ctx.labels[J] == LANDING for J in upper), "landing measures form an upper segment")
            for low, high in zip(upper, upper[1:]):
                report.check(high.maximum < low.maximum, f"successor of {low} is shorter")


@register
class LandingOrder(PropertyCheck):
    property_id = "landing_order"
    description = "for landing modules, mu(M) < mu(N) iff |M| > |N|"

    def run(self, ctx, report):
        modules = _landing_modules(ctx)
        for k, M in enumerate(modules):
            for N in modules[k + 1:]:
                mm, mn = ctx.measure(M), ctx.measure(N)
                if mm == mn:
                    ok = M.length == N.length
                else:
                    ok = (mm < mn) == (M.length > N.length)
                report.check(ok, f"{M} vs {N}")


@register
class LandingExceptional(PropertyCheck):
    property_id = "landing_exceptional"
    description = "landing modules with a homogeneous GR submodule are shorter than 2|delta|"

    def run(self, ctx, report):
        if not ctx.exceptional_tubes:
            return
        for M in _landing_modules(ctx):
            bands = [N for N in ctx.gr(M).gr_submodules if N.is_band]
            if bands:
                ok = M.length < 2 * ctx.delta_length and all(N.multiplicity == 1 for N in bands)
                report.check(ok, str(M))


@register
class HomogeneousSubmoduleCentral(PropertyCheck):
    property_id = "coro_cen"
    description = "modules with a GR submodule H_i, i >= 2, are central"

    def run(self, ctx, report):
        if not ctx.exceptional_tubes:
            return
        for M in ctx.non_simple:
            if any(N.is_band and N.multiplicity >= 2 for N in ctx.gr(M).gr_submodules):
                report.check(ctx.label(M) == CENTRAL, str(M))


@register
class OneSourceOneSink(PropertyCheck):
    property_id = "xq_h1"
    description = "with one source and one sink, mu(X_q) = mu(Y_p) = mu(H_1) and the tube chains are GR"

    def run(self, ctx, report):
        q = ctx.quiver
        if q.orientation is None or len(q.sources()) != 1 or len(q.sinks()) != 1:
            logger.info(f"xq_h1 does not apply to {q.label()}")
            return
        orientation = q.orientation
        n = orientation.n
        report.check(ctx.h1 == GRMeasure(range(1, n + 2)), f"mu(H_1) = {ctx.h1}")
        # the + path lies on the tube of rank q, the - path on the tube of rank p
        for tube_id, path_length, rank in (("T+", orientation.p, orientation.q),
                                           ("T-", orientation.q, orientation.p)):
            tube = next(t for t in ctx.string_tubes if t.tube_id == tube_id)
            X = next(Z for Z in tube.quasi_simples if Z.length == path_length + 1)
            report.check(tube.rank == rank, f"rank of {tube_id}")
            report.check(ctx.measure(X) == GRMeasure(range(1, path_length + 2)), f"mu({X})")
            chain = ctx.chain(X, max(ctx.max_len, ctx.delta_length))
            report.check(ctx.measure(chain[rank - 1]) == ctx.h1, f"mu({X}_{rank}) = mu(H_1)")
            for Xi, Xnext in zip(chain[rank - 1:], chain[rank:]):
                report.check(ctx.engine.is_gr_inclusion(Xi, Xnext), f"{Xi} < {Xnext}")


def central_preinjective_count(q: Quiver, max_len: int, settings: Optional[EngineSettings] = None) -> int:
    """Number of enumerated preinjective modules with a central measure"""
    ctx = CheckContext(q, max_len, settings)
    return sum(1 for M in ctx.of_kind(ARKind.PREINJECTIVE) if ctx.label(M) == CENTRAL)


@register
class CentralPreinjectiveGrowth(PropertyCheck):
    property_id = "inf_central"
    description = "central preinjectives keep appearing as the bound grows by |delta|"

    def run(self, ctx, report):
        q = ctx.quiver
        if q.orientation is None or q.orientation.is_sink_source:
            return
        smaller = ctx.max_len - ctx.delta_length
        before = central_preinjective_count(q, smaller, ctx.settings) if smaller >= 1 else 0
        after = central_preinjective_count(q, ctx.max_len, ctx.settings)
        report.check(after > before, f"{before} at bound {smaller}, {after} at bound {ctx.max_len}")


@register
class SinkSourceDichotomy(PropertyCheck):
    property_id = "sink_source_dichotomy"
    description = "no preinjective is central iff the orientation is sink-source"

    def run(self, ctx, report):
        if ctx.quiver.orientation is None:
            return
        count = central_preinjective_count(ctx.quiver, ctx.max_len, ctx.settings)
        if ctx.quiver.orientation.is_sink_source:
            report.check(count == 0, f"{count} central preinjectives")
        else:
            report.check(count > 0, f"{count} central preinjectives")


def available_properties() -> List[str]:
    return sorted(PROPERTY_REGISTRY)


def verify_property(q: Quiver, property_id: str, max_len: int,
                    settings: Optional[EngineSettings] = None) -> PropertyReport:
    check_cls = PROPERTY_REGISTRY.get(property_id)
    if check_cls is None:
        raise PropertyError(f"Unknown property {property_id!r}", code="unknown_property",
                            available=", ".join(available_properties()))
    check = check_cls()
    if check.needs_cycle and not q.is_cycle_quiver:
        raise EngineError(f"{property_id} needs a cycle quiver", code="out_of_scope")
    report = PropertyReport(property_id, check.description, max_len)
    check.run(CheckContext(q, max_len, settings), report)
    level = "passed" if report.passed else "FAILED"
    logger.info(f"{property_id} on {q.label()} at bound {max_len}: {level} ({report.checked} checks)")
    if not report.passed:
        logger.warning(f"{property_id}: {len(report.failures)} failures, first: {report.failures[0]}")
    return report


def verify_properties(q: Quiver, property_ids: Iterable[str], max_len: int,
                      settings: Optional[EngineSettings] = None) -> List[PropertyReport]:
    return [verify_property(q, pid, max_len, settings) for pid in property_ids]
