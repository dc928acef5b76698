"""
Worked examples with known measures: one-source/one-sink cycles, sink-source
cycles and the Kronecker quiver.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from algebra.iso_classes import IsoClass
from algebra.measures import GRMeasure
from algebra.quivers import Quiver, build_cycle_quiver, validate_string
from algebra.tubes import ARKind, all_tubes, quasi_chain
from analysis.gr_engine import get_engine
from utils.config import EngineSettings
from utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ExampleResult:
    example: str
    expected: str
    computed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'example': self.example,
            'expected': self.expected,
            'computed': self.computed,
            'passed': self.passed,
        }


def _result(name: str, expected: Any, computed: Any) -> ExampleResult:
    result = ExampleResult(name, str(expected), str(computed))
    if not result.passed:
        logger.warning(f"{name}: expected {expected}, computed {computed}")
    return result


def _path_module(q: Quiver, tube_id: str, length: int) -> IsoClass:
    tube = next(t for t in all_tubes(q) if t.tube_id == tube_id)
    return next(X for X in tube.quasi_simples if X.length == length)


def one_source_one_sink(p: int, q: int, settings: Optional[EngineSettings] = None) -> List[ExampleResult]:
    """p clockwise arrows followed by q counterclockwise ones"""
    word = "+" * p + "-" * q
    quiver = build_cycle_quiver(word)
    engine = get_engine(quiver, settings)
    n = p + q - 1
    h1 = engine.measure(engine.homogeneous(1))
    X = _path_module(quiver, "T+", p + 1)
    Y = _path_module(quiver, "T-", q + 1)
    return [
        _result(f"{word} mu(H_1)", GRMeasure(range(1, n + 2)), h1),
        _result(f"{word} mu(X)", GRMeasure(range(1, p + 2)), engine.measure(X)),
        _result(f"{word} mu(Y)", GRMeasure(range(1, q + 2)), engine.measure(Y)),
        _result(f"{word} mu(X_q)", h1, engine.measure(quasi_chain(quiver, X, q))),
        _result(f"{word} mu(Y_p)", h1, engine.measure(quasi_chain(quiver, Y, p))),
    ]


def sink_source(n: int, settings: Optional[EngineSettings] = None) -> List[ExampleResult]:
    """Alternating orientation on n + 1 vertices (n odd)"""
    word = "+-" * ((n + 1) // 2)
    quiver = build_cycle_quiver(word)
    engine = get_engine(quiver, settings)
    H1 = engine.homogeneous(1)
    result = engine.gr_submodules(H1)
    expected = GRMeasure(list(range(1, n + 1, 2)) + [n + 1])
    shapes = sorted({(engine.classify(N).kind.value, N.length) for N in result.gr_submodules})
    return [
        _result(f"{word} mu(H_1)", expected, result.measure),
        _result(f"{word} gr(H_1)", (n + 1) // 2, len(result.gr_submodules)),
        _result(f"{word} GR submodules of H_1", [(ARKind.PREPROJECTIVE.value, n)], shapes),
    ]


def kronecker(settings: Optional[EngineSettings] = None) -> List[ExampleResult]:
    quiver = build_cycle_quiver("+-")
    engine = get_engine(quiver, settings)
    projective = IsoClass.from_string(quiver, validate_string(quiver, ["a0", "-a1"]))
    injective = IsoClass.from_string(quiver, validate_string(quiver, ["-a0", "a1"]))
    return [
        _result("+- mu(H_1)", GRMeasure([1, 2]), engine.measure(engine.homogeneous(1))),
        _result("+- mu(H_2)", GRMeasure([1, 2, 4]), engine.measure(engine.homogeneous(2))),
        _result("+- mu(P(0))", GRMeasure([1, 3]), engine.measure(projective)),
        _result("+- mu(I(1))", GRMeasure([1, 2, 3]), engine.measure(injective)),
    ]


def worked_examples(settings: Optional[EngineSettings] = None) -> List[ExampleResult]:
    results = kronecker(settings)
    results += one_source_one_sink(3, 2, settings)
    results += sink_source(3, settings)
    results += sink_source(5, settings)
    failed = sum(1 for r in results if not r.passed)
    logger.info(f"Worked examples: {len(results) - failed} of {len(results)} reproduced")
    return results
