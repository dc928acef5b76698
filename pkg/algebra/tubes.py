"""
Auslander-Reiten data for cycle quivers: defect, Coxeter transformation,
exceptional tubes and the action of tau on class descriptors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebra.iso_classes import IsoClass
from algebra.linear import graph_map_basis, hom_basis, embeds, is_indecomposable
from algebra.quivers import DimVector, Quiver, StringWord, band_words, enumerate_strings, validate_string
from utils.error_handler import ClassificationError, QuiverError, RepresentationError
from utils.logging_config import get_logger

logger = get_logger(__name__)

HOMOGENEOUS = "H"
ORBIT_LIMIT = 10000


class ARKind(str, Enum):
    PREPROJECTIVE = "preprojective"
    REGULAR = "regular"
    PREINJECTIVE = "preinjective"


@dataclass(frozen=True)
class ARClass:
    kind: ARKind
    defect: int
    tube: Optional[str] = None
    quasi_socle: Optional[IsoClass] = None
    quasi_length: Optional[int] = None
    orbit: Optional[Tuple[int, int]] = None

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind.value,
            'defect': self.defect,
            'tube': self.tube,
            'quasi_socle': self.quasi_socle.descriptor() if self.quasi_socle is not None else None,
            'quasi_length': self.quasi_length,
            'orbit': list(self.orbit) if self.orbit is not None else None,
        }


@dataclass(frozen=True)
class Tube:
    tube_id: str
    rank: int
    quasi_simples: Tuple[IsoClass, ...]
    homogeneous: bool = False

    def tau_index(self, X: IsoClass) -> int:
        for k, Y in enumerate(self.quasi_simples):
            if Y == X:
                return k
        raise ClassificationError(f"{X} is not a quasi-simple of tube {self.tube_id}", code="not_quasi_simple")

    def to_dict(self) -> Dict:
        return {
            'tube': self.tube_id,
            'rank': self.rank,
            'homogeneous': self.homogeneous,
            'quasi_simples': [X.descriptor() for X in self.quasi_simples],
        }


def _require_cycle(q: Quiver):
    if not q.is_cycle_quiver:
        raise QuiverError(f"{q.label()} is not a cycle quiver", code="not_cycle_quiver")


def defect(q: Quiver, d: Sequence[int]) -> int:
    """<delta, d> = sum_v d_v - sum_a d_{t(a)}; negative on preprojectives"""
    _require_cycle(q)
    return int(sum(d) - sum(d[a.target] for a in q.arrows))


@lru_cache(maxsize=None)
def path_count_matrix(q: Quiver) -> np.ndarray:
    """Entry (i, j) counts paths i -> j"""
    n = q.vertex_count
    adjacency = np.zeros((n, n), dtype=np.int64)
    for a in q.arrows:
        adjacency[a.source, a.target] += 1
    total = np.identity(n, dtype=np.int64)
    power = np.identity(n, dtype=np.int64)
    for _ in range(n):
        power = power @ adjacency
        total = total + power
    return total


def coxeter_matrix(q: Quiver) -> np.ndarray:
    """Phi = -C E^T with E = I - A and C = E^-1; acts on column dimension vectors"""
    n = q.vertex_count
    C = path_count_matrix(q)
    E = np.identity(n, dtype=np.int64) - _adjacency(q)
    return -(C @ E.T)


def inverse_coxeter_matrix(q: Quiver) -> np.ndarray:
    n = q.vertex_count
    C = path_count_matrix(q)
    E = np.identity(n, dtype=np.int64) - _adjacency(q)
    return -(C.T @ E)


def _adjacency(q: Quiver) -> np.ndarray:
    n = q.vertex_count
    adjacency = np.zeros((n, n), dtype=np.int64)
    for a in q.arrows:
        adjacency[a.source, a.target] += 1
    return adjacency


def apply_coxeter(q: Quiver, d: Sequence[int], power: int = 1) -> DimVector:
    """Phi^power applied to d (negative powers use Phi^-1)"""
    matrix = coxeter_matrix(q) if power >= 0 else inverse_coxeter_matrix(q)
    vector = np.array(d, dtype=np.int64)
    for _ in range(abs(power)):
        vector = matrix @ vector
    return tuple(int(x) for x in vector)


def projective_dims(q: Quiver) -> List[DimVector]:
    C = path_count_matrix(q)
    return [tuple(int(x) for x in C[j, :]) for j in range(q.vertex_count)]


def injective_dims(q: Quiver) -> List[DimVector]:
    C = path_count_matrix(q)
    return [tuple(int(x) for x in C[:, j]) for j in range(q.vertex_count)]


def orbit_index(q: Quiver, d: Sequence[int]) -> Tuple[ARKind, int, int]:
    """Locate a preprojective tau^-t P(j) or preinjective tau^t I(j) by its dimension vector"""
    value = defect(q, d)
    if value == 0:
        raise ClassificationError(f"{tuple(d)} has defect zero", code="not_tame")
    kind = ARKind.PREPROJECTIVE if value < 0 else ARKind.PREINJECTIVE
    targets = projective_dims(q) if value < 0 else injective_dims(q)
    step = coxeter_matrix(q) if value < 0 else inverse_coxeter_matrix(q)
    vector = np.array(d, dtype=np.int64)
    for t in range(ORBIT_LIMIT):
        current = tuple(int(x) for x in vector)
        if current in targets:
            return kind, targets.index(current), t
        if any(x < 0 for x in current):
            break
        vector = step @ vector
    raise ClassificationError(f"{tuple(d)} is not the dimension vector of a {kind.value} module",
                              code="not_tame", dims=tuple(d))


def _sign_paths(q: Quiver, sign: str) -> List[StringWord]:
    """Maximal direct strings made of arrows with the given orientation sign"""
    signs = q.orientation.signs
    m = len(signs)
    # removing the other arrows cuts the cycle into paths
    starts = [(i + 1) % m for i in range(m) if signs[i] != sign]
    words = []
    for start in starts:
        letters = []
        k = start
        while signs[k] == sign:
            letters.append(k)
            k = (k + 1) % m
        # + arrows run i -> i+1, - arrows run i+1 -> i
        tokens = [f"a{i}" for i in letters]
        ordered = list(reversed(tokens)) if sign == "+" else tokens
        if ordered:
            words.append(validate_string(q, ordered))
        else:
            words.append(validate_string(q, [], vertex=start))
    return words


def _ordered_by_tau(q: Quiver, classes: List[IsoClass]) -> Tuple[IsoClass, ...]:
    by_dims = {X.dims: X for X in classes}
    ordered = [min(classes, key=lambda X: X.key)]
    while len(ordered) < len(classes):
        nxt = by_dims.get(apply_coxeter(q, ordered[-1].dims))
        if nxt is None or nxt in ordered:
            raise ClassificationError("Quasi-simples do not form a tau orbit", code="not_tame")
        ordered.append(nxt)
    return tuple(ordered)


@lru_cache(maxsize=None)
def all_tubes(q: Quiver) -> Tuple[Tube, ...]:
    """Every string tube, rank-1 ones included, and the homogeneous family"""
    _require_cycle(q)
    if q.orientation is None:
        raise QuiverError("Tube data needs an orientation word", code="not_cycle_quiver")
    found = []
    for tube_id, sign in (("T+", "+"), ("T-", "-")):
        classes = [IsoClass.from_string(q, w) for w in _sign_paths(q, sign)]
        found.append(Tube(tube_id, len(classes), _ordered_by_tau(q, classes)))
    band = band_words(q)[0]
    found.append(Tube(HOMOGENEOUS, 1, (IsoClass.from_band(q, band, 1, 1),), homogeneous=True))
    for tube in found:
        total = tuple(sum(X.dims[v] for X in tube.quasi_simples) for v in range(q.vertex_count))
        if total != q.delta:
            raise ClassificationError(f"Quasi-simples of {tube.tube_id} do not sum to delta", code="not_tame")
    logger.debug(f"Tubes on {q.label()}: " + ", ".join(f"{t.tube_id} rank {t.rank}" for t in found))
    return tuple(found)


def tubes(q: Quiver) -> List[Tube]:
    """Exceptional tubes of rank > 1 plus the homogeneous family"""
    return [t for t in all_tubes(q) if t.homogeneous or t.rank > 1]


def tube_by_id(q: Quiver, tube_id: str) -> Tube:
    for tube in all_tubes(q):
        if tube.tube_id == tube_id:
            return tube
    raise ClassificationError(f"Unknown tube {tube_id}", code="not_quasi_simple")


def hom_nonzero(q: Quiver, X: IsoClass, M: IsoClass) -> bool:
    if X.is_string and M.is_string:
        return graph_map_basis(q, X.word, M.word).dimension > 0
    return hom_basis(X.representation, M.representation).dimension > 0


def chain_dims(q: Quiver, X: IsoClass, i: int) -> DimVector:
    """Dimension vector of X_i: sum of tau^-k dim X for k < i"""
    total = [0] * q.vertex_count
    vector = X.dims
    for _ in range(i):
        total = [a + b for a, b in zip(total, vector)]
        vector = apply_coxeter(q, vector, -1)
    return tuple(total)


def _quasi_simple_tube(q: Quiver, X: IsoClass) -> Tube:
    for tube in all_tubes(q):
        if X in tube.quasi_simples or (tube.homogeneous and X.is_band and X.multiplicity == 1):
            return tube
    raise ClassificationError(f"{X} is not quasi-simple", code="not_quasi_simple")


@lru_cache(maxsize=None)
def _strings_by_dims(q: Quiver, length: int) -> Dict[DimVector, Tuple[IsoClass, ...]]:
    grouped: Dict[DimVector, List[IsoClass]] = {}
    for word in enumerate_strings(q, length - 1):
        if word.length == length - 1:
            X = IsoClass.from_string(q, word)
            grouped.setdefault(X.dims, []).append(X)
    return {d: tuple(v) for d, v in grouped.items()}


def quasi_chain(q: Quiver, X: IsoClass, i: int) -> IsoClass:
    """X_i: the module of quasi-length i with quasi-socle X"""
    if i < 1:
        raise ClassificationError("Quasi-length must be at least 1", code="not_quasi_simple")
    tube = _quasi_simple_tube(q, X)
    if tube.homogeneous:
        return X.with_multiplicity(i)
    if i == 1:
        return X
    dims = chain_dims(q, X, i)
    candidates = _strings_by_dims(q, sum(dims)).get(dims, ())
    found = [Y for Y in candidates if embeds(X.representation, Y.representation)]
    if len(found) != 1:
        raise ClassificationError(f"Expected one module X_{i} over {X}, found {len(found)}",
                                  code="not_quasi_simple")
    return found[0]


def classify(q: Quiver, M: IsoClass) -> ARClass:
    _require_cycle(q)
    if M.kind == "explicit" and not is_indecomposable(M.representation):
        raise RepresentationError("Representation is decomposable", code="decomposable")
    value = defect(q, M.dims)
    if value != 0:
        kind, j, t = orbit_index(q, M.dims)
        return ARClass(kind, value, orbit=(j, t))
    if M.is_band:
        return ARClass(ARKind.REGULAR, 0, HOMOGENEOUS, M.with_multiplicity(1), M.multiplicity)
    for tube in all_tubes(q):
        if tube.homogeneous:
            continue
        for X in tube.quasi_simples:
            if hom_nonzero(q, X, M):
                return ARClass(ARKind.REGULAR, 0, tube.tube_id, X, _quasi_length(q, X, M))
    delta_length = q.vertex_count
    return ARClass(ARKind.REGULAR, 0, HOMOGENEOUS, None, M.length // delta_length)


def _quasi_length(q: Quiver, X: IsoClass, M: IsoClass) -> int:
    i = 1
    while True:
        dims = chain_dims(q, X, i)
        if dims == M.dims:
            return i
        if sum(dims) >= M.length:
            raise ClassificationError(f"{M} is not in the tube of {X}", code="not_tame")
        i += 1


def tau_class(q: Quiver, c: ARClass) -> ARClass:
    if c.kind is ARKind.REGULAR:
        if c.tube == HOMOGENEOUS:
            return c
        tube = tube_by_id(q, c.tube)
        k = tube.tau_index(c.quasi_socle)
        return replace(c, quasi_socle=tube.quasi_simples[(k + 1) % tube.rank])
    j, t = c.orbit
    if c.kind is ARKind.PREPROJECTIVE:
        if t == 0:
            raise ClassificationError(f"tau of the projective P({j})", code="projective_tau")
        new_orbit = (j, t - 1)
        dims = apply_coxeter(q, projective_dims(q)[j], -(t - 1))
    else:
        new_orbit = (j, t + 1)
        dims = apply_coxeter(q, injective_dims(q)[j], t + 1)
    return replace(c, orbit=new_orbit, defect=defect(q, dims))


def class_dims(q: Quiver, c: ARClass) -> DimVector:
    """Dimension vector of the module described by an AR class"""
    if c.kind is ARKind.PREPROJECTIVE:
        j, t = c.orbit
        return apply_coxeter(q, projective_dims(q)[j], -t)
    if c.kind is ARKind.PREINJECTIVE:
        j, t = c.orbit
        return apply_coxeter(q, injective_dims(q)[j], t)
    if c.tube == HOMOGENEOUS:
        return tuple(c.quasi_length * x for x in q.delta)
    return chain_dims(q, c.quasi_socle, c.quasi_length)
