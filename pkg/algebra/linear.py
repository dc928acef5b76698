"""
Exact hom spaces between representations and generic-rank tests for the
existence of monomorphisms and epimorphisms.

All arithmetic is over the rationals. The generic rank of sum t_i f_i is
decided per vertex: a seeded integer sample settles a vertex when it reaches
the best possible rank, otherwise the rank is computed over the field of
rational functions in the t_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from algebra.quivers import Quiver, StringWord, dominated
from algebra.string_modules import (Matrix, Representation, StringModule, factor_intervals,
                                    substring_submodules, zero_matrix, freeze)
from utils.config import EngineSettings
from utils.error_handler import RepresentationError
from utils.logging_config import get_logger

logger = get_logger(__name__)

VertexMaps = Tuple[Matrix, ...]


def domain_matrix(rows: Sequence[Sequence[Any]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows],
                        (len(rows), ncols), QQ)


def to_fractions(dm: DomainMatrix) -> Matrix:
    m = dm.to_Matrix()
    return tuple(tuple(Fraction(int(m[r, c].p), int(m[r, c].q)) for c in range(m.cols)) for r in range(m.rows))


def rank_of(rows: Sequence[Sequence[Any]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    return domain_matrix(rows, ncols).rank()


def row_basis(rows: Sequence[Sequence[Any]], ncols: int) -> List[Tuple[Fraction, ...]]:
    """Nonzero rows of the reduced echelon form"""
    if not rows or ncols == 0:
        return []
    reduced, pivots = domain_matrix(rows, ncols).rref()
    return list(to_fractions(reduced)[:len(pivots)])


def nullspace(rows: Sequence[Sequence[Any]], ncols: int) -> List[List[Fraction]]:
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(r == c)) for c in range(ncols)] for r in range(ncols)]
    reduced, pivots = domain_matrix(rows, ncols).rref()
    entries = to_fractions(reduced)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for i, p in enumerate(pivots):
            vector[p] = -entries[i][free]
        basis.append(vector)
    return basis


@dataclass(frozen=True)
class HomBasis:
    domain: Representation
    codomain: Representation
    elements: Tuple[VertexMaps, ...]
    labels: Tuple[Any, ...] = field(default=(), compare=False)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def combine(self, coefficients: Sequence[Any]) -> VertexMaps:
        """The map sum c_i f_i"""
        combined = []
        for v in range(self.domain.quiver.vertex_count):
            rows, cols = self.codomain.dims[v], self.domain.dims[v]
            acc = sympy.zeros(rows, cols)
            for c, element in zip(coefficients, self.elements):
                if c:
                    acc += sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * _sympy(element[v], rows, cols)
            combined.append(tuple(tuple(Fraction(int(acc[r, k].p), int(acc[r, k].q)) for k in range(cols))
                                  for r in range(rows)))
        return tuple(combined)

    def residual_free(self) -> bool:
        """Every element satisfies f_t X_a = Y_a f_s exactly"""
        q = self.domain.quiver
        for element in self.elements:
            for idx, arrow in enumerate(q.arrows):
                s, t = arrow.source, arrow.target
                left = _sympy(element[t], self.codomain.dims[t], self.domain.dims[t]) * \
                    _sympy(self.domain.matrices[idx], self.domain.dims[t], self.domain.dims[s])
                right = _sympy(self.codomain.matrices[idx], self.codomain.dims[t], self.codomain.dims[s]) * \
                    _sympy(element[s], self.codomain.dims[s], self.domain.dims[s])
                if left != right:
                    return False
        return True


def _sympy(matrix: Matrix, rows: int, cols: int) -> sympy.Matrix:
    if rows == 0 or cols == 0:
        return sympy.zeros(rows, cols)
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in matrix])


def _same_quiver(X: Representation, Y: Representation):
    if X.quiver is not Y.quiver and X.quiver != Y.quiver:
        raise RepresentationError("Representations live on different quivers", code="shape_mismatch")


def hom_basis(X: Representation, Y: Representation) -> HomBasis:
    """Basis of Hom(X, Y) from the intertwining system f_t X_a - Y_a f_s = 0"""
    _same_quiver(X, Y)
    q = X.quiver
    offsets, total = [], 0
    for v in range(q.vertex_count):
        offsets.append(total)
        total += X.dims[v] * Y.dims[v]

    def unknown(v, r, c):
        return offsets[v] + r * X.dims[v] + c

    equations: List[List[Fraction]] = []
    for idx, arrow in enumerate(q.arrows):
        s, t = arrow.source, arrow.target
        Xa, Ya = X.matrices[idx], Y.matrices[idx]
        for r in range(Y.dims[t]):
            for c in range(X.dims[s]):
                coefficients: Dict[int, Fraction] = {}
                for k in range(X.dims[t]):
                    if Xa[k][c]:
                        key = unknown(t, r, k)
                        coefficients[key] = coefficients.get(key, Fraction(0)) + Xa[k][c]
                for k in range(Y.dims[s]):
                    if Ya[r][k]:
                        key = unknown(s, k, c)
                        coefficients[key] = coefficients.get(key, Fraction(0)) - Ya[r][k]
                if any(coefficients.values()):
                    row = [Fraction(0)] * total
                    for key, value in coefficients.items():
                        row[key] = value
                    equations.append(row)

    elements = []
    for vector in nullspace(equations, total):
        maps = []
        for v in range(q.vertex_count):
            rows, cols = Y.dims[v], X.dims[v]
            maps.append(tuple(tuple(vector[unknown(v, r, c)] for c in range(cols)) for r in range(rows)))
        elements.append(tuple(maps))
    return HomBasis(X, Y, tuple(elements))


@dataclass(frozen=True)
class GenericRankCertificate:
    rank: int
    method: str
    vertex_ranks: Tuple[int, ...]
    witness: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rank': self.rank,
            'method': self.method,
            'vertex_ranks': list(self.vertex_ranks),
            'witness': list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class MonoEpiResult:
    exists_mono: bool
    exists_epi: bool
    certificate: GenericRankCertificate


def _symbolic_rank(span: Sequence[Sequence[Fraction]], rows: int, cols: int) -> int:
    """Rank of sum t_j B_j over QQ(t_1, ..., t_m); each B_j is given flattened"""
    ts = sympy.symbols(f"t0:{len(span)}")
    K = QQ.frac_field(*ts)
    entries = []
    for r in range(rows):
        entries.append([K.from_sympy(sum((sympy.Rational(b[r * cols + c].numerator, b[r * cols + c].denominator) * t
                                          for b, t in zip(span, ts)), sympy.Integer(0)))
                        for c in range(cols)])
    return DomainMatrix(entries, (rows, cols), K).rank()


def _vertex_rank(basis: HomBasis, v: int, sample: Optional[Sequence[int]]) -> Tuple[int, str]:
    rows, cols = basis.codomain.dims[v], basis.domain.dims[v]
    best = min(rows, cols)
    if best == 0 or not basis.elements:
        return 0, "exact"
    flattened = [[x for row in element[v] for x in row] for element in basis.elements]
    span = row_basis(flattened, rows * cols)
    if not span:
        return 0, "exact"
    if len(span) == 1:
        return rank_of([span[0][r * cols:(r + 1) * cols] for r in range(rows)], cols), "exact"

    horizontal = [[x for element in basis.elements for x in element[v][r]] for r in range(rows)]
    vertical = [list(row) for element in basis.elements for row in element[v]]
    upper = min(best, rank_of(horizontal, cols * len(basis.elements)), rank_of(vertical, cols))

    if sample is not None:
        combined = [[sum((Fraction(c) * element[v][r][k] for c, element in zip(sample, basis.elements)), Fraction(0))
                     for k in range(cols)] for r in range(rows)]
        sampled = rank_of(combined, cols)
        if sampled == upper:
            return sampled, "randomized"
    return _symbolic_rank(span, rows, cols), "symbolic"


def generic_rank(basis: HomBasis, settings: Optional[EngineSettings] = None,
                 stop_below: Optional[Sequence[int]] = None) -> GenericRankCertificate:
    """Maximal rank over Hom(X, Y); stop_below aborts once a vertex misses its target"""
    settings = settings or EngineSettings()
    sample = None
    if settings.random_fast_path and basis.elements:
        rng = np.random.default_rng(settings.seed)
        drawn = rng.integers(-settings.sample_bound, settings.sample_bound, size=len(basis.elements), endpoint=True)
        sample = tuple(int(x) for x in drawn)

    ranks, methods = [], set()
    for v in range(basis.domain.quiver.vertex_count):
        rank, method = _vertex_rank(basis, v, sample)
        ranks.append(rank)
        methods.add(method)
        if stop_below is not None and rank < stop_below[v]:
            methods.add("aborted")
            break
    if "aborted" in methods:
        method = "aborted"
    elif "symbolic" in methods:
        method = "symbolic"
    elif "randomized" in methods:
        method = "randomized"
    else:
        method = "exact"
    return GenericRankCertificate(sum(ranks), method, tuple(ranks), sample if method == "randomized" else None)


def mono_epi_test(X: Representation, Y: Representation, settings: Optional[EngineSettings] = None,
                  basis: Optional[HomBasis] = None) -> MonoEpiResult:
    basis = basis or hom_basis(X, Y)
    certificate = generic_rank(basis, settings)
    return MonoEpiResult(certificate.rank == X.length, certificate.rank == Y.length, certificate)


def embeds(X: Representation, Y: Representation, settings: Optional[EngineSettings] = None,
           basis: Optional[HomBasis] = None) -> bool:
    """Whether some homomorphism X -> Y is injective"""
    if X.length > Y.length or not dominated(X.dims, Y.dims):
        return False
    basis = basis or hom_basis(X, Y)
    if not basis.elements:
        return False
    certificate = generic_rank(basis, settings, stop_below=X.dims)
    return certificate.method != "aborted" and certificate.rank == X.length


def surjects(X: Representation, Y: Representation, settings: Optional[EngineSettings] = None,
             basis: Optional[HomBasis] = None) -> bool:
    """Whether some homomorphism X -> Y is surjective"""
    if X.length < Y.length or not dominated(Y.dims, X.dims):
        return False
    basis = basis or hom_basis(X, Y)
    if not basis.elements:
        return False
    certificate = generic_rank(basis, settings, stop_below=Y.dims)
    return certificate.method != "aborted" and certificate.rank == Y.length


@dataclass(frozen=True)
class GraphMap:
    factor: Tuple[int, int]
    image: Tuple[int, int]
    reversed: bool
    domain_length: int

    @property
    def is_mono(self) -> bool:
        return self.factor == (0, self.domain_length - 1)


def graph_map_basis(q: Quiver, C: StringWord, D: StringWord) -> HomBasis:
    """Graph maps M(C) -> M(D): a factor string of C matched with a substring submodule of D"""
    source, target = StringModule(q, C), StringModule(q, D)
    labels, elements = [], []
    images = [(inc.start, inc.stop, inc.substring) for inc in substring_submodules(D)]
    for i, j in factor_intervals(C):
        piece = C.subword(i, j)
        flipped = piece.inverse()
        for k, l, sub in images:
            if sub == piece:
                pairs = [(i + s, k + s) for s in range(j - i + 1)]
                labels.append(GraphMap((i, j), (k, l), False, source.length))
            elif piece.length > 0 and sub == flipped:
                pairs = [(i + s, l - s) for s in range(j - i + 1)]
                labels.append(GraphMap((i, j), (k, l), True, source.length))
            else:
                continue
            elements.append(_graph_map_matrices(source, target, pairs))
    return HomBasis(source.representation, target.representation, tuple(elements), tuple(labels))


def _graph_map_matrices(source: StringModule, target: StringModule, pairs) -> VertexMaps:
    q = source.quiver
    mats = [zero_matrix(target.dims[v], source.dims[v]) for v in range(q.vertex_count)]
    for z, w in pairs:
        v = source.word.walk[z]
        mats[v][target.local_index[w]][source.local_index[z]] = Fraction(1)
    return tuple(freeze(m) for m in mats)


def is_indecomposable(rep: Representation) -> bool:
    """Absolute indecomposability: End is the scalars plus a nilpotent part.

    The trace-zero subspace N of End must satisfy tr(xy) = 0 on N x N; then
    every element of N is nilpotent and End is local with residue field Q.
    """
    if rep.length == 0:
        return False
    endo = hom_basis(rep, rep)
    q = rep.quiver
    dims = rep.dims
    blocks = [[_sympy(element[v], dims[v], dims[v]) for v in range(q.vertex_count)] for element in endo.elements]
    traces = [sum((b.trace() for b in element if b.rows), sympy.Integer(0)) for element in blocks]
    pivot = next(i for i, t in enumerate(traces) if t != 0)
    nilpotent_part = []
    for i, element in enumerate(blocks):
        if i == pivot:
            continue
        ratio = traces[i] / traces[pivot]
        nilpotent_part.append([a - ratio * b for a, b in zip(element, blocks[pivot])])
    for x in nilpotent_part:
        for y in nilpotent_part:
            if sum(((a * b).trace() for a, b in zip(x, y) if a.rows), sympy.Integer(0)) != 0:
                return False
    return True
