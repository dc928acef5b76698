"""
String and band modules as explicit representations, their substring
submodules, the covering transport to a linear quiver, and irreducible
monomorphisms between string modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from algebra.quivers import (Arrow, BandWord, DimVector, Letter, Quiver, StringWord, extend_left,
                             extend_right, validate_string)
from utils.error_handler import RepresentationError, StringError
from utils.logging_config import get_logger

logger = get_logger(__name__)

Matrix = Tuple[Tuple[Fraction, ...], ...]


def zero_matrix(rows: int, cols: int) -> List[List[Fraction]]:
    return [[Fraction(0)] * cols for _ in range(rows)]


def freeze(matrix: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in matrix)


@dataclass(frozen=True)
class Representation:
    """Vector space dimension per vertex and a matrix (target x source) per arrow"""
    quiver: Quiver
    dims: DimVector
    matrices: Tuple[Matrix, ...]

    def __post_init__(self):
        q = self.quiver
        if len(self.dims) != q.vertex_count or any(d < 0 for d in self.dims):
            raise RepresentationError(f"Dimension vector {self.dims} does not fit the quiver",
                                      code="shape_mismatch")
        if len(self.matrices) != len(q.arrows):
            raise RepresentationError("One matrix per arrow is required", code="shape_mismatch")
        for arrow, matrix in zip(q.arrows, self.matrices):
            rows, cols = self.dims[arrow.target], self.dims[arrow.source]
            if len(matrix) != rows or any(len(row) != cols for row in matrix):
                raise RepresentationError(f"Matrix for {arrow.arrow_id} must be {rows}x{cols}",
                                          code="shape_mismatch", arrow=arrow.arrow_id)

    @property
    def length(self) -> int:
        return sum(self.dims)

    def matrix(self, arrow_id: str) -> Matrix:
        return self.matrices[self.quiver.arrow_index[arrow_id]]

    @classmethod
    def from_lists(cls, q: Quiver, dims: Sequence[int], matrices: Dict[str, Sequence[Sequence[Any]]]) -> "Representation":
        dims = tuple(int(d) for d in dims)
        if len(dims) != q.vertex_count:
            raise RepresentationError(f"Dimension vector {dims} does not fit the quiver", code="shape_mismatch")
        frozen = []
        for arrow in q.arrows:
            rows, cols = dims[arrow.target], dims[arrow.source]
            given = matrices.get(arrow.arrow_id)
            frozen.append(freeze(given) if given is not None else freeze(zero_matrix(rows, cols)))
        return cls(q, dims, tuple(frozen))

    @classmethod
    def from_document(cls, q: Quiver, doc: Dict[str, Any]) -> "Representation":
        """Read {"dims": [...], "matrices": {"a0": [["1", "1/2"], ...]}}"""
        try:
            dims = [int(d) for d in doc["dims"]]
            matrices = {str(k): [[Fraction(str(x)) for x in row] for row in v]
                        for k, v in doc.get("matrices", {}).items()}
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise RepresentationError(f"Malformed representation document: {str(e)}",
                                      code="shape_mismatch") from e
        unknown = set(matrices) - set(q.arrow_index)
        if unknown:
            raise RepresentationError(f"Matrices given for unknown arrows {sorted(unknown)}",
                                      code="shape_mismatch")
        return cls.from_lists(q, dims, matrices)

    def to_document(self) -> Dict[str, Any]:
        return {
            'dims': list(self.dims),
            'matrices': {
                arrow.arrow_id: [[_entry_text(x) for x in row] for row in matrix]
                for arrow, matrix in zip(self.quiver.arrows, self.matrices)
            },
        }


def _entry_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _local_positions(walk: Sequence[int], vertex_count: int) -> List[int]:
    """Position of each basis vector among the basis vectors at its vertex"""
    seen = [0] * vertex_count
    positions = []
    for v in walk:
        positions.append(seen[v])
        seen[v] += 1
    return positions


@dataclass(frozen=True)
class StringModule:
    quiver: Quiver
    word: StringWord

    @property
    def dims(self) -> DimVector:
        return self.word.dims(self.quiver.vertex_count)

    @property
    def length(self) -> int:
        return self.word.length + 1

    @cached_property
    def local_index(self) -> Tuple[int, ...]:
        return tuple(_local_positions(self.word.walk, self.quiver.vertex_count))

    @cached_property
    def representation(self) -> Representation:
        q = self.quiver
        dims = self.dims
        mats = [zero_matrix(dims[a.target], dims[a.source]) for a in q.arrows]
        local = self.local_index
        for i in range(1, self.word.length + 1):
            letter = self.word.letter(i)
            if letter.inverse:
                # beta(z_i) = z_{i-1}
                mats[letter.arrow_index][local[i - 1]][local[i]] = Fraction(1)
            else:
                # beta(z_{i-1}) = z_i
                mats[letter.arrow_index][local[i]][local[i - 1]] = Fraction(1)
        return Representation(q, dims, tuple(freeze(m) for m in mats))


def string_to_rep(q: Quiver, C: StringWord) -> Representation:
    return StringModule(q, C).representation


def jordan_block(m: int, lam: Fraction) -> List[List[Fraction]]:
    block = zero_matrix(m, m)
    for i in range(m):
        block[i][i] = Fraction(lam)
        if i + 1 < m:
            block[i][i + 1] = Fraction(1)
    return block


def identity_block(m: int) -> List[List[Fraction]]:
    return [[Fraction(1) if r == c else Fraction(0) for c in range(m)] for r in range(m)]


@dataclass(frozen=True)
class BandModule:
    quiver: Quiver
    band: BandWord
    multiplicity: int = 1
    lam: Fraction = Fraction(1)

    def __post_init__(self):
        if Fraction(self.lam) == 0:
            raise RepresentationError("Band parameter must be nonzero", code="zero_parameter")
        if self.multiplicity < 1:
            raise RepresentationError("Band multiplicity must be at least 1", code="shape_mismatch")

    @property
    def dims(self) -> DimVector:
        return tuple(self.multiplicity * d for d in self.band.dims(self.quiver.vertex_count))

    @property
    def length(self) -> int:
        return sum(self.dims)

    @cached_property
    def representation(self) -> Representation:
        q, m = self.quiver, self.multiplicity
        dims = self.dims
        L = self.band.length
        cyc = self.band.walk[:-1]
        block_pos = _local_positions(cyc, q.vertex_count)
        mats = [zero_matrix(dims[a.target], dims[a.source]) for a in q.arrows]
        for i in range(1, L + 1):
            letter = self.band.letters[L - i]
            # the Jordan block sits on stored letter 0, i.e. c_L
            block = jordan_block(m, Fraction(self.lam)) if i == L else identity_block(m)
            lo, hi = i - 1, i % L
            src, dst = (hi, lo) if letter.inverse else (lo, hi)
            target = mats[letter.arrow_index]
            for r in range(m):
                for c in range(m):
                    if block[r][c]:
                        target[block_pos[dst] * m + r][block_pos[src] * m + c] = block[r][c]
        return Representation(q, dims, tuple(freeze(x) for x in mats))


def band_to_rep(q: Quiver, b: BandWord, m: int, lam: Any) -> Representation:
    return BandModule(q, b, int(m), Fraction(lam)).representation


@dataclass(frozen=True)
class SubstringInclusion:
    word: StringWord
    start: int
    stop: int

    @property
    def substring(self) -> StringWord:
        return self.word.subword(self.start, self.stop)

    @property
    def is_proper(self) -> bool:
        return not (self.start == 0 and self.stop == self.word.length)

    @property
    def length(self) -> int:
        return self.stop - self.start + 1

    @property
    def quotient_words(self) -> Tuple[StringWord, ...]:
        pieces = []
        if self.start > 0:
            pieces.append(self.word.subword(0, self.start - 1))
        if self.stop < self.word.length:
            pieces.append(self.word.subword(self.stop + 1, self.word.length))
        return tuple(pieces)

    @property
    def has_uniserial_quotient(self) -> bool:
        """Quotient is a single string module whose letters all point one way"""
        pieces = self.quotient_words
        return len(pieces) == 1 and (pieces[0].is_direct or pieces[0].is_inverse)


def is_submodule_interval(C: StringWord, i: int, j: int) -> bool:
    n = C.length
    return (i == 0 or not C.letter(i).inverse) and (j == n or C.letter(j + 1).inverse)


def is_factor_interval(C: StringWord, i: int, j: int) -> bool:
    n = C.length
    return (i == 0 or C.letter(i).inverse) and (j == n or not C.letter(j + 1).inverse)


def substring_submodules(C: StringWord) -> List[SubstringInclusion]:
    n = C.length
    return [SubstringInclusion(C, i, j) for i in range(n + 1) for j in range(i, n + 1)
            if is_submodule_interval(C, i, j)]


def factor_intervals(C: StringWord) -> List[Tuple[int, int]]:
    n = C.length
    return [(i, j) for i in range(n + 1) for j in range(i, n + 1) if is_factor_interval(C, i, j)]


def span_is_closed(module: StringModule, indices: Iterable[int]) -> bool:
    """Check that the coordinate span of z_k, k in indices, is stable under every arrow"""
    chosen = set(indices)
    rep = module.representation
    q = module.quiver
    walk, local = module.word.walk, module.local_index
    by_vertex: Dict[Tuple[int, int], int] = {(walk[k], local[k]): k for k in range(module.length)}
    for arrow, matrix in zip(q.arrows, rep.matrices):
        for k in chosen:
            if walk[k] != arrow.source:
                continue
            for r, row in enumerate(matrix):
                if row[local[k]] != 0 and by_vertex[(arrow.target, r)] not in chosen:
                    return False
    return True


@dataclass(frozen=True)
class CoveringTransport:
    """Linear covering quiver of a string, its sincere module and the interval transports"""
    word: StringWord
    cover: Quiver
    cover_word: StringWord

    @cached_property
    def module(self) -> StringModule:
        return StringModule(self.cover, self.cover_word)

    def to_cover(self, inclusion: SubstringInclusion) -> SubstringInclusion:
        if inclusion.word != self.word:
            raise StringError("Inclusion belongs to a different string", code="non_composable")
        return SubstringInclusion(self.cover_word, inclusion.start, inclusion.stop)

    def from_cover(self, interval: SubstringInclusion) -> SubstringInclusion:
        if interval.word != self.cover_word:
            raise StringError("Interval belongs to a different covering module", code="non_composable")
        return SubstringInclusion(self.word, interval.start, interval.stop)

    def interval_submodules(self) -> List[SubstringInclusion]:
        """Interval submodules of the covering module, found by explicit closure checks"""
        n = self.cover_word.length
        return [SubstringInclusion(self.cover_word, i, j) for i in range(n + 1) for j in range(i, n + 1)
                if span_is_closed(self.module, range(i, j + 1))]


def covering_transport(C: StringWord) -> CoveringTransport:
    n = C.length
    arrows = []
    for k in range(1, n + 1):
        if C.letter(k).inverse:
            arrows.append(Arrow(f"c{k}", k, k - 1))
        else:
            arrows.append(Arrow(f"c{k}", k - 1, k))
    cover = Quiver(n + 1, tuple(arrows), (), True, None, f"cover of {C}")
    letters = tuple(Letter(f"c{k}", C.letter(k).inverse, k - 1) for k in range(n, 0, -1))
    cover_word = validate_string(cover, letters, vertex=0)
    return CoveringTransport(C, cover, cover_word)


def _maximal_extension(q: Quiver, word: StringWord, left: bool, inverse: bool) -> StringWord:
    while True:
        for arrow_index, arrow in enumerate(q.arrows):
            letter = Letter(arrow.arrow_id, inverse, arrow_index)
            try:
                word = extend_left(q, word, letter) if left else extend_right(q, word, letter)
                break
            except StringError:
                continue
        else:
            return word


def irreducible_mono_extensions(q: Quiver, C: StringWord) -> List[StringWord]:
    """Strings D gamma^-1 C and C gamma D with the natural inclusion of M(C) irreducible"""
    found: Dict[Tuple, StringWord] = {}
    for arrow_index, arrow in enumerate(q.arrows):
        hook = Letter(arrow.arrow_id, True, arrow_index)
        try:
            left = extend_left(q, C, hook)
        except StringError:
            left = None
        if left is not None:
            left = _maximal_extension(q, left, left=True, inverse=False)
            found.setdefault(left.canonical_form.key, left)

        cohook = Letter(arrow.arrow_id, False, arrow_index)
        try:
            right = extend_right(q, C, cohook)
        except StringError:
            right = None
        if right is not None:
            right = _maximal_extension(q, right, left=False, inverse=True)
            found.setdefault(right.canonical_form.key, right)
    extensions = [w for _, w in sorted(found.items())]
    logger.debug(f"{len(extensions)} irreducible mono extensions of {C}")
    return extensions


def embedded_interval(C: StringWord, D: StringWord) -> Optional[SubstringInclusion]:
    """Interval of D whose substring equals C or its inverse and is a submodule, if any"""
    for inclusion in substring_submodules(D):
        sub = inclusion.substring
        if sub == C or sub == C.inverse():
            return inclusion
    return None
