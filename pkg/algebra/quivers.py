"""
Quivers with monomial relations, strings and bands.

Strings are stored as written, c_n ... c_1, so index 0 holds c_n. The vertex
walk is u_0 = s(c_1), u_i = e(c_i). A direct letter runs from the source of
its arrow to the target; an inverse letter runs the other way.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from utils.error_handler import QuiverError, StringError
from utils.logging_config import get_logger

logger = get_logger(__name__)

DimVector = Tuple[int, ...]
MINUS_SIGNS = ("-", "−")


@dataclass(frozen=True)
class Arrow:
    arrow_id: str
    source: int
    target: int


@dataclass(frozen=True)
class CycleOrientation:
    """Sign word of an Ã_n orientation: '+' is i -> i+1, '-' is i+1 -> i"""
    signs: str

    @classmethod
    def parse(cls, word: str) -> "CycleOrientation":
        normalized = "".join("-" if ch in MINUS_SIGNS else ch for ch in str(word).strip())
        if not normalized or any(ch not in "+-" for ch in normalized):
            raise QuiverError(f"Orientation word must use only '+' and '-': {word!r}",
                              code="cyclic_orientation", word=word)
        orientation = cls(normalized)
        if orientation.p == 0 or orientation.q == 0:
            raise QuiverError(f"All-same-sign word {word!r} is an oriented cycle",
                              code="cyclic_orientation", word=word)
        return orientation

    @property
    def p(self) -> int:
        return self.signs.count("+")

    @property
    def q(self) -> int:
        return self.signs.count("-")

    @property
    def n(self) -> int:
        return len(self.signs) - 1

    @property
    def is_sink_source(self) -> bool:
        # vertex i+1 is a sink or source iff arrows i and i+1 have opposite signs
        m = len(self.signs)
        return all(self.signs[i] != self.signs[(i + 1) % m] for i in range(m))

    def __str__(self) -> str:
        return self.signs


@dataclass(frozen=True)
class Letter:
    arrow_id: str
    inverse: bool
    arrow_index: int

    @property
    def key(self) -> Tuple[int, int]:
        # direct letters sort before inverse ones, then by arrow order
        return (1 if self.inverse else 0, self.arrow_index)

    def inverted(self) -> "Letter":
        return Letter(self.arrow_id, not self.inverse, self.arrow_index)

    def __str__(self) -> str:
        return f"-{self.arrow_id}" if self.inverse else self.arrow_id


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[str, ...], ...] = ()
    string_algebra: bool = True
    orientation: Optional[CycleOrientation] = None
    name: str = ""

    def __post_init__(self):
        if self.vertex_count < 1:
            raise QuiverError("A quiver needs at least one vertex", code="invalid_endpoint")
        seen = set()
        for arrow in self.arrows:
            if arrow.arrow_id in seen:
                raise QuiverError(f"Duplicate arrow id {arrow.arrow_id}", code="invalid_endpoint")
            seen.add(arrow.arrow_id)
            for end in (arrow.source, arrow.target):
                if not 0 <= end < self.vertex_count:
                    raise QuiverError(f"Arrow {arrow.arrow_id} has endpoint {end} outside 0..{self.vertex_count - 1}",
                                      code="invalid_endpoint", arrow=arrow.arrow_id)
            if arrow.source == arrow.target:
                raise QuiverError(f"Loop {arrow.arrow_id} is not supported", code="invalid_endpoint")
        by_id = {a.arrow_id: a for a in self.arrows}
        for relation in self.relations:
            if len(relation) < 2 or any(r not in by_id for r in relation):
                raise QuiverError(f"Relation {relation} is not a path of length >= 2", code="bad_relation")
            for later, earlier in zip(relation, relation[1:]):
                if by_id[later].source != by_id[earlier].target:
                    raise QuiverError(f"Relation {relation} is not composable", code="bad_relation")
        if self.string_algebra:
            self._check_string_algebra()

    def _check_string_algebra(self):
        for v in range(self.vertex_count):
            if len(self.arrows_from(v)) > 2 or len(self.arrows_to(v)) > 2:
                raise QuiverError(f"Vertex {v} has more than two arrows on one side",
                                  code="not_string_algebra", vertex=v)
        for beta in self.arrows:
            if len(self.continuations_after(beta)) > 1 or len(self.continuations_before(beta)) > 1:
                raise QuiverError(f"Arrow {beta.arrow_id} has two composable continuations",
                                  code="not_string_algebra", arrow=beta.arrow_id)

    @cached_property
    def arrow_index(self) -> Dict[str, int]:
        return {a.arrow_id: i for i, a in enumerate(self.arrows)}

    @cached_property
    def _short_relations(self) -> frozenset:
        return frozenset(r for r in self.relations if len(r) == 2)

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self.arrows[self.arrow_index[arrow_id]]
        except KeyError:
            raise StringError(f"Unknown arrow {arrow_id!r}", code="unknown_arrow", arrow=arrow_id) from None

    def arrows_from(self, v: int) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: int) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def continuations_after(self, beta: Arrow) -> List[Arrow]:
        """Arrows gamma with gamma*beta defined and not a relation"""
        return [g for g in self.arrows_from(beta.target)
                if (g.arrow_id, beta.arrow_id) not in self._short_relations]

    def continuations_before(self, beta: Arrow) -> List[Arrow]:
        """Arrows delta with beta*delta defined and not a relation"""
        return [d for d in self.arrows_to(beta.source)
                if (beta.arrow_id, d.arrow_id) not in self._short_relations]

    def letter(self, arrow_id: str, inverse: bool = False) -> Letter:
        self.arrow(arrow_id)
        return Letter(arrow_id, inverse, self.arrow_index[arrow_id])

    def parse_letter(self, token: Union[str, Letter]) -> Letter:
        if isinstance(token, Letter):
            return self.letter(token.arrow_id, token.inverse)
        text = str(token).strip()
        inverse = text[:1] in MINUS_SIGNS
        if inverse:
            text = text[1:]
        if text.endswith("^-1"):
            text, inverse = text[:-3], not inverse
        return self.letter(text, inverse)

    def start(self, letter: Letter) -> int:
        arrow = self.arrows[letter.arrow_index]
        return arrow.target if letter.inverse else arrow.source

    def end(self, letter: Letter) -> int:
        arrow = self.arrows[letter.arrow_index]
        return arrow.source if letter.inverse else arrow.target

    def letters_from(self, v: int) -> List[Letter]:
        """All letters whose walk starts at v, in canonical letter order"""
        found = [Letter(a.arrow_id, False, i) for i, a in enumerate(self.arrows) if a.source == v]
        found += [Letter(a.arrow_id, True, i) for i, a in enumerate(self.arrows) if a.target == v]
        return sorted(found, key=lambda letter: letter.key)

    @cached_property
    def is_cycle_quiver(self) -> bool:
        """Hereditary with a single cycle as underlying graph (type Ã_n)"""
        if self.relations or len(self.arrows) != self.vertex_count:
            return False
        degree = [0] * self.vertex_count
        for a in self.arrows:
            degree[a.source] += 1
            degree[a.target] += 1
        return all(d == 2 for d in degree) and self._connected()

    @cached_property
    def is_linear(self) -> bool:
        """Hereditary with a path as underlying graph (type A)"""
        if self.relations or len(self.arrows) != self.vertex_count - 1:
            return False
        degree = [0] * self.vertex_count
        for a in self.arrows:
            degree[a.source] += 1
            degree[a.target] += 1
        return all(d <= 2 for d in degree) and self._connected()

    def _connected(self) -> bool:
        neighbours: Dict[int, set] = {v: set() for v in range(self.vertex_count)}
        for a in self.arrows:
            neighbours[a.source].add(a.target)
            neighbours[a.target].add(a.source)
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in neighbours[v] - seen:
                seen.add(w)
                queue.append(w)
        return len(seen) == self.vertex_count

    @property
    def delta(self) -> DimVector:
        if not self.is_cycle_quiver:
            raise QuiverError("The null root is only defined here for Ã_n", code="not_cycle_quiver")
        return tuple([1] * self.vertex_count)

    def sources(self) -> List[int]:
        return [v for v in range(self.vertex_count) if not self.arrows_to(v)]

    def sinks(self) -> List[int]:
        return [v for v in range(self.vertex_count) if not self.arrows_from(v)]

    def label(self) -> str:
        if self.name:
            return self.name
        if self.orientation is not None:
            return f"cycle {self.orientation.signs}"
        return f"quiver({self.vertex_count} vertices, {len(self.arrows)} arrows)"

    def to_document(self) -> Dict[str, Any]:
        if self.orientation is not None:
            return {'cycle': self.orientation.signs}
        return {
            'vertices': self.vertex_count,
            'arrows': [[a.arrow_id, a.source, a.target] for a in self.arrows],
            'relations': [list(r) for r in self.relations],
            'string_algebra': self.string_algebra,
        }


@dataclass(frozen=True)
class StringWord:
    letters: Tuple[Letter, ...]
    walk: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    @property
    def end_vertex(self) -> int:
        return self.walk[-1]

    @property
    def key(self) -> Tuple:
        return (self.length, tuple(letter.key for letter in self.letters), self.walk[0])

    def letter(self, i: int) -> Letter:
        """c_i for 1 <= i <= n"""
        return self.letters[self.length - i]

    def inverse(self) -> "StringWord":
        return StringWord(tuple(x.inverted() for x in reversed(self.letters)), tuple(reversed(self.walk)))

    @property
    def canonical_form(self) -> "StringWord":
        other = self.inverse()
        return min(self, other, key=lambda w: w.key)

    @property
    def is_canonical(self) -> bool:
        return self.canonical_form == self

    def subword(self, i: int, j: int) -> "StringWord":
        """Substring on basis indices i..j, i.e. letters c_j ... c_{i+1}"""
        n = self.length
        return StringWord(self.letters[n - j:n - i], self.walk[i:j + 1])

    def dims(self, vertex_count: int) -> DimVector:
        counts = [0] * vertex_count
        for v in self.walk:
            counts[v] += 1
        return tuple(counts)

    @property
    def is_direct(self) -> bool:
        return all(not x.inverse for x in self.letters)

    @property
    def is_inverse(self) -> bool:
        return all(x.inverse for x in self.letters)

    def tokens(self) -> List[str]:
        return [str(x) for x in self.letters]

    def __str__(self) -> str:
        if self.is_trivial:
            return f"e{self.walk[0]}"
        return " ".join(self.tokens())


@dataclass(frozen=True)
class BandWord:
    letters: Tuple[Letter, ...]
    walk: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def key(self) -> Tuple:
        return (self.length, tuple(letter.key for letter in self.letters))

    def rotations(self) -> List["BandWord"]:
        n = self.length
        cyc = self.walk[:-1]
        out = []
        for k in range(n):
            # the new c_1 is the old c_{n-k+1}, so the walk starts at u_{n-k}
            start = (n - k) % n
            walk = tuple(cyc[(start + t) % n] for t in range(n + 1))
            out.append(BandWord(self.letters[k:] + self.letters[:k], walk))
        return out

    def inverse(self) -> "BandWord":
        return BandWord(tuple(x.inverted() for x in reversed(self.letters)), tuple(reversed(self.walk)))

    @property
    def canonical_form(self) -> "BandWord":
        candidates = self.rotations() + self.inverse().rotations()
        return min(candidates, key=lambda b: b.key)

    def dims(self, vertex_count: int) -> DimVector:
        counts = [0] * vertex_count
        for v in self.walk[:-1]:
            counts[v] += 1
        return tuple(counts)

    def tokens(self) -> List[str]:
        return [str(x) for x in self.letters]

    def __str__(self) -> str:
        return " ".join(self.tokens())


def build_cycle_quiver(orientation: Union[str, CycleOrientation]) -> Quiver:
    """Cycle quiver on n+1 vertices; arrow a{i} joins i and i+1 mod n+1"""
    if not isinstance(orientation, CycleOrientation):
        orientation = CycleOrientation.parse(orientation)
    m = len(orientation.signs)
    arrows = []
    for i, sign in enumerate(orientation.signs):
        j = (i + 1) % m
        arrows.append(Arrow(f"a{i}", i, j) if sign == "+" else Arrow(f"a{i}", j, i))
    quiver = Quiver(m, tuple(arrows), (), True, orientation)
    logger.debug(f"Built cycle quiver {orientation.signs}: p={orientation.p}, q={orientation.q}")
    return quiver


def build_line_quiver(signs: str, prefix: str = "a") -> Quiver:
    """Type A quiver on len(signs)+1 vertices; arrow i joins i and i+1"""
    normalized = "".join("-" if ch in MINUS_SIGNS else ch for ch in signs)
    if any(ch not in "+-" for ch in normalized):
        raise QuiverError(f"Line orientation must use only '+' and '-': {signs!r}", code="cyclic_orientation")
    arrows = tuple(Arrow(f"{prefix}{i}", i, i + 1) if s == "+" else Arrow(f"{prefix}{i}", i + 1, i)
                   for i, s in enumerate(normalized))
    return Quiver(len(normalized) + 1, arrows, (), True, None, f"line {normalized or 'A1'}")


def trivial_string(q: Quiver, vertex: int) -> StringWord:
    if not 0 <= vertex < q.vertex_count:
        raise StringError(f"Vertex {vertex} is not in the quiver", code="unknown_arrow", vertex=vertex)
    return StringWord((), (vertex,))


def _relation_violation(q: Quiver, letters: Sequence[Letter]) -> Optional[Tuple[str, ...]]:
    for relation in q.relations:
        k = len(relation)
        for w in range(len(letters) - k + 1):
            window = letters[w:w + k]
            ids = tuple(x.arrow_id for x in window)
            if all(not x.inverse for x in window) and ids == relation:
                return relation
            if all(x.inverse for x in window) and tuple(reversed(ids)) == relation:
                return relation
    return None


def _ambiguous(q: Quiver, first: Letter, second: Letter) -> bool:
    # second*first is a direct composition; outside string algebras either end may branch
    first_arrow = q.arrows[first.arrow_index]
    second_arrow = q.arrows[second.arrow_index]
    return len(q.continuations_after(first_arrow)) > 1 or len(q.continuations_before(second_arrow)) > 1


def validate_string(q: Quiver, letters: Iterable[Union[str, Letter]], vertex: Optional[int] = None) -> StringWord:
    """Check a word c_n ... c_1 and return it with its vertex walk"""
    word = tuple(q.parse_letter(x) for x in letters)
    if not word:
        if vertex is None:
            raise StringError("A trivial string needs a vertex", code="non_composable")
        return trivial_string(q, vertex)

    for k in range(len(word) - 1):
        later, earlier = word[k], word[k + 1]
        if q.start(later) != q.end(earlier):
            raise StringError(f"Letters {later} and {earlier} do not compose",
                              code="non_composable", position=k)
        if later == earlier.inverted():
            raise StringError(f"Letter {earlier} is followed by its inverse", code="unreduced", position=k)

    relation = _relation_violation(q, word)
    if relation is not None:
        raise StringError(f"Word contains the relation {relation}", code="relation_violation",
                          relation=relation)

    if not q.string_algebra:
        for k in range(len(word) - 1):
            later, earlier = word[k], word[k + 1]
            if not later.inverse and not earlier.inverse and _ambiguous(q, earlier, later):
                raise StringError(f"Ambiguous continuation at {later} {earlier}", code="sign_violation",
                                  position=k)
            if later.inverse and earlier.inverse and _ambiguous(q, later, earlier):
                raise StringError(f"Ambiguous continuation at {later} {earlier}", code="sign_violation",
                                  position=k)

    walk = (q.start(word[-1]),) + tuple(q.end(x) for x in reversed(word))
    return StringWord(word, walk)


def extend_left(q: Quiver, word: StringWord, letter: Letter) -> StringWord:
    """The string letter*word, validated"""
    if word.is_trivial and q.start(letter) != word.walk[0]:
        raise StringError("Letter does not start at the trivial string's vertex", code="non_composable")
    return validate_string(q, (letter,) + word.letters)


def extend_right(q: Quiver, word: StringWord, letter: Letter) -> StringWord:
    """The string word*letter, validated"""
    if word.is_trivial and q.end(letter) != word.walk[0]:
        raise StringError("Letter does not end at the trivial string's vertex", code="non_composable")
    return validate_string(q, word.letters + (letter,))


def enumerate_strings(q: Quiver, max_length: int) -> List[StringWord]:
    """All string classes (up to inversion) with at most max_length letters"""
    level = [trivial_string(q, v) for v in range(q.vertex_count)]
    found = list(level)
    for _ in range(max_length):
        next_level = []
        for word in level:
            for letter in q.letters_from(word.end_vertex):
                try:
                    next_level.append(extend_left(q, word, letter))
                except StringError:
                    continue
        level = next_level
        found.extend(w for w in level if w.is_canonical)
        if not level:
            break
    found.sort(key=lambda w: w.key)
    logger.debug(f"Enumerated {len(found)} string classes up to length {max_length} on {q.label()}")
    return found


def _is_proper_power(letters: Tuple[Letter, ...]) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return True
    return False


def _closes_as_band(q: Quiver, word: StringWord) -> bool:
    if word.is_trivial or word.walk[0] != word.walk[-1]:
        return False
    if word.is_direct or word.is_inverse:
        return False
    if word.letters[0] == word.letters[-1].inverted() or _is_proper_power(word.letters):
        return False
    try:
        validate_string(q, word.letters + word.letters)
    except StringError:
        return False
    return True


def band_words(q: Quiver) -> List[BandWord]:
    """All primitive bands up to rotation and inversion"""
    found: Dict[Tuple, BandWord] = {}
    limit = len(q.arrows)
    for v in range(q.vertex_count):
        level = [trivial_string(q, v)]
        for _ in range(limit):
            next_level = []
            for word in level:
                for letter in q.letters_from(word.end_vertex):
                    try:
                        next_level.append(extend_left(q, word, letter))
                    except StringError:
                        continue
            for word in next_level:
                if _closes_as_band(q, word):
                    band = BandWord(word.letters, word.walk).canonical_form
                    found.setdefault(band.key, band)
            level = next_level
    bands = sorted(found.values(), key=lambda b: b.key)
    logger.debug(f"Found {len(bands)} bands on {q.label()}")
    return bands


def validate_band(q: Quiver, letters: Iterable[Union[str, Letter]]) -> BandWord:
    word = validate_string(q, letters)
    if not _closes_as_band(q, word):
        raise StringError(f"Word {word} is not a band", code="not_a_band")
    return BandWord(word.letters, word.walk).canonical_form


def dominated(d: DimVector, e: DimVector) -> bool:
    """d <= e coordinate-wise"""
    return all(x <= y for x, y in zip(d, e))


def quiver_from_document(doc: Dict[str, Any]) -> Quiver:
    """Quiver from {"cycle": "+-+-"} or {"vertices", "arrows", "relations"}"""
    if not isinstance(doc, dict):
        raise QuiverError("Quiver document must be an object", code="invalid_endpoint")
    if "cycle" in doc:
        return build_cycle_quiver(doc["cycle"])
    try:
        vertex_count = int(doc["vertices"])
        arrows = tuple(Arrow(str(a[0]), int(a[1]), int(a[2])) for a in doc.get("arrows", []))
        relations = tuple(tuple(str(x) for x in r) for r in doc.get("relations", []))
    except (KeyError, TypeError, ValueError, IndexError) as e:
        raise QuiverError(f"Malformed quiver document: {str(e)}", code="invalid_endpoint") from e
    return Quiver(vertex_count, arrows, relations, bool(doc.get("string_algebra", True)), None,
                  str(doc.get("name", "")))


def load_quiver(path: str) -> Quiver:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise QuiverError(f"Cannot read quiver document {path}: {str(e)}", code="invalid_endpoint",
                          path=path) from e
    return quiver_from_document(doc)
