"""
Gabriel-Roiter measures: finite strictly increasing sets of positive integers
under the order where I < J iff the least element of the symmetric difference
lies in J.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, List, Sequence, Tuple

from utils.error_handler import MeasureError


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


@total_ordering
class GRMeasure:
    """Immutable measure value; the empty measure is mu(0)"""

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[int] = ()):
        values = tuple(int(x) for x in elements)
        if any(x < 1 for x in values):
            raise MeasureError(f"Measure entries must be positive: {values}", code="not_increasing")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise MeasureError(f"Measure entries must strictly increase: {values}", code="not_increasing")
        object.__setattr__(self, "_elements", values)

    def __setattr__(self, name, value):
        raise AttributeError("GRMeasure is immutable")

    @classmethod
    def from_set(cls, values: Iterable[int]) -> "GRMeasure":
        return cls(sorted(set(values)))

    @property
    def elements(self) -> Tuple[int, ...]:
        return self._elements

    @property
    def maximum(self) -> int:
        return self._elements[-1] if self._elements else 0

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, item) -> bool:
        return item in self._elements

    def __eq__(self, other) -> bool:
        if not isinstance(other, GRMeasure):
            return NotImplemented
        return self._elements == other._elements

    def __lt__(self, other) -> bool:
        if not isinstance(other, GRMeasure):
            return NotImplemented
        return compare(self, other) is Ordering.LT

    def __hash__(self) -> int:
        return hash(("GRMeasure", self._elements))

    def __repr__(self) -> str:
        return f"GRMeasure({list(self._elements)})"

    def __str__(self) -> str:
        return "{" + ",".join(str(x) for x in self._elements) + "}"

    def to_list(self) -> List[int]:
        return list(self._elements)

    def csv_text(self) -> str:
        return "{" + " ".join(str(x) for x in self._elements) + "}"

    @classmethod
    def parse(cls, text: str) -> "GRMeasure":
        """Parse '{1,2,4}', '1 2 4' or '[1, 2, 4]'"""
        cleaned = str(text).strip().strip("{}[]()")
        tokens = [t for t in cleaned.replace(",", " ").split() if t]
        try:
            return cls(int(t) for t in tokens)
        except ValueError as e:
            raise MeasureError(f"Cannot parse measure {text!r}", code="not_increasing") from e


EMPTY = GRMeasure()


def compare(I: GRMeasure, J: GRMeasure) -> Ordering:
    difference = set(I.elements) ^ set(J.elements)
    if not difference:
        return Ordering.EQ
    return Ordering.LT if min(difference) in J else Ordering.GT


def starts_with(I: GRMeasure, J: GRMeasure) -> bool:
    """True iff J starts with I"""
    k = len(I)
    return J.elements[:k] == I.elements


def extend(I: GRMeasure, m: int) -> GRMeasure:
    if m <= I.maximum:
        raise MeasureError(f"Cannot extend {I} by {m}", code="extend_order", measure=str(I), value=m)
    return GRMeasure(I.elements + (m,))


def to_rational(I: GRMeasure) -> Fraction:
    return sum((Fraction(1, 2 ** a) for a in I.elements), Fraction(0))


def fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def maximum(measures: Sequence[GRMeasure]) -> GRMeasure:
    """Largest measure in the sequence, EMPTY for no measures"""
    best = EMPTY
    for m in measures:
        if best < m:
            best = m
    return best
