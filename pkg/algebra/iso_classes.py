"""
Canonical descriptors of indecomposable modules: a string up to inversion, a
band power with its parameter, or an explicit representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Optional, Tuple, Union

from algebra.quivers import BandWord, DimVector, Quiver, StringWord
from algebra.string_modules import Representation, band_to_rep, string_to_rep

STRING = "string"
BAND = "band"
EXPLICIT = "explicit"

_KIND_ORDER = {STRING: 0, BAND: 1, EXPLICIT: 2}


@dataclass(frozen=True)
class IsoClass:
    kind: str
    word: Union[StringWord, BandWord, None]
    multiplicity: int = 1
    lam: Fraction = Fraction(1)
    explicit: Optional[Representation] = None
    quiver: Quiver = field(default=None, compare=False, repr=False)

    @classmethod
    def from_string(cls, q: Quiver, word: StringWord) -> "IsoClass":
        return cls(STRING, word.canonical_form, quiver=q)

    @classmethod
    def from_band(cls, q: Quiver, band: BandWord, multiplicity: int = 1, lam: Any = 1) -> "IsoClass":
        return cls(BAND, band.canonical_form, int(multiplicity), Fraction(lam), quiver=q)

    @classmethod
    def from_representation(cls, rep: Representation) -> "IsoClass":
        return cls(EXPLICIT, None, explicit=rep, quiver=rep.quiver)

    @property
    def is_string(self) -> bool:
        return self.kind == STRING

    @property
    def is_band(self) -> bool:
        return self.kind == BAND

    @cached_property
    def dims(self) -> DimVector:
        if self.kind == STRING:
            return self.word.dims(self.quiver.vertex_count)
        if self.kind == BAND:
            return tuple(self.multiplicity * d for d in self.word.dims(self.quiver.vertex_count))
        return self.explicit.dims

    @property
    def length(self) -> int:
        return sum(self.dims)

    @property
    def is_simple(self) -> bool:
        return self.length == 1

    @cached_property
    def representation(self) -> Representation:
        if self.kind == STRING:
            return string_to_rep(self.quiver, self.word)
        if self.kind == BAND:
            return band_to_rep(self.quiver, self.word, self.multiplicity, self.lam)
        return self.explicit

    @cached_property
    def key(self) -> Tuple:
        word_key = self.word.key if self.word is not None else ()
        explicit_key = self.explicit.matrices if self.explicit is not None else ()
        return (self.length, _KIND_ORDER[self.kind], word_key, self.multiplicity, self.lam, explicit_key)

    def with_lambda(self, lam: Any) -> "IsoClass":
        if self.kind != BAND:
            return self
        return replace(self, lam=Fraction(lam))

    def with_multiplicity(self, multiplicity: int) -> "IsoClass":
        return replace(self, multiplicity=int(multiplicity))

    def descriptor(self) -> str:
        if self.kind == STRING:
            return f"string[{self.word}]"
        if self.kind == BAND:
            lam = self.lam
            lam_text = str(lam.numerator) if lam.denominator == 1 else f"{lam.numerator}/{lam.denominator}"
            return f"band[{self.word}]^{self.multiplicity}@{lam_text}"
        return f"explicit{list(self.dims)}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'descriptor': self.descriptor(),
            'kind': self.kind,
            'dims': list(self.dims),
            'length': self.length,
        }

    def __str__(self) -> str:
        return self.descriptor()
