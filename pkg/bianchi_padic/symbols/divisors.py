"""Divisors supported on cusps of K."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from ..exceptions import SymbolError
from ..quadfield import Cusp, FieldK, IdealK, Matrix2, cusp_in_C


@dataclass(frozen=True)
class CuspDivisor:
    """A formal integer combination of normalized cusps."""

    field: FieldK
    terms: tuple[tuple[Cusp, int], ...]

    @classmethod
    def from_mapping(cls, field: FieldK, mapping: Mapping[Cusp, int]) -> "CuspDivisor":
        merged: dict[Cusp, int] = {}
        for cusp, n in mapping.items():
            merged[cusp] = merged.get(cusp, 0) + n
        terms = tuple(sorted(((c, n) for c, n in merged.items() if n), key=lambda item: repr(item[0])))
        return cls(field, terms)

    @classmethod
    def edge(cls, field: FieldK, first: Cusp, second: Cusp) -> "CuspDivisor":
        """{first} - {second}."""
        return cls.from_mapping(field, {first: 1, second: -1} if first != second else {})

    @classmethod
    def to_infinity(cls, field: FieldK, cusp: Cusp) -> "CuspDivisor":
        return cls.edge(field, cusp, Cusp.infinity(field))

    @property
    def degree(self) -> int:
        return sum(n for _, n in self.terms)

    def is_degree_zero(self) -> bool:
        return self.degree == 0

    def __iter__(self) -> Iterator[tuple[Cusp, int]]:
        return iter(self.terms)

    def __add__(self, other: "CuspDivisor") -> "CuspDivisor":
        mapping = dict(self.terms)
        for cusp, n in other.terms:
            mapping[cusp] = mapping.get(cusp, 0) + n
        return CuspDivisor.from_mapping(self.field, mapping)

    def __neg__(self) -> "CuspDivisor":
        return CuspDivisor(self.field, tuple((c, -n) for c, n in self.terms))

    def __sub__(self, other: "CuspDivisor") -> "CuspDivisor":
        return self + (-other)

    def translate(self, gamma: Matrix2) -> "CuspDivisor":
        mapping: dict[Cusp, int] = {}
        for cusp, n in self.terms:
            image = gamma.act(cusp)
            mapping[image] = mapping.get(image, 0) + n
        return CuspDivisor.from_mapping(self.field, mapping)

    def finite_cusps(self) -> Iterator[tuple[Cusp, int]]:
        """Terms of the decomposition sum n_c ({c} - {inf}) of a degree-zero divisor."""
        if not self.is_degree_zero():
            raise SymbolError(f"divisor of degree {self.degree} is not in the degree-zero part")
        for cusp, n in self.terms:
            if not cusp.is_infinity():
                yield cusp, n

    def supported_in_C(self, m: IdealK) -> bool:
        return all(cusp_in_C(self.field, m, cusp) for cusp, _ in self.terms)

    def __repr__(self) -> str:
        body = " + ".join(f"{n}{{{c}}}" for c, n in self.terms)
        return body or "0"
