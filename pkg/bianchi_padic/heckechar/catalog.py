"""Named characters and enumeration of character families by conductor."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from ..arith import CycNum
from ..exceptions import CharacterError
from ..quadfield import ElemK, FieldK, IdealK, residue_group
from .character import HeckeCharacter, InfinityType, kronecker_character
from .gauss import gauss_sum_W

logger = logging.getLogger(__name__)


def default_cm_modulus(field: FieldK) -> IdealK:
    """(1+i)^3 for Q(i) and (2 sqrt(-3)) for Q(sqrt(-3))."""
    if field.D == 4:
        return IdealK.principal(field, field.elem(1, 1) ** 3)
    if field.D == 3:
        return IdealK.principal(field, field.delta * 2)
    raise CharacterError(f"no default CM modulus for D={field.D}; configure phi explicitly")


def canonical_cm_character(field: FieldK, modulus: Optional[IdealK] = None) -> HeckeCharacter:
    """The character of infinity type (-1, 0) with eps(u) = u^-1, on a modulus where units inject onto (O/f)^x."""
    modulus = modulus or default_cm_modulus(field)
    group = residue_group(field, modulus)
    if group.order != field.w:
        raise CharacterError(
            f"(O/{modulus})^x has order {group.order}; the canonical CM character needs it to equal w={field.w}"
        )
    unit_of = {modulus.reduce(u): k for k, u in enumerate(field.units)}
    if len(unit_of) != field.w:
        raise CharacterError(f"global units do not inject into (O/{modulus})^x")

    def phase_of(x: ElemK) -> Fraction:
        return Fraction(-unit_of[modulus.reduce(x)], field.w)

    return HeckeCharacter.from_function(field, modulus, InfinityType(-1, 0), phase_of, label="phi")


def character_from_phases(
    field: FieldK, modulus: IdealK, infinity: InfinityType, phases: list[Fraction], label: str = ""
) -> HeckeCharacter:
    return HeckeCharacter(field, modulus, infinity, tuple(Fraction(ph) for ph in phases), label)


def norm_character(field: FieldK) -> HeckeCharacter:
    """The adelic norm character |.| as an ideal function N(a)^-1."""
    return HeckeCharacter.trivial(field, label="1").norm_twist()


def lambda_k(field: FieldK) -> HeckeCharacter:
    return kronecker_character(field)


def character_family(
    field: FieldK, modulus: IdealK, infinity: InfinityType = InfinityType(0, 0), label: str = "psi"
) -> list[HeckeCharacter]:
    """Every unit-compatible character modulo `modulus` with the given infinity type."""
    group = residue_group(field, modulus)
    family = []
    shift = infinity.a - infinity.b
    unit_logs = group.unit_images()
    for index, vector in enumerate(group.characters()):
        phases = tuple(Fraction(e, n) for e, n in zip(vector, group.orders))
        compatible = True
        for k, log in enumerate(unit_logs):
            phase = sum((Fraction(v) * ph for v, ph in zip(log, phases)), Fraction(0))
            if (phase - Fraction(k * shift, field.w)).denominator != 1:
                compatible = False
                break
        if compatible:
            family.append(HeckeCharacter(field, modulus, infinity, phases, f"{label}[{index}]"))
    return family


@dataclass(frozen=True)
class CharacterTableEntry:
    character: HeckeCharacter
    t: int
    s: int
    primitive: bool
    gauss_sum: Optional[CycNum]

    def as_dict(self) -> dict:
        record = self.character.describe()
        record.update({"t": self.t, "s": self.s, "primitive": self.primitive})
        if self.gauss_sum is not None:
            record["gauss_sum"] = self.gauss_sum.canonical()
            record["gauss_sum_norm_squared"] = str(_abs_squared(self.gauss_sum))
        return record


def _abs_squared(value: CycNum) -> Fraction:
    product = value * value.conjugate()
    if not product.is_rational():
        raise CharacterError(f"|W|^2 = {product} is not rational")
    return product.coeffs[0]


def characters_by_conductor(
    field: FieldK,
    prime: IdealK,
    prime_bar: IdealK,
    max_t: int,
    max_s: int,
    infinity: InfinityType = InfinityType(0, 0),
    with_gauss_sums: bool = True,
) -> Iterator[CharacterTableEntry]:
    """All unit-compatible characters modulo p^t pbar^s, t <= max_t, s <= max_s, with primitivity data."""
    for t in range(max_t + 1):
        for s in range(max_s + 1):
            modulus = prime ** t * prime_bar ** s
            for character in character_family(field, modulus, infinity, label=f"psi_{t}{s}"):
                primitive = character.is_primitive()
                gauss = gauss_sum_W(character) if primitive and with_gauss_sums else None
                yield CharacterTableEntry(character, t, s, primitive, gauss)
