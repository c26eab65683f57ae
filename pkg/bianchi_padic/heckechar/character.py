"""Hecke characters of K as ideal functions built from finite-order data and an infinity type."""

from __future__ import annotations

import hashlib
import logging
import threading
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import lcm
from typing import Callable, Dict, Optional, Sequence

import mpmath

from ..arith import CycNum
from ..exceptions import CharacterError, FieldError
from ..quadfield import ElemK, FieldK, IdealK, ResidueGroup, factor_ideal, ideal_lcm, residue_group

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InfinityType:
    """(a, b) meaning psi_inf(z) = z^a conj(z)^b."""

    a: int
    b: int

    def __add__(self, other: "InfinityType") -> "InfinityType":
        return InfinityType(self.a + other.a, self.b + other.b)

    def swapped(self) -> "InfinityType":
        return InfinityType(self.b, self.a)

    def as_list(self) -> list[int]:
        return [self.a, self.b]


def _phase(value: Fraction) -> Fraction:
    return value - (value.numerator // value.denominator)


def root_from_phase(phase: Fraction) -> CycNum:
    """exp(2 pi i phase) as a cyclotomic number."""
    phase = _phase(Fraction(phase))
    return CycNum.root_of_unity(phase.denominator, phase.numerator)


@dataclass(frozen=True)
class HeckeCharacter:
    """psi((alpha)) = eps(alpha) alpha^-a conj(alpha)^-b on ideals coprime to the modulus.

    eps is stored by its phases on the basis of (O_K/f)^x: eps(g_i) = exp(2 pi i phases[i]).
    """

    field: FieldK
    modulus: IdealK
    infinity: InfinityType
    phases: tuple[Fraction, ...]
    label: str = ""
    _cache: Dict[IdealK, CycNum] = dataclass_field(default_factory=dict, compare=False, hash=False, repr=False)
    _lock: threading.Lock = dataclass_field(default_factory=threading.Lock, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        group = self.group
        if len(self.phases) != len(group.orders):
            raise CharacterError(
                f"character on {self.modulus} needs {len(group.orders)} phases, got {len(self.phases)}"
            )
        for phase, order in zip(self.phases, group.orders):
            if (Fraction(phase) * order).denominator != 1:
                raise CharacterError(f"phase {phase} is not a multiple of 1/{order}")
        if not self.is_unit_compatible():
            raise CharacterError(
                f"finite part of {self.label or 'character'} is incompatible with infinity type "
                f"({self.infinity.a}, {self.infinity.b}) on units"
            )

    # -- constructors -------------------------------------------------
    @classmethod
    def from_function(
        cls,
        field: FieldK,
        modulus: IdealK,
        infinity: InfinityType,
        phase_of: Callable[[ElemK], Fraction],
        label: str = "",
    ) -> "HeckeCharacter":
        group = residue_group(field, modulus)
        phases = tuple(_phase(Fraction(phase_of(g))) for g in group.generators)
        return cls(field, modulus, infinity, phases, label)

    @classmethod
    def trivial(cls, field: FieldK, modulus: Optional[IdealK] = None, label: str = "trivial") -> "HeckeCharacter":
        modulus = modulus or IdealK.unit(field)
        group = residue_group(field, modulus)
        return cls(field, modulus, InfinityType(0, 0), tuple(Fraction(0) for _ in group.orders), label)

    # -- finite part --------------------------------------------------
    @property
    def group(self) -> ResidueGroup:
        return residue_group(self.field, self.modulus)

    def phase(self, x: ElemK) -> Fraction:
        """eps(x) = exp(2 pi i phase(x)) for x coprime to the modulus."""
        vector = self.group.log(x)
        return _phase(sum((Fraction(e) * Fraction(ph) for e, ph in zip(vector, self.phases)), Fraction(0)))

    def eps(self, x: ElemK) -> CycNum:
        return root_from_phase(self.phase(x))

    def finite_part(self, d: ElemK) -> CycNum:
        """psi_f(d) = eps(d)^-1 for d in O_K coprime to the modulus."""
        return root_from_phase(-self.phase(d))

    def finite_part_at_cusp(self, d: ElemK, gamma: ElemK) -> CycNum:
        """psi_f(d / gamma) = eps(d)^-1 gamma^a conj(gamma)^b for gamma a generator of the modulus."""
        value = self.finite_part(d)
        return value * _elem_power(gamma, self.infinity.a) * _elem_power(gamma.conj(), self.infinity.b)

    def value_conductor(self) -> int:
        """Smallest m with every eps value in mu_m."""
        return lcm(1, *(ph.denominator for ph in self.phases))

    def is_unit_compatible(self) -> bool:
        """eps(u) = u^a conj(u)^b for every global unit u = zeta_w^k."""
        w = self.field.w
        shift = self.infinity.a - self.infinity.b
        for k, u in enumerate(self.field.units):
            if self.modulus.is_unit():
                actual = Fraction(0)
            else:
                actual = self.phase(u)
            if _phase(actual - Fraction(k * shift, w)) != 0:
                return False
        return True

    # -- ideal function -----------------------------------------------
    def is_coprime(self, ideal: IdealK) -> bool:
        return ideal.coprime_to(self.modulus)

    def eval_elem(self, alpha: ElemK) -> CycNum:
        """psi((alpha)) for alpha coprime to the modulus."""
        value = CycNum.one() if self.modulus.is_unit() else self.eps(alpha)
        return value * _elem_power(alpha, -self.infinity.a) * _elem_power(alpha.conj(), -self.infinity.b)

    def eval_ideal(self, ideal: IdealK) -> CycNum:
        """psi(a), zero when a is not coprime to the modulus."""
        cached = self._cache.get(ideal)
        if cached is not None:
            return cached
        if not self.is_coprime(ideal):
            value = CycNum.zero()
        else:
            try:
                alpha = ideal.require_generator()
            except FieldError as exc:
                raise CharacterError(f"cannot evaluate on {ideal}: {exc}") from exc
            value = self.eval_elem(alpha)
        with self._lock:
            self._cache.setdefault(ideal, value)
        return value

    def eval_ideal_complex(self, ideal: IdealK, dps: int = 50) -> mpmath.mpc:
        """Complex value of psi(a) without exact arithmetic."""
        if not self.is_coprime(ideal):
            return mpmath.mpc(0)
        alpha = ideal.require_generator()
        with mpmath.workdps(dps + 10):
            phase = Fraction(0) if self.modulus.is_unit() else self.phase(alpha)
            z = alpha.to_complex(dps)
            value = mpmath.expjpi(2 * mpmath.mpf(phase.numerator) / phase.denominator)
            value *= z ** (-self.infinity.a) * mpmath.conj(z) ** (-self.infinity.b)
        return +value

    # -- operations ---------------------------------------------------
    def conj(self) -> "HeckeCharacter":
        """psi^c(a) = psi(conj(a))."""
        return HeckeCharacter.from_function(
            self.field,
            self.modulus.conj(),
            self.infinity.swapped(),
            lambda x: self.phase(x.conj()) if not self.modulus.is_unit() else Fraction(0),
            label=f"{self.label}^c",
        )

    def __mul__(self, other: "HeckeCharacter") -> "HeckeCharacter":
        modulus = ideal_lcm(self.modulus, other.modulus)

        def phase_of(x: ElemK) -> Fraction:
            total = Fraction(0)
            for character in (self, other):
                if not character.modulus.is_unit():
                    total += character.phase(x)
            return total

        return HeckeCharacter.from_function(
            self.field, modulus, self.infinity + other.infinity, phase_of, label=f"{self.label}*{other.label}"
        )

    def norm_twist(self, power: int = 1) -> "HeckeCharacter":
        """psi |.|^power as an ideal function: psi(a) N(a)^-power."""
        return HeckeCharacter(
            self.field,
            self.modulus,
            self.infinity + InfinityType(power, power),
            self.phases,
            label=f"{self.label}|.|^{power}" if power != 1 else f"{self.label}|.|",
        )

    def with_modulus(self, modulus: IdealK) -> "HeckeCharacter":
        """The same character viewed modulo a multiple of its modulus."""
        if not self.modulus.divides(modulus):
            raise CharacterError(f"{modulus} is not a multiple of {self.modulus}")
        return HeckeCharacter.from_function(
            self.field,
            modulus,
            self.infinity,
            lambda x: self.phase(x) if not self.modulus.is_unit() else Fraction(0),
            label=self.label,
        )

    def _factors_through(self, smaller: IdealK) -> bool:
        group = self.group
        one = smaller.reduce(self.field.elem(1))
        for x in group.elements:
            if smaller.reduce(x) == one and self.phase(x) != 0:
                return False
        return True

    def conductor(self) -> IdealK:
        current = self.modulus
        changed = True
        while changed and not current.is_unit():
            changed = False
            for prime in factor_ideal(current):
                candidate = current.divide(prime)
                if self._factors_through(candidate):
                    current = candidate
                    changed = True
                    break
        return current

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def primitive(self) -> "HeckeCharacter":
        conductor = self.conductor()
        if conductor == self.modulus:
            return self
        lookup: dict[ElemK, Fraction] = {}
        for x in self.group.elements:
            lookup.setdefault(conductor.reduce(x), self.phase(x))

        def phase_of(y: ElemK) -> Fraction:
            return lookup[conductor.reduce(y)]

        return HeckeCharacter.from_function(self.field, conductor, self.infinity, phase_of, label=self.label)

    def conductor_exponents(self, primes: Sequence[IdealK]) -> tuple[int, ...]:
        factors = factor_ideal(self.conductor()) if not self.conductor().is_unit() else {}
        return tuple(factors.get(prime, 0) for prime in primes)

    def is_trivial(self) -> bool:
        return self.infinity == InfinityType(0, 0) and all(ph == 0 for ph in self.phases)

    def fingerprint(self) -> str:
        """Stable identifier of the primitive ideal function."""
        primitive = self.primitive()
        payload = "|".join(
            [
                f"D={self.field.D}",
                f"f={primitive.modulus.key()}",
                f"inf={primitive.infinity.a},{primitive.infinity.b}",
                "phases=" + ",".join(str(ph) for ph in primitive.phases),
            ]
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def describe(self) -> dict:
        return {
            "label": self.label,
            "modulus": repr(self.modulus),
            "infinity_type": self.infinity.as_list(),
            "phases": [str(ph) for ph in self.phases],
            "fingerprint": self.fingerprint(),
        }

    def __repr__(self) -> str:
        return f"HeckeCharacter({self.label or '?'}, f={self.modulus}, inf=({self.infinity.a},{self.infinity.b}))"


def _elem_power(x: ElemK, exponent: int) -> CycNum:
    if exponent == 0:
        return CycNum.one()
    return (x ** exponent).to_cyc()


def kronecker_character(field: FieldK) -> HeckeCharacter:
    """lambda_K = chi_{-D} o N, a character of modulus (sqrt(-D))."""
    from ..arith import kronecker

    modulus = IdealK.principal(field, field.delta)

    def phase_of(x: ElemK) -> Fraction:
        n = int(x.norm())
        return Fraction(0) if kronecker(-field.D, n) == 1 else Fraction(1, 2)

    return HeckeCharacter.from_function(field, modulus, InfinityType(0, 0), phase_of, label="lambda_K")
