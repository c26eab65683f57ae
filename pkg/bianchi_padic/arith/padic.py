"""Capped relative-precision p-adic numbers and Hensel lifting."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence, Union

from ..exceptions import ArithmeticDomainError, PrecisionError


def p_valuation(value: Union[int, Fraction], p: int) -> Optional[int]:
    """Return v_p(value), or None for zero."""
    value = Fraction(value)
    if value == 0:
        return None
    v = 0
    num, den = value.numerator, value.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


class PadicNum:
    """p^valuation * unit, with the unit known modulo p^precision.

    Zero is represented by unit 0 and precision 0; its valuation then holds the
    absolute precision O(p^valuation) to which it is known.
    """

    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p: int, valuation: int, unit: int, precision: int) -> None:
        self.p = p
        self.valuation = valuation
        self.precision = max(precision, 0)
        self.unit = unit % (p ** self.precision) if self.precision else 0
        if self.unit and self.unit % p == 0:
            raise ArithmeticDomainError("PadicNum unit must be coprime to p")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, p: int, absolute_precision: int) -> "PadicNum":
        return cls(p, absolute_precision, 0, 0)

    @classmethod
    def _normalize(cls, p: int, valuation: int, value: int, relative: int) -> "PadicNum":
        if relative <= 0:
            return cls.zero(p, valuation + max(relative, 0))
        modulus = p ** relative
        value %= modulus
        if value == 0:
            return cls.zero(p, valuation + relative)
        while value % p == 0:
            value //= p
            valuation += 1
            relative -= 1
        return cls(p, valuation, value, relative)

    @classmethod
    def from_residue(cls, p: int, value: int, absolute_precision: int) -> "PadicNum":
        """An integer known modulo p^absolute_precision."""
        return cls._normalize(p, 0, value, absolute_precision)

    @classmethod
    def from_rational(cls, p: int, value: Union[int, Fraction], precision: int) -> "PadicNum":
        """A rational number with relative precision `precision` (exact values are capped)."""
        value = Fraction(value)
        if value == 0:
            return cls.zero(p, precision)
        v = p_valuation(value, p)
        num, den = value.numerator, value.denominator
        if v > 0:
            num //= p ** v
        elif v < 0:
            den //= p ** (-v)
        modulus = p ** precision
        unit = (num * pow(den, -1, modulus)) % modulus
        return cls(p, v, unit, precision)

    # -- properties ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    def is_integral(self) -> bool:
        return self.is_zero or self.valuation >= 0

    def residue(self) -> int:
        """Integer representative modulo p^absolute_precision (requires integrality)."""
        if self.valuation < 0 and not self.is_zero:
            raise ArithmeticDomainError("residue of a non-integral p-adic number")
        if self.is_zero:
            return 0
        return (self.unit * self.p ** self.valuation) % (self.p ** self.absolute_precision)

    def to_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def with_absolute_precision(self, absolute: int) -> "PadicNum":
        """Lower the absolute precision; never raises it."""
        if absolute >= self.absolute_precision:
            return self
        if self.is_zero:
            return PadicNum.zero(self.p, absolute)
        return PadicNum._normalize(self.p, self.valuation, self.unit, absolute - self.valuation)

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "PadicNum":
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ArithmeticDomainError(f"mixing {self.p}-adic and {other.p}-adic numbers")
            return other
        if isinstance(other, (int, Fraction)):
            value = Fraction(other)
            if value == 0:
                return PadicNum.zero(self.p, 10 ** 6)
            v = p_valuation(value, self.p)
            return PadicNum.from_rational(self.p, value, max(self.absolute_precision - v, 1) + max(self.precision, 1))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        absolute = min(self.absolute_precision, other.absolute_precision)
        if self.is_zero and other.is_zero:
            return PadicNum.zero(p, absolute)
        if self.is_zero:
            return other.with_absolute_precision(absolute)
        if other.is_zero:
            return self.with_absolute_precision(absolute)
        base = min(self.valuation, other.valuation)
        total = self.unit * p ** (self.valuation - base) + other.unit * p ** (other.valuation - base)
        return PadicNum._normalize(p, base, total, absolute - base)

    __radd__ = __add__

    def __neg__(self) -> "PadicNum":
        if self.is_zero:
            return self
        return PadicNum(self.p, self.valuation, -self.unit, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return PadicNum.zero(self.p, self.valuation + other.valuation)
        precision = min(self.precision, other.precision)
        return PadicNum(self.p, self.valuation + other.valuation, self.unit * other.unit, precision)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNum":
        if self.is_zero:
            raise ArithmeticDomainError("inversion of a p-adic zero")
        modulus = self.p ** self.precision
        return PadicNum(self.p, -self.valuation, pow(self.unit, -1, modulus), self.precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "PadicNum":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return PadicNum.from_rational(self.p, 1, max(self.precision, 1))
        if self.is_zero:
            return PadicNum.zero(self.p, self.valuation * exponent)
        modulus = self.p ** self.precision
        return PadicNum(self.p, self.valuation * exponent, pow(self.unit, exponent, modulus), self.precision)

    # -- comparison ---------------------------------------------------
    def agrees_with(self, other, absolute: int) -> bool:
        diff = self - other
        if diff.absolute_precision < absolute and diff.is_zero:
            raise PrecisionError(
                f"comparison requested to O(p^{absolute}) but operands are only known to O(p^{diff.absolute_precision})"
            )
        return diff.is_zero or diff.valuation >= absolute

    def __eq__(self, other) -> bool:
        try:
            diff = self - other
        except ArithmeticDomainError:
            return False
        if diff is NotImplemented:
            return NotImplemented
        return diff.is_zero

    def __hash__(self) -> int:
        return hash((self.p, self.valuation, self.unit, self.precision))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        return f"{self.p}^{self.valuation}*{self.unit} + O({self.p}^{self.absolute_precision})"


def hensel_root(poly: Sequence[int], p: int, precision: int, seed: Optional[int] = None) -> PadicNum:
    """Lift a simple root of an integer polynomial (lowest degree first) to O(p^precision).

    Without a seed the smallest simple root modulo p is used.
    """
    coeffs = [int(c) for c in poly]
    derivative = [i * c for i, c in enumerate(coeffs)][1:]

    def evaluate(values: Sequence[int], x: int, modulus: int) -> int:
        total = 0
        for c in reversed(values):
            total = (total * x + c) % modulus
        return total

    if seed is None:
        candidates = [r for r in range(p) if evaluate(coeffs, r, p) == 0 and evaluate(derivative, r, p) != 0]
        if not candidates:
            raise ArithmeticDomainError(f"polynomial {coeffs} has no simple root modulo {p}")
        seed = candidates[0]
    if evaluate(coeffs, seed, p) != 0:
        raise ArithmeticDomainError(f"seed {seed} is not a root of {coeffs} modulo {p}")
    if evaluate(derivative, seed, p) == 0:
        raise ArithmeticDomainError(f"seed {seed} is a multiple root of {coeffs} modulo {p}")
    root = seed % p
    reached = 1
    while reached < precision:
        reached = min(2 * reached, precision)
        modulus = p ** reached
        step = evaluate(coeffs, root, modulus) * pow(evaluate(derivative, root, modulus), -1, modulus)
        root = (root - step) % modulus
    return PadicNum.from_residue(p, root, precision)
