"""The imaginary quadratic field K = Q(sqrt(-D)) and its elements."""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Iterator, Union

import mpmath
import sympy

from ..arith import CycNum, gauss_sqrt, kronecker, omega_polynomial
from ..exceptions import ArithmeticDomainError, FieldError

if TYPE_CHECKING:
    from .ideals import IdealK

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def is_fundamental(D: int) -> bool:
    """True when -D is a fundamental discriminant."""
    if D <= 0:
        return False
    if D % 4 == 3:
        return all(e == 1 for e in sympy.factorint(D).values())
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (1, 2) and all(e == 1 for e in sympy.factorint(m).values())
    return False


class ElemK:
    """a + b*omega with rational a, b, where {1, omega} is the integral basis of O_K."""

    __slots__ = ("D", "a", "b")

    def __init__(self, D: int, a: Rational = 0, b: Rational = 0) -> None:
        self.D = D
        self.a = Fraction(a)
        self.b = Fraction(b)

    # omega^2 = -n0 - n1*omega
    @property
    def _relation(self) -> tuple[int, int]:
        n0, n1, _ = omega_polynomial(self.D)
        return n0, n1

    def _coerce(self, other) -> "ElemK":
        if isinstance(other, ElemK):
            if other.D != self.D:
                raise FieldError(f"mixing elements of Q(sqrt(-{self.D})) and Q(sqrt(-{other.D}))")
            return other
        if isinstance(other, (int, Fraction)):
            return ElemK(self.D, other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ElemK(self.D, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "ElemK":
        return ElemK(self.D, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ElemK(self.D, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n0, n1 = self._relation
        bb = self.b * other.b
        return ElemK(
            self.D,
            self.a * other.a - n0 * bb,
            self.a * other.b + self.b * other.a - n1 * bb,
        )

    __rmul__ = __mul__

    def conj(self) -> "ElemK":
        n0, n1 = self._relation
        # omega + conj(omega) = -n1
        return ElemK(self.D, self.a - n1 * self.b, -self.b)

    def norm(self) -> Fraction:
        n0, n1 = self._relation
        return self.a * self.a - n1 * self.a * self.b + n0 * self.b * self.b

    def trace(self) -> Fraction:
        n0, n1 = self._relation
        return 2 * self.a - n1 * self.b

    def inverse(self) -> "ElemK":
        n = self.norm()
        if n == 0:
            raise ArithmeticDomainError("inversion of zero in K")
        c = self.conj()
        return ElemK(self.D, c.a / n, c.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "ElemK":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ElemK(self.D, 1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def to_cyc(self) -> CycNum:
        """The element inside Q(zeta_m) through sqrt(-D) = quadratic Gauss sum."""
        sqrt_minus_d = gauss_sqrt(self.D)
        if self.D % 4 == 0:
            omega = sqrt_minus_d / 2
        else:
            omega = (sqrt_minus_d + 1) / 2
        return omega * self.b + self.a

    def to_complex(self, dps: int = 50) -> mpmath.mpc:
        with mpmath.workdps(dps + 10):
            root = mpmath.sqrt(self.D)
            if self.D % 4 == 0:
                omega = mpmath.mpc(0, root / 2)
            else:
                omega = mpmath.mpc(mpmath.mpf(1) / 2, root / 2)
            value = mpmath.mpf(self.a.numerator) / self.a.denominator + mpmath.mpf(self.b.numerator) / self.b.denominator * omega
        return +value

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, ElemK):
            return NotImplemented
        return self.D == other.D and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.D, self.a, self.b))

    def __repr__(self) -> str:
        return f"ElemK({self.a} + {self.b}*w)"


class FieldK:
    """K = Q(sqrt(-D)) with its unit group, different generator and class-group data."""

    def __init__(self, D: int) -> None:
        if not is_fundamental(D):
            raise FieldError(f"-{D} is not a fundamental discriminant")
        self.D = D

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldK) and other.D == self.D

    def __hash__(self) -> int:
        return hash(("FieldK", self.D))

    def __repr__(self) -> str:
        return f"FieldK(D={self.D})"

    def elem(self, a: Rational = 0, b: Rational = 0) -> ElemK:
        return ElemK(self.D, a, b)

    @property
    def omega(self) -> ElemK:
        return ElemK(self.D, 0, 1)

    @property
    def delta(self) -> ElemK:
        """sqrt(-D), a generator of the different."""
        if self.D % 4 == 0:
            return ElemK(self.D, 0, 2)
        return ElemK(self.D, -1, 2)

    @property
    def w(self) -> int:
        return {4: 4, 3: 6}.get(self.D, 2)

    @cached_property
    def units(self) -> tuple[ElemK, ...]:
        """zeta_w^k for k = 0..w-1."""
        if self.D in (3, 4):
            generator = self.omega
        else:
            generator = ElemK(self.D, -1, 0)
        values = [ElemK(self.D, 1, 0)]
        for _ in range(self.w - 1):
            values.append(values[-1] * generator)
        return tuple(values)

    def unit_index(self, u: ElemK) -> int:
        """k with u = zeta_w^k."""
        for index, unit in enumerate(self.units):
            if unit == u:
                return index
        raise FieldError(f"{u} is not a unit of O_K")

    @cached_property
    def class_number(self) -> int:
        """Class number from h = -(w / 2D) * sum_{a<D} kron(-D, a) a."""
        total = sum(kronecker(-self.D, a) * a for a in range(1, self.D))
        h = Fraction(-self.w * total, 2 * self.D)
        if h.denominator != 1 or h <= 0:
            raise FieldError(f"class number formula failed for D={self.D}")
        return int(h)

    @cached_property
    def class_reps(self) -> tuple["IdealK", ...]:
        from .ideals import class_representatives

        return class_representatives(self)

    def require_class_number_one(self) -> None:
        if self.class_number != 1:
            raise FieldError(f"K = Q(sqrt(-{self.D})) has class number {self.class_number}; execution requires h = 1")

    def elements_of_norm(self, n: int) -> Iterator[ElemK]:
        """All integral a + b*omega of norm n."""
        n0, n1, _ = omega_polynomial(self.D)
        # norm = (a - n1 b/2)^2 + (n0 - n1^2/4) b^2 ; the b-coefficient is D/4
        bound = int((4 * n / self.D) ** 0.5) + 1
        for b in range(-bound, bound + 1):
            # a^2 - n1 a b + n0 b^2 - n = 0
            disc = (n1 * b) ** 2 - 4 * (n0 * b * b - n)
            if disc < 0:
                continue
            root = sympy.integer_nthroot(disc, 2)
            if not root[1]:
                continue
            r = int(root[0])
            for numerator in {n1 * b + r, n1 * b - r}:
                if numerator % 2 == 0:
                    yield ElemK(self.D, numerator // 2, b)

    def to_cyc(self, x: ElemK) -> CycNum:
        return x.to_cyc()

    def kronecker(self, q: int) -> int:
        return kronecker(-self.D, q)
