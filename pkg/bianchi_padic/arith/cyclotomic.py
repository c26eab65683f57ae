"""Exact arithmetic in cyclotomic fields Q(zeta_m) using the power basis."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence, Union

import mpmath
import sympy

from ..exceptions import ArithmeticDomainError

Rational = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_coefficients(m: int) -> tuple[int, ...]:
    """Return the coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return int(sympy.totient(m))


@lru_cache(maxsize=None)
def _unit_residues(m: int) -> tuple[int, ...]:
    return tuple(a for a in range(1, m + 1) if gcd(a, m) == 1)


def _reduce(exponent_coeffs: Sequence[Fraction], m: int) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_m (indexed by exponent mod m) to the power basis."""
    phi = cyclotomic_coefficients(m)
    degree = len(phi) - 1
    work = list(exponent_coeffs)
    for index in range(len(work) - 1, degree - 1, -1):
        lead = work[index]
        if lead:
            shift = index - degree
            for j in range(degree):
                if phi[j]:
                    work[shift + j] -= lead * phi[j]
            work[index] = Fraction(0)
    if len(work) < degree:
        work.extend(Fraction(0) for _ in range(degree - len(work)))
    return tuple(work[:degree])


def _rational(value: Rational) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _solve_exact(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Solve sum_j x_j columns[j] = target over Q; None when inconsistent."""
    matrix = sympy.Matrix(len(target), len(columns), lambda i, j: _rational(columns[j][i]))
    rhs = sympy.Matrix([_rational(value) for value in target])
    try:
        solution, params = matrix.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({param: 0 for param in params})
    return [Fraction(int(x.p), int(x.q)) for x in solution]


class CycNum:
    """An element of Q(zeta_m) stored by rational coordinates in the power basis."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Iterable[Rational]) -> None:
        if conductor < 1:
            raise ArithmeticDomainError(f"invalid cyclotomic conductor {conductor}")
        values = [Fraction(c) for c in coeffs]
        degree = euler_phi(conductor)
        if len(values) != degree:
            by_exponent = [Fraction(0)] * conductor
            for index, value in enumerate(values):
                by_exponent[index % conductor] += value
            values = list(_reduce(by_exponent, conductor))
        self.conductor = conductor
        self.coeffs = tuple(values)

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, value: Rational, conductor: int = 1) -> "CycNum":
        coeffs = [Fraction(0)] * euler_phi(conductor)
        coeffs[0] = Fraction(value)
        return cls(conductor, coeffs)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycNum":
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycNum":
        return cls.rational(1, conductor)

    @classmethod
    def root_of_unity(cls, m: int, exponent: int = 1) -> "CycNum":
        """Return zeta_m ** exponent."""
        return cls.from_exponent_counts(m, {exponent % m: 1})

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Mapping[int, Rational]) -> "CycNum":
        """Build sum counts[e] * zeta_m**e in one reduction pass."""
        by_exponent = [Fraction(0)] * m
        for exponent, count in counts.items():
            by_exponent[exponent % m] += Fraction(count)
        return cls(m, _reduce(by_exponent, m))

    @classmethod
    def gaussian(cls, real: Rational, imag: Rational) -> "CycNum":
        """Return real + imag * i inside Q(zeta_4)."""
        return cls(4, (Fraction(real), Fraction(imag)))

    # -- structure ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def lift(self, conductor: int) -> "CycNum":
        """Rewrite the element inside Q(zeta_conductor); the conductor must be a multiple."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ArithmeticDomainError(
                f"cannot lift from Q(zeta_{self.conductor}) to Q(zeta_{conductor})"
            )
        step = conductor // self.conductor
        by_exponent = [Fraction(0)] * conductor
        for index, value in enumerate(self.coeffs):
            if value:
                by_exponent[(index * step) % conductor] += value
        return CycNum(conductor, _reduce(by_exponent, conductor))

    def _unify(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.conductor == other.conductor:
            return self, other
        common = _lcm(self.conductor, other.conductor)
        return self.lift(common), other.lift(common)

    def _coerce(self, other: Union["CycNum", Rational]) -> "CycNum":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(other, self.conductor)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._unify(other)
        return CycNum(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.conductor, tuple(c * other for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._unify(other)
        m = a.conductor
        product = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    product[i + j] += x * y
        by_exponent = [Fraction(0)] * m
        for index, value in enumerate(product):
            if value:
                by_exponent[index % m] += value
        return CycNum(m, _reduce(by_exponent, m))

    __rmul__ = __mul__

    def galois(self, a: int) -> "CycNum":
        """Apply sigma_a: zeta_m -> zeta_m ** a (a coprime to m)."""
        m = self.conductor
        if gcd(a, m) != 1:
            raise ArithmeticDomainError(f"sigma_{a} is not an automorphism of Q(zeta_{m})")
        by_exponent = [Fraction(0)] * m
        for index, value in enumerate(self.coeffs):
            if value:
                by_exponent[(index * a) % m] += value
        return CycNum(m, _reduce(by_exponent, m))

    def conjugate(self) -> "CycNum":
        return self.galois(-1 % self.conductor if self.conductor > 1 else 1)

    def norm(self) -> Fraction:
        """Absolute norm to Q."""
        product = CycNum.one(self.conductor)
        for a in _unit_residues(self.conductor):
            product = product * self.galois(a)
        return product.coeffs[0]

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ArithmeticDomainError("inversion of zero in a cyclotomic field")
        cofactor = CycNum.one(self.conductor)
        for a in _unit_residues(self.conductor):
            if a % self.conductor != 1 % self.conductor:
                cofactor = cofactor * self.galois(a)
        norm = (self * cofactor).coeffs[0]
        return cofactor * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ArithmeticDomainError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int) -> "CycNum":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNum.one(self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        reduced = self.minimal()
        return hash((reduced.conductor, reduced.coeffs))

    # -- descent and embeddings -----------------------------------------
    def descend(self, conductor: int) -> Optional["CycNum"]:
        """Return the same element written in Q(zeta_conductor), or None if it does not lie there."""
        if self.conductor % conductor:
            return None
        if conductor == self.conductor:
            return self
        columns = [CycNum.root_of_unity(conductor, j).lift(self.conductor).coeffs for j in range(euler_phi(conductor))]
        solution = _solve_exact(columns, self.coeffs)
        if solution is None:
            return None
        return CycNum(conductor, solution)

    def minimal(self) -> "CycNum":
        """Rewrite the element in the smallest cyclotomic field containing it."""
        if self.is_rational():
            return CycNum.rational(self.coeffs[0])
        for divisor in sorted(sympy.divisors(self.conductor)):
            if divisor % 4 == 2:
                continue
            if divisor == self.conductor:
                return self
            found = self.descend(divisor)
            if found is not None:
                return found
        return self

    def to_complex(self, dps: int = 50) -> mpmath.mpc:
        with mpmath.workdps(dps + 10):
            zeta = mpmath.expjpi(mpmath.mpf(2) / self.conductor)
            total = mpmath.mpc(0)
            power = mpmath.mpc(1)
            for value in self.coeffs:
                if value:
                    total += mpmath.mpf(value.numerator) / value.denominator * power
                power *= zeta
        return +total

    def canonical(self) -> str:
        """Stable string form used for fingerprints and regression hashes."""
        reduced = self.minimal()
        body = ",".join(str(c) for c in reduced.coeffs)
        return f"Q(zeta_{reduced.conductor})[{body}]"

    def __repr__(self) -> str:
        terms = []
        for index, value in enumerate(self.coeffs):
            if not value:
                continue
            if index == 0:
                terms.append(str(value))
            else:
                terms.append(f"{value}*z{self.conductor}^{index}")
        return " + ".join(terms) if terms else "0"
