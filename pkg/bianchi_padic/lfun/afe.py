"""Hecke L-values by the incomplete-gamma smoothed approximate functional equation."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

from ..arith import kronecker
from ..exceptions import LValueError, PrecisionError
from ..heckechar import HeckeCharacter
from ..quadfield import factor_ideal
from .coefficients import ideals_with_norm

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction, mpmath.mpf, mpmath.mpc]


def _mp(value: Number) -> mpmath.mpc:
    if isinstance(value, Fraction):
        return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)
    return mpmath.mpc(value)


@dataclass(frozen=True)
class ComplexVal:
    """A complex number with a propagated absolute error bound."""

    value: mpmath.mpc
    error: mpmath.mpf

    @classmethod
    def exact(cls, value: Number) -> "ComplexVal":
        return cls(_mp(value), mpmath.mpf(0))

    def _coerce(self, other) -> "ComplexVal":
        return other if isinstance(other, ComplexVal) else ComplexVal.exact(other)

    def __add__(self, other) -> "ComplexVal":
        other = self._coerce(other)
        return ComplexVal(self.value + other.value, self.error + other.error)

    __radd__ = __add__

    def __sub__(self, other) -> "ComplexVal":
        other = self._coerce(other)
        return ComplexVal(self.value - other.value, self.error + other.error)

    def __neg__(self) -> "ComplexVal":
        return ComplexVal(-self.value, self.error)

    def __mul__(self, other) -> "ComplexVal":
        other = self._coerce(other)
        error = abs(self.value) * other.error + abs(other.value) * self.error + self.error * other.error
        return ComplexVal(self.value * other.value, error)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ComplexVal":
        other = self._coerce(other)
        denominator = abs(other.value) - other.error
        if denominator <= 0:
            raise LValueError("division by a value indistinguishable from zero")
        quotient = self.value / other.value
        error = (self.error + abs(quotient) * other.error) / denominator
        return ComplexVal(quotient, error)

    def conjugate(self) -> "ComplexVal":
        return ComplexVal(mpmath.conj(self.value), self.error)

    def is_nonzero(self) -> bool:
        return abs(self.value) > 2 * self.error

    def digits(self) -> int:
        """Correct decimal digits relative to the magnitude."""
        if self.error == 0:
            return mpmath.mp.dps
        magnitude = max(abs(self.value), mpmath.mpf(10) ** -mpmath.mp.dps)
        return int(mpmath.floor(-mpmath.log10(self.error / magnitude)))

    def as_dict(self, digits: int = 30) -> dict:
        return {
            "re": mpmath.nstr(self.value.real, digits),
            "im": mpmath.nstr(self.value.imag, digits),
            "error": mpmath.nstr(self.error, 5),
        }


@dataclass(frozen=True)
class AFEData:
    """Analytic data of a primitive unitary Hecke character."""

    A: mpmath.mpf
    kappa: mpmath.mpf
    shift: Fraction
    coefficients: tuple[mpmath.mpc, ...]
    root_number: mpmath.mpc


def _unitary_coefficients(chi: HeckeCharacter, cutoff: int, dps: int) -> list[mpmath.mpc]:
    shift = Fraction(chi.infinity.a + chi.infinity.b, 2)
    values = [mpmath.mpc(0)]
    with mpmath.workdps(dps + 10):
        for n in range(1, cutoff + 1):
            total = mpmath.mpc(0)
            for ideal in ideals_with_norm(chi.field, n):
                total += chi.eval_ideal_complex(ideal, dps)
            if total != 0 and shift:
                total *= mpmath.power(n, mpmath.mpf(shift.numerator) / shift.denominator)
            values.append(total)
    return values


def _smoothed(coefficients, A, kappa, s, t, dual: bool) -> mpmath.mpc:
    total = mpmath.mpc(0)
    for n in range(1, len(coefficients)):
        a_n = coefficients[n]
        if a_n == 0:
            continue
        if dual:
            total += mpmath.conj(a_n) * mpmath.power(A / n, 1 - s) * mpmath.gammainc(1 - s + kappa, n / (t * A))
        else:
            total += a_n * mpmath.power(A / n, s) * mpmath.gammainc(s + kappa, n * t / A)
    return total


def _cutoff_for(A: mpmath.mpf, digits: int) -> int:
    return int(mpmath.ceil(mpmath.mpf("1.25") * A * ((digits + 10) * mpmath.log(10) + 10))) + 10


def afe_data(chi: HeckeCharacter, digits: int) -> AFEData:
    """Conductor, gamma shift, coefficients and the numerically solved root number of primitive chi."""
    field = chi.field
    dps = digits + 15
    with mpmath.workdps(dps):
        A = mpmath.sqrt(mpmath.mpf(field.D) * chi.modulus.norm) / (2 * mpmath.pi)
        kappa = mpmath.mpf(abs(chi.infinity.a - chi.infinity.b)) / 2
        cutoff = _cutoff_for(A, digits)
        coefficients = _unitary_coefficients(chi, cutoff, dps)
        s_test = mpmath.mpc("0.3", "0.2")
        t1, t2 = mpmath.mpf(1), mpmath.mpf(6) / 5
        direct = _smoothed(coefficients, A, kappa, s_test, t1, False) - _smoothed(coefficients, A, kappa, s_test, t2, False)
        dual = _smoothed(coefficients, A, kappa, s_test, t2, True) - _smoothed(coefficients, A, kappa, s_test, t1, True)
        if abs(dual) < mpmath.mpf(10) ** (-digits):
            raise LValueError(f"root number of {chi.label} cannot be resolved at the test point")
        root = direct / dual
        if abs(abs(root) - 1) > mpmath.mpf(10) ** (-(digits // 2)):
            raise LValueError(f"root number of {chi.label} has modulus {mpmath.nstr(abs(root), 10)}, expected 1")
    logger.debug("stage=afe chi=%s A=%s cutoff=%s W=%s", chi.label, mpmath.nstr(A, 8), cutoff, mpmath.nstr(root, 12))
    return AFEData(A, kappa, Fraction(chi.infinity.a + chi.infinity.b, 2), tuple(coefficients), root)


def _dedekind_lvalue(chi: HeckeCharacter, s0: mpmath.mpc, digits: int) -> ComplexVal:
    """zeta_K(s + a) = zeta(s + a) L(chi_{-D}, s + a) for the norm powers of conductor one."""
    D = chi.field.D
    s = s0 + chi.infinity.a
    if abs(s - 1) < mpmath.mpf(10) ** (-digits):
        raise LValueError("the Dedekind zeta function has a pole at s = 1")
    table = [kronecker(-D, n) if n else 0 for n in range(D)]
    value = mpmath.zeta(s) * mpmath.dirichlet(s, table)
    return ComplexVal(mpmath.mpc(value), mpmath.mpf(10) ** (-digits - 5))


def hecke_lvalue(chi: HeckeCharacter, s0: Number, digits: int = 50) -> ComplexVal:
    """L(chi, s0) for chi of any infinity type, as sum over ideals chi(a) N(a)^-s."""
    primitive = chi.primitive()
    with mpmath.workdps(digits + 15):
        s0 = _mp(s0)
        if primitive.modulus.is_unit() and primitive.infinity.a == primitive.infinity.b:
            value = _dedekind_lvalue(primitive, s0, digits)
        else:
            data = afe_data(primitive, digits)
            s = s0 + mpmath.mpf(data.shift.numerator) / data.shift.denominator
            lam = []
            for t in (mpmath.mpf(1), mpmath.mpf(6) / 5):
                lam.append(
                    _smoothed(data.coefficients, data.A, data.kappa, s, t, False)
                    + data.root_number * _smoothed(data.coefficients, data.A, data.kappa, s, t, True)
                )
            gamma_factor = mpmath.power(data.A, s) * mpmath.gamma(s + data.kappa)
            error = abs(lam[0] - lam[1]) / abs(gamma_factor) + mpmath.mpf(10) ** (-digits - 2)
            value = ComplexVal(lam[0] / gamma_factor, error)
        value = value * _missing_euler_factors(chi, primitive, s0, digits)
    if value.error > mpmath.mpf(10) ** (-digits + 5) * max(1, abs(value.value)):
        raise PrecisionError(
            f"L({chi.label}, {mpmath.nstr(s0, 6)}) reached only error {mpmath.nstr(value.error, 5)}"
        )
    return value


def _missing_euler_factors(chi: HeckeCharacter, primitive: HeckeCharacter, s0, digits: int) -> ComplexVal:
    """prod over primes dividing the modulus but not the conductor of (1 - chi'(q) N(q)^-s)."""
    if chi.modulus == primitive.modulus:
        return ComplexVal.exact(1)
    factor = mpmath.mpc(1)
    for prime in factor_ideal(chi.modulus):
        if primitive.modulus.is_unit() or not prime.divides(primitive.modulus):
            value = primitive.eval_ideal_complex(prime, digits + 10)
            factor *= 1 - value * mpmath.power(prime.norm, -s0)
    return ComplexVal.exact(factor)


def brute_force_lvalue(chi: HeckeCharacter, s0: Number, cutoff: int, digits: int = 30) -> ComplexVal:
    """Truncated Dirichlet sum with a crude tail bound; only meaningful well inside the convergence region."""
    with mpmath.workdps(digits + 10):
        s0 = _mp(s0)
        sigma = s0.real + mpmath.mpf(chi.infinity.a + chi.infinity.b) / 2
        if sigma <= 1:
            raise LValueError("brute force sum requires absolute convergence")
        total = mpmath.mpc(0)
        for n in range(1, cutoff + 1):
            for ideal in ideals_with_norm(chi.field, n):
                value = chi.eval_ideal_complex(ideal, digits)
                if value != 0:
                    total += value * mpmath.power(n, -s0)
        X = mpmath.mpf(cutoff)
        tail = 2 * mpmath.power(X, 1 - sigma) * (1 + mpmath.log(X)) / (sigma - 1)
    return ComplexVal(total, tail)


def reflection_pair(chi: HeckeCharacter, s0: Number, digits: int = 30) -> tuple[ComplexVal, ComplexVal]:
    """L(chi, conj(s0)) and conj(L(chi_bar, s0)); chi_bar has conjugate values."""
    conjugate = _conjugate_character(chi)
    s0 = _mp(s0)
    first = hecke_lvalue(chi, mpmath.conj(s0), digits)
    second = hecke_lvalue(conjugate, s0, digits).conjugate()
    return first, second


def _conjugate_character(chi: HeckeCharacter) -> HeckeCharacter:
    """The character with complex-conjugate values: (conj eps) with swapped infinity type, seen on conj ideals."""
    return HeckeCharacter(
        chi.field,
        chi.modulus,
        chi.infinity.swapped(),
        tuple((-ph) % 1 for ph in chi.phases),
        label=f"conj({chi.label})",
    )
