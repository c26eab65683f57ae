"""Algebraic parts of Katz interpolation values and their Euler factor bookkeeping."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm

import mpmath

from ..arith import CycNum, gauss_sqrt
from ..exceptions import CharacterError
from ..heckechar import HeckeCharacter, gauss_sum_Wp
from ..quadfield import FieldK, IdealK
from .afe import ComplexVal, hecke_lvalue
from .lambdas import stabilization_factor
from .recognition import Recognition, recognize

logger = logging.getLogger(__name__)


def target_conductor(field: FieldK, *characters: HeckeCharacter) -> int:
    """Cyclotomic field holding K and the values of the given characters."""
    base = 4 if field.D == 4 else lcm(4, field.D)
    return lcm(base, *(chi.primitive().value_conductor() for chi in characters))


def real_sqrt(D: int) -> CycNum:
    """The positive square root of D inside Q(zeta_lcm(4, D))."""
    candidate = gauss_sqrt(D) * CycNum.root_of_unity(4, 3)
    if mpmath.re(candidate.to_complex(20)) < 0:
        candidate = -candidate
    return candidate.minimal()


def z_factor(beta: CycNum, psi: HeckeCharacter, primes: tuple[IdealK, ...]) -> CycNum:
    """prod of (1 - 1/(beta psi(q))), a factor being 1 where psi(q) = 0."""
    factor = CycNum.one()
    for q in primes:
        value = psi.eval_ideal(q)
        if not value.is_zero():
            factor = factor * (1 - 1 / (beta * value))
    return factor


def katz_euler_factor(chi: HeckeCharacter, prime: IdealK, prime_bar: IdealK) -> CycNum:
    """(1 - chi(pbar)) (1 - 1/(chi(p) N(p))), the second factor 1 when p divides the conductor."""
    factor = 1 - chi.eval_ideal(prime_bar)
    value = chi.eval_ideal(prime)
    if not value.is_zero():
        factor = factor * (1 - 1 / (value * prime.norm))
    return factor


@dataclass(frozen=True)
class KatzValue:
    label: str
    infinity: tuple[int, int]
    t: int
    constant: CycNum
    euler: CycNum
    lvalue: Recognition
    value: CycNum

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "infinity_type": list(self.infinity),
            "t": self.t,
            "constant": self.constant.canonical(),
            "euler": self.euler.canonical(),
            "lvalue": self.lvalue.as_dict(),
            "value": self.value.canonical(),
        }


def katz_rhs(
    chi: HeckeCharacter,
    prime: IdealK,
    prime_bar: IdealK,
    omega_inf: mpmath.mpf,
    digits: int = 50,
    height: int = 10 ** 12,
) -> KatzValue:
    """Gamma(a) sqrt(D)^b W_p(chi) / (2 (-1)^(a+b) w^-1 2^b) * Euler * L(chi, 0)/(pi^b Omega^(a-b))."""
    a, b = chi.infinity.a, chi.infinity.b
    if not (a > 0 >= b):
        raise CharacterError(f"{chi.label} of infinity type ({a}, {b}) is outside the interpolation range a > 0 >= b")
    field = chi.field
    primitive = chi.primitive()
    t = primitive.conductor_exponents([prime])[0]
    constant = CycNum.rational(factorial(a - 1))
    constant = constant * real_sqrt(field.D) ** b * gauss_sum_Wp(primitive, prime)
    constant = constant / (2 * (-1) ** (a + b)) * field.w * Fraction(2) ** (-b)
    euler = katz_euler_factor(primitive, prime, prime_bar)
    raw = hecke_lvalue(chi, 0, digits)
    with mpmath.workdps(digits + 10):
        scale = mpmath.pi ** b * omega_inf ** (a - b)
    recognized = recognize(raw / ComplexVal.exact(scale), target_conductor(field, chi), height)
    value = constant * euler * recognized.value
    logger.debug("stage=katz chi=%s t=%s value=%s", chi.label, t, value.canonical())
    return KatzValue(chi.label, (a, b), t, constant, euler, recognized, value.minimal())


def euler_cancellation(
    phi: HeckeCharacter, psi: HeckeCharacter, eta: HeckeCharacter, eta_prime: HeckeCharacter,
    prime: IdealK, prime_bar: IdealK,
) -> tuple[CycNum, CycNum]:
    """E_p = prod (1 - phi(p) psi(q)/N(q)) (1 - 1/(phi(pbar) psi(q))) against the two Katz Euler factors."""
    beta = phi.eval_ideal(prime_bar)
    left = stabilization_factor(phi, psi, prime, prime_bar) * z_factor(beta, psi, (prime, prime_bar))
    right = katz_euler_factor(eta.primitive(), prime, prime_bar) * katz_euler_factor(eta_prime.primitive(), prime, prime_bar)
    return left, right
