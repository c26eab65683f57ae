"""The fixed embedding of cyclotomic numbers and of K into Q_p."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from sympy import jacobi_symbol, primitive_root

from ..exceptions import ArithmeticDomainError, EmbeddingError
from .cyclotomic import CycNum
from .padic import PadicNum, hensel_root, p_valuation

logger = logging.getLogger(__name__)


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n) for n >= 1."""
    if n <= 0:
        raise ArithmeticDomainError("kronecker symbol requires a positive lower argument")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        result *= 1 if d % 8 in (1, 7) else -1
    if n == 1:
        return result
    return result * int(jacobi_symbol(d % n, n))


def omega_polynomial(D: int) -> tuple[int, int, int]:
    """Minimal polynomial of the integral basis element omega, lowest degree first."""
    if D % 4 == 0:
        return (D // 4, 0, 1)
    return ((1 + D) // 4, -1, 1)


@dataclass(frozen=True)
class PadicEmbedding:
    """iota_p: the images of omega and of a primitive (p-1)-th root of unity in Z_p."""

    D: int
    p: int
    precision: int
    seed: int
    omega: PadicNum
    zeta: PadicNum
    zeta_exponent: int

    @classmethod
    def build(cls, D: int, p: int, precision: int, seed: Optional[int] = None) -> "PadicEmbedding":
        """Fix iota_p for K = Q(sqrt(-D)) from a seed root of omega's minimal polynomial modulo p."""
        if p == 2 or kronecker(-D, p) != 1:
            raise EmbeddingError(f"p={p} does not split in Q(sqrt(-{D})); only the split path is supported")
        try:
            omega = hensel_root(omega_polynomial(D), p, precision, seed)
        except ArithmeticDomainError as exc:
            raise EmbeddingError(f"invalid seed for iota_{p}: {exc}") from exc
        generator = int(primitive_root(p))
        poly = [-1] + [0] * (p - 2) + [1]
        zeta = hensel_root(poly, p, precision, generator)
        exponent = 1
        if (p - 1) % D == 0:
            sqrt_image = cls._sqrt_minus_d_from_omega(D, omega)
            gauss_image = cls._evaluate(gauss_sqrt(D), zeta, p, precision)
            if not (gauss_image - sqrt_image).is_zero:
                exponent = next(
                    a for a in range(2, p - 1) if gcd(a, p - 1) == 1 and kronecker(-D, a) == -1
                )
                zeta = zeta ** exponent
        logger.debug("iota_%s fixed: omega=%s zeta_%s=%s", p, omega, p - 1, zeta)
        return cls(D=D, p=p, precision=precision, seed=omega.residue() % p, omega=omega, zeta=zeta, zeta_exponent=exponent)

    @staticmethod
    def _sqrt_minus_d_from_omega(D: int, omega: PadicNum) -> PadicNum:
        if D % 4 == 0:
            return omega * 2
        return omega * 2 - 1

    @staticmethod
    def _evaluate(x: CycNum, zeta: PadicNum, p: int, precision: int) -> PadicNum:
        m = x.conductor
        if m == 1:
            return PadicNum.from_rational(p, x.coeffs[0], precision)
        if (p - 1) % m != 0:
            raise EmbeddingError(f"Q(zeta_{m}) does not embed into Q_{p} (requires {m} | {p - 1})")
        denominator = 1
        for c in x.coeffs:
            denominator = denominator * c.denominator // gcd(denominator, c.denominator)
        extra = p_valuation(denominator, p) or 0
        modulus_exp = precision + extra
        modulus = p ** modulus_exp
        root = pow(zeta.residue(), (p - 1) // m, modulus)
        total = 0
        for c in reversed(x.coeffs):
            total = (total * root + int(c * denominator)) % modulus
        return PadicNum.from_residue(p, total, modulus_exp) / PadicNum.from_rational(p, denominator, modulus_exp)

    def embed(self, x: CycNum) -> PadicNum:
        return embed_padic(x, self)

    def embed_quadratic(self, a: Fraction, b: Fraction) -> PadicNum:
        """Image of a + b*omega."""
        return PadicNum.from_rational(self.p, a, self.precision) + self.omega * Fraction(b)

    def embed_quadratic_conjugate(self, a: Fraction, b: Fraction) -> PadicNum:
        """Image of conj(a + b*omega), i.e. the second embedding sigma_2."""
        trace = 0 if self.D % 4 == 0 else 1
        return PadicNum.from_rational(self.p, a + b * trace, self.precision) - self.omega * Fraction(b)

    def describe(self) -> dict:
        return {
            "D": self.D,
            "p": self.p,
            "precision": self.precision,
            "seed": self.seed,
            "omega": self.omega.residue(),
            "zeta_exponent": self.zeta_exponent,
        }


def gauss_sqrt(D: int) -> CycNum:
    """sqrt(-D) as the quadratic Gauss sum in Q(zeta_D)."""
    counts = {a: kronecker(-D, a) for a in range(1, D) if gcd(a, D) == 1}
    return CycNum.from_exponent_counts(D, counts)


def embed_padic(x: CycNum, e: PadicEmbedding) -> PadicNum:
    """Ring homomorphism Q(zeta_m) -> Q_p for m | p - 1, evaluated at the embedding's root of unity."""
    reduced = x.minimal()
    return PadicEmbedding._evaluate(reduced, e.zeta, e.p, e.precision)
