"""Dirichlet coefficients of Hecke characters and of the base-change form."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import sympy

from ..arith import CycNum
from ..exceptions import LValueError
from ..heckechar import HeckeCharacter, lambda_k
from ..quadfield import FieldK, IdealK, ideals_of_norm

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def ideals_with_norm(field: FieldK, n: int) -> tuple[IdealK, ...]:
    return tuple(ideals_of_norm(field, n))


def divisors_of(ideal: IdealK) -> list[IdealK]:
    """Every integral divisor of an ideal."""
    return [b for d in sympy.divisors(ideal.norm) for b in ideals_with_norm(ideal.field, d) if b.divides(ideal)]


@dataclass(frozen=True)
class CoeffStream:
    """c_0..c_cutoff of a Dirichlet series sum c_n n^-s (c_0 unused)."""

    label: str
    values: tuple[CycNum, ...]

    @property
    def cutoff(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> CycNum:
        return self.values[n]

    def is_multiplicative(self, limit: int | None = None) -> bool:
        limit = min(limit or self.cutoff, self.cutoff)
        for m in range(2, limit + 1):
            for n in range(2, limit // m + 1):
                if sympy.gcd(m, n) == 1 and self.values[m * n] != self.values[m] * self.values[n]:
                    return False
        return True


def hecke_stream(chi: HeckeCharacter, cutoff: int) -> CoeffStream:
    """a_n = sum over ideals of norm n of chi(a)."""
    values = [CycNum.zero()]
    for n in range(1, cutoff + 1):
        total = CycNum.zero()
        for ideal in ideals_with_norm(chi.field, n):
            total = total + chi.eval_ideal(ideal)
        values.append(total)
    return CoeffStream(chi.label, tuple(values))


def dirichlet_convolve(first: CoeffStream, second: CoeffStream, label: str = "") -> CoeffStream:
    cutoff = min(first.cutoff, second.cutoff)
    values = [CycNum.zero() for _ in range(cutoff + 1)]
    for m in range(1, cutoff + 1):
        if first.values[m].is_zero():
            continue
        for n in range(1, cutoff // m + 1):
            if second.values[n].is_zero():
                continue
            values[m * n] = values[m * n] + first.values[m] * second.values[n]
    return CoeffStream(label or f"{first.label}*{second.label}", tuple(values))


def bianchi_ideal_coefficient(phi: HeckeCharacter, psi: HeckeCharacter, ideal: IdealK) -> CycNum:
    """c(a, F) psi(a) with c(a, F) = sum over b | a of phi(b) phi^c(a/b)."""
    phi_c = phi.conj()
    twist = psi.eval_ideal(ideal)
    if twist.is_zero():
        return CycNum.zero()
    total = CycNum.zero()
    for b in divisors_of(ideal):
        total = total + phi.eval_ideal(b) * phi_c.eval_ideal(ideal.divide(b))
    return total * twist


@dataclass(frozen=True)
class BianchiCoefficients:
    """The integer-indexed stream of L(F, psi, s) and its two factorizations."""

    stream: CoeffStream
    first_factors: tuple[CoeffStream, CoeffStream]
    second_factors: tuple[CoeffStream, CoeffStream]

    def as_dict(self, limit: int = 10) -> dict:
        return {
            "label": self.stream.label,
            "cutoff": self.stream.cutoff,
            "coefficients": [v.canonical() for v in self.stream.values[1 : limit + 1]],
        }


def coeffs_of_bianchi(phi: HeckeCharacter, psi: HeckeCharacter, cutoff: int) -> BianchiCoefficients:
    """Coefficients of L(F, psi, s) from the ideal convolution, checked against both factorizations."""
    field = phi.field
    phi_c = phi.conj()
    lam = lambda_k(field)
    psi_c = psi.conj()
    first = (hecke_stream(phi_c * psi, cutoff), hecke_stream(phi_c * psi_c * lam, cutoff))
    second = (hecke_stream(phi_c * psi * lam, cutoff), hecke_stream(phi_c * psi_c, cutoff))
    product_first = dirichlet_convolve(*first)
    product_second = dirichlet_convolve(*second)
    values = [CycNum.zero()]
    for n in range(1, cutoff + 1):
        total = CycNum.zero()
        for ideal in ideals_with_norm(field, n):
            total = total + bianchi_ideal_coefficient(phi, psi, ideal)
        values.append(total)
    stream = CoeffStream(f"F*{psi.label}", tuple(values))
    for n in range(1, cutoff + 1):
        if not (stream.values[n] == product_first.values[n] == product_second.values[n]):
            raise LValueError(
                f"factorizations disagree at n={n}: ideal={stream.values[n]} "
                f"first={product_first.values[n]} second={product_second.values[n]}"
            )
    logger.debug("stage=coefficients psi=%s cutoff=%s", psi.label, cutoff)
    return BianchiCoefficients(stream, first, second)


def stream_from_values(label: str, values: Sequence[CycNum]) -> CoeffStream:
    return CoeffStream(label, (CycNum.zero(),) + tuple(values))
