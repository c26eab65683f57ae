"""Hecke operators on classical symbols: U at the primes above p, T at a good split prime."""

from __future__ import annotations

import logging
from typing import Iterable, Optional

import sympy

from ..arith import CycNum
from ..exceptions import SymbolError
from ..quadfield import Cusp, ElemK, FieldK, IdealK, Matrix2, PrimeSplitting, factor_prime, residue_group
from .dualpoly import DualPoly, centered_coefficients, gamma_action
from .inversion import family
from .partial import PartialSymbol

logger = logging.getLogger(__name__)


def coset_representatives(prime: IdealK, shift: Optional[ElemK] = None) -> list[Matrix2]:
    """(1 b; 0 pi) for b over the canonical residues of O/q, optionally all translated by `shift`."""
    field = prime.field
    pi = prime.require_generator()
    residues: Iterable[ElemK] = prime.residues()
    if shift is not None:
        residues = [b + shift * pi for b in residues]
    return [Matrix2.of(field, 1, b, 0, pi) for b in residues]


def hecke_U(symbol: PartialSymbol, prime: IdealK, cusp: Cusp, representatives: Optional[list[Matrix2]] = None) -> DualPoly:
    """(phi|U_q)({a} - {inf}) = sum over gamma_b of phi({gamma_b a} - {inf})|gamma_b."""
    representatives = representatives or coset_representatives(prime)
    total = DualPoly.zero(symbol.k, symbol.k, CycNum.zero())
    for gamma in representatives:
        image = gamma.act(cusp)
        total = total + gamma_action(gamma, symbol.value(image))
    return total


def eigen_check(
    symbol: PartialSymbol, prime: IdealK, eigenvalue: CycNum, cusp: Cusp, representatives: Optional[list[Matrix2]] = None
) -> tuple[DualPoly, DualPoly]:
    """(phi|U_q)({a} - {inf}) against eigenvalue * phi({a} - {inf})."""
    left = hecke_U(symbol, prime, cusp, representatives)
    right = symbol.value(cusp).scale(eigenvalue)
    logger.debug("stage=symbol check=eigen prime=%s cusp=%s equal=%s", prime, cusp, left == right)
    return left, right


def good_prime(field: FieldK, exclude: Iterable[int] = (), bound: int = 200) -> PrimeSplitting:
    """The smallest split rational prime dividing neither the discriminant nor any of `exclude`."""
    excluded = set(exclude)
    for ell in sympy.primerange(2, bound):
        if any(n % ell == 0 for n in excluded | {field.D}):
            continue
        splitting = factor_prime(field, ell)
        if splitting.is_split:
            return splitting
    raise SymbolError(f"no split prime below {bound} outside {sorted(excluded)}")


class GoodPrimeValues:
    """Parallel weight zero symbol values at cusps b / varpi, (varpi) = q a good split prime.

    Inverted over the characters modulo q like the p-power levels. The trivial character's
    sum is fixed by the additive twist: sum over b mod q of c(b / varpi) = (a_q - 1) c(0).
    """

    def __init__(self, symbol: PartialSymbol, prime: IdealK, eigenvalue: CycNum) -> None:
        if symbol.k != 0:
            raise SymbolError(f"T_q values are inverted in weight k = 0 only, not k = {symbol.k}")
        if not prime.coprime_to(symbol.sums.prime * symbol.sums.prime_bar):
            raise SymbolError(f"{prime} lies above p")
        self.symbol = symbol
        self.prime = prime
        self.eigenvalue = eigenvalue
        self.field = prime.field
        self.varpi = prime.require_generator()
        self._values: dict[Cusp, CycNum] = {}

    def twisted_sum(self, psi) -> CycNum:
        primitive = psi.primitive()
        if primitive.modulus.is_unit():
            zero = Cusp.normalized(self.field, self.field.elem(0), self.field.elem(1))
            return (self.eigenvalue - CycNum.rational(2)) * self.symbol.coefficient(zero, 0, 0)
        return self.symbol.sums.primitive_sum(primitive)

    def coefficient(self, cusp: Cusp) -> CycNum:
        denominator = IdealK.principal(self.field, cusp.y)
        if denominator.is_unit():
            return self.symbol.coefficient(cusp, 0, 0)
        if denominator != self.prime:
            raise SymbolError(f"denominator of {cusp} is neither a unit nor a generator of {self.prime}")
        cached = self._values.get(cusp)
        if cached is not None:
            return cached
        total = CycNum.zero()
        for psi in family(self.field, self.prime, 0, 0):
            total = total + self.twisted_sum(psi) / psi.finite_part_at_cusp(cusp.x, cusp.y)
        value = total / residue_group(self.field, self.prime).order
        self._values[cusp] = value
        return value

    def value(self, cusp: Cusp) -> DualPoly:
        return centered_coefficients([[self.coefficient(cusp)]], cusp.value())


def hecke_T(values: GoodPrimeValues, cusp: Cusp) -> DualPoly:
    """(phi|T_q)({a} - {inf}) over (1 b; 0 varpi), b mod q, and (varpi 0; 0 1), for integral a."""
    field = values.field
    if cusp.is_infinity() or not IdealK.principal(field, cusp.y).is_unit():
        raise SymbolError(f"T_q is evaluated at integral cusps only, not {cusp}")
    representatives = coset_representatives(values.prime) + [Matrix2.of(field, values.varpi, 0, 0, 1)]
    total = DualPoly.zero(0, 0, CycNum.zero())
    for gamma in representatives:
        total = total + gamma_action(gamma, values.value(gamma.act(cusp)))
    return total


def hecke_T_check(values: GoodPrimeValues, cusp: Cusp) -> tuple[DualPoly, DualPoly]:
    """(phi|T_q)({a} - {inf}) against a_q * phi({a} - {inf})."""
    left = hecke_T(values, cusp)
    right = values.value(cusp).scale(values.eigenvalue)
    logger.info(
        "stage=symbol check=hecke_T prime=%s a_q=%s equal=%s", values.prime, values.eigenvalue.canonical(), left == right
    )
    return left, right
