"""The finite group (O_K / f)^x with a fixed basis and discrete logarithms."""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import sympy

from ..exceptions import FieldError
from .field import ElemK, FieldK
from .ideals import IdealK, factor_ideal

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


class ResidueGroup:
    """(O_K/f)^x enumerated by canonical residues, with a basis g_1..g_r of orders n_1..n_r."""

    def __init__(self, field: FieldK, modulus: IdealK) -> None:
        self.field = field
        self.modulus = modulus
        self.primes = tuple(factor_ideal(modulus)) if not modulus.is_unit() else ()
        self.elements: tuple[ElemK, ...] = tuple(x for x in modulus.residues() if self._coprime(x))
        expected = self.euler_phi()
        if len(self.elements) != expected:
            raise FieldError(f"enumerated {len(self.elements)} residues but phi(f) = {expected}")
        self.one = modulus.reduce(field.elem(1, 0))
        self.generators, self.orders, self._log = self._decompose()
        self._exp_table = {vector: element for element, vector in self._log.items()}
        logger.debug(
            "residue group modulus=%s order=%s orders=%s", modulus, len(self.elements), self.orders
        )

    # -- basic arithmetic ---------------------------------------------
    def _coprime(self, x: ElemK) -> bool:
        return not any(prime.contains(x) for prime in self.primes)

    def euler_phi(self) -> int:
        value = Fraction(self.modulus.norm)
        for prime in self.primes:
            value *= 1 - Fraction(1, prime.norm)
        return int(value)

    def mul(self, x: ElemK, y: ElemK) -> ElemK:
        return self.modulus.reduce(x * y)

    def power(self, x: ElemK, n: int) -> ElemK:
        if n < 0:
            return self.inverse(self.power(x, -n))
        result = self.one
        base = self.modulus.reduce(x)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inverse(self, x: ElemK) -> ElemK:
        return self.element(tuple(-e for e in self.log(x)))

    def order_of(self, x: ElemK) -> int:
        x = self.modulus.reduce(x)
        n, y = 1, x
        while y != self.one:
            y = self.mul(y, x)
            n += 1
        return n

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.orders else 1

    def is_unit(self, x: ElemK) -> bool:
        return x.is_integral() and self._coprime(x)

    # -- structure ----------------------------------------------------
    def _decompose(self) -> tuple[tuple[ElemK, ...], tuple[int, ...], dict[ElemK, Vector]]:
        if self.order == 1:
            return (), (), {self.one: ()}
        orders = {x: self.order_of(x) for x in self.elements}
        generators: list[ElemK] = []
        gen_orders: list[int] = []
        table: dict[ElemK, Vector] = {self.one: ()}
        for ell in sorted(sympy.factorint(self.order)):
            sylow = [x for x in self.elements if _is_power_of(orders[x], ell)]
            basis, basis_orders = _sylow_basis(self, sylow)
            generators.extend(basis)
            gen_orders.extend(basis_orders)
            local = _span(self, basis, basis_orders)
            table = {
                self.mul(x, y): vx + vy for x, vx in table.items() for y, vy in local.items()
            }
        if len(table) != self.order:
            raise FieldError(f"basis of (O/{self.modulus})^x spans {len(table)} of {self.order} elements")
        return tuple(generators), tuple(gen_orders), table

    def log(self, x: ElemK) -> Vector:
        """Exponent vector of x on the basis."""
        reduced = self.modulus.reduce(x) if x.is_integral() else None
        if reduced is None or reduced not in self._log:
            raise FieldError(f"{x} is not invertible modulo {self.modulus}")
        return self._log[reduced]

    def element(self, vector: Sequence[int]) -> ElemK:
        normalized = tuple(e % n for e, n in zip(vector, self.orders))
        return self._exp_table[normalized]

    def unit_images(self) -> tuple[Vector, ...]:
        """Discrete logs of the global units zeta_w^k, k = 0..w-1."""
        return tuple(self.log(u) for u in self.field.units)

    def characters(self) -> Iterator[Vector]:
        """All characters, as exponent vectors e with chi(g_i) = zeta_{n_i}^{e_i}."""
        return itertools.product(*(range(n) for n in self.orders))

    def pairing(self, character: Sequence[int], x: ElemK) -> int:
        """Exponent j with chi(x) = zeta_exponent^j."""
        n = self.exponent
        vector = self.log(x)
        return sum(e * v * (n // order) for e, v, order in zip(character, vector, self.orders)) % n

    def __repr__(self) -> str:
        return f"ResidueGroup(modulus={self.modulus}, orders={self.orders})"


def _is_power_of(n: int, ell: int) -> bool:
    while n % ell == 0:
        n //= ell
    return n == 1


def _span(group: ResidueGroup, basis: Sequence[ElemK], orders: Sequence[int]) -> dict[ElemK, Vector]:
    table: dict[ElemK, Vector] = {group.one: ()}
    for g, n in zip(basis, orders):
        powers = [group.power(g, t) for t in range(n)]
        table = {group.mul(x, powers[t]): v + (t,) for x, v in table.items() for t in range(n)}
    return table


def _sylow_basis(group: ResidueGroup, sylow: Sequence[ElemK]) -> tuple[list[ElemK], list[int]]:
    """Greedy basis of an abelian ell-group: repeatedly adjoin an element of maximal order modulo the span."""
    basis: list[ElemK] = []
    orders: list[int] = []
    span = _span(group, basis, orders)
    while len(span) < len(sylow):
        best, best_m = None, 0
        for y in sylow:
            if y in span:
                continue
            m, z = 1, y
            while z not in span:
                z = group.mul(z, y)
                m += 1
            if m > best_m:
                best, best_m = y, m
        landing = span[group.power(best, best_m)]
        correction = group.one
        for g, n, j in zip(basis, orders, landing):
            if j % best_m:
                raise FieldError("greedy basis invariant violated")
            correction = group.mul(correction, group.power(g, (-(j // best_m)) % n))
        basis.append(group.mul(best, correction))
        orders.append(best_m)
        span = _span(group, basis, orders)
    return basis, orders


@lru_cache(maxsize=256)
def residue_group(field: FieldK, modulus: IdealK) -> ResidueGroup:
    return ResidueGroup(field, modulus)
