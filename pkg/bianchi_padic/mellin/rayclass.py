"""Cl_K(p^inf) at class number one: (O_K tensor Z_p)^x modulo the global units."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from ..arith import PadicEmbedding, PadicNum
from ..exceptions import MellinError
from ..quadfield import ElemK, IdealK

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RayClassStructure:
    embedding: PadicEmbedding
    prime: IdealK
    prime_bar: IdealK

    @property
    def field(self):
        return self.prime.field

    @property
    def p(self) -> int:
        return self.embedding.p

    @cached_property
    def unit_images(self) -> tuple[tuple[PadicNum, PadicNum], ...]:
        """(sigma_1(u), sigma_2(u)) for every global unit u."""
        return tuple(
            (self.embedding.embed_quadratic(u.a, u.b), self.embedding.embed_quadratic_conjugate(u.a, u.b))
            for u in self.field.units
        )

    def check_units(self) -> None:
        """Every unit image has order dividing w in both coordinates."""
        w = self.field.w
        one = PadicNum.from_rational(self.p, 1, self.embedding.precision)
        for u, (first, second) in zip(self.field.units, self.unit_images):
            if not ((first ** w - one).is_zero and (second ** w - one).is_zero):
                raise MellinError(f"image of the unit {u} does not have order dividing {w}")

    def modulus(self, t: int, s: int) -> IdealK:
        return self.prime ** t * self.prime_bar ** s

    def residues(self, t: int, s: int, zero_at: tuple[bool, bool] = (False, False)) -> list[ElemK]:
        """Residues mod p^t pbar^s that are units at every positive exponent; zero_at forces b in p or pbar."""
        modulus = self.modulus(t, s)
        selected = []
        for b in modulus.residues():
            keep = True
            for exponent, prime, forced in ((t, self.prime, zero_at[0]), (s, self.prime_bar, zero_at[1])):
                inside = prime.contains(b)
                if forced and not inside:
                    keep = False
                elif not forced and exponent > 0 and inside:
                    keep = False
            if keep:
                selected.append(b)
        return selected

    def unit_orbits(self, t: int, s: int) -> list[list[ElemK]]:
        """(O_K / p^t pbar^s)^x split into orbits under multiplication by global units."""
        modulus = self.modulus(t, s)
        seen: set[ElemK] = set()
        orbits = []
        for b in self.residues(t, s):
            if b in seen:
                continue
            orbit = []
            for u in self.field.units:
                image = modulus.reduce(u * b)
                if image not in seen:
                    seen.add(image)
                    orbit.append(image)
            orbits.append(orbit)
        return orbits

    def describe(self) -> dict:
        self.check_units()
        return {
            "p": self.p,
            "w": self.field.w,
            "unit_images": [[first.residue(), second.residue()] for first, second in self.unit_images],
        }
