"""p-adic avatars of Hecke characters of p-power conductor."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from ..arith import PadicEmbedding, PadicNum
from ..exceptions import CharacterError, EmbeddingError
from ..quadfield import ElemK, IdealK
from .character import HeckeCharacter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AvatarCharacter:
    """psi_{p-fin}(x) = psi_f(x) sigma1(x)^q sigma2(x)^r on (O_K tensor Z_p)^x."""

    source: HeckeCharacter
    embedding: PadicEmbedding
    prime: IdealK
    prime_bar: IdealK

    @property
    def q(self) -> int:
        return self.source.infinity.a

    @property
    def r(self) -> int:
        return self.source.infinity.b

    @cached_property
    def exponents(self) -> tuple[int, int]:
        """Conductor exponents (t, s) at (p, pbar)."""
        return self.source.conductor_exponents([self.prime, self.prime_bar])

    @cached_property
    def primitive(self) -> HeckeCharacter:
        return self.source.primitive()

    def sigma1(self, x: ElemK) -> PadicNum:
        return self.embedding.embed_quadratic(x.a, x.b)

    def sigma2(self, x: ElemK) -> PadicNum:
        return self.embedding.embed_quadratic_conjugate(x.a, x.b)

    def finite_value(self, x: ElemK) -> PadicNum:
        """iota_p(psi_f(x)) for x in O_K coprime to p."""
        primitive = self.primitive
        if primitive.modulus.is_unit():
            return PadicNum.from_rational(self.embedding.p, 1, self.embedding.precision)
        try:
            return self.embedding.embed(primitive.finite_part(x))
        except EmbeddingError as exc:
            raise CharacterError(f"values of {self.source.label} do not embed into Q_{self.embedding.p}: {exc}") from exc

    def __call__(self, x: ElemK) -> PadicNum:
        value = self.finite_value(x)
        if self.q:
            value = value * self.sigma1(x) ** self.q
        if self.r:
            value = value * self.sigma2(x) ** self.r
        return value

    def is_trivial_on_units(self) -> bool:
        one = PadicNum.from_rational(self.embedding.p, 1, self.embedding.precision)
        return all((self(u) - one).is_zero for u in self.source.field.units)

    def describe(self) -> dict:
        t, s = self.exponents
        return {
            "label": self.source.label,
            "t": t,
            "s": s,
            "q": self.q,
            "r": self.r,
            "fingerprint": self.source.fingerprint(),
        }


def p_adic_avatar(
    psi: HeckeCharacter, embedding: PadicEmbedding, prime: IdealK, prime_bar: IdealK
) -> AvatarCharacter:
    """The avatar of psi; psi must have conductor supported above p and embeddable values."""
    conductor = psi.conductor()
    remaining = conductor
    for factor in (prime, prime_bar):
        while not remaining.is_unit() and factor.divides(remaining):
            remaining = remaining.divide(factor)
    if not remaining.is_unit():
        raise CharacterError(f"conductor {conductor} of {psi.label} is not supported above p")
    avatar = AvatarCharacter(psi, embedding, prime, prime_bar)
    if not avatar.is_trivial_on_units():
        raise CharacterError(f"avatar of {psi.label} is not trivial on global units")
    return avatar
