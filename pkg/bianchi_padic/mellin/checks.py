"""Interpolation and Katz factorization checks at finite-order characters."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

import mpmath

from ..arith import CycNum, embed_padic
from ..exceptions import CharacterError, EmbeddingError
from ..heckechar import AvatarCharacter, HeckeCharacter, gauss_product_identity, local_component_value
from ..lfun import euler_cancellation, factor_characters, katz_rhs, z_factor
from ..lift import LiftResult
from ..symbols import TwistedSums
from .transform import PadicLValue, mellin_eval

logger = logging.getLogger(__name__)


@dataclass
class VerificationRecord:
    kind: str
    label: str
    fingerprint: str
    t: int
    s: int
    q: int
    r: int
    lhs: str = ""
    rhs: str = ""
    rhs_exact: str = ""
    valuation: Optional[int] = None
    precision: Optional[int] = None
    required: Optional[int] = None
    ok: bool = False
    skipped: Optional[str] = None
    extra: dict = dataclass_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "fingerprint": self.fingerprint,
            "t": self.t,
            "s": self.s,
            "q": self.q,
            "r": self.r,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rhs_exact": self.rhs_exact,
            "valuation": self.valuation,
            "precision": self.precision,
            "required": self.required,
            "ok": self.ok,
            "skipped": self.skipped,
            "extra": dict(self.extra),
        }


def _record(kind: str, avatar: AvatarCharacter) -> VerificationRecord:
    t, s = avatar.exponents
    return VerificationRecord(kind, avatar.source.label, avatar.source.fingerprint(), t, s, avatar.q, avatar.r)


def _compare(record: VerificationRecord, lhs: PadicLValue, rhs: CycNum, avatar: AvatarCharacter, required: int) -> None:
    image = embed_padic(rhs, avatar.embedding)
    diff = lhs.value - image
    record.lhs = repr(lhs.value)
    record.rhs = repr(image)
    record.rhs_exact = rhs.canonical()
    record.valuation = diff.valuation
    record.precision = lhs.precision
    record.required = required
    record.ok = diff.valuation >= required


def interpolation_rhs(sums: TwistedSums, psi: HeckeCharacter) -> CycNum:
    """Z(psi) S(psi) / beta^(t+s) with S(psi) = D w W(psi) / ((-1)^(k+q+r) 2) Lambda(F^p, psi)/Omega_norm."""
    primitive = psi.primitive()
    t, s = primitive.conductor_exponents([sums.prime, sums.prime_bar])
    total = sums.primitive_sum(primitive) * z_factor(sums.beta, primitive, (sums.prime, sums.prime_bar))
    return (total / sums.beta ** (t + s)).minimal()


def interpolation_check(
    result: LiftResult, avatar: AvatarCharacter, sums: TwistedSums, required: Optional[int] = None
) -> VerificationRecord:
    record = _record("interpolation", avatar)
    required = result.N - 2 if required is None else required
    try:
        lhs = mellin_eval(result, avatar)
        rhs = interpolation_rhs(sums, avatar.source)
        _compare(record, lhs, rhs, avatar, required)
    except (CharacterError, EmbeddingError) as exc:
        record.skipped = exc.message
    logger.info(
        "stage=verify check=interpolation psi=%s t=%s s=%s valuation=%s required=%s ok=%s",
        record.label,
        record.t,
        record.s,
        record.valuation,
        required,
        record.ok,
    )
    return record


def katz_check(
    result: LiftResult,
    avatar: AvatarCharacter,
    phi: HeckeCharacter,
    beta: CycNum,
    omega_inf: mpmath.mpf,
    digits: int = 50,
    height: int = 10 ** 12,
    required: Optional[int] = None,
) -> VerificationRecord:
    """mellin(psi) = psi_pbar(-1) katz(eta) katz(eta') with eta = phi^c psi |.| and eta' = phi^c psi^c lambda_K |.|."""
    record = _record("katz", avatar)
    required = result.N - 2 if required is None else required
    prime, prime_bar = avatar.prime, avatar.prime_bar
    psi = avatar.source.primitive()
    first, second = factor_characters(phi, psi)
    eta, eta_prime = first.norm_twist(1), second.norm_twist(1)

    left, right = gauss_product_identity(psi, eta, eta_prime, prime, prime_bar, beta)
    record.extra["gauss_identity"] = left == right
    euler_left, euler_right = euler_cancellation(phi, psi, eta, eta_prime, prime, prime_bar)
    record.extra["euler_cancellation"] = euler_left == euler_right
    try:
        sign = local_component_value(psi, prime_bar, psi.field.elem(-1))
        values = [katz_rhs(chi, prime, prime_bar, omega_inf, digits, height) for chi in (eta, eta_prime)]
        record.extra["katz"] = [value.as_dict() for value in values]
        rhs = (sign * values[0].value * values[1].value).minimal()
        _compare(record, mellin_eval(result, avatar), rhs, avatar, required)
        record.ok = record.ok and record.extra["gauss_identity"] and record.extra["euler_cancellation"]
    except (CharacterError, EmbeddingError) as exc:
        record.skipped = exc.message
    logger.info(
        "stage=verify check=katz psi=%s valuation=%s gauss=%s euler=%s ok=%s",
        record.label,
        record.valuation,
        record.extra["gauss_identity"],
        record.extra["euler_cancellation"],
        record.ok,
    )
    return record
