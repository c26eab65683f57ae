"""Classical symbol coefficients from twisted critical values by character orthogonality.

For a cusp a = d / gamma with (gamma) = p^t pbar^s, the twisted sums

    S_f(psi) = sum over d in (O/f)^x of psi_f(d / gamma) c_{q,r}(d / gamma)

are known from L-values for every unit-compatible psi modulo f of infinity type (q, r), and
c_{q,r}(d / gamma) = |(O/f)^x|^-1 sum over psi of psi_f(d / gamma)^-1 S_f(psi).
"""

from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath

from ..arith import CycNum
from ..exceptions import SymbolError
from ..heckechar import HeckeCharacter, InfinityType, character_family, gauss_sum_W
from ..lfun import ComplexVal, Periods, Recognition, recognize, stabilized_lambda, target_conductor
from ..quadfield import Cusp, FieldK, IdealK, factor_ideal, residue_group

logger = logging.getLogger(__name__)


def level_of(cusp: Cusp, prime: IdealK, prime_bar: IdealK) -> tuple[int, int]:
    """(t, s) with (y) = p^t pbar^s for the denominator y of a finite cusp."""
    if cusp.is_infinity():
        raise SymbolError("the cusp at infinity has no level")
    denominator = IdealK.principal(cusp.field, cusp.y)
    if denominator.is_unit():
        return 0, 0
    factors = factor_ideal(denominator)
    extra = [q for q in factors if q not in (prime, prime_bar)]
    if extra:
        raise SymbolError(f"denominator of {cusp} is not supported above p")
    return factors.get(prime, 0), factors.get(prime_bar, 0)


def level_modulus(prime: IdealK, prime_bar: IdealK, t: int, s: int) -> IdealK:
    return prime ** t * prime_bar ** s


@lru_cache(maxsize=None)
def family(field: FieldK, modulus: IdealK, q: int, r: int) -> tuple[HeckeCharacter, ...]:
    """Unit-compatible characters modulo `modulus` of infinity type (q, r)."""
    return tuple(character_family(field, modulus, InfinityType(q, r), label=f"psi[{modulus.norm}]"))


class TwistedSums(ABC):
    """S_f(psi) for every character of a family, with imprimitive members reduced to primitive sums."""

    def __init__(self, beta: CycNum, prime: IdealK, prime_bar: IdealK) -> None:
        self.beta = beta
        self.prime = prime
        self.prime_bar = prime_bar

    @abstractmethod
    def primitive_sum(self, psi: HeckeCharacter) -> CycNum:
        """S(psi) for primitive psi of conductor p^t' pbar^s'."""

    def twisted_sum(self, psi: HeckeCharacter, t: int, s: int) -> CycNum:
        primitive = psi.primitive()
        t0, s0 = primitive.conductor_exponents([self.prime, self.prime_bar])
        if t0 > t or s0 > s:
            raise SymbolError(f"conductor of {psi.label} exceeds level ({t}, {s})")
        value = self.primitive_sum(primitive) * self.beta ** ((t - t0) + (s - s0))
        for q, e, e0 in ((self.prime, t, t0), (self.prime_bar, s, s0)):
            if e > 0 and e0 == 0:
                value = value * (1 - 1 / (self.beta * primitive.eval_ideal(q)))
        return value


class TableSums(TwistedSums):
    """Primitive sums looked up by character fingerprint; missing entries are zero."""

    def __init__(self, beta: CycNum, prime: IdealK, prime_bar: IdealK, table: dict[str, CycNum]) -> None:
        super().__init__(beta, prime, prime_bar)
        self.table = dict(table)

    def primitive_sum(self, psi: HeckeCharacter) -> CycNum:
        return self.table.get(psi.fingerprint(), CycNum.zero())


@dataclass
class LValueRecord:
    label: str
    fingerprint: str
    exponents: tuple[int, int]
    infinity: tuple[int, int]
    normalized: CycNum
    gauss_sum: CycNum
    twisted_sum: CycNum
    recognition: Optional[Recognition] = None

    def as_dict(self) -> dict:
        record = {
            "label": self.label,
            "fingerprint": self.fingerprint,
            "t": self.exponents[0],
            "s": self.exponents[1],
            "q": self.infinity[0],
            "r": self.infinity[1],
            "lambda_over_omega": self.normalized.canonical(),
            "gauss_sum": self.gauss_sum.canonical(),
            "twisted_sum": self.twisted_sum.canonical(),
        }
        if self.recognition is not None:
            record["separation_ratio"] = mpmath.nstr(self.recognition.separation_ratio, 5)
        return record


class LValueSums(TwistedSums):
    """S(psi) = D w W(psi) / ((-1)^(k+q+r) 2) * Lambda(F^p, psi) / Omega_norm, with recognition."""

    def __init__(
        self,
        phi: HeckeCharacter,
        beta: CycNum,
        prime: IdealK,
        prime_bar: IdealK,
        periods: Periods,
        digits: int = 50,
        height: int = 10 ** 12,
        cache=None,
    ) -> None:
        super().__init__(beta, prime, prime_bar)
        self.phi = phi
        self.field = phi.field
        self.periods = periods
        self.digits = digits
        self.height = height
        self.cache = cache
        self.records: dict[str, LValueRecord] = {}
        self._lock = threading.Lock()

    def _cache_key(self, psi: HeckeCharacter) -> dict:
        return {
            "kind": "lambda_over_omega",
            "phi": self.phi.fingerprint(),
            "psi": psi.fingerprint(),
            "p": self.prime.norm,
            "alpha": self.phi.eval_ideal(self.prime).canonical(),
            "curve": list(self.periods.curve),
            "digits": self.digits,
        }

    def normalized_lambda(self, psi: HeckeCharacter) -> tuple[CycNum, Optional[Recognition]]:
        """Lambda(F^p, psi) / Omega_norm recognized in the cyclotomic field of psi."""
        key = self._cache_key(psi)
        if self.cache is not None:
            stored = self.cache.get_number(key)
            if stored is not None:
                return stored, None
        value = stabilized_lambda(self.phi, psi, self.prime, self.prime_bar, self.digits)
        value = value / ComplexVal.exact(self.periods.omega_norm)
        recognition = recognize(value, target_conductor(self.field, psi, self.phi), self.height)
        if self.cache is not None:
            self.cache.put_number(key, recognition.value)
        return recognition.value, recognition

    def primitive_sum(self, psi: HeckeCharacter) -> CycNum:
        fingerprint = psi.fingerprint()
        record = self.records.get(fingerprint)
        if record is not None:
            return record.twisted_sum
        k = -self.phi.infinity.a - self.phi.infinity.b - 1
        q, r = psi.infinity.a, psi.infinity.b
        normalized, recognition = self.normalized_lambda(psi)
        gauss = gauss_sum_W(psi)
        constant = Fraction(self.field.D * self.field.w, 2 * (-1) ** (k + q + r))
        total = gauss * normalized * constant
        record = LValueRecord(
            psi.label,
            fingerprint,
            psi.conductor_exponents([self.prime, self.prime_bar]),
            (q, r),
            normalized,
            gauss,
            total,
            recognition,
        )
        with self._lock:
            self.records.setdefault(fingerprint, record)
        logger.info("stage=symbol psi=%s t=%s s=%s value=%s", psi.label, *record.exponents, normalized.canonical())
        return total


def symbol_coefficient(sums: TwistedSums, cusp: Cusp, q: int, r: int) -> CycNum:
    """c_{q,r}(a) at a finite cusp a = x / y of p-power denominator."""
    field = cusp.field
    t, s = level_of(cusp, sums.prime, sums.prime_bar)
    modulus = level_modulus(sums.prime, sums.prime_bar, t, s)
    group = residue_group(field, modulus)
    total = CycNum.zero()
    for psi in family(field, modulus, q, r):
        weight = psi.finite_part_at_cusp(cusp.x, cusp.y)
        total = total + sums.twisted_sum(psi, t, s) / weight
    return total / group.order
