"""Partial Bianchi modular symbols built from twisted critical values."""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from ..arith import CycNum
from ..exceptions import SymbolError
from ..quadfield import Cusp, IdealK, cusp_in_C, residue_group
from .divisors import CuspDivisor
from .dualpoly import DualPoly, centered_coefficients
from .inversion import TwistedSums, family, level_modulus, symbol_coefficient

logger = logging.getLogger(__name__)


@dataclass
class ForwardCheck:
    """Round trip of the inversion at one level: recomputed sums against the inputs."""

    t: int
    s: int
    q: int
    r: int
    characters: int = 0
    mismatches: list[str] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "q": self.q,
            "r": self.r,
            "characters": self.characters,
            "mismatches": list(self.mismatches),
            "ok": self.ok,
        }


class PartialSymbol:
    """The period-normalized classical symbol: {a} - {inf} maps to the functional with centered coefficients c_{q,r}(a)."""

    def __init__(self, sums: TwistedSums, k: int, level: Optional[IdealK] = None) -> None:
        self.sums = sums
        self.k = k
        self.level = level
        self._values: dict[tuple[Cusp, int, int], CycNum] = {}
        self._lock = threading.Lock()

    @property
    def field(self):
        return self.sums.prime.field

    def coefficient(self, cusp: Cusp, q: int, r: int) -> CycNum:
        key = (cusp, q, r)
        cached = self._values.get(key)
        if cached is not None:
            return cached
        if self.level is not None and not cusp_in_C(self.field, self.level, cusp):
            raise SymbolError(f"{cusp} is not in the cusp set C")
        value = symbol_coefficient(self.sums, cusp, q, r)
        with self._lock:
            self._values.setdefault(key, value)
        return value

    def value(self, cusp: Cusp) -> DualPoly:
        """The symbol at {cusp} - {inf}."""
        if cusp.is_infinity():
            return DualPoly.zero(self.k, self.k, CycNum.zero())
        rows = [[self.coefficient(cusp, q, r) for r in range(self.k + 1)] for q in range(self.k + 1)]
        return centered_coefficients(rows, cusp.value())

    def evaluate(self, divisor: CuspDivisor) -> DualPoly:
        total = DualPoly.zero(self.k, self.k, CycNum.zero())
        for cusp, n in divisor.finite_cusps():
            total = total + self.value(cusp).scale(n)
        return total

    def forward_check(self, t: int, s: int, q: int = 0, r: int = 0) -> ForwardCheck:
        """sum over d in (O/f)^x of psi_f(d/gamma) c_{q,r}(d/gamma) must reproduce every S_f(psi)."""
        field = self.field
        modulus = level_modulus(self.sums.prime, self.sums.prime_bar, t, s)
        gamma = modulus.require_generator()
        group = residue_group(field, modulus)
        cusps = [(d, Cusp.normalized(field, d, gamma)) for d in group.elements]
        report = ForwardCheck(t, s, q, r)
        for psi in family(field, modulus, q, r):
            report.characters += 1
            total = CycNum.zero()
            for d, cusp in cusps:
                total = total + psi.finite_part_at_cusp(d, gamma) * self.coefficient(cusp, q, r)
            expected = self.sums.twisted_sum(psi, t, s)
            if total != expected:
                report.mismatches.append(f"{psi.label}: {total} != {expected}")
        logger.info(
            "stage=symbol check=forward t=%s s=%s characters=%s ok=%s", t, s, report.characters, report.ok
        )
        return report

    def unit_relation(self, cusp: Cusp, u, q: int = 0, r: int = 0) -> tuple[CycNum, CycNum]:
        """c_{q,r}(u a) against u^q conj(u)^r c_{q,r}(a)."""
        moved = Cusp.normalized(self.field, u * cusp.x, cusp.y)
        expected = (u ** q).to_cyc() * (u.conj() ** r).to_cyc() * self.coefficient(cusp, q, r)
        return self.coefficient(moved, q, r), expected
