"""Recognition of high-precision complex numbers as elements of cyclotomic fields."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..arith import CycNum, euler_phi
from ..exceptions import RecognitionError
from .afe import ComplexVal

logger = logging.getLogger(__name__)

MIN_SEPARATION_RATIO = mpmath.mpf(10) ** 6
GUARD_DIGITS = 10


@dataclass(frozen=True)
class Recognition:
    value: CycNum
    conductor: int
    relation: tuple[int, ...]
    residual: mpmath.mpf
    separation_ratio: mpmath.mpf

    def as_dict(self) -> dict:
        return {
            "value": self.value.canonical(),
            "conductor": self.conductor,
            "residual": mpmath.nstr(self.residual, 5),
            "separation_ratio": mpmath.nstr(self.separation_ratio, 5),
        }


def _projection(z: mpmath.mpc, theta: mpmath.mpf) -> mpmath.mpf:
    return mpmath.re(z) + theta * mpmath.im(z)


def _relation(z: mpmath.mpc, basis: list[mpmath.mpc], theta, tol, height: int) -> list[int] | None:
    vector = [_projection(z, theta)] + [_projection(b, theta) for b in basis]
    return mpmath.pslq(vector, tol=tol, maxcoeff=height, maxsteps=20000)


def _candidate(relation: list[int], m: int) -> CycNum:
    n0 = relation[0]
    total = CycNum.zero(m)
    for j, n in enumerate(relation[1:]):
        if n:
            total = total + CycNum.root_of_unity(m, j) * Fraction(-n, n0)
    return total.minimal()


def recognize(z: ComplexVal, m: int, height: int = 10 ** 12) -> Recognition:
    """The element of Q(zeta_m) with coefficients of height <= `height` closest to z.

    Two distinct candidates of the found relation's height lie roughly size^-(d+1) apart for degree d,
    so any second candidate is at least that minus the residual away from z. The separation ratio is
    this lower bound on the second-best distance over the residual; it must exceed 10^6.
    """
    digits = z.digits()
    if digits <= GUARD_DIGITS + 5:
        raise RecognitionError(f"value known to {digits} digits; too few for recognition")
    d = euler_phi(m)
    with mpmath.workdps(digits + 10):
        tol = mpmath.mpf(10) ** (-(digits - GUARD_DIGITS))
        basis = [CycNum.root_of_unity(m, j).to_complex(digits + 10) for j in range(d)]
        candidates = []
        for theta in (mpmath.sqrt(2), mpmath.sqrt(3) / 2):
            relation = _relation(z.value, basis, theta, tol, height)
            if relation is None or relation[0] == 0:
                raise RecognitionError(f"no relation of height <= {height} in Q(zeta_{m}) for {mpmath.nstr(z.value, 15)}")
            candidates.append((relation, _candidate(relation, m)))
        (relation, value), (_, other) = candidates
        if value != other:
            raise RecognitionError(f"ambiguous recognition in Q(zeta_{m}): {value} vs {other}")
        residual = abs(value.to_complex(digits + 10) - z.value)
        if residual > 100 * tol:
            raise RecognitionError(f"candidate {value} misses the value by {mpmath.nstr(residual, 5)}")
        size = max(abs(n) for n in relation)
        separation = mpmath.power(size, -(d + 1))
        ratio = (separation - residual) / max(residual, z.error, mpmath.mpf(10) ** (-digits - 5))
    if ratio < MIN_SEPARATION_RATIO:
        raise RecognitionError(
            f"separation ratio {mpmath.nstr(ratio, 5)} below {mpmath.nstr(MIN_SEPARATION_RATIO, 3)}: candidate is not isolated"
        )
    logger.debug("stage=recognize m=%s value=%s separation_ratio=%s", m, value.canonical(), mpmath.nstr(ratio, 5))
    return Recognition(value, m, tuple(int(n) for n in relation), residual, ratio)


def rationalize(z: ComplexVal, m: int, height: int = 10 ** 12) -> CycNum:
    return recognize(z, m, height).value
