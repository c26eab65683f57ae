"""Periods of the CM elliptic curve and the two period normalizations of the base-change form."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from ..arith import CycNum
from ..exceptions import LValueError
from ..quadfield import FieldK

logger = logging.getLogger(__name__)

DEFAULT_CURVES = {4: (-1, 0), 3: (0, 1)}


@dataclass(frozen=True)
class Periods:
    """Omega_inf of y^2 = x^3 + a x + b together with Omega_F and Omega_norm for weight k."""

    curve: tuple[int, int]
    k: int
    omega_inf: mpmath.mpf
    omega_F: mpmath.mpc
    omega_norm: mpmath.mpc

    def ratio(self, field: FieldK) -> CycNum:
        """Omega_norm / Omega_F as an exact number."""
        return normalization_constant(field, self.k)

    def as_dict(self, digits: int = 20) -> dict:
        return {
            "curve": list(self.curve),
            "k": self.k,
            "omega_inf": mpmath.nstr(self.omega_inf, digits),
            "omega_F": mpmath.nstr(self.omega_F, digits),
            "omega_norm": mpmath.nstr(self.omega_norm, digits),
        }


def _largest_real_root(a: int, b: int) -> mpmath.mpf:
    roots = mpmath.polyroots([1, 0, a, b], maxsteps=200, extraprec=60)
    real = [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-mpmath.mp.dps // 2)]
    if not real:
        raise LValueError(f"x^3 + {a}x + {b} has no real root")
    return max(real)


def real_period(a: int, b: int, digits: int = 50) -> mpmath.mpf:
    """Omega_inf = 4 pi / AGM(2 sqrt(H), sqrt(2H + 3 e1)), H = sqrt(3 e1^2 + a), e1 the largest real root."""
    if 4 * a ** 3 + 27 * b ** 2 == 0:
        raise LValueError(f"y^2 = x^3 + {a}x + {b} is singular")
    with mpmath.workdps(digits + 15):
        e1 = _largest_real_root(a, b)
        H = mpmath.sqrt(3 * e1 ** 2 + a)
        first, second = 2 * mpmath.sqrt(H), mpmath.sqrt(2 * H + 3 * e1)
        mean = mpmath.agm(first, second)
        if not mpmath.isfinite(mean) or mean == 0:
            raise LValueError(f"AGM did not converge for curve [{a}, {b}]")
        value = 4 * mpmath.pi / mean
    return +value


def normalization_constant(field: FieldK, k: int) -> CycNum:
    """(2/w)(sqrt(D)/(2i))^(2k+2) = (2/w)(-D/4)^(k+1)."""
    return CycNum.rational(Fraction(2, field.w) * Fraction(-field.D, 4) ** (k + 1))


def cm_periods(field: FieldK, k: int, curve: Sequence[int] | None = None, digits: int = 50) -> Periods:
    if curve is None:
        if field.D not in DEFAULT_CURVES:
            raise LValueError(f"no default CM curve for D={field.D}; configure one")
        curve = DEFAULT_CURVES[field.D]
    a, b = (int(c) for c in curve)
    with mpmath.workdps(digits + 15):
        omega = real_period(a, b, digits)
        exponent = 2 * k + 2
        omega_F = mpmath.mpc((omega / mpmath.pi) ** exponent)
        twopii = 2 * mpmath.pi * mpmath.mpc(0, 1)
        omega_norm = mpmath.mpf(2) / field.w * (mpmath.sqrt(field.D) * omega / twopii) ** exponent
    logger.debug("stage=periods curve=%s,%s omega_inf=%s", a, b, mpmath.nstr(omega, 15))
    return Periods((a, b), k, omega, omega_F, omega_norm)


def curve_trace(a: int, b: int, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by counting points of y^2 = x^3 + a x + b."""
    squares: dict[int, int] = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    affine = sum(squares.get((x ** 3 + a * x + b) % p, 0) for x in range(p))
    return p - affine
