"""Completed and p-stabilized critical values of the base-change form."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import mpmath

from ..arith import CycNum, PadicEmbedding, embed_padic
from ..exceptions import LValueError
from ..heckechar import HeckeCharacter, lambda_k
from ..quadfield import IdealK
from .afe import ComplexVal, hecke_lvalue

logger = logging.getLogger(__name__)


def factor_characters(phi: HeckeCharacter, psi: HeckeCharacter) -> tuple[HeckeCharacter, HeckeCharacter]:
    """(phi^c psi, phi^c psi^c lambda_K), whose L-functions multiply to L(F, psi, s)."""
    phi_c = phi.conj()
    return phi_c * psi, phi_c * psi.conj() * lambda_k(phi.field)


def gamma_factor(q: int, r: int, digits: int = 50) -> mpmath.mpc:
    """Gamma(q+1) Gamma(r+1) / ((2 pi i)^(q+1) (2 pi i)^(r+1))."""
    with mpmath.workdps(digits + 10):
        twopii = 2 * mpmath.pi * mpmath.mpc(0, 1)
        value = mpmath.factorial(q) * mpmath.factorial(r) / twopii ** (q + r + 2)
    return value


def completed_lambda(phi: HeckeCharacter, psi: HeckeCharacter, digits: int = 50) -> ComplexVal:
    """Lambda(F, psi) from the factorized L-value at s = 1; each factor must be nonzero."""
    q, r = psi.infinity.a, psi.infinity.b
    total = ComplexVal.exact(gamma_factor(q, r, digits))
    for chi in factor_characters(phi, psi):
        value = hecke_lvalue(chi, 1, digits)
        if not value.is_nonzero():
            raise LValueError(f"L({chi.label}, 1) vanishes to working precision ({mpmath.nstr(value.value, 5)})")
        total = total * value
    return total


def stabilization_factor(phi: HeckeCharacter, psi: HeckeCharacter, prime: IdealK, prime_bar: IdealK, root: Optional[CycNum] = None) -> CycNum:
    """prod over q in {p, pbar} of (1 - root psi(q) / N(q)); root defaults to alpha = phi(p)."""
    if root is None:
        root = phi.eval_ideal(prime)
    factor = CycNum.one()
    for q in (prime, prime_bar):
        factor = factor * (1 - root * psi.eval_ideal(q) / q.norm)
    return factor


def stabilized_lambda(
    phi: HeckeCharacter, psi: HeckeCharacter, prime: IdealK, prime_bar: IdealK, digits: int = 50
) -> ComplexVal:
    """Lambda(F^p, psi) for the ordinary p-stabilization."""
    factor = stabilization_factor(phi, psi, prime, prime_bar)
    value = completed_lambda(phi, psi, digits) * factor.to_complex(digits)
    logger.debug("stage=lambda psi=%s euler=%s", psi.label, factor.canonical())
    return value


@dataclass(frozen=True)
class StabilizationData:
    """Both roots of X^2 - a_p X + N(p)^(k+1) with their slopes under iota_p."""

    a_p: CycNum
    alpha: CycNum
    beta: CycNum
    alpha_slope: int
    beta_slope: int
    k: int

    @property
    def ordinary(self) -> bool:
        return self.beta_slope == 0

    def as_dict(self) -> dict:
        return {
            "a_p": self.a_p.canonical(),
            "alpha": self.alpha.canonical(),
            "beta": self.beta.canonical(),
            "alpha_slope": self.alpha_slope,
            "beta_slope": self.beta_slope,
            "ordinary": self.ordinary,
        }


def stabilization(phi: HeckeCharacter, embedding: PadicEmbedding, prime: IdealK, prime_bar: IdealK) -> StabilizationData:
    """alpha = phi(p) and the U-eigenvalue beta = phi(pbar)."""
    alpha = phi.eval_ideal(prime)
    beta = phi.eval_ideal(prime_bar)
    k = -phi.infinity.a - phi.infinity.b - 1
    slopes = []
    for root in (alpha, beta):
        image = embed_padic(root, embedding)
        slopes.append(image.valuation)
    data = StabilizationData(alpha + beta, alpha, beta, slopes[0], slopes[1], k)
    logger.info(
        "stage=stabilization a_p=%s alpha_slope=%s beta_slope=%s", data.a_p.canonical(), data.alpha_slope, data.beta_slope
    )
    return data
