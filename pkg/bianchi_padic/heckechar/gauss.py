"""Global and local Gauss sums of Hecke characters."""

from __future__ import annotations

import logging
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional

from ..arith import CycNum
from ..exceptions import CharacterError
from ..quadfield import ElemK, IdealK, crt_lift, factor_ideal
from .character import HeckeCharacter, _elem_power, _phase, root_from_phase

logger = logging.getLogger(__name__)


def sum_of_roots(phases: Iterable[Fraction]) -> CycNum:
    """sum_j exp(2 pi i phases[j]) in the smallest common cyclotomic field."""
    values = [_phase(Fraction(ph)) for ph in phases]
    m = lcm(1, *(ph.denominator for ph in values))
    counts: dict[int, int] = {}
    for ph in values:
        exponent = int(ph * m) % m
        counts[exponent] = counts.get(exponent, 0) + 1
    return CycNum.from_exponent_counts(m, counts)


def infinity_value(psi: HeckeCharacter, z: ElemK) -> CycNum:
    """psi_inf(z) = z^a conj(z)^b."""
    return _elem_power(z, psi.infinity.a) * _elem_power(z.conj(), psi.infinity.b)


def _additive_phase(x: ElemK) -> Fraction:
    """Tr(x), whose image in Q/Z gives e_K(x)."""
    return x.trace()


def gauss_sum_W(psi: HeckeCharacter) -> CycNum:
    """W(psi) = psi_inf(delta) psi_inf(gamma) sum_d eps(d)^-1 e(Tr(d / (gamma delta))) for primitive psi."""
    if not psi.is_primitive():
        raise CharacterError(f"{psi} is not primitive; W is defined for primitive characters")
    field = psi.field
    delta = field.delta
    if psi.modulus.is_unit():
        return infinity_value(psi, delta)
    gamma = psi.modulus.require_generator()
    denominator = gamma * delta
    phases = [
        -psi.phase(d) + _additive_phase(d / denominator)
        for d in psi.group.elements
    ]
    return infinity_value(psi, delta) * infinity_value(psi, gamma) * sum_of_roots(phases)


def twisted_orthogonality_sum(psi: HeckeCharacter, c: ElemK) -> CycNum:
    """sum_{d in (O/f)^x} eps(d) e(Tr(c d / (gamma delta)))."""
    field = psi.field
    if psi.modulus.is_unit():
        return CycNum.one()
    gamma = psi.modulus.require_generator()
    denominator = gamma * field.delta
    phases = [psi.phase(d) + _additive_phase(c * d / denominator) for d in psi.group.elements]
    return sum_of_roots(phases)


def _local_split(psi: HeckeCharacter, prime: IdealK) -> tuple[int, IdealK, IdealK]:
    conductor = psi.conductor()
    factors = factor_ideal(conductor) if not conductor.is_unit() else {}
    t = factors.get(prime, 0)
    local = prime ** t
    rest = conductor.divide(local) if t else conductor
    return t, local, rest


def local_component_phase(psi: HeckeCharacter, prime: IdealK, u: ElemK) -> Fraction:
    """Phase of chi_q(u) = eps(u~)^-1 with u~ = u modulo q^t and u~ = 1 modulo the rest of the conductor."""
    primitive = psi.primitive()
    t, local, rest = _local_split(primitive, prime)
    if t == 0:
        return Fraction(0)
    lifted = crt_lift(local, u, rest, psi.field.elem(1))
    return _phase(-primitive.phase(lifted))


def local_component_value(psi: HeckeCharacter, prime: IdealK, u: ElemK) -> CycNum:
    return root_from_phase(local_component_phase(psi, prime, u))


def local_uniformizer_value(psi: HeckeCharacter, prime: IdealK) -> CycNum:
    """chi_q(pi) = eps(u~) pi^-a conj(pi)^-b, u~ = pi modulo the rest and 1 modulo q^t."""
    primitive = psi.primitive()
    t, local, rest = _local_split(primitive, prime)
    pi = prime.require_generator()
    unit_part = CycNum.one()
    if not rest.is_unit():
        lifted = crt_lift(local, psi.field.elem(1), rest, pi)
        unit_part = root_from_phase(primitive.phase(lifted))
    return unit_part * _elem_power(pi, -psi.infinity.a) * _elem_power(pi.conj(), -psi.infinity.b)


def local_gauss_sum(psi: HeckeCharacter, prime: IdealK) -> CycNum:
    """tau_q(psi) = chi_q(pi)^-t sum_{u mod q^t} chi_q(u) e(Tr(u / (pi^t delta))); 1 when q is unramified."""
    primitive = psi.primitive()
    t, local, rest = _local_split(primitive, prime)
    if t == 0:
        return CycNum.one()
    pi = prime.require_generator()
    denominator = (pi ** t) * psi.field.delta
    phases = []
    for u in local.residues():
        if prime.contains(u):
            continue
        phases.append(local_component_phase(primitive, prime, u) + _additive_phase(u / denominator))
    total = sum_of_roots(phases)
    return total * local_uniformizer_value(primitive, prime) ** (-t)


def gauss_sum_Wp(psi: HeckeCharacter, prime: IdealK) -> CycNum:
    """W_p(psi) = N(p)^-t tau_p(psi)."""
    t, _, _ = _local_split(psi.primitive(), prime)
    return local_gauss_sum(psi, prime) / Fraction(prime.norm) ** t


def gauss_product_identity(
    psi: HeckeCharacter,
    eta: HeckeCharacter,
    eta_prime: HeckeCharacter,
    prime: IdealK,
    prime_bar: IdealK,
    lam: CycNum,
    exponents: Optional[tuple[int, int]] = None,
) -> tuple[CycNum, CycNum]:
    """Both sides of W_p(eta) W_p(eta') = psi_pbar(-1) lam^(-t-s) W(psi)."""
    primitive = psi.primitive()
    if exponents is None:
        exponents = primitive.conductor_exponents([prime, prime_bar])
    t, s = exponents
    left = gauss_sum_Wp(eta, prime) * gauss_sum_Wp(eta_prime, prime)
    sign = local_component_value(primitive, prime_bar, psi.field.elem(-1))
    right = sign * lam ** (-(t + s)) * gauss_sum_W(primitive)
    logger.debug("stage=gauss_identity psi=%s t=%s s=%s equal=%s", psi.label, t, s, left == right)
    return left, right
