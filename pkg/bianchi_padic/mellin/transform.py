"""Mellin transform of the eigensymbol's value at {0} - {inf}.

For an avatar of conductor p^t pbar^s and algebraic part (q, r),

    mellin(kappa) = sum over b in (O_K / p^t pbar^s)^x of iota_p(psi_f(b)) * mu_b(x^q y^r),

mu_b being the restriction to the disc b + p^t pbar^s O_p. A zero exponent restricts to the
units at that prime by inclusion-exclusion over the disc p (or pbar).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Optional

from ..arith import PadicNum, p_valuation
from ..dist import profile
from ..exceptions import MellinError
from ..heckechar import AvatarCharacter
from ..lift import LiftResult, TreeNode
from ..quadfield import residue_group
from .rayclass import RayClassStructure

logger = logging.getLogger(__name__)


@dataclass
class PrecisionLedger:
    N: int
    losses: list[tuple[str, int]] = dataclass_field(default_factory=list)

    def charge(self, reason: str, amount: int) -> None:
        if amount:
            self.losses.append((reason, amount))

    @property
    def claimed(self) -> int:
        return self.N - sum(amount for _, amount in self.losses)

    def as_dict(self) -> dict:
        return {"N": self.N, "losses": [{"reason": r, "amount": a} for r, a in self.losses], "claimed": self.claimed}


@dataclass
class PadicLValue:
    label: str
    fingerprint: str
    t: int
    s: int
    q: int
    r: int
    value: PadicNum
    ledger: PrecisionLedger

    @property
    def precision(self) -> int:
        """The smaller of the ledger's claim and the precision carried by the arithmetic."""
        return min(self.ledger.claimed, self.value.absolute_precision)

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "fingerprint": self.fingerprint,
            "t": self.t,
            "s": self.s,
            "q": self.q,
            "r": self.r,
            "value": repr(self.value),
            "precision": self.precision,
            "ledger": self.ledger.as_dict(),
        }


def _check_range(result: LiftResult, level: tuple[int, int], q: int, r: int) -> None:
    T1, T2 = result.tree.depth
    if level[0] > T1 or level[1] > T2:
        raise MellinError(f"level {level} exceeds the depth budget {result.tree.depth}")
    if not (0 <= q <= result.k and 0 <= r <= result.k):
        raise MellinError(f"algebraic part ({q}, {r}) is outside 0 <= (q, r) <= ({result.k}, {result.k})")


def disc_sum(result: LiftResult, avatar: AvatarCharacter, level: tuple[int, int], rayclass: Optional[RayClassStructure] = None) -> PadicNum:
    """The scaled transform read from the disc data at `level` (componentwise at least the conductor)."""
    t, s = avatar.exponents
    if level[0] < t or level[1] < s:
        raise MellinError(f"level {level} is below the conductor exponents ({t}, {s})")
    q, r = avatar.q, avatar.r
    rayclass = rayclass or RayClassStructure(avatar.embedding, avatar.prime, avatar.prime_bar)
    options = [(0, 1) if level[0] == 0 else (0,), (0, 1) if level[1] == 0 else (0,)]
    total = PadicNum.zero(result.p, profile(result.N, q, r))
    for ex, ey in itertools.product(*options):
        shifted = (level[0] + ex, level[1] + ey)
        _check_range(result, shifted, q, r)
        sign = -1 if (ex + ey) % 2 else 1
        for b in rayclass.residues(*shifted, zero_at=(bool(ex), bool(ey))):
            weight = avatar.finite_value(b)
            moment = result.node_value(TreeNode(shifted[0], shifted[1], b))[q, r]
            total = total + weight * moment * sign
    return total


def mellin_eval(result: LiftResult, avatar: AvatarCharacter, level: Optional[tuple[int, int]] = None) -> PadicLValue:
    """Integral of the avatar against the measure attached to the eigensymbol, unscaled by p^-e."""
    t, s = avatar.exponents
    level = level or (t, s)
    q, r = avatar.q, avatar.r
    _check_range(result, level, q, r)
    scaled = disc_sum(result, avatar, level)
    e = result.state.scale_exponent
    value = scaled / PadicNum.from_rational(result.p, result.p ** e, result.state.eigenvalue.precision) if e else scaled
    ledger = PrecisionLedger(result.N)
    ledger.charge("profile", result.N - profile(result.N, q, r))
    ledger.charge("scale", e)
    ledger.charge("embedding", 0)
    order = residue_group(avatar.prime.field, avatar.prime ** max(level[0], 1) * avatar.prime_bar ** max(level[1], 1)).order
    ledger.charge("inversion", p_valuation(order, result.p) or 0)
    lvalue = PadicLValue(avatar.source.label, avatar.source.fingerprint(), t, s, q, r, value, ledger)
    logger.info(
        "stage=mellin psi=%s t=%s s=%s level=%s,%s value=%r precision=%s",
        lvalue.label,
        t,
        s,
        level[0],
        level[1],
        value,
        lvalue.precision,
    )
    return lvalue


@dataclass
class RefinementCheck:
    label: str
    base: tuple[int, int]
    refined: tuple[int, int]
    agreement: int
    required: int

    @property
    def ok(self) -> bool:
        return self.agreement >= self.required

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "base": list(self.base),
            "refined": list(self.refined),
            "agreement": self.agreement,
            "required": self.required,
            "ok": self.ok,
        }


def refinement_check(result: LiftResult, avatar: AvatarCharacter) -> list[RefinementCheck]:
    """Depth (t, s) against every refinement (t+1, s), (t, s+1) the tree can hold."""
    t, s = avatar.exponents
    base = disc_sum(result, avatar, (t, s))
    required = profile(result.N, avatar.q, avatar.r)
    checks = []
    T1, T2 = result.tree.depth
    for refined in ((t + 1, s), (t, s + 1), (t + 1, s + 1)):
        if refined[0] > T1 or refined[1] > T2:
            continue
        other = disc_sum(result, avatar, refined)
        diff = base - other
        check = RefinementCheck(avatar.source.label, (t, s), refined, diff.valuation, required)
        logger.info(
            "stage=mellin check=refinement psi=%s refined=%s,%s agreement=%s ok=%s",
            check.label,
            refined[0],
            refined[1],
            check.agreement,
            check.ok,
        )
        checks.append(check)
    return checks


@dataclass
class UnitInvarianceCheck:
    label: str
    orbits: int
    mismatches: list[str] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"label": self.label, "orbits": self.orbits, "mismatches": list(self.mismatches), "ok": self.ok}


def unit_invariance_check(result: LiftResult, avatar: AvatarCharacter) -> UnitInvarianceCheck:
    """Along every unit orbit of residues, psi_f(b) mu_b(1) is constant (algebraic part (0, 0))."""
    t, s = avatar.exponents
    level = (max(t, 1), max(s, 1))
    rayclass = RayClassStructure(avatar.embedding, avatar.prime, avatar.prime_bar)
    orbits = rayclass.unit_orbits(*level)
    check = UnitInvarianceCheck(avatar.source.label, len(orbits))
    if (avatar.q, avatar.r) != (0, 0):
        return check
    _check_range(result, level, 0, 0)
    for orbit in orbits:
        values = [avatar.finite_value(b) * result.node_value(TreeNode(level[0], level[1], b))[0, 0] for b in orbit]
        for b, value in zip(orbit[1:], values[1:]):
            if not (value - values[0]).is_zero:
                check.mismatches.append(f"{b}: {value!r} != {values[0]!r}")
    logger.info("stage=mellin check=unit_invariance psi=%s orbits=%s ok=%s", check.label, check.orbits, check.ok)
    return check
