"""Cusps of K, 2x2 matrices over K and the cusp set C = Gamma(m)inf U Gamma(m)0."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from math import gcd
from typing import Iterable, Optional, Sequence

from ..exceptions import FieldError
from .field import ElemK, FieldK
from .ideals import IdealK, canonical_associate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matrix2:
    """(a b; c d) with entries in K."""

    a: ElemK
    b: ElemK
    c: ElemK
    d: ElemK

    @classmethod
    def of(cls, field: FieldK, a, b, c, d) -> "Matrix2":
        def lift(x):
            return x if isinstance(x, ElemK) else field.elem(x)

        return cls(lift(a), lift(b), lift(c), lift(d))

    @classmethod
    def identity(cls, field: FieldK) -> "Matrix2":
        return cls.of(field, 1, 0, 0, 1)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> ElemK:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Matrix2":
        det = self.det()
        if det.is_zero():
            raise FieldError("singular matrix")
        return Matrix2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def is_integral(self) -> bool:
        return all(x.is_integral() for x in (self.a, self.b, self.c, self.d))

    def act(self, cusp: "Cusp") -> "Cusp":
        """Fractional linear action on (x : y)."""
        return Cusp.normalized(cusp.field, self.a * cusp.x + self.b * cusp.y, self.c * cusp.x + self.d * cusp.y)

    def __repr__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class Cusp:
    """A point (x : y) of P^1(K) with x, y integral, coprime and unit-normalized."""

    field: FieldK = dataclass_field(compare=False, hash=False, repr=False)
    x: ElemK
    y: ElemK

    @classmethod
    def normalized(cls, field: FieldK, x: ElemK, y: ElemK) -> "Cusp":
        if x.is_zero() and y.is_zero():
            raise FieldError("(0 : 0) is not a cusp")
        denominators = [v.denominator for v in (x.a, x.b, y.a, y.b)]
        scale = 1
        for den in denominators:
            scale = scale * den // gcd(scale, den)
        x, y = x * scale, y * scale
        if y.is_zero():
            return cls(field, field.elem(1), field.elem(0))
        if x.is_zero():
            return cls(field, field.elem(0), field.elem(1))
        g = IdealK.from_generators(field, [x, y]).generator()
        if g is None:
            raise FieldError(f"({x} : {y}) has no coprime representative (class number > 1)")
        x, y = x / g, y / g
        target = canonical_associate(field, y)
        u = target / y
        return cls(field, x * u, y * u)

    @classmethod
    def from_element(cls, field: FieldK, z: ElemK) -> "Cusp":
        return cls.normalized(field, z, field.elem(1))

    @classmethod
    def infinity(cls, field: FieldK) -> "Cusp":
        return cls(field, field.elem(1), field.elem(0))

    def is_infinity(self) -> bool:
        return self.y.is_zero()

    def value(self) -> Optional[ElemK]:
        if self.is_infinity():
            return None
        return self.x / self.y

    def __repr__(self) -> str:
        if self.is_infinity():
            return "Cusp(inf)"
        return f"Cusp({self.x} : {self.y})"


def cusp_in_C(field: FieldK, m: IdealK, cusp: Cusp, class_index: int = 0) -> bool:
    """Membership in C_i: infinity, or x in I_i with y in m or y invertible modulo m."""
    if cusp.is_infinity():
        return True
    rep = field.class_reps[class_index]
    if not rep.contains(cusp.x):
        return False
    y_ideal = IdealK.principal(field, cusp.y)
    return m.divides(y_ideal) or y_ideal.coprime_to(m)


@dataclass
class CStabilityReport:
    checked: int = 0
    counterexamples: list[tuple[str, str, str]] = dataclass_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "checked": self.checked,
            "counterexamples": [list(item) for item in self.counterexamples],
            "ok": self.ok,
        }


def c_stability_check(
    field: FieldK, m: IdealK, matrices: Iterable[Matrix2], cusps: Sequence[Cusp]
) -> CStabilityReport:
    """Apply every matrix to every cusp of C and record images leaving C."""
    report = CStabilityReport()
    members = [c for c in cusps if cusp_in_C(field, m, c)]
    for matrix in matrices:
        for cusp in members:
            image = matrix.act(cusp)
            report.checked += 1
            if not cusp_in_C(field, m, image):
                report.counterexamples.append((repr(matrix), repr(cusp), repr(image)))
    logger.info("stage=c_stability checked=%s counterexamples=%s", report.checked, len(report.counterexamples))
    return report


def gamma1_samples(field: FieldK, n: IdealK, length: int = 2) -> list[Matrix2]:
    """Words in the generators (1 1;0 1), (1 w;0 1) and (1 0;v 1), v in n, all inside Gamma_1(n)."""
    nu = n.require_generator()
    letters = [
        Matrix2.of(field, 1, 1, 0, 1),
        Matrix2.of(field, 1, field.omega, 0, 1),
        Matrix2.of(field, 1, 0, nu, 1),
        Matrix2.of(field, 1, 0, nu * field.omega, 1),
        Matrix2.of(field, 1, -1, 0, 1),
        Matrix2.of(field, 1, 0, -nu, 1),
    ]
    words = [Matrix2.identity(field)]
    for size in range(1, length + 1):
        for word in itertools.product(letters, repeat=size):
            product = Matrix2.identity(field)
            for letter in word:
                product = product @ letter
            words.append(product)
    return words


def stabilization_matrices(field: FieldK, pi: ElemK, residues: Iterable[ElemK]) -> list[Matrix2]:
    """diag(1, pi), diag(pi, 1) and the U-coset representatives (1 x; 0 pi)."""
    mats = [Matrix2.of(field, 1, 0, 0, pi), Matrix2.of(field, pi, 0, 0, 1)]
    mats.extend(Matrix2.of(field, 1, x, 0, pi) for x in residues)
    return mats


def sample_cusps(field: FieldK, denominators: Sequence[ElemK], numerators: Sequence[ElemK]) -> list[Cusp]:
    cusps = [Cusp.infinity(field)]
    for y in denominators:
        for x in numerators:
            cusps.append(Cusp.normalized(field, x, y))
    return cusps
