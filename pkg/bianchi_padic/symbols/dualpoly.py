"""The dual coefficient module V_{k,l}^* and its right action by 2x2 matrices over K."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Any, Callable, Sequence

from ..arith import CycNum, PadicEmbedding, PadicNum
from ..exceptions import SymbolError
from ..quadfield import ElemK, Matrix2


class ClassicalScalars:
    """Matrix entries read in Q(zeta_m): the identity on the first block, conjugation on the second."""

    def first(self, x: ElemK) -> CycNum:
        return x.to_cyc()

    def second(self, x: ElemK) -> CycNum:
        return x.conj().to_cyc()

    def zero(self) -> CycNum:
        return CycNum.zero()


@dataclass(frozen=True)
class PadicScalars:
    """Matrix entries read in Q_p through sigma_1 (first block) and sigma_2 (second block)."""

    embedding: PadicEmbedding

    def first(self, x: ElemK) -> PadicNum:
        return self.embedding.embed_quadratic(x.a, x.b)

    def second(self, x: ElemK) -> PadicNum:
        return self.embedding.embed_quadratic_conjugate(x.a, x.b)

    def zero(self) -> PadicNum:
        return PadicNum.zero(self.embedding.p, self.embedding.precision)


def substitution_matrix(a: Any, b: Any, c: Any, d: Any, k: int, zero: Any) -> list[list[Any]]:
    """M[i][i2] = coefficient of X^i2 Y^(k-i2) in (dX + bY)^i (cX + aY)^(k-i)."""
    rows = []
    for i in range(k + 1):
        poly = [zero + 1]
        for linear in [(b, d)] * i + [(a, c)] * (k - i):
            constant, slope = linear
            product = [zero] * (len(poly) + 1)
            for n, value in enumerate(poly):
                product[n] = product[n] + value * constant
                product[n + 1] = product[n + 1] + value * slope
            poly = product
        rows.append(poly)
    return rows


@dataclass(frozen=True)
class DualPoly:
    """coeffs[i][j] is the value on X^i Y^(k-i) Xbar^j Ybar^(l-j)."""

    k: int
    l: int
    coeffs: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.k + 1 or any(len(row) != self.l + 1 for row in self.coeffs):
            raise SymbolError(f"coefficient array does not match weight ({self.k}, {self.l})")

    @classmethod
    def zero(cls, k: int, l: int, zero: Any) -> "DualPoly":
        return cls(k, l, tuple(tuple(zero for _ in range(l + 1)) for _ in range(k + 1)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "DualPoly":
        return cls(len(rows) - 1, len(rows[0]) - 1, tuple(tuple(row) for row in rows))

    def __getitem__(self, index: tuple[int, int]) -> Any:
        i, j = index
        return self.coeffs[i][j]

    def pair(self, poly: Sequence[Sequence[Any]]) -> Any:
        """v(P) for P given by its coefficients P[i][j] on X^i Y^(k-i) Xbar^j Ybar^(l-j)."""
        total = self.coeffs[0][0] * 0
        for i in range(self.k + 1):
            for j in range(self.l + 1):
                total = total + poly[i][j] * self.coeffs[i][j]
        return total

    def map(self, fn: Callable[[Any], Any]) -> "DualPoly":
        return DualPoly(self.k, self.l, tuple(tuple(fn(x) for x in row) for row in self.coeffs))

    def __add__(self, other: "DualPoly") -> "DualPoly":
        return DualPoly(
            self.k,
            self.l,
            tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.coeffs, other.coeffs)),
        )

    def __sub__(self, other: "DualPoly") -> "DualPoly":
        return self + other.scale(-1)

    def scale(self, factor: Any) -> "DualPoly":
        return self.map(lambda x: x * factor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualPoly) or (self.k, self.l) != (other.k, other.l):
            return False
        return all(x == y for r1, r2 in zip(self.coeffs, other.coeffs) for x, y in zip(r1, r2))

    __hash__ = None


def gamma_action(gamma: Matrix2, v: DualPoly, scalars=None) -> DualPoly:
    """(v|gamma)(P) = v(gamma.P) with gamma.P(X, Y) = P(dX + bY, cX + aY) and the conjugate block."""
    scalars = scalars or ClassicalScalars()
    if gamma.det().is_zero():
        raise SymbolError("singular matrix in gamma_action")
    zero = scalars.zero()
    first = substitution_matrix(*(scalars.first(x) for x in (gamma.a, gamma.b, gamma.c, gamma.d)), v.k, zero)
    second = substitution_matrix(*(scalars.second(x) for x in (gamma.a, gamma.b, gamma.c, gamma.d)), v.l, zero)
    rows = []
    for i in range(v.k + 1):
        row = []
        for j in range(v.l + 1):
            total = zero
            for i2 in range(v.k + 1):
                for j2 in range(v.l + 1):
                    total = total + first[i][i2] * second[j][j2] * v.coeffs[i2][j2]
            row.append(total)
        rows.append(row)
    return DualPoly.from_rows(rows)


def centered_coefficients(values: Sequence[Sequence[Any]], a: ElemK, scalars=None) -> DualPoly:
    """The functional with v((X + aY)^q Y^(k-q) (Xbar + abar Ybar)^r Ybar^(l-r)) = values[q][r]."""
    scalars = scalars or ClassicalScalars()
    k, l = len(values) - 1, len(values[0]) - 1
    shift1, shift2 = scalars.first(-a), scalars.second(-a)
    zero = scalars.zero()
    rows = []
    for i in range(k + 1):
        row = []
        for j in range(l + 1):
            total = zero
            for q in range(i + 1):
                for r in range(j + 1):
                    weight = comb(i, q) * comb(j, r)
                    total = total + values[q][r] * shift1 ** (i - q) * shift2 ** (j - r) * weight
            row.append(total)
        rows.append(row)
    return DualPoly.from_rows(rows)
