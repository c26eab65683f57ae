"""Integral ideals of O_K in Hermite normal form, prime splitting and factorization."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

import sympy

from ..arith import omega_polynomial
from ..exceptions import FieldError
from .field import ElemK, FieldK

logger = logging.getLogger(__name__)


def _hnf(vectors: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    """Reduce a spanning set of x + y*omega to the basis {a, b + c*omega} with 0 <= b < a."""
    rows = [list(v) for v in vectors if v[0] or v[1]]
    if not rows:
        raise FieldError("the zero ideal has no Hermite normal form")
    while True:
        active = [r for r in rows if r[1]]
        if len(active) <= 1:
            break
        pivot = min(active, key=lambda r: abs(r[1]))
        for row in active:
            if row is pivot:
                continue
            q = row[1] // pivot[1]
            row[0] -= q * pivot[0]
            row[1] -= q * pivot[1]
        rows = [r for r in rows if r[0] or r[1]]
    pivots = [r for r in rows if r[1]]
    a = 0
    for row in rows:
        if not row[1]:
            a = gcd(a, row[0])
    if not pivots or a == 0:
        raise FieldError("vectors do not span a full-rank lattice")
    b, c = pivots[0]
    if c < 0:
        b, c = -b, -c
    return a, b % a, c


class IdealK:
    """The integral ideal with Z-basis {a, b + c*omega}."""

    __slots__ = ("field", "a", "b", "c", "_generator")

    def __init__(self, field: FieldK, a: int, b: int, c: int) -> None:
        self.field = field
        self.a = a
        self.b = b
        self.c = c
        self._generator: Optional[ElemK] = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_generators(cls, field: FieldK, generators: Sequence[ElemK]) -> "IdealK":
        vectors = []
        for g in generators:
            if not g.is_integral():
                raise FieldError(f"{g} is not integral")
            for h in (g, g * field.omega):
                vectors.append((int(h.a), int(h.b)))
        ideal = cls(field, *_hnf(vectors))
        if len(generators) == 1:
            ideal._generator = generators[0]
        return ideal

    @classmethod
    def principal(cls, field: FieldK, x: ElemK) -> "IdealK":
        return cls.from_generators(field, [x])

    @classmethod
    def unit(cls, field: FieldK) -> "IdealK":
        return cls(field, 1, 0, 1)

    # -- basic structure ----------------------------------------------
    @property
    def basis(self) -> tuple[ElemK, ElemK]:
        return (self.field.elem(self.a, 0), self.field.elem(self.b, self.c))

    @property
    def norm(self) -> int:
        return self.a * self.c

    def is_unit(self) -> bool:
        return self.norm == 1

    def contains(self, x: ElemK) -> bool:
        if not x.is_integral():
            return False
        u, v = int(x.a), int(x.b)
        if v % self.c:
            return False
        k = v // self.c
        return (u - k * self.b) % self.a == 0

    def reduce(self, x: ElemK) -> ElemK:
        """Canonical representative u + v*omega with 0 <= u < a and 0 <= v < c."""
        if not x.is_integral():
            raise FieldError(f"cannot reduce non-integral {x} modulo an ideal")
        u, v = int(x.a), int(x.b)
        k = v // self.c
        v -= k * self.c
        u = (u - k * self.b) % self.a
        return self.field.elem(u, v)

    def residues(self) -> Iterable[ElemK]:
        """All canonical representatives of O_K / I."""
        for v in range(self.c):
            for u in range(self.a):
                yield self.field.elem(u, v)

    def __mul__(self, other: "IdealK") -> "IdealK":
        products = [x * y for x in self.basis for y in other.basis]
        result = IdealK.from_generators(self.field, products)
        if self._generator is not None and other._generator is not None:
            result._generator = self._generator * other._generator
        return result

    def __pow__(self, exponent: int) -> "IdealK":
        result = IdealK.unit(self.field)
        for _ in range(exponent):
            result = result * self
        return result

    def __add__(self, other: "IdealK") -> "IdealK":
        return IdealK.from_generators(self.field, list(self.basis) + list(other.basis))

    def conj(self) -> "IdealK":
        return IdealK.from_generators(self.field, [x.conj() for x in self.basis])

    def divides(self, other: "IdealK") -> bool:
        """True when self | other, i.e. other is contained in self."""
        return all(self.contains(x) for x in other.basis)

    def coprime_to(self, other: "IdealK") -> bool:
        return (self + other).is_unit()

    def divide(self, other: "IdealK") -> "IdealK":
        """self / other, requiring other | self."""
        if not other.divides(self):
            raise FieldError(f"{other} does not divide {self}")
        n = other.norm
        product = self * other.conj()
        scaled = [x / n for x in product.basis]
        return IdealK.from_generators(self.field, scaled)

    # -- principal ideals ---------------------------------------------
    def generator(self) -> Optional[ElemK]:
        """A canonical generator (the associate with the largest coordinates), or None."""
        if self._generator is None:
            for x in self.field.elements_of_norm(self.norm):
                if self.contains(x):
                    self._generator = x
                    break
            else:
                return None
        return canonical_associate(self.field, self._generator)

    def require_generator(self) -> ElemK:
        g = self.generator()
        if g is None:
            raise FieldError(f"{self} is not principal")
        return g

    def is_principal(self) -> bool:
        return self.generator() is not None

    # -- comparison ---------------------------------------------------
    def key(self) -> tuple[int, int, int, int]:
        return (self.field.D, self.a, self.b, self.c)

    def __eq__(self, other) -> bool:
        return isinstance(other, IdealK) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"IdealK[{self.a}, {self.b}+{self.c}w]"


def canonical_associate(field: FieldK, x: ElemK) -> ElemK:
    return max((x * u for u in field.units), key=lambda y: (y.a, y.b))


@dataclass(frozen=True)
class PrimeSplitting:
    """How a rational prime q decomposes in O_K."""

    q: int
    kind: str
    primes: tuple[IdealK, ...]

    @property
    def is_split(self) -> bool:
        return self.kind == "split"

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "kind": self.kind,
            "primes": [repr(prime) for prime in self.primes],
        }


def _omega_roots(D: int, q: int) -> list[int]:
    n0, n1, _ = omega_polynomial(D)
    return [r for r in range(q) if (r * r + n1 * r + n0) % q == 0]


def factor_prime(field: FieldK, q: int, seed: Optional[int] = None) -> PrimeSplitting:
    """Split, inert or ramified decomposition of (q); with a seed the prime containing omega - seed comes first."""
    if not sympy.isprime(q):
        raise FieldError(f"{q} is not prime")
    symbol = field.kronecker(q)
    if symbol == -1:
        return PrimeSplitting(q, "inert", (IdealK(field, q, 0, q),))
    roots = _omega_roots(field.D, q)
    if seed is not None and seed % q in roots:
        roots.remove(seed % q)
        roots.insert(0, seed % q)
    primes = tuple(
        IdealK.from_generators(field, [field.elem(q, 0), field.elem(-r, 1)]) for r in roots
    )
    if symbol == 0:
        return PrimeSplitting(q, "ramified", primes[:1])
    return PrimeSplitting(q, "split", primes)


def factor_ideal(ideal: IdealK) -> dict[IdealK, int]:
    """Prime factorization of an integral ideal."""
    factors: dict[IdealK, int] = {}
    remaining = ideal
    for q in sorted(sympy.factorint(ideal.norm)):
        for prime in factor_prime(ideal.field, q).primes:
            while not remaining.is_unit() and prime.divides(remaining):
                remaining = remaining.divide(prime)
                factors[prime] = factors.get(prime, 0) + 1
    if not remaining.is_unit():
        raise FieldError(f"incomplete factorization of {ideal}")
    return factors


def ideal_from_factors(field: FieldK, factors: dict[IdealK, int]) -> IdealK:
    result = IdealK.unit(field)
    for prime, exponent in factors.items():
        result = result * prime ** exponent
    return result


def ideal_lcm(first: IdealK, second: IdealK) -> IdealK:
    left, right = factor_ideal(first), factor_ideal(second)
    merged = {prime: max(left.get(prime, 0), right.get(prime, 0)) for prime in set(left) | set(right)}
    return ideal_from_factors(first.field, merged)


def ideals_of_norm(field: FieldK, n: int) -> list[IdealK]:
    """Every integral ideal of norm n."""
    if n == 1:
        return [IdealK.unit(field)]
    results = [IdealK.unit(field)]
    for q, e in sympy.factorint(n).items():
        splitting = factor_prime(field, q)
        local: list[IdealK] = []
        if splitting.kind == "inert":
            if e % 2 == 0:
                local.append(splitting.primes[0] ** (e // 2))
        elif splitting.kind == "ramified":
            local.append(splitting.primes[0] ** e)
        else:
            first, second = splitting.primes
            local.extend(first ** i * second ** (e - i) for i in range(e + 1))
        results = [x * y for x in results for y in local]
    return results


def class_representatives(field: FieldK, avoid: int = 1) -> tuple[IdealK, ...]:
    """O_K followed by split primes of K (coprime to D and `avoid`) in distinct non-trivial classes."""
    reps: list[IdealK] = [IdealK.unit(field)]
    h = field.class_number
    q = 2
    while len(reps) < h:
        q = int(sympy.nextprime(q))
        if q > 10 ** 5:
            raise FieldError(f"could not find {h} class representatives for D={field.D}")
        if field.D % q == 0 or avoid % q == 0 or field.kronecker(q) != 1:
            continue
        for prime in factor_prime(field, q).primes:
            if all(not (prime * rep.conj()).is_principal() for rep in reps):
                reps.append(prime)
                if len(reps) == h:
                    break
    logger.debug("class representatives for D=%s: %s", field.D, reps)
    return tuple(reps)


def crt_idempotent(first: IdealK, second: IdealK) -> ElemK:
    """e in `first` with e = 1 modulo `second`; the ideals must be coprime."""
    if not first.coprime_to(second):
        raise FieldError(f"{first} and {second} are not coprime")
    if second.is_unit():
        return first.field.elem(0)
    if first.is_unit():
        return first.field.elem(1)
    product = first * second
    one = second.reduce(first.field.elem(1))
    for r in product.residues():
        if first.contains(r) and second.reduce(r) == one:
            return r
    raise FieldError(f"no CRT idempotent for {first} and {second}")


def crt_lift(first: IdealK, x: ElemK, second: IdealK, y: ElemK) -> ElemK:
    """z with z = x modulo `first` and z = y modulo `second`, reduced modulo their product."""
    e_first = crt_idempotent(first, second)
    e_second = first.field.elem(1) - e_first
    return (first * second).reduce(x * e_second + y * e_first)
