"""Partial modular symbols: inversion, forward checks, U operators and the dual module action."""

import unittest
from fractions import Fraction

from bianchi_padic.arith import CycNum
from bianchi_padic.exceptions import SymbolError
from bianchi_padic.heckechar import HeckeCharacter, canonical_cm_character, character_family
from bianchi_padic.lfun import cm_periods
from bianchi_padic.quadfield import Cusp, FieldK, Matrix2, factor_prime
from bianchi_padic.symbols import (
    CuspDivisor,
    DualPoly,
    LValueSums,
    PartialSymbol,
    TableSums,
    centered_coefficients,
    GoodPrimeValues,
    eigen_check,
    gamma_action,
    good_prime,
    hecke_T,
    hecke_T_check,
    hecke_U,
    level_of,
)

BETA = CycNum.gaussian(-1, 2)


class SymbolTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.K = FieldK(4)
        cls.prime, cls.prime_bar = factor_prime(cls.K, 5, seed=2).primes
        cls.pi = cls.prime.require_generator()
        table = {HeckeCharacter.trivial(cls.K).fingerprint(): CycNum.gaussian(Fraction(4, 50), Fraction(3, 50))}
        modulus = cls.prime * cls.prime_bar
        for index, psi in enumerate(c for c in character_family(cls.K, modulus) if c.is_primitive()):
            table[psi.fingerprint()] = CycNum.gaussian(index + 1, -index)
        cls.sums = TableSums(BETA, cls.prime, cls.prime_bar, table)
        cls.symbol = PartialSymbol(cls.sums, 0)

    def cusp(self, x, y):
        return Cusp.normalized(self.K, x if not isinstance(x, int) else self.K.elem(x), y)


class TestInversion(SymbolTestCase):
    def test_levels(self):
        self.assertEqual(level_of(self.cusp(1, self.pi), self.prime, self.prime_bar), (1, 0))
        self.assertEqual(level_of(self.cusp(1, self.K.elem(5)), self.prime, self.prime_bar), (1, 1))
        self.assertEqual(level_of(self.cusp(0, self.K.elem(1)), self.prime, self.prime_bar), (0, 0))
        with self.assertRaises(SymbolError):
            level_of(self.cusp(1, self.K.elem(3)), self.prime, self.prime_bar)
        with self.assertRaises(SymbolError):
            level_of(Cusp.infinity(self.K), self.prime, self.prime_bar)

    def test_value_at_zero_is_the_trivial_sum(self):
        self.assertEqual(
            self.symbol.coefficient(self.cusp(0, self.K.elem(1)), 0, 0),
            CycNum.gaussian(Fraction(4, 50), Fraction(3, 50)),
        )

    def test_forward_round_trip(self):
        for t, s in ((0, 0), (1, 0), (0, 1), (1, 1)):
            report = self.symbol.forward_check(t, s)
            self.assertTrue(report.ok, report.mismatches)
            self.assertGreater(report.characters, 0)

    def test_unit_relation(self):
        for cusp in (self.cusp(1, self.pi), self.cusp(2, self.K.elem(5))):
            moved, expected = self.symbol.unit_relation(cusp, self.K.elem(0, 1))
            self.assertEqual(moved, expected)


class TestSecondPowerLevels(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.K = FieldK(4)
        prime, prime_bar = factor_prime(cls.K, 5, seed=2).primes
        table = {}
        for psi in character_family(cls.K, prime ** 2 * prime_bar ** 2):
            fingerprint = psi.primitive().fingerprint()
            table.setdefault(fingerprint, CycNum.gaussian(len(table) + 1, -len(table)))
        cls.table_size = len(table)
        cls.symbol = PartialSymbol(TableSums(BETA, prime, prime_bar, table), 0)

    def test_table_covers_every_conductor(self):
        self.assertEqual(self.table_size, 100)

    def test_forward_round_trip(self):
        for t in range(3):
            for s in range(3):
                with self.subTest(level=(t, s)):
                    report = self.symbol.forward_check(t, s)
                    self.assertTrue(report.ok, report.mismatches)
                    self.assertGreater(report.characters, 0)


class TestHeckeOperators(SymbolTestCase):
    def test_eigenvalue_at_zero(self):
        zero = self.cusp(0, self.K.elem(1))
        for prime in (self.prime, self.prime_bar):
            left, right = eigen_check(self.symbol, prime, BETA, zero)
            self.assertEqual(left, right)
            self.assertEqual(hecke_U(self.symbol, prime, zero), left)

    def test_divisor_evaluation(self):
        zero, half = self.cusp(0, self.K.elem(1)), self.cusp(1, self.pi)
        divisor = CuspDivisor.edge(self.K, zero, half)
        value = self.symbol.evaluate(divisor)
        self.assertEqual(value, self.symbol.value(zero) - self.symbol.value(half))
        with self.assertRaises(SymbolError):
            list(CuspDivisor.from_mapping(self.K, {zero: 1}).finite_cusps())

    def test_divisor_translation(self):
        zero, one = self.cusp(0, self.K.elem(1)), self.cusp(1, self.K.elem(1))
        divisor = CuspDivisor.to_infinity(self.K, zero)
        self.assertEqual(divisor.degree, 0)
        moved = divisor.translate(Matrix2.of(self.K, 1, 1, 0, 1))
        self.assertEqual(dict(moved), {one: 1, Cusp.infinity(self.K): -1})
        self.assertTrue(moved.supported_in_C(canonical_cm_character(self.K).modulus))


class TestGoodPrimeOperator(SymbolTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        phi = canonical_cm_character(cls.K)
        cls.splitting = good_prime(cls.K, exclude=(5, phi.modulus.norm))
        cls.a_q = phi.eval_ideal(cls.splitting.primes[0]) + phi.eval_ideal(cls.splitting.primes[1])
        cls.values = GoodPrimeValues(cls.symbol, cls.splitting.primes[0], cls.a_q)

    def test_smallest_good_prime(self):
        self.assertEqual(self.splitting.q, 13)
        self.assertEqual(self.a_q, CycNum.rational(6))

    def test_eigenvalue_at_integral_cusps(self):
        for cusp in (self.cusp(0, self.K.elem(1)), self.cusp(1, self.K.elem(1))):
            left, right = hecke_T_check(self.values, cusp)
            self.assertEqual(left, right)
        self.assertEqual(right, self.symbol.value(self.cusp(0, self.K.elem(1))).scale(CycNum.rational(6)))

    def test_values_at_level_q_are_unit_invariant(self):
        varpi = self.splitting.primes[0].require_generator()
        cusp = self.cusp(1, varpi)
        moved = self.cusp(self.K.elem(0, 1), varpi)
        self.assertEqual(self.values.coefficient(moved), self.values.coefficient(cusp))

    def test_rejected_inputs(self):
        with self.assertRaises(SymbolError):
            GoodPrimeValues(self.symbol, self.prime, self.a_q)
        with self.assertRaises(SymbolError):
            hecke_T(self.values, self.cusp(1, self.pi))
        with self.assertRaises(SymbolError):
            self.values.coefficient(self.cusp(1, self.pi))


class TestDualModule(unittest.TestCase):
    def setUp(self):
        self.K = FieldK(4)
        rows = [[CycNum.gaussian(1, 0), CycNum.gaussian(0, 2)], [CycNum.gaussian(3, -1), CycNum.rational(5)]]
        self.v = DualPoly.from_rows(rows)

    def test_identity_acts_trivially(self):
        self.assertEqual(gamma_action(Matrix2.identity(self.K), self.v), self.v)

    def test_right_action(self):
        g = Matrix2.of(self.K, 1, self.K.elem(0, 1), 0, 1)
        h = Matrix2.of(self.K, 1, 0, self.K.elem(2, 2), 1)
        self.assertEqual(gamma_action(h, gamma_action(g, self.v)), gamma_action(g @ h, self.v))

    def test_centered_at_zero(self):
        rows = [[CycNum.rational(n + 2 * m) for m in range(2)] for n in range(2)]
        self.assertEqual(centered_coefficients(rows, self.K.elem(0)), DualPoly.from_rows(rows))

    def test_singular_matrix(self):
        with self.assertRaises(SymbolError):
            gamma_action(Matrix2.of(self.K, 1, 1, 1, 1), self.v)

    def test_shape_is_checked(self):
        with self.assertRaises(SymbolError):
            DualPoly(1, 1, ((CycNum.zero(),),))


class TestCriticalValueSums(unittest.TestCase):
    def test_value_at_zero(self):
        K = FieldK(4)
        prime, prime_bar = factor_prime(K, 5, seed=2).primes
        phi = canonical_cm_character(K)
        sums = LValueSums(phi, BETA, prime, prime_bar, cm_periods(K, 0, digits=40), digits=40)
        symbol = PartialSymbol(sums, 0)
        zero = Cusp.from_element(K, K.elem(0))
        self.assertEqual(symbol.coefficient(zero, 0, 0), CycNum.gaussian(Fraction(4, 50), Fraction(3, 50)))
        record = next(iter(sums.records.values()))
        self.assertEqual(record.normalized, CycNum.gaussian(Fraction(4, 400), Fraction(3, 400)))


if __name__ == "__main__":
    unittest.main()
