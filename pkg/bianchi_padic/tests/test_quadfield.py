"""Field, ideal, residue-group and cusp arithmetic of Q(i) and a few other fields."""

import unittest
from fractions import Fraction

from bianchi_padic.arith import CycNum
from bianchi_padic.exceptions import FieldError
from bianchi_padic.quadfield import (
    Cusp,
    FieldK,
    IdealK,
    Matrix2,
    c_stability_check,
    crt_lift,
    cusp_in_C,
    factor_ideal,
    factor_prime,
    gamma1_samples,
    ideals_of_norm,
    is_fundamental,
    residue_group,
    sample_cusps,
    stabilization_matrices,
)


class TestField(unittest.TestCase):
    def test_gaussian_field_invariants(self):
        K = FieldK(4)
        self.assertEqual(K.w, 4)
        self.assertEqual(K.class_number, 1)
        self.assertEqual(len(K.units), 4)
        self.assertEqual(K.omega * K.omega, -1)

    def test_other_fields(self):
        self.assertEqual(FieldK(3).w, 6)
        self.assertEqual(FieldK(3).class_number, 1)
        self.assertEqual(FieldK(7).class_number, 1)
        self.assertEqual(FieldK(20).class_number, 2)
        self.assertEqual(FieldK(23).class_number, 3)

    def test_fundamental_discriminants(self):
        self.assertTrue(is_fundamental(4))
        self.assertTrue(is_fundamental(8))
        self.assertTrue(is_fundamental(3))
        self.assertFalse(is_fundamental(16))
        self.assertFalse(is_fundamental(1))
        with self.assertRaises(FieldError):
            FieldK(16)

    def test_class_number_gate(self):
        with self.assertRaises(FieldError):
            FieldK(23).require_class_number_one()

    def test_norm_conjugate_and_inverse(self):
        K = FieldK(4)
        z = K.elem(4, 3)
        self.assertEqual(z.norm(), 25)
        self.assertEqual(z * z.conj(), 25)
        self.assertEqual(z * z.inverse(), 1)
        self.assertEqual(z.to_cyc(), CycNum.gaussian(4, 3))

    def test_elements_of_norm(self):
        K = FieldK(4)
        found = set(K.elements_of_norm(5))
        self.assertEqual(len(found), 8)
        self.assertIn(K.elem(1, 2), found)

    def test_unit_index(self):
        K = FieldK(4)
        self.assertEqual(K.unit_index(K.elem(0, 1)), 1)
        with self.assertRaises(FieldError):
            K.unit_index(K.elem(2, 0))


class TestIdeals(unittest.TestCase):
    def setUp(self):
        self.K = FieldK(4)

    def test_splitting_types(self):
        self.assertEqual(factor_prime(self.K, 5).kind, "split")
        self.assertEqual(factor_prime(self.K, 3).kind, "inert")
        self.assertEqual(factor_prime(self.K, 2).kind, "ramified")
        with self.assertRaises(FieldError):
            factor_prime(self.K, 4)

    def test_seed_orders_the_primes(self):
        prime, prime_bar = factor_prime(self.K, 5, seed=2).primes
        self.assertTrue(prime.contains(self.K.elem(-2, 1)))
        self.assertTrue(prime_bar.contains(self.K.elem(-3, 1)))
        self.assertEqual(prime.conj(), prime_bar)
        self.assertEqual(prime.norm, 5)

    def test_factorization_of_five(self):
        prime, prime_bar = factor_prime(self.K, 5).primes
        factors = factor_ideal(IdealK.principal(self.K, self.K.elem(5)))
        self.assertEqual(factors, {prime: 1, prime_bar: 1})

    def test_generators(self):
        prime, _ = factor_prime(self.K, 5, seed=2).primes
        pi = prime.require_generator()
        self.assertEqual(pi.norm(), 5)
        self.assertEqual(IdealK.principal(self.K, pi), prime)

    def test_ideals_of_norm(self):
        self.assertEqual(len(ideals_of_norm(self.K, 25)), 3)
        self.assertEqual(ideals_of_norm(self.K, 3), [])
        self.assertEqual(len(ideals_of_norm(self.K, 9)), 1)
        self.assertEqual(len(ideals_of_norm(self.K, 10)), 2)

    def test_crt(self):
        prime, prime_bar = factor_prime(self.K, 5).primes
        z = crt_lift(prime, self.K.elem(1), prime_bar, self.K.elem(0))
        self.assertTrue(prime.contains(z - 1))
        self.assertTrue(prime_bar.contains(z))

    def test_divide(self):
        prime, prime_bar = factor_prime(self.K, 5).primes
        self.assertEqual((prime * prime_bar).divide(prime), prime_bar)
        with self.assertRaises(FieldError):
            prime.divide(prime_bar)


class TestResidueGroups(unittest.TestCase):
    def setUp(self):
        self.K = FieldK(4)
        self.prime, self.prime_bar = factor_prime(self.K, 5, seed=2).primes

    def test_orders(self):
        self.assertEqual(residue_group(self.K, self.prime).order, 4)
        self.assertEqual(residue_group(self.K, self.prime ** 2).order, 20)
        self.assertEqual(residue_group(self.K, self.prime * self.prime_bar).order, 16)
        self.assertEqual(residue_group(self.K, IdealK.unit(self.K)).order, 1)

    def test_cm_modulus_group(self):
        two = factor_prime(self.K, 2).primes[0]
        group = residue_group(self.K, two ** 3)
        self.assertEqual(group.order, 4)
        self.assertEqual(len(set(group.unit_images())), 4)

    def test_logs_are_homomorphic(self):
        group = residue_group(self.K, self.prime * self.prime_bar)
        for x in group.elements[:6]:
            for y in group.elements[:6]:
                expected = tuple((a + b) % n for a, b, n in zip(group.log(x), group.log(y), group.orders))
                self.assertEqual(group.log(group.mul(x, y)), expected)

    def test_non_unit_has_no_log(self):
        group = residue_group(self.K, self.prime)
        with self.assertRaises(FieldError):
            group.log(self.K.elem(5))

    def test_character_count(self):
        group = residue_group(self.K, self.prime * self.prime_bar)
        self.assertEqual(len(list(group.characters())), 16)

    def test_pairing_is_a_character(self):
        group = residue_group(self.K, self.prime * self.prime_bar)
        x, y = group.elements[1], group.elements[2]
        for character in list(group.characters())[:5]:
            total = (group.pairing(character, x) + group.pairing(character, y)) % group.exponent
            self.assertEqual(group.pairing(character, group.mul(x, y)), total)
            self.assertEqual(group.pairing(character, group.one), 0)


class TestCusps(unittest.TestCase):
    def setUp(self):
        self.K = FieldK(4)
        self.m = factor_prime(self.K, 2).primes[0] ** 3

    def test_normalization_is_unit_invariant(self):
        i = self.K.elem(0, 1)
        self.assertEqual(Cusp.normalized(self.K, self.K.elem(2), self.K.elem(4)), Cusp.normalized(self.K, i, i * 2))
        self.assertEqual(Cusp.normalized(self.K, self.K.elem(1), self.K.elem(2)).value(), self.K.elem(Fraction(1, 2)))

    def test_infinity(self):
        self.assertTrue(Cusp.normalized(self.K, self.K.elem(3), self.K.elem(0)).is_infinity())
        with self.assertRaises(FieldError):
            Cusp.normalized(self.K, self.K.elem(0), self.K.elem(0))

    def test_matrix_action(self):
        T = Matrix2.of(self.K, 1, 1, 0, 1)
        zero = Cusp.from_element(self.K, self.K.elem(0))
        self.assertEqual(T.act(zero).value(), self.K.elem(1))
        self.assertEqual((T @ T.inverse()), Matrix2.identity(self.K))

    def test_membership_in_C(self):
        one = self.K.elem(1)
        self.assertTrue(cusp_in_C(self.K, self.m, Cusp.normalized(self.K, one, self.K.elem(5))))
        self.assertTrue(cusp_in_C(self.K, self.m, Cusp.normalized(self.K, one, self.K.elem(2, 2))))
        self.assertFalse(cusp_in_C(self.K, self.m, Cusp.normalized(self.K, one, self.K.elem(1, 1))))
        self.assertFalse(cusp_in_C(self.K, self.m, Cusp.normalized(self.K, one, self.K.elem(2))))

    def test_gamma1_preserves_C(self):
        cusps = sample_cusps(
            self.K,
            [self.K.elem(1), self.K.elem(5), self.K.elem(2, 1), self.K.elem(2, 2)],
            [self.K.elem(0), self.K.elem(1), self.K.elem(0, 1)],
        )
        report = c_stability_check(self.K, self.m, gamma1_samples(self.K, self.m, 1), cusps)
        self.assertTrue(report.ok)
        self.assertGreater(report.checked, 0)

    def test_stabilization_matrices_preserve_C(self):
        prime = factor_prime(self.K, 5, seed=2).primes[0]
        pi = prime.require_generator()
        matrices = stabilization_matrices(self.K, pi, prime.residues())
        self.assertEqual(len(matrices), 7)
        self.assertEqual(matrices[0].act(Cusp.from_element(self.K, self.K.elem(1))).value(), 1 / pi)
        cusps = sample_cusps(self.K, [self.K.elem(1), pi, self.K.elem(5)], [self.K.elem(0), self.K.elem(1), self.K.omega])
        report = c_stability_check(self.K, self.m, matrices, cusps)
        self.assertTrue(report.ok, report.counterexamples)
        self.assertEqual(report.checked, 7 * len(cusps))


if __name__ == "__main__":
    unittest.main()
