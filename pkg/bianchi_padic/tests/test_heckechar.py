"""Hecke characters over Q(i): the CM character, families mod 5, Gauss sums and avatars."""

import unittest
from fractions import Fraction

from bianchi_padic.arith import PadicEmbedding
from bianchi_padic.exceptions import CharacterError
from bianchi_padic.heckechar import (
    InfinityType,
    canonical_cm_character,
    character_family,
    character_from_phases,
    characters_by_conductor,
    gauss_sum_W,
    norm_character,
    p_adic_avatar,
    twisted_orthogonality_sum,
)
from bianchi_padic.quadfield import FieldK, IdealK, factor_prime


class HeckeTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.K = FieldK(4)
        cls.prime, cls.prime_bar = factor_prime(cls.K, 5, seed=2).primes
        cls.phi = canonical_cm_character(cls.K)

    def ideal(self, a, b=0):
        return IdealK.principal(self.K, self.K.elem(a, b))


class TestCanonicalCharacter(HeckeTestCase):
    def test_values_on_split_primes(self):
        # -1 +/- 2i are congruent to 1 modulo (1+i)^3
        self.assertEqual(self.phi.eval_ideal(self.ideal(-1, 2)), self.K.elem(-1, 2).to_cyc())
        self.assertEqual(self.phi.eval_ideal(self.ideal(-1, -2)), self.K.elem(-1, -2).to_cyc())

    def test_vanishes_off_the_modulus(self):
        self.assertTrue(self.phi.eval_ideal(self.ideal(1, 1)).is_zero())

    def test_primitive_of_conductor_eight(self):
        self.assertTrue(self.phi.is_primitive())
        self.assertEqual(self.phi.conductor().norm, 8)
        self.assertEqual(self.phi.infinity, InfinityType(-1, 0))

    def test_unit_compatibility_is_enforced(self):
        with self.assertRaises(CharacterError):
            character_from_phases(self.K, self.phi.modulus, InfinityType(0, 0), list(self.phi.phases))

    def test_products_and_twists(self):
        square = self.phi * self.phi
        self.assertEqual(square.infinity, InfinityType(-2, 0))
        self.assertEqual(square.eval_ideal(self.ideal(-1, 2)), (self.K.elem(-1, 2) ** 2).to_cyc())
        self.assertEqual(norm_character(self.K).eval_ideal(self.ideal(1, 2)), Fraction(1, 5))

    def test_fingerprint_ignores_imprimitive_modulus(self):
        widened = self.phi.with_modulus(self.phi.modulus * self.prime)
        self.assertFalse(widened.is_primitive())
        self.assertEqual(widened.primitive().modulus, self.phi.modulus)
        self.assertEqual(widened.fingerprint(), self.phi.fingerprint())

    def test_conjugate_character(self):
        conj = self.phi.conj()
        self.assertEqual(conj.infinity, InfinityType(0, -1))
        self.assertEqual(conj.eval_ideal(self.ideal(-1, -2)), self.phi.eval_ideal(self.ideal(-1, 2)))


class TestFamilies(HeckeTestCase):
    def test_family_sizes(self):
        self.assertEqual(len(character_family(self.K, self.prime)), 1)
        self.assertEqual(len(character_family(self.K, self.prime * self.prime_bar)), 4)

    def test_table_modulo_five(self):
        entries = list(characters_by_conductor(self.K, self.prime, self.prime_bar, 1, 1))
        self.assertEqual(len(entries), 7)
        primitive = [e for e in entries if e.primitive]
        self.assertEqual(len(primitive), 4)
        self.assertEqual(sorted((e.t, e.s) for e in primitive), [(0, 0), (1, 1), (1, 1), (1, 1)])

    def test_gauss_sum_absolute_value(self):
        for entry in characters_by_conductor(self.K, self.prime, self.prime_bar, 1, 1):
            if not entry.primitive:
                self.assertIsNone(entry.gauss_sum)
                continue
            record = entry.as_dict()
            self.assertEqual(record["gauss_sum_norm_squared"], str(entry.character.conductor().norm))

    def test_gauss_sum_needs_primitive(self):
        imprimitive = character_family(self.K, self.prime)[0]
        with self.assertRaises(CharacterError):
            gauss_sum_W(imprimitive)

    def test_orthogonality(self):
        for psi in character_family(self.K, self.prime * self.prime_bar):
            if psi.is_trivial():
                continue
            gamma = psi.modulus.require_generator()
            self.assertTrue(twisted_orthogonality_sum(psi, gamma).is_zero())


class TestAvatar(HeckeTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.embedding = PadicEmbedding.build(4, 5, 12, 2)
        cls.psi = next(
            psi for psi in character_family(cls.K, cls.prime * cls.prime_bar) if not psi.is_trivial()
        )

    def test_exponents(self):
        avatar = p_adic_avatar(self.psi, self.embedding, self.prime, self.prime_bar)
        self.assertEqual(avatar.exponents, (1, 1))
        self.assertEqual(avatar.describe()["fingerprint"], self.psi.fingerprint())

    def test_trivial_on_units_and_multiplicative(self):
        avatar = p_adic_avatar(self.psi, self.embedding, self.prime, self.prime_bar)
        self.assertTrue(avatar.is_trivial_on_units())
        x, y = self.K.elem(1, 1), self.K.elem(3, 1)
        self.assertTrue((avatar(x * y) - avatar(x) * avatar(y)).is_zero)
        self.assertTrue((avatar(self.K.elem(6)) - 1).is_zero)

    def test_cm_character_is_not_supported_above_p(self):
        with self.assertRaises(CharacterError):
            p_adic_avatar(self.phi, self.embedding, self.prime, self.prime_bar)


if __name__ == "__main__":
    unittest.main()
