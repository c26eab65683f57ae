"""Coefficients, periods, stabilization and L-values of the base change of y^2 = x^3 - x."""

import unittest
from fractions import Fraction

import mpmath

from bianchi_padic.arith import CycNum, PadicEmbedding
from bianchi_padic.exceptions import LValueError, RecognitionError
from bianchi_padic.heckechar import (
    HeckeCharacter,
    canonical_cm_character,
    character_family,
    gauss_product_identity,
    norm_character,
)
from bianchi_padic.lfun import (
    ComplexVal,
    brute_force_lvalue,
    cm_periods,
    coeffs_of_bianchi,
    completed_lambda,
    curve_trace,
    euler_cancellation,
    factor_characters,
    hecke_lvalue,
    hecke_stream,
    normalization_constant,
    rationalize,
    real_period,
    recognize,
    stabilization,
    stabilization_factor,
    stabilized_lambda,
)
from bianchi_padic.quadfield import FieldK, factor_prime


class LFunctionTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.K = FieldK(4)
        cls.prime, cls.prime_bar = factor_prime(cls.K, 5, seed=2).primes
        cls.phi = canonical_cm_character(cls.K)
        cls.trivial = HeckeCharacter.trivial(cls.K)


class TestCoefficients(LFunctionTestCase):
    def test_trace_of_frobenius(self):
        self.assertEqual(curve_trace(-1, 0, 5), -2)
        self.assertEqual(curve_trace(-1, 0, 13), 6)
        self.assertEqual(curve_trace(-1, 0, 7), 0)

    def test_base_change_coefficients(self):
        coefficients = coeffs_of_bianchi(self.phi, self.trivial, 30)
        stream = coefficients.stream
        self.assertEqual(stream[1], 1)
        self.assertEqual(stream[5], -4)
        self.assertEqual(stream[3], 0)
        self.assertTrue(stream.is_multiplicative())

    def test_hecke_stream_matches_point_counts(self):
        stream = hecke_stream(self.phi, 13)
        for p in (5, 13):
            self.assertEqual(stream[p], curve_trace(-1, 0, p))


class TestPeriods(LFunctionTestCase):
    def test_real_period(self):
        omega = real_period(-1, 0, 30)
        self.assertLess(abs(omega - mpmath.mpf("5.24411510858424")), mpmath.mpf(10) ** -13)

    def test_singular_curve(self):
        with self.assertRaises(LValueError):
            real_period(0, 0)

    def test_normalization(self):
        self.assertEqual(normalization_constant(self.K, 0), Fraction(-1, 2))
        periods = cm_periods(self.K, 0, digits=30)
        ratio = periods.omega_norm / periods.omega_F
        self.assertLess(abs(ratio + mpmath.mpf(1) / 2), mpmath.mpf(10) ** -25)


class TestStabilization(LFunctionTestCase):
    def test_roots_and_slopes(self):
        embedding = PadicEmbedding.build(4, 5, 12, 2)
        data = stabilization(self.phi, embedding, self.prime, self.prime_bar)
        self.assertEqual(data.alpha, CycNum.gaussian(-1, -2))
        self.assertEqual(data.beta, CycNum.gaussian(-1, 2))
        self.assertEqual(data.a_p, -2)
        self.assertEqual((data.alpha_slope, data.beta_slope), (1, 0))
        self.assertTrue(data.ordinary)
        self.assertEqual(data.k, 0)

    def test_euler_factor_at_trivial_character(self):
        factor = stabilization_factor(self.phi, self.trivial, self.prime, self.prime_bar)
        alpha = CycNum.gaussian(-1, -2)
        self.assertEqual(factor, (1 - alpha / 5) ** 2)


class TestLValues(LFunctionTestCase):
    def test_dedekind_pole(self):
        with self.assertRaises(LValueError):
            hecke_lvalue(self.trivial, 1, 20)

    def test_smoothed_sum_agrees_with_brute_force(self):
        chi = self.phi.conj()
        smooth = hecke_lvalue(chi, 3, 20)
        rough = brute_force_lvalue(chi, 3, 400, 20)
        self.assertLess(abs(smooth.value - rough.value), rough.error + mpmath.mpf(10) ** -15)

    def test_norm_character_shift(self):
        zeta_k = hecke_lvalue(self.trivial, 3, 20)
        shifted = hecke_lvalue(norm_character(self.K), 2, 20)
        self.assertLess(abs(zeta_k.value - shifted.value), mpmath.mpf(10) ** -15)

    def test_completed_value_is_rational(self):
        periods = cm_periods(self.K, 0, digits=40)
        value = completed_lambda(self.phi, self.trivial, 40) / ComplexVal.exact(periods.omega_norm)
        self.assertEqual(recognize(value, 4).value, Fraction(1, 128))

    def test_stabilized_value(self):
        periods = cm_periods(self.K, 0, digits=40)
        value = stabilized_lambda(self.phi, self.trivial, self.prime, self.prime_bar, 40)
        value = value / ComplexVal.exact(periods.omega_norm)
        self.assertEqual(recognize(value, 4).value, CycNum.gaussian(Fraction(4, 400), Fraction(3, 400)))


class TestFactorizationIdentities(LFunctionTestCase):
    def twists(self):
        modulus = self.prime * self.prime_bar
        for psi in character_family(self.K, modulus):
            if psi.is_primitive():
                first, second = factor_characters(self.phi, psi)
                yield psi, first.norm_twist(1), second.norm_twist(1)

    def test_gauss_sums_factor(self):
        beta = self.phi.eval_ideal(self.prime_bar)
        for psi, eta, eta_prime in self.twists():
            with self.subTest(psi=psi.label):
                left, right = gauss_product_identity(psi, eta, eta_prime, self.prime, self.prime_bar, beta)
                self.assertEqual(left, right)

    def test_euler_factors_cancel(self):
        for psi, eta, eta_prime in self.twists():
            with self.subTest(psi=psi.label):
                left, right = euler_cancellation(self.phi, psi, eta, eta_prime, self.prime, self.prime_bar)
                self.assertEqual(left, right)


class TestRecognition(unittest.TestCase):
    def test_gaussian_rational(self):
        with mpmath.workdps(60):
            z = ComplexVal(mpmath.mpc(4, 3) / 50, mpmath.mpf(10) ** -50)
        self.assertEqual(recognize(z, 4).value, CycNum.gaussian(Fraction(4, 50), Fraction(3, 50)))

    def test_separation_ratio_bounds_the_second_candidate(self):
        with mpmath.workdps(60):
            z = ComplexVal(mpmath.mpc(4, 3) / 50, mpmath.mpf(10) ** -50)
        recognition = recognize(z, 4)
        self.assertGreater(recognition.separation_ratio, mpmath.mpf(10) ** 30)
        self.assertLess(recognition.residual, mpmath.mpf(10) ** -40)
        self.assertIn("separation_ratio", recognition.as_dict())

    def test_transcendental_is_rejected(self):
        with mpmath.workdps(60):
            z = ComplexVal(mpmath.mpc(mpmath.pi, mpmath.e), mpmath.mpf(10) ** -50)
        with self.assertRaises(RecognitionError):
            recognize(z, 4, height=1000)

    def test_rationalize_returns_the_value(self):
        with mpmath.workdps(60):
            z = ComplexVal(mpmath.mpc(-7, 2) / 25, mpmath.mpf(10) ** -50)
        self.assertEqual(rationalize(z, 4), CycNum.gaussian(Fraction(-7, 25), Fraction(2, 25)))

    def test_too_few_digits(self):
        with self.assertRaises(RecognitionError):
            recognize(ComplexVal(mpmath.mpc(1, 0), mpmath.mpf(10) ** -8), 4)


if __name__ == "__main__":
    unittest.main()
