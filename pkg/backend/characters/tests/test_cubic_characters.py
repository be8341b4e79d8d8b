import random

import numpy as np
from django.test import SimpleTestCase

from characters.cubic_characters import (ZERO_EXPONENT, character_value,
                                         cubic_residue_symbol,
                                         exponents_to_eisenstein,
                                         gauss_sum_and_epsilon,
                                         has_base_divisor,
                                         has_base_prime_factor, is_primitive,
                                         power_residue,
                                         primitivity_and_conductor,
                                         residue_exponent)
from characters.eisenstein import EisensteinInt
from characters.exceptions import (HasBaseDivisor, LevelMismatch,
                                   NotPrimitive, NotPrime, NotSquarefree)
from characters.field_tower import BASE, EXT, build_tower
from characters.poly_algebra import (MonicPoly, enumerate_monic, factor_table,
                                     poly_add, poly_mul, poly_rem)


class CubicCharacterTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.t = build_tower(5)
        t = cls.t
        cls.beta = t.q
        cls.linear = MonicPoly(EXT, (t.neg(cls.beta), 1))
        cls.chi = primitivity_and_conductor(t, cls.linear)
        # roots t and t + 1, neither conjugate to the other
        quadratic = poly_mul(
            t, [t.neg(cls.beta), 1], [t.neg(cls.beta + 1), 1])
        cls.chi2 = primitivity_and_conductor(
            t, MonicPoly(EXT, tuple(quadratic)))
        cls.base_polys = [
            N for n in range(3) for N in enumerate_monic(t, BASE, n)]

    def test_resultant_symbol_matches_power_residue(self):
        t = self.t
        table = factor_table(t.p, t.k, EXT, 2)
        primes = table.primes_of_degree(1) + table.primes_of_degree(2)[:40]
        for coeffs in primes:
            prime = MonicPoly(EXT, coeffs)
            for a in self.base_polys:
                value = power_residue(t, prime, a)
                expected = ZERO_EXPONENT if value.zero else value.exponent
                self.assertEqual(
                    residue_exponent(t, coeffs, a.coeffs), expected)

    def test_symbol_is_multiplicative(self):
        t = self.t
        prime = self.linear
        for a in self.base_polys[:12]:
            for b in self.base_polys[:12]:
                product = poly_mul(t, list(a.coeffs), list(b.coeffs))
                expected = (cubic_residue_symbol(t, prime, a)
                            * cubic_residue_symbol(t, prime, b))
                self.assertEqual(
                    cubic_residue_symbol(t, prime, product), expected)

    def test_symbol_of_multiple_is_zero(self):
        t = self.t
        multiple = poly_mul(t, list(self.linear.coeffs), [1, 1])
        self.assertTrue(cubic_residue_symbol(t, self.linear, multiple).zero)
        self.assertFalse(poly_rem(t, multiple, list(self.linear.coeffs)))

    def test_symbol_rejects(self):
        t = self.t
        with self.assertRaises(LevelMismatch):
            cubic_residue_symbol(t, MonicPoly(BASE, (1, 1)), [1])
        reducible = MonicPoly(EXT, (4, 0, 1))
        with self.assertRaises(NotPrime):
            cubic_residue_symbol(t, reducible, [1, 1])

    def test_character_is_even(self):
        for chi in (self.chi, self.chi2):
            for c in range(1, self.t.q):
                self.assertEqual(chi.exponent((c,)), 0)

    def test_conductor_and_genus(self):
        self.assertEqual(self.chi.conductor.degree, 2)
        self.assertEqual(self.chi.conductor.level, BASE)
        self.assertEqual(self.chi.genus, 0)
        self.assertEqual(self.chi2.genus, 2)

    def test_rejections(self):
        t = self.t
        with self.assertRaises(HasBaseDivisor):
            primitivity_and_conductor(t, MonicPoly(EXT, (0, 1)))
        square = poly_mul(t, list(self.linear.coeffs), list(self.linear.coeffs))
        with self.assertRaises(NotSquarefree):
            primitivity_and_conductor(t, MonicPoly(EXT, tuple(square)))
        with self.assertRaises(NotPrimitive):
            primitivity_and_conductor(t, MonicPoly(EXT, (1,)))
        self.assertFalse(is_primitive(t, MonicPoly(EXT, (0, 1))))
        self.assertTrue(is_primitive(t, self.linear))

    def test_base_predicates(self):
        t = self.t
        T = MonicPoly(EXT, (0, 1))
        self.assertTrue(has_base_prime_factor(t, T))
        self.assertTrue(has_base_divisor(t, T))
        self.assertFalse(has_base_prime_factor(t, self.linear))
        # (T - beta)(T - beta^q) is the base polynomial T^2 - Tr T + N
        pair = poly_mul(t, list(self.linear.coeffs),
                        [t.neg(t.frobenius_index(self.beta)), 1])
        pair = MonicPoly(EXT, tuple(pair))
        self.assertFalse(has_base_prime_factor(t, pair))
        self.assertTrue(has_base_divisor(t, pair))

    def test_conjugates(self):
        chi = self.chi2
        conjugate = chi.conjugate()
        twin = chi.frobenius_twin()
        for a in self.base_polys:
            e = chi.exponent(a)
            expected = e if e == ZERO_EXPONENT else -e % 3
            self.assertEqual(conjugate.exponent(a), expected)
            self.assertEqual(twin.exponent(a), expected)
        self.assertEqual(conjugate.conjugate(), chi)

    def test_periodic_modulo_conductor(self):
        t = self.t
        rng = random.Random(7)
        for chi in (self.chi, self.chi2, self.chi2.conjugate()):
            conductor = list(chi.conductor.coeffs)
            for _ in range(200):
                a = [rng.randrange(t.q) for _ in range(rng.randint(0, 5))]
                a.append(rng.randrange(1, t.q))
                m = [rng.randrange(t.q) for _ in range(rng.randint(1, 3))]
                shifted = poly_add(t, a, poly_mul(t, conductor, m))
                if not any(shifted):
                    continue
                self.assertEqual(character_value(chi, shifted),
                                 character_value(chi, a))

    def test_monic_exponents_match_pointwise(self):
        for chi in (self.chi, self.chi2, self.chi2.conjugate()):
            for n in range(4):
                expected = [chi.exponent(N)
                            for N in enumerate_monic(self.t, BASE, n)]
                np.testing.assert_array_equal(
                    chi.monic_exponents(n), expected)

    def test_exponents_to_eisenstein(self):
        total = exponents_to_eisenstein(np.array([0, 0, 1, 2, 3, 3]))
        # 2 + w + w^2 = 1
        self.assertEqual(total, EisensteinInt(1, 0))

    def test_gauss_sum_modulus(self):
        for chi in (self.chi, self.chi2):
            gauss, epsilon = gauss_sum_and_epsilon(chi)
            self.assertAlmostEqual(
                abs(gauss), self.t.q ** chi.degree, delta=1e-9)
            self.assertAlmostEqual(abs(epsilon), 1, delta=1e-12)
