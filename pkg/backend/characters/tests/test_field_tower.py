import numpy as np
from django.test import SimpleTestCase

from characters.eisenstein import EisensteinValue
from characters.exceptions import (BadLiteral, LevelMismatch, NotCubeRoot,
                                   NotNonKummer, NotOdd, NotPrimePower)
from characters.field_tower import BASE, EXT, build_tower, build_tower_for_q


class FieldTowerTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.tower = build_tower(5)

    def test_rejected_q(self):
        for q, error in ((7, NotNonKummer), (9, NotNonKummer),
                         (6, NotPrimePower), (1, NotPrimePower),
                         (2, NotOdd), (13, NotNonKummer)):
            with self.subTest(q=q), self.assertRaises(error):
                build_tower_for_q(q)

    def test_accepted_q(self):
        for q in (5, 11, 17):
            t = build_tower_for_q(q)
            self.assertEqual(t.Q, q * q)
            self.assertEqual(t.k, 1)

    def test_cube_root_of_unity(self):
        t = self.tower
        self.assertNotEqual(t.omega_image, 1)
        self.assertEqual(t.pow_slow(t.omega_image, 3), 1)
        self.assertFalse(t.is_base(t.omega_image))

    def test_log_tables_match_coordinate_arithmetic(self):
        t = self.tower
        for x in range(t.Q):
            for y in range(t.Q):
                self.assertEqual(t.mul(x, y), t.mul_slow(x, y))

    def test_field_axioms_exhaustive(self):
        for q in (5, 11, 17, 23):
            t = build_tower(q)
            elements = np.arange(t.Q)
            add = np.array([[t.add(x, y) for y in elements] for x in elements])
            mul = np.array([[t.mul(x, y) for y in elements] for x in elements])
            frob = np.array([t.frobenius_index(x) for x in elements])
            with self.subTest(q=q):
                np.testing.assert_array_equal(add, add.T)
                np.testing.assert_array_equal(mul, mul.T)
                np.testing.assert_array_equal(add[0], elements)
                np.testing.assert_array_equal(mul[1], elements)
                self.assertTrue((add == 0).sum(axis=1).tolist()
                                == [1] * t.Q)
                self.assertTrue((mul[1:, 1:] == 1).sum(axis=1).tolist()
                                == [1] * (t.Q - 1))
                for a in elements:
                    np.testing.assert_array_equal(add[add[a]], add[a][add])
                    np.testing.assert_array_equal(mul[mul[a]], mul[a][mul])
                    np.testing.assert_array_equal(
                        mul[a][add], add[np.ix_(mul[a], mul[a])])
                # x -> x^q is a ring automorphism fixing F_q
                np.testing.assert_array_equal(
                    frob[add], add[np.ix_(frob, frob)])
                np.testing.assert_array_equal(
                    frob[mul], mul[np.ix_(frob, frob)])
                np.testing.assert_array_equal(frob[:q], elements[:q])
                self.assertEqual(len(set(frob.tolist())), t.Q)

    def test_inverse(self):
        t = self.tower
        for x in range(1, t.Q):
            self.assertEqual(t.mul(x, t.inv(x)), 1)
        with self.assertRaises(ZeroDivisionError):
            t.inv(0)

    def test_frobenius_is_qth_power(self):
        for q in (5, 11):
            t = build_tower(q)
            for x in range(t.Q):
                self.assertEqual(t.frobenius_index(x), t.pow_slow(x, q))

    def test_frobenius_fixes_base(self):
        t = self.tower
        for x in range(t.q):
            self.assertEqual(t.frobenius_index(x), x)

    def test_norm_lands_in_base(self):
        t = self.tower
        for x in range(1, t.Q):
            self.assertTrue(t.is_base(t.norm_to_base(x)))

    def test_additive_character_is_homomorphism(self):
        for q in (5, 11, 17):
            t = build_tower(q)
            for x in range(q):
                for y in range(q):
                    self.assertAlmostEqual(
                        t.psi(t.add(x, y)), t.psi(x) * t.psi(y), delta=1e-12)

    def test_additive_character_needs_base(self):
        t = self.tower
        self.assertAlmostEqual(
            t.additive_character(t.element(1, BASE)), t.psi(1), delta=1e-15)
        with self.assertRaises(LevelMismatch):
            t.additive_character(t.element(7))

    def test_cube_root_embedding(self):
        t = self.tower
        for exponent in range(3):
            value = EisensteinValue(exponent=exponent)
            image = t.cube_root_embedding(value)
            self.assertEqual(t.cube_root_embedding(image, 'inverse'), value)
        with self.assertRaises(NotCubeRoot):
            t.omega_exponent(2)
        with self.assertRaises(ValueError):
            t.cube_root_embedding(EisensteinValue(), 'sideways')

    def test_frobenius_element(self):
        t = self.tower
        with self.assertRaises(LevelMismatch):
            t.frobenius(t.element(3, BASE))
        x = t.element(7)
        self.assertEqual(t.index(t.frobenius(t.frobenius(x))), 7)

    def test_element_literals(self):
        t = self.tower
        self.assertEqual(t.parse_element('3'), 3)
        self.assertEqual(t.parse_element('[2,1]'), 2 + t.q)
        self.assertEqual(t.format_element(2 + t.q), '[2,1]')
        self.assertEqual(t.format_element(3, BASE), '3')
        for text in ('7', '[1,2,3]', 'w', '[5,0]'):
            with self.subTest(text=text), self.assertRaises(BadLiteral):
                t.parse_element(text)
        with self.assertRaises(LevelMismatch):
            t.parse_element('[0,1]', BASE)

    def test_element_levels(self):
        t = self.tower
        self.assertEqual(t.element(7).level, EXT)
        with self.assertRaises(LevelMismatch):
            t.element(7, BASE)

    def test_describe(self):
        description = self.tower.describe()
        self.assertEqual(description['p'], 5)
        self.assertIsNone(description['base_modulus'])
        self.assertEqual(description['ext_modulus'][-1], 1)
