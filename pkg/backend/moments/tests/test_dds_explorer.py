from dataclasses import replace

import numpy as np
from django.test import SimpleTestCase

from characters.exceptions import TailTooLarge, TooFewDegrees
from characters.field_tower import BASE, build_tower
from characters.poly_algebra import MonicPoly, parse_poly
from moments.dds_explorer import (DECAYING, GROWING, DDSConfig,
                                  a2_mobius_representation,
                                  a2_series_coefficient, chi_d_triviality_scan,
                                  classify, compare_ladder, direct_f_side,
                                  euler_series, f_side_direct,
                                  f_side_partial_sum,
                                  ext_primes, moebius_indicator,
                                  perron_coefficient, region_scan,
                                  residue_comparison)
from moments.family_moments import FamilySpec, twisted_second_moment

ONE = MonicPoly(BASE, (1,))


class MobiusSideTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.t = build_tower(5)
        cls.cfg = DDSConfig.from_sw(cls.t, ONE, ONE, 2, 1)

    def test_config(self):
        self.assertAlmostEqual(self.cfg.u, 5 ** -4, delta=1e-18)
        self.assertAlmostEqual(self.cfg.v, 0.2, delta=1e-15)
        self.assertAlmostEqual(self.cfg.s, 2, delta=1e-12)
        self.assertAlmostEqual(self.cfg.w, 1, delta=1e-12)

    def test_ext_primes(self):
        primes = ext_primes(self.t, 2)
        self.assertEqual(len(primes.inert), 5)
        self.assertEqual(len(primes.split), 10 + 150)
        self.assertTrue((primes.degrees[primes.inert] == 1).all())

    def test_untwisted_principal_pair(self):
        cfg = self.cfg.with_cutoffs(2, 0, 2)
        u = cfg.u
        expected = (1 + 2 * u) ** 10 * (1 + 2 * u ** 2) ** 150
        result = a2_mobius_representation(cfg)
        self.assertEqual(result.pairs, 1)
        self.assertAlmostEqual(result.value, expected, delta=1e-13)
        # with the L-series cut at degree 0 each character counts once
        truncated = 1 + 20 * u + 480 * u ** 2
        self.assertAlmostEqual(direct_f_side(cfg), truncated, delta=1e-13)
        self.assertAlmostEqual(result.matched, truncated, delta=1e-13)

    def test_euler_series_coefficients(self):
        cfg = self.cfg.with_cutoffs(2, 0, 2)
        primes = ext_primes(self.t, 2)
        psi = np.ones(len(primes.coeffs), dtype=complex)
        np.testing.assert_allclose(
            euler_series(psi, primes, 2), [1, 20, 480], atol=1e-9)
        # the series does not depend on u; evaluation does
        self.assertAlmostEqual(
            a2_mobius_representation(replace(cfg, u=0.01)).matched,
            1 + 0.2 + 0.048, delta=1e-12)

    def test_tail_tolerance(self):
        with self.assertRaises(TailTooLarge):
            a2_mobius_representation(
                self.cfg.with_cutoffs(1, 1, 1), tolerance=1e-30)

    def test_ladder(self):
        rows, monotone = compare_ladder(self.cfg)
        self.assertTrue(monotone)
        for row in rows:
            with self.subTest(cutoffs=(row['m_F'], row['m_D'])):
                self.assertLess(row['residual'], 1e-6)
        gaps = [row['truncation_gap'] for row in rows]
        self.assertEqual(gaps, sorted(gaps, reverse=True))
        self.assertEqual(
            [(row['m_F'], row['m_N'], row['m_D']) for row in rows],
            [(1, 1, 1), (2, 1, 2), (3, 1, 3)])

    def test_twisted_ladder(self):
        h = parse_poly(self.t, 'T')
        cfg = DDSConfig.from_sw(self.t, h, ONE, 2, 1)
        rows, _ = compare_ladder(cfg, [(1, 1, 1), (2, 1, 2)])
        for row in rows:
            self.assertLess(row['residual'], 1e-6)


class FSideTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.t = build_tower(5)

    def test_coefficient_at_half_is_moment(self):
        cfg = DDSConfig(self.t, ONE, ONE, 5 ** -2, 5 ** -0.5)
        moment = twisted_second_moment(
            FamilySpec(self.t, 2), threads=1, with_main_term=False)
        self.assertAlmostEqual(
            a2_series_coefficient(cfg, 2), moment.value,
            delta=1e-9 * abs(moment.value))

    def test_partial_sum_matches_double_sum(self):
        h = parse_poly(self.t, 'T')
        points = ((ONE, 5 ** -4, 0.2), (ONE, 0.01, 5 ** -0.5),
                  (h, 0.003, 0.3 + 0.1j))
        for h1, u, v in points:
            with self.subTest(u=u, v=v):
                cfg = DDSConfig(self.t, h1, ONE, u, v)
                expected = f_side_direct(cfg, 2)
                self.assertAlmostEqual(
                    f_side_partial_sum(cfg, 2), expected,
                    delta=1e-9 * max(abs(expected), 1))

    def test_perron_extraction(self):
        self.assertAlmostEqual(
            perron_coefficient([1, 2, 3], 1, 0.5), 2, delta=1e-12)
        self.assertAlmostEqual(
            perron_coefficient(np.exp, 3, 0.5), 1 / 6, delta=1e-12)

    def test_classify(self):
        self.assertEqual(classify(1.0), GROWING)
        self.assertEqual(classify(-1.0), DECAYING)
        self.assertEqual(classify(0.0), 'flat')

    def test_region_scan(self):
        cfg = DDSConfig(self.t, ONE, ONE, 5 ** -4, 0.2)
        rows = region_scan(cfg, [(5 ** -3, 0.2), (0.2, 0.2)])
        self.assertEqual([row['class'] for row in rows], [DECAYING, GROWING])

    def test_region_scan_needs_two_degrees(self):
        cfg = DDSConfig(self.t, ONE, ONE, 5 ** -4, 0.2, m_F=1)
        with self.assertRaises(TooFewDegrees):
            region_scan(cfg, [(5 ** -3, 0.2)])

    def test_chi_d_triviality(self):
        scan = chi_d_triviality_scan(self.t, 2)
        self.assertTrue(scan.passed)
        self.assertEqual(scan.pairs, 900)
        self.assertEqual(scan.coprime, 720)
        self.assertIsNone(scan.counterexample)

    def test_chi_d_triviality_degree_three(self):
        scan = chi_d_triviality_scan(self.t, 3)
        self.assertTrue(scan.passed)
        self.assertEqual(scan.pairs, 155 ** 2)
        # monic pairs of positive degree are coprime with probability 1 - 1/q
        self.assertEqual(scan.coprime, 155 ** 2 * 4 // 5)

    def test_moebius_indicator(self):
        self.assertEqual(moebius_indicator(self.t, ONE), 1)
        self.assertEqual(
            moebius_indicator(self.t, parse_poly(self.t, 'T^2+T')), 0)
        self.assertEqual(
            moebius_indicator(self.t, parse_poly(self.t, 'T^3')), 0)

    def test_residue_comparison(self):
        rows = residue_comparison(self.t, ONE, ONE, max_m=2)
        self.assertEqual([row['family_size'] for row in rows], [20, 480])
        for row in rows:
            self.assertIn('NON_CONVERGENT', row['flags'])
            self.assertAlmostEqual(row['a2_im'], 0, delta=1e-9)
