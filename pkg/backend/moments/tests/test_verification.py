from django.test import SimpleTestCase

from characters.field_tower import build_tower
from moments.family_moments import FamilySpec
from moments.verification import (FAILED, PASSED, SuiteResult,
                                  character_checks, run_suites)


class VerificationTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.spec = FamilySpec(build_tower(5), 0)

    def test_suites_pass(self):
        names = ('family', 'fe', 'rh', 'gauss', 'chid', 'constants', 'moment')
        with self.assertLogs('moments.verification', 'INFO'):
            results = run_suites(names, self.spec, max_deg=1)
        self.assertEqual([result.name for result in results], list(names))
        for result in results:
            with self.subTest(suite=result.name):
                self.assertEqual(result.status, PASSED, result.detail)

    def test_character_checks(self):
        rows = character_checks(self.spec)
        self.assertEqual(len(rows), 20)
        for row in rows:
            self.assertLess(row['deviation'], 1e-6)
            self.assertEqual(row['rh_deviation'], 0.0)

    def test_status(self):
        self.assertEqual(SuiteResult('x', False).status, FAILED)
