import io
import json
import os
import tempfile

from django.test import SimpleTestCase

from cubicl_project.cli import dispatch


class DispatchTests(SimpleTestCase):

    def run_command(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        code = dispatch(list(argv), stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()

    def test_kummer_q_rejected(self):
        code, _, stderr = self.run_command('moment', '--q', '7', '--g', '2')
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('NotNonKummer'))

    def test_odd_genus_rejected(self):
        code, _, stderr = self.run_command('moment', '--q', '5', '--g', '3')
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('OddGenus'))

    def test_usage_errors(self):
        self.assertEqual(
            self.run_command('moment', '--q', '5', '--g', '2', '--bogus')[0],
            64)
        self.assertEqual(self.run_command('moment', '--g', '2')[0], 64)
        self.assertEqual(self.run_command('nosuch')[0], 64)
        self.assertEqual(self.run_command()[0], 64)
        self.assertEqual(
            self.run_command('verify', 'nosuch', '--q', '5')[0], 64)

    def test_bad_literal(self):
        code, _, stderr = self.run_command(
            'moment', '--q', '5', '--g', '0', '--h1', '2*T')
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('BadLiteral'))

    def test_family(self):
        code, stdout, _ = self.run_command('family', '--q', '5', '--g', '2')
        self.assertEqual(code, 0)
        report = json.loads(stdout)
        self.assertEqual(report['accepted'], 480)
        self.assertEqual(report['oracle_raw'], 490)

    def test_family_list(self):
        code, stdout, _ = self.run_command(
            'family', '--q', '5', '--g', '0', '--list')
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(stdout)['members']), 20)

    def test_lpoly(self):
        code, stdout, _ = self.run_command('lpoly', '--q', '5', '--F', 'T+[0,1]')
        self.assertEqual(code, 0)
        lines = stdout.split()
        self.assertEqual(lines[:2], ['(1,0)', '(-1,0)'])
        self.assertAlmostEqual(
            float(lines[2]), (1 - 5 ** -0.5) ** 2, delta=1e-12)

    def test_manifest_on_stderr_without_out(self):
        code, stdout, stderr = self.run_command(
            'lpoly', '--q', '5', '--F', 'T+[0,1]')
        self.assertEqual(code, 0)
        manifest = json.loads(stderr.strip().split('\n')[-1])
        self.assertEqual(len(manifest['sha256']), 64)
        self.assertEqual(manifest['argv'][0], 'lpoly')
        self.assertEqual(manifest['tower']['p'], 5)
        self.assertNotIn('sha256', stdout)

    def test_lpoly_rejects_base_divisor(self):
        code, _, stderr = self.run_command('lpoly', '--q', '5', '--F', 'T')
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('HasBaseDivisor'))

    def test_moment(self):
        code, stdout, _ = self.run_command('moment', '--q', '5', '--g', '0')
        self.assertEqual(code, 0)
        report = json.loads(stdout)
        self.assertEqual(report['family_size'], 20)
        self.assertIn('NON_CONVERGENT', report['flags'])
        self.assertIsNone(report['untwisted_ratio'])
        self.assertEqual(len(report['coefficients']), 3)

    def test_moment_table(self):
        code, stdout, _ = self.run_command(
            'moment', '--q', '5', '--g', '2', '--table',
            '--pairs', '1:1', 'T:T+1')
        self.assertEqual(code, 0)
        lines = stdout.strip().split('\n')
        self.assertEqual(len(lines), 4)
        header = lines[1].split(' | ')
        for column in ('main_term_ratio', 'q_pow_g_ratio', 'untwisted_ratio'):
            self.assertIn(column, header)
        row = dict(zip(header, lines[2].split(' | ')))
        moment = float(row['moment_re'])
        self.assertAlmostEqual(float(row['q_pow_g_ratio']), moment / 25,
                               delta=1e-9 * abs(moment))
        self.assertAlmostEqual(float(row['untwisted_ratio']),
                               moment / (8 * 5 ** 4),
                               delta=1e-9 * abs(moment))
        twisted = dict(zip(header, lines[3].split(' | ')))
        self.assertEqual((twisted['h1'], twisted['h2']), ('T', 'T+1'))

    def test_constants(self):
        code, stdout, _ = self.run_command('constants', '--q', '5')
        self.assertEqual(code, 0)
        report = json.loads(stdout)
        self.assertEqual(report['S_flag'], 'NON_CONVERGENT')
        self.assertEqual(report['even_denominator'], '(1 - v^n)^2')
        self.assertLess(report['main_term'], 0)
        self.assertEqual(len(report['S_increments']), 12)
        self.assertEqual(len(report['P_increments']), 14)

    def test_constants_value_mode(self):
        code, _, stderr = self.run_command(
            'constants', '--q', '5', '--v-mode', 'value')
        self.assertEqual(code, 2)
        code, stdout, _ = self.run_command(
            'constants', '--q', '5', '--v-mode', 'value', '--v', '0.05')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(stdout)['S_flag'], 'CONVERGENT')

    def test_verify_writes_manifest(self):
        with tempfile.TemporaryDirectory() as directory:
            out = os.path.join(directory, 'family.csv')
            code, _, _ = self.run_command(
                'verify', 'family', '--q', '5', '--g', '2', '--out', out)
            self.assertEqual(code, 0)
            with open(out) as table:
                self.assertEqual(
                    table.read().split('\n')[:2],
                    ['suite,status,detail', 'family,PASS,480/480'])
            with open(out + '.manifest.json') as manifest:
                manifest = json.load(manifest)
        self.assertEqual(len(manifest['sha256']), 64)
        self.assertEqual(manifest['argv'][:2], ['verify', 'family'])
        self.assertEqual(manifest['tower']['p'], 5)

    def test_verify_gauss_csv(self):
        code, stdout, _ = self.run_command(
            'verify', 'gauss', '--q', '5', '--g', '0')
        self.assertEqual(code, 0)
        lines = stdout.strip().split('\n')
        self.assertEqual(lines[0], 'F,deviation')
        self.assertEqual(len(lines), 21)

    def test_dds_chid(self):
        code, stdout, _ = self.run_command(
            'dds', 'chid', '--q', '5', '--max-deg', '1')
        self.assertEqual(code, 0)
        header, row = stdout.strip().split('\n')
        self.assertEqual(header, 'max_deg,pairs,coprime,passed,counterexample')
        self.assertTrue(row.startswith('1,25,20,True'))

    def test_dds_compare_cutoffs(self):
        code, stdout, _ = self.run_command(
            'dds', 'compare', '--q', '5', '--s', '2', '--w', '1',
            '--cutoffs', '1,1,1')
        self.assertEqual(code, 0)
        header, row = stdout.strip().split('\n')
        columns = header.split(',')
        self.assertIn('residual', columns)
        self.assertIn('truncation_gap', columns)
        residual = float(row.split(',')[columns.index('residual')])
        self.assertLess(residual, 1e-6)

    def test_dds_scan_needs_two_degrees(self):
        code, _, stderr = self.run_command(
            'dds', 'scan', '--q', '5', '--m-f', '1')
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('TooFewDegrees'))

    def test_dds_perron(self):
        code, stdout, _ = self.run_command(
            'dds', 'perron', '--q', '5', '--m-f', '2')
        self.assertEqual(code, 0)
        rows = stdout.strip().split('\n')[1:]
        self.assertEqual(len(rows), 2)
        for row in rows:
            self.assertLess(float(row.split(',')[-1]), 1e-6)
