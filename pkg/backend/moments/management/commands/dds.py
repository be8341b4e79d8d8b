import logging
from dataclasses import replace

from ...dds_explorer import (a2_series_coefficient, chi_d_triviality_scan,
                             compare_ladder, direct_f_side,
                             perron_coefficient, region_scan,
                             residue_comparison)
from ...serializers import DDS_ACTIONS, DDSSerializer
from ...utils import render_csv
from ..base import CubiclCommand

logger = logging.getLogger(__name__)

NOT_MONOTONE = 'Расхождение не убывает по лестнице отсечек'
COUNTEREXAMPLE = 'chi_D(F) != 1 при D = {}, F = {}'


class Command(CubiclCommand):
    help = 'Двойной ряд Дирихле A2(u, v): сравнение представлений и области'
    serializer_class = DDSSerializer

    def add_arguments(self, parser):
        parser.add_argument('action', choices=DDS_ACTIONS)
        super().add_arguments(parser)
        parser.add_argument('--h1')
        parser.add_argument('--h2')
        parser.add_argument('--s', type=float)
        parser.add_argument('--w', type=float)
        parser.add_argument('--ladder', '--cutoffs', nargs='+',
                            help='m_F,m_N,m_D')
        parser.add_argument('--grid', nargs='+', help='|u|:|v|')
        parser.add_argument('--m-f', type=int)
        parser.add_argument('--max-deg', type=int)
        parser.add_argument('--max-m', type=int)
        parser.add_argument('--radius', type=float)

    def run(self, data, options):
        rows = getattr(self, data['action'])(data)
        self.emit(data['tower'], render_csv(rows), rows, options)
        if data['action'] == 'chid' and not rows[0]['passed']:
            self.fail(COUNTEREXAMPLE.format(*rows[0]['counterexample']))

    def compare(self, data):
        rows, monotone = compare_ladder(data['config'], data['ladder'])
        if not monotone:
            logger.warning(NOT_MONOTONE)
        return rows

    def scan(self, data):
        q = data['q']
        grid = data['grid'] or [
            (q ** -e, q ** -f) for e in (3, 2, 1) for f in (1, 0.5)]
        return region_scan(data['config'], grid)

    def chid(self, data):
        scan = chi_d_triviality_scan(data['tower'], data['max_deg'])
        return [{
            'max_deg': data['max_deg'],
            'pairs': scan.pairs,
            'coprime': scan.coprime,
            'passed': scan.passed,
            'counterexample': scan.counterexample,
        }]

    def residue(self, data):
        return residue_comparison(
            data['tower'], data['h1'], data['h2'], data['max_m'])

    def perron(self, data):
        cfg = data['config']
        radius = data['radius'] or cfg.q ** -2
        coefficients = {}

        def series(u):
            return direct_f_side(replace(cfg, u=u), coefficients)

        rows = []
        for m in range(1, cfg.m_F + 1):
            extracted = perron_coefficient(series, m, radius)
            exact = coefficients.get(m)
            if exact is None:
                exact = a2_series_coefficient(cfg, m, cfg.m_N)
            rows.append({
                'm': m,
                'exact_re': exact.real,
                'exact_im': exact.imag,
                'perron_re': extracted.real,
                'perron_im': extracted.imag,
                'error': abs(extracted - exact),
            })
        return rows
