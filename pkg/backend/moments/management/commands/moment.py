from cubicl_project.settings import REPORT_FILEFORMAT

from ...family_moments import FamilySpec, twisted_second_moment
from ...serializers import MomentReportSerializer, MomentSerializer
from ...utils import make_table, render_csv, render_json
from ..base import CubiclCommand

CSV_SKIP = ('coefficients', 'tower_moduli')
TABLE_COLUMNS = (
    'g', 'h1', 'h2', 'family_size', 'moment_re', 'main_term',
    'main_term_ratio', 'abs_main_term_ratio', 'q_pow_g_ratio',
    'untwisted_ratio', 'flags')


class Command(CubiclCommand):
    help = 'Точный скрученный второй момент семейства рода g'
    serializer_class = MomentSerializer

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--g', type=int, required=True)
        parser.add_argument('--h1')
        parser.add_argument('--h2')
        parser.add_argument('--threads', type=int)
        parser.add_argument('--shards', type=int)
        parser.add_argument('--cutoff-p', type=int)
        parser.add_argument('--cutoff-s', type=int)
        parser.add_argument('--cutoff-c', type=int)
        parser.add_argument('--format', choices=('json', 'csv'),
                            default='json')
        parser.add_argument('--table', action='store_true')
        parser.add_argument('--genera', type=int, nargs='+')
        parser.add_argument('--pairs', nargs='+', help='h1:h2')

    def run(self, data, options):
        if options['table']:
            return self.table(data, options)
        result = twisted_second_moment(
            data['spec'], data['threads'], data['shards'],
            cutoffs=data['cutoffs'])
        report = MomentReportSerializer(result.report()).data
        if options['format'] == 'csv':
            content = render_csv(
                [report], [key for key in report if key not in CSV_SKIP])
        else:
            content = render_json(report)
        self.emit(data['tower'], content, report, options, data['cutoffs'])

    def table(self, data, options):
        spec = data['spec']
        rows = []
        for g in data['genera'] or [spec.g]:
            for h1, h2 in data['pairs'] or [(spec.h1, spec.h2)]:
                result = twisted_second_moment(
                    FamilySpec(spec.tower, g, h1, h2), data['threads'],
                    data['shards'], cutoffs=data['cutoffs'])
                report = result.report()
                rows.append({key: report[key] for key in TABLE_COLUMNS})
        out = options.get('out')
        if out and out.endswith('.csv'):
            content = render_csv(rows, TABLE_COLUMNS)
        else:
            content = make_table(
                rows, TABLE_COLUMNS, spec.q,
                REPORT_FILEFORMAT if out else 'text/plain')
        self.emit(spec.tower, content, rows, options, data['cutoffs'])
