from ...serializers import VerifySerializer
from ...utils import render_csv
from ...verification import SUITES, run_suites
from ..base import CubiclCommand

SUITES_FAILED = 'Не пройдены наборы: {}'


class Command(CubiclCommand):
    help = 'Проверка свойств: семейство, FE, RH, суммы Гаусса, константы'
    serializer_class = VerifySerializer

    def add_arguments(self, parser):
        parser.add_argument('suite', choices=('all',) + SUITES)
        super().add_arguments(parser)
        parser.add_argument('--g', type=int)
        parser.add_argument('--max-deg', type=int)

    def run(self, data, options):
        results = run_suites(data['suites'], data['spec'], data['max_deg'])
        if data['suite'] == 'gauss':
            rows = results[0].rows
            content = render_csv(rows, ['F', 'deviation'])
        else:
            rows = [{'suite': result.name, 'status': result.status,
                     'detail': result.detail} for result in results]
            content = render_csv(rows)
        self.emit(data['tower'], content, rows, options)
        failed = [result.name for result in results if not result.passed]
        if failed:
            self.fail(SUITES_FAILED.format(', '.join(failed)))
