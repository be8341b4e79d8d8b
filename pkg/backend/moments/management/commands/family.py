from characters.poly_algebra import format_poly

from ...family_moments import family_counts, family_members
from ...serializers import FamilySerializer
from ...utils import render_json
from ..base import CubiclCommand

COUNT_MISMATCH = ('Размер семейства {accepted} не совпал с формулой '
                  '{oracle_gcd}')


class Command(CubiclCommand):
    help = 'Размер семейства рода g и сверка с формулой через число простых'
    serializer_class = FamilySerializer

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--g', type=int, required=True)
        parser.add_argument('--list', action='store_true')

    def run(self, data, options):
        spec = data['spec']
        report = family_counts(spec)
        if options['list']:
            report['members'] = [
                format_poly(spec.tower, chi.F) for chi in family_members(spec)]
        self.emit(spec.tower, render_json(report), report, options)
        if report['accepted'] != report['oracle_gcd']:
            self.fail(COUNT_MISMATCH.format(**report))
