from characters.l_functions import l_polynomial
from cubicl_project.settings import CSV_FLOAT_FORMAT

from ...serializers import LPolySerializer
from ..base import CubiclCommand


class Command(CubiclCommand):
    help = ('Коэффициенты L-многочлена характера chi_F парами (a,b) '
            'и центральное значение |L(q^(-1/2))|^2')
    serializer_class = LPolySerializer

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--F', required=True)

    def run(self, data, options):
        L = l_polynomial(data['character'])
        lines = [str(c) for c in L.coeffs]
        lines.append(format(float(L.central_value_sq()), CSV_FLOAT_FORMAT))
        report = {
            'F': options['F'],
            'coefficients': [c.as_pair() for c in L.coeffs],
            'central_value_sq': float(L.central_value_sq()),
        }
        self.emit(data['tower'], '\n'.join(lines) + '\n', report, options)
