from ...euler_constants import (c_local_factors, even_denominator_resolution,
                                main_term, product_P, product_S)
from ...serializers import ConstantsReportSerializer, ConstantsSerializer
from ...utils import render_json
from ..base import CubiclCommand


class Command(CubiclCommand):
    help = 'Эйлеровы произведения S, C(h1, h2), P и константа главного члена'
    serializer_class = ConstantsSerializer

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--h1')
        parser.add_argument('--h2')
        parser.add_argument('--g', type=int)
        parser.add_argument('--v-mode', choices=('half', 'value'))
        parser.add_argument('--v', type=float)
        parser.add_argument('--form', choices=('roots', 'real'))
        parser.add_argument('--cutoff', type=int)
        parser.add_argument('--p-cutoff', type=int)

    def run(self, data, options):
        t, q, v = data['tower'], data['q'], data['v']
        cutoffs = {'P': data['p_cutoff'], 'S': data['cutoff'],
                   'C': data['cutoff']}
        S = product_S(q, v, data['cutoff'])
        P = product_P(q, q ** -2, data['p_cutoff'])
        factors, omitted = c_local_factors(
            t, data['h1'], data['h2'], v, data['cutoff'], data['form'])
        C = complex(1)
        for *_, local in factors:
            C *= local
        resolved, _ = even_denominator_resolution(q, 2, v)
        main = main_term(t, data['g'], data['h1'], data['h2'], cutoffs)
        report = ConstantsReportSerializer({
            'P_val': P.value.real,
            'P_tail': P.tail_estimate,
            'P_increments': [i.real for i in P.increments],
            'S_val': S.value.real,
            'S_flag': S.flag,
            'S_increments': [i.real for i in S.increments],
            'S_fit': S.fit_constant,
            'C_val': C.real,
            'C_im': C.imag,
            'C_factors': [
                {'prime': prime, 'a': a, 'b': b, 'local': complex(local).real}
                for prime, a, b, local in factors],
            'C_omitted': omitted,
            'even_denominator': resolved,
            'main_term': main.value,
            'residue_form': main.residue_form,
            'identity_residual': main.identity_residual,
            'flags': main.flags,
        }).data
        self.emit(t, render_json(report), report, options, cutoffs)
