"""Property suites behind the verify command."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from characters.cubic_characters import gauss_sum_and_epsilon
from characters.field_tower import BASE
from characters.l_functions import (gauss_sum_from_coefficients, l_polynomial,
                                    verify_functional_equation,
                                    verify_riemann_hypothesis)
from characters.poly_algebra import MonicPoly, format_poly
from cubicl_project.settings import TOLERANCES

from .dds_explorer import DDSConfig, chi_d_triviality_scan, compare_ladder
from .euler_constants import (NON_CONVERGENT, SERIES,
                              even_denominator_resolution, local_factor_gp,
                              local_prefactor, main_term, product_P,
                              product_S)
from .family_moments import (direct_moment, family_counts,
                             family_members, family_polynomials,
                             twisted_second_moment)

logger = logging.getLogger(__name__)

SUITE_DONE = 'Набор %s: %s'
PASSED = 'PASS'
FAILED = 'FAIL'
ONE = MonicPoly(BASE, (1,))


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ''
    rows: list = field(default_factory=list)

    @property
    def status(self):
        return PASSED if self.passed else FAILED


def character_checks(spec):
    """Per-character residuals of the functional equation, RH and |G|."""
    t = spec.tower
    rows = []
    for chi in family_members(spec):
        L = l_polynomial(chi)
        gauss, epsilon = gauss_sum_and_epsilon(chi)
        norm = t.q ** chi.degree
        rows.append({
            'F': format_poly(t, chi.F),
            'fe_residual': verify_functional_equation(chi, L, epsilon),
            'rh_deviation': verify_riemann_hypothesis(L),
            'deviation': abs(abs(gauss) - norm) / norm,
            'coefficient_gap': abs(gauss - gauss_sum_from_coefficients(L)),
        })
    return rows


def _worst(rows, key):
    return max((row[key] for row in rows), default=0.0)


def suite_family(spec):
    counts = family_counts(spec)
    passed = (counts['accepted'] == counts['oracle_gcd']
              and counts['base_prime_factor_free'] == counts['oracle_raw'])
    return SuiteResult('family', passed, '{accepted}/{oracle_gcd}'.format(
        **counts), [counts])


def suite_fe(spec, rows):
    worst = _worst(rows, 'fe_residual')
    return SuiteResult('fe', worst < TOLERANCES['FE'], f'{worst:.3g}')


def suite_rh(spec, rows):
    worst = _worst(rows, 'rh_deviation')
    return SuiteResult('rh', worst < TOLERANCES['RH'], f'{worst:.3g}')


def suite_gauss(spec, rows):
    worst = _worst(rows, 'deviation')
    gap = _worst(rows, 'coefficient_gap') / spec.q ** spec.degree
    return SuiteResult(
        'gauss',
        worst < TOLERANCES['GAUSS'] and gap < TOLERANCES['GAUSS'],
        f'{worst:.3g}',
        [{'F': row['F'], 'deviation': row['deviation']} for row in rows])


def suite_chid(spec, max_deg):
    scan = chi_d_triviality_scan(spec.tower, max_deg)
    detail = f'{scan.coprime}/{scan.pairs}'
    if scan.counterexample:
        detail += ' D={}, F={}'.format(*scan.counterexample)
    return SuiteResult('chid', scan.passed, detail)


def suite_constants(spec):
    q = spec.q
    checks = []
    checks += [local_prefactor(q, n) == 1 for n in (1, 3, 5, 7)]
    checks += [local_prefactor(q, n) == 1 / (1 + Fraction(2, q ** n))
               for n in (2, 4)]
    for n in (1, 2):
        for x in (0.05, 0.1, 0.2, 0.3):
            v = x ** (1 / n)
            gap = abs(local_factor_gp(q, n, v)
                      - local_factor_gp(q, n, v, SERIES))
            checks.append(gap < 1e-12)
    resolved, _ = even_denominator_resolution(q, 2, 0.3)
    checks.append(resolved == '(1 - v^n)^2')
    short, long = product_P(q, q ** -2, 12), product_P(q, q ** -2, 16)
    checks.append(abs(short.value - long.value) < 1e-8)
    checks.append(0 < long.value.real < 1)
    half = product_S(q, q ** -0.5)
    checks.append(half.flag == NON_CONVERGENT)
    checks.append(0.7 <= half.fit_constant <= 1.3)
    small = abs(product_S(q, 0.05, 10).value - product_S(q, 0.05, 14).value)
    checks.append(small < 1e-10)
    identity = main_term(spec.tower, spec.g, spec.h1, spec.h2)
    checks.append(
        identity.identity_residual < TOLERANCES['MAIN_TERM_IDENTITY'])
    return SuiteResult(
        'constants', all(checks), f'{sum(checks)}/{len(checks)}')


def suite_moment(spec):
    polys = family_polynomials(spec)
    results = [twisted_second_moment(spec, threads=1, shards=shards,
                                     with_main_term=False)
               for shards in (1, 4, 16)]
    polynomials = {result.polynomial for result in results}
    value = results[0].value
    direct = direct_moment(spec, polys)
    gap = abs(value - direct) / max(abs(direct), 1)
    swapped = twisted_second_moment(
        spec.swapped(), threads=1, with_main_term=False)
    passed = (len(polynomials) == 1 and gap < 1e-12
              and swapped.polynomial == results[0].polynomial.conjugate())
    if spec.h1 == spec.h2:
        passed = passed and not any(results[0].polynomial.omega)
    return SuiteResult('moment', passed, f'{gap:.3g}')


def suite_dds(spec):
    cfg = DDSConfig.from_sw(spec.tower, ONE, ONE, 2, 1)
    rows, monotone = compare_ladder(cfg)
    worst = _worst(rows, 'residual')
    return SuiteResult(
        'dds', monotone and worst < TOLERANCES['DDS_RESIDUAL'],
        f'{worst:.3g}', rows)


SUITES = ('family', 'fe', 'rh', 'gauss', 'chid', 'constants', 'moment', 'dds')


def run_suites(names, spec, max_deg=2):
    rows = None
    results = []
    for name in names:
        if name in ('fe', 'rh', 'gauss'):
            rows = character_checks(spec) if rows is None else rows
            result = globals()[f'suite_{name}'](spec, rows)
        elif name == 'chid':
            result = suite_chid(spec, max_deg)
        else:
            result = globals()[f'suite_{name}'](spec)
        logger.info(SUITE_DONE, name, result.status)
        results.append(result)
    return results
