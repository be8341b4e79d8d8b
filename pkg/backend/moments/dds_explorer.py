"""Numerics of the double Dirichlet series A2(u, v).

u = q^(-2s) tracks the degree of F, v = q^(-w) the degree of N in the
L-series. The F-side is the defining sum over the family; the Moebius
side is its rearrangement as a sum over (N1, N2) of Euler products over
the primes of F_(q^2)[T].
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from characters.cubic_characters import (VALUE_WEIGHTS, ZERO_EXPONENT,
                                         power_residue, residue_exponent)
from characters.exceptions import TailTooLarge, TooFewDegrees
from characters.field_tower import BASE, EXT
from characters.l_functions import l_coefficients, l_polynomial
from characters.poly_algebra import (MonicPoly, enumerate_monic, factor_table,
                                     factorize, format_poly, poly_divmod,
                                     poly_frobenius, poly_gcd)
from cubicl_project.settings import DDS_LADDER, GROWTH_SLOPE

from .euler_constants import main_term
from .family_moments import FamilySpec, family_members, family_polynomials

logger = logging.getLogger(__name__)

GROWING = 'growing'
FLAT = 'flat'
DECAYING = 'decaying'

TAIL_TOO_LARGE = 'Оценка хвоста {:.3g} больше допуска {:.3g}'
LADDER_STEP = 'Уровень (m_F, m_N, m_D) = %s: расхождение %.3g, отсечка %.3g'
COUNTEREXAMPLE = 'chi_D(F) != 1 при D = %s, F = %s'
TOO_FEW_DEGREES = 'Для наклона нужно m_F >= 2, получено m_F = {}'


@dataclass(frozen=True)
class DDSConfig:
    tower: object
    h1: MonicPoly
    h2: MonicPoly
    u: complex
    v: complex
    m_F: int = 2
    m_N: int = 1
    m_D: int = 2

    @classmethod
    def from_sw(cls, tower, h1, h2, s, w, **cutoffs):
        q = tower.q
        return cls(tower, h1, h2, q ** (-2 * complex(s)),
                   q ** -complex(w), **cutoffs)

    @property
    def q(self):
        return self.tower.q

    @property
    def s(self):
        return -np.log(self.u) / (2 * np.log(self.q))

    @property
    def w(self):
        return -np.log(self.v) / np.log(self.q)

    def with_cutoffs(self, m_F, m_N, m_D):
        return replace(self, m_F=m_F, m_N=m_N, m_D=m_D)


def _family_spec(cfg, m):
    return FamilySpec(cfg.tower, 2 * m - 2, cfg.h1, cfg.h2)


def a2_series_coefficient(cfg, m, truncate=None):
    """Coefficient of u^m: twisted |L(v)|^2 summed over the degree-m family.

    With truncate set, the L-series is cut after degree truncate.
    """
    total = complex(0)
    spec = _family_spec(cfg, m)
    for chi in family_members(spec):
        e1, e2 = chi.exponent(cfg.h1), chi.exponent(cfg.h2)
        if ZERO_EXPONENT in (e1, e2):
            continue
        if truncate is None:
            value = l_polynomial(chi, verify=False).evaluate(cfg.v)
        else:
            coeffs = l_coefficients(chi, truncate + 1, max_degree=truncate)
            value = complex(np.polyval(
                [c.to_complex() for c in coeffs[::-1]], cfg.v))
        total += VALUE_WEIGHTS[(e1 - e2) % 3] * abs(value) ** 2
    return total


def principal_term(cfg):
    """The F = 1 term with the L-series cut after degree m_N."""
    partial = sum((cfg.q * cfg.v) ** n for n in range(cfg.m_N + 1))
    return abs(partial) ** 2


def direct_f_side(cfg, coefficients=None):
    """Principal term plus sum over m <= m_F of a2(m) u^m."""
    if coefficients is None:
        coefficients = {}
    total = principal_term(cfg)
    for m in range(1, cfg.m_F + 1):
        if m not in coefficients:
            coefficients[m] = a2_series_coefficient(cfg, m, cfg.m_N)
        total += coefficients[m] * cfg.u ** m
    return total


def f_side_partial_sum(cfg, stop):
    return sum(a2_series_coefficient(cfg, m) * cfg.u ** m
               for m in range(1, stop + 1))


def f_side_direct(cfg, stop):
    """The same partial sum as the double sum over (N1, N2).

    N runs over monic polynomials of degree <= g + 1, past which the
    L-series of a genus-g character has no terms.
    """
    total = complex(0)
    for m in range(1, stop + 1):
        spec = _family_spec(cfg, m)
        for chi in family_members(spec):
            e1, e2 = chi.exponent(cfg.h1), chi.exponent(cfg.h2)
            if ZERO_EXPONENT in (e1, e2):
                continue
            values, powers = [], []
            for n in range(spec.g + 2):
                exponents = chi.monic_exponents(n)
                values.append(VALUE_WEIGHTS[exponents])
                powers.append(np.full(len(exponents), n))
            values, powers = np.concatenate(values), np.concatenate(powers)
            pairs = np.outer(values * cfg.v ** powers,
                             np.conj(values) * np.conj(cfg.v) ** powers)
            total += VALUE_WEIGHTS[(e1 - e2) % 3] * pairs.sum() * cfg.u ** m
    return total


@dataclass
class ExtPrimes:
    """Primes of F_(q^2)[T] up to a degree, grouped by their base prime."""

    coeffs: list
    degrees: np.ndarray
    inert: np.ndarray
    split: np.ndarray

    def upto(self, degree):
        return ExtPrimes(
            self.coeffs, self.degrees,
            self.inert[self.degrees[self.inert] <= degree],
            self.split[self.degrees[self.split[:, 0]] <= degree])


def ext_primes(t, max_degree):
    table = factor_table(t.p, t.k, EXT, max_degree)
    inert, split = [], []
    for pid, coeffs in enumerate(table.primes):
        if all(t.is_base(c) for c in coeffs):
            inert.append(pid)
            continue
        twin, = table.factorization(poly_frobenius(t, coeffs))
        if pid < twin:
            split.append((pid, twin))
    return ExtPrimes(
        table.primes, np.array(table.degrees),
        np.array(inert, dtype=np.int64),
        np.array(split, dtype=np.int64).reshape(-1, 2))


def _base_factors(t, coeffs):
    return {prime.coeffs: e
            for prime, e in factorize(t, MonicPoly(BASE, coeffs)).factors}


def euler_product(psi, primes, u):
    """Product over base primes P1 of L-ratio and P-factor local terms.

    psi holds the Hecke character values on the ext primes; a prime P1
    dividing hN (psi = 0 on its factors) contributes 1.
    """
    d = primes.degrees
    ud = u ** d
    ratio = (1 - np.conj(psi) * ud ** 2) / (1 - psi * ud)
    value = complex(1)
    if len(primes.inert):
        i = primes.inert
        local = ratio[i] * (1 - ud[i] / (1 + psi[i] * ud[i]))
        value *= np.prod(np.where(psi[i] == 0, 1, local))
    if len(primes.split):
        i, j = primes.split[:, 0], primes.split[:, 1]
        local = ratio[i] * ratio[j] * (
            1 - ud[i] ** 2 / ((1 + psi[i] * ud[i]) * (1 + psi[j] * ud[j])))
        value *= np.prod(np.where(psi[i] == 0, 1, local))
    return complex(value)


def _monomials(coefficients, powers, length):
    """Rows c_i * u^(p_i) as series of the given length."""
    rows = np.zeros((len(powers), length), dtype=complex)
    inside = np.nonzero(powers < length)[0]
    rows[inside, powers[inside]] = np.broadcast_to(
        coefficients, powers.shape)[inside]
    return rows


def _series_mul(a, b):
    length = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for k in range(length):
        for j in range(k + 1):
            out[..., k] += a[..., j] * b[..., k - j]
    return out


def _series_inv(a):
    """Inverse of series with constant term 1."""
    out = np.zeros_like(a)
    out[..., 0] = 1
    for k in range(1, a.shape[-1]):
        for j in range(1, k + 1):
            out[..., k] -= a[..., j] * out[..., k - j]
    return out


def _series_prod(rows, length):
    if not len(rows):
        return _unit(1, length)[0]
    while len(rows) > 1:
        if len(rows) % 2:
            rows = np.vstack([rows, _unit(1, length)])
        rows = _series_mul(rows[0::2], rows[1::2])
    return rows[0]


def _unit(count, length):
    rows = np.zeros((count, length), dtype=complex)
    rows[:, 0] = 1
    return rows


def euler_series(psi, primes, degree):
    """The Euler product of euler_product as a power series in u,
    cut after u^degree."""
    length = degree + 1
    d = primes.degrees
    factors = []
    if len(primes.inert):
        i = primes.inert
        one = _unit(len(i), length)
        ratio = _series_mul(
            one - _monomials(np.conj(psi[i]), 2 * d[i], length),
            _series_inv(one - _monomials(psi[i], d[i], length)))
        local = _series_mul(ratio, one - _series_mul(
            _monomials(1, d[i], length),
            _series_inv(one + _monomials(psi[i], d[i], length))))
        factors.append(local[psi[i] != 0])
    if len(primes.split):
        i, j = primes.split[:, 0], primes.split[:, 1]
        one = _unit(len(i), length)
        ratios = [
            _series_mul(
                one - _monomials(np.conj(psi[k]), 2 * d[k], length),
                _series_inv(one - _monomials(psi[k], d[k], length)))
            for k in (i, j)]
        denominator = _series_mul(
            one + _monomials(psi[i], d[i], length),
            one + _monomials(psi[j], d[j], length))
        local = _series_mul(_series_mul(*ratios), one - _series_mul(
            _monomials(1, 2 * d[i], length), _series_inv(denominator)))
        factors.append(local[psi[i] != 0])
    rows = (np.vstack(factors) if factors
            else np.zeros((0, length), dtype=complex))
    return _series_prod(rows, length)


@dataclass
class MobiusResult:
    value: complex
    tail_estimate: float
    pairs: int
    matched: complex = None


def a2_mobius_representation(cfg, tolerance=None):
    """Sum over N1, N2 of v^deg N1 conj(v)^deg N2 times the Euler product
    of the Hecke character chi^(hN), hN = h1 h2^2 N1 N2^2.

    value takes the products over ext primes of degree <= m_D; matched
    expands them in u and keeps the terms up to u^m_F, the F-degrees
    of direct_f_side.
    """
    t = cfg.tower
    primes = ext_primes(t, max(cfg.m_D, cfg.m_F))
    kept = primes.upto(cfg.m_D)
    numerators = [
        (n, coeffs)
        for n in range(cfg.m_N + 1)
        for coeffs in (N.coeffs for N in enumerate_monic(t, BASE, n))]
    twist = {}
    for coeffs, weight in ((cfg.h1.coeffs, 1), (cfg.h2.coeffs, 2)):
        for prime, e in _base_factors(t, coeffs).items():
            twist[prime] = twist.get(prime, 0) + weight * e
    factored = {coeffs: _base_factors(t, coeffs) for _, coeffs in numerators}
    involved = set(twist)
    for factors in factored.values():
        involved.update(factors)
    symbols = {
        prime: np.array([residue_exponent(t, p2, prime)
                         for p2 in primes.coeffs], dtype=np.int64)
        for prime in involved}

    def character(multiplicities):
        exponent = np.zeros(len(primes.coeffs), dtype=np.int64)
        zero = np.zeros(len(primes.coeffs), dtype=bool)
        for prime, e in multiplicities.items():
            zero |= symbols[prime] == ZERO_EXPONENT
            exponent += e * symbols[prime]
        return np.where(zero, 0, VALUE_WEIGHTS[exponent % 3])

    total = complex(0)
    series = np.zeros(cfg.m_F + 1, dtype=complex)
    for n1, N1 in numerators:
        for n2, N2 in numerators:
            multiplicities = dict(twist)
            for prime, e in factored[N1].items():
                multiplicities[prime] = multiplicities.get(prime, 0) + e
            for prime, e in factored[N2].items():
                multiplicities[prime] = multiplicities.get(prime, 0) + 2 * e
            weight = cfg.v ** n1 * np.conj(cfg.v) ** n2
            psi = character(multiplicities)
            total += weight * euler_product(psi, kept, cfg.u)
            series += weight * euler_series(psi, primes, cfg.m_F)
    ratio = t.Q * abs(cfg.u)
    weights = sum((t.q * abs(cfg.v)) ** n for n in range(cfg.m_N + 1)) ** 2
    if ratio < 1:
        tail = weights * ratio ** (cfg.m_D + 1) / (
            (cfg.m_D + 1) * (1 - ratio))
    else:
        tail = float('inf')
    if tolerance is not None and tail > tolerance:
        raise TailTooLarge(TAIL_TOO_LARGE.format(tail, tolerance))
    matched = complex(np.polynomial.polynomial.polyval(cfg.u, series))
    return MobiusResult(total, tail, len(numerators) ** 2, matched)


def compare(cfg, coefficients=None):
    """Direct F-side against the Moebius side.

    residual compares equal truncations in deg F; truncation_gap is the
    distance to the Euler products over all F-degrees.
    """
    direct = direct_f_side(cfg, coefficients)
    mobius = a2_mobius_representation(cfg)
    return {
        'm_F': cfg.m_F,
        'm_N': cfg.m_N,
        'm_D': cfg.m_D,
        'direct_re': direct.real,
        'direct_im': direct.imag,
        'mobius_re': mobius.matched.real,
        'mobius_im': mobius.matched.imag,
        'residual': abs(direct - mobius.matched),
        'euler_re': mobius.value.real,
        'euler_im': mobius.value.imag,
        'truncation_gap': abs(direct - mobius.value),
        'tail_estimate': mobius.tail_estimate,
    }


def compare_ladder(cfg, ladder=DDS_LADDER):
    """Both sides over increasing cutoffs; a2 coefficients are reused.

    The ladder is monotone when the truncation gap shrinks at every step.
    """
    rows, cache = [], {}
    for m_F, m_N, m_D in ladder:
        coefficients = cache.setdefault(m_N, {})
        row = compare(cfg.with_cutoffs(m_F, m_N, m_D), coefficients)
        logger.info(LADDER_STEP, (m_F, m_N, m_D), row['residual'],
                    row['truncation_gap'])
        rows.append(row)
    gaps = [row['truncation_gap'] for row in rows]
    monotone = all(b < a for a, b in zip(gaps, gaps[1:]))
    return rows, monotone


def moebius_indicator(t, F):
    """Sum of mu(D) over monic D in F_q[T] dividing F."""
    total = 0
    for n in range(F.degree + 1):
        for D in enumerate_monic(t, BASE, n):
            _, remainder = poly_divmod(t, list(F.coeffs), list(D.coeffs))
            if not remainder:
                total += factorize(t, D).moebius
    return total


def perron_coefficient(series, m, r, points=64):
    """Coefficient of u^m from values on the circle |u| = r.

    series is a callable or a sequence of coefficients from u^0 up.
    """
    circle = r * np.exp(2j * np.pi * np.arange(points) / points)
    if callable(series):
        values = np.array([series(u) for u in circle])
    else:
        values = np.polyval(np.asarray(series, dtype=complex)[::-1], circle)
    return complex(np.fft.fft(values)[m] / (points * r ** m))


def _absolute_coefficients(cfg, degrees, abs_v):
    """Sum of |L(|v|)|^2 over the degree-m family with nonzero twist."""
    results = {}
    for m in degrees:
        total = 0.0
        for chi in family_members(_family_spec(cfg, m)):
            if ZERO_EXPONENT in (chi.exponent(cfg.h1), chi.exponent(cfg.h2)):
                continue
            total += abs(l_polynomial(chi, verify=False).evaluate(abs_v)) ** 2
        results[m] = total
    return results


def classify(slope):
    if slope > GROWTH_SLOPE:
        return GROWING
    if slope < -GROWTH_SLOPE:
        return DECAYING
    return FLAT


def region_scan(cfg, grid):
    """Growth of the F-side terms by degree at each (|u|, |v|)."""
    if cfg.m_F < 2:
        raise TooFewDegrees(TOO_FEW_DEGREES.format(cfg.m_F))
    degrees = list(range(1, cfg.m_F + 1))
    by_v = {}
    rows = []
    for abs_u, abs_v in grid:
        if abs_v not in by_v:
            coefficients = _absolute_coefficients(cfg, degrees, abs_v)
            logs = np.log([coefficients[m] for m in degrees])
            by_v[abs_v] = np.polyfit(degrees, logs, 1)[0]
        slope = float(by_v[abs_v] + np.log(abs_u))
        rows.append({
            'abs_u': abs_u,
            'abs_v': abs_v,
            'slope': slope,
            'class': classify(slope),
        })
    return rows


@dataclass
class TrivialityScan:
    passed: bool
    pairs: int
    coprime: int
    counterexample: tuple = None


def chi_d_triviality_scan(t, max_deg):
    """chi_D(F) = 1 for coprime monic D, F in F_q[T] of degree 1..max_deg."""
    polys = [N for n in range(1, max_deg + 1)
             for N in enumerate_monic(t, BASE, n)]
    pairs = coprime = 0
    for D in polys:
        factors = factorize(t, MonicPoly(EXT, D.coeffs)).factors
        for F in polys:
            pairs += 1
            if len(poly_gcd(t, list(D.coeffs), list(F.coeffs))) > 1:
                continue
            coprime += 1
            exponent = sum(e * power_residue(t, prime, F).exponent
                           for prime, e in factors)
            if exponent % 3:
                example = (format_poly(t, D), format_poly(t, F))
                logger.warning(COUNTEREXAMPLE, *example)
                return TrivialityScan(False, pairs, coprime, example)
    return TrivialityScan(True, pairs, coprime)


def residue_comparison(t, h1, h2, max_m=2, cutoffs=None):
    """a2 coefficients at v = q^(-1/2) next to the main-term prediction."""
    cfg = DDSConfig(t, h1, h2, t.q ** -2, t.q ** -0.5)
    rows = []
    for m in range(1, max_m + 1):
        g = 2 * m - 2
        coefficient = a2_series_coefficient(cfg, m)
        main = main_term(t, g, h1, h2, cutoffs)
        rows.append({
            'm': m,
            'g': g,
            'family_size': len(family_polynomials(_family_spec(cfg, m))),
            'a2_re': coefficient.real,
            'a2_im': coefficient.imag,
            'main_term': main.value,
            'ratio': coefficient.real / main.value,
            'flags': main.flags,
        })
    return rows
