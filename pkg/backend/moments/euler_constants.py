"""Local factors, truncated Euler products and the main term constant."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from characters.eisenstein import OMEGA_POWERS
from characters.exceptions import OddGenus, OutOfRegion, PoleAt, SeriesDiverges
from characters.field_tower import BASE
from characters.poly_algebra import (MonicPoly, factorize, format_poly,
                                     poly_mul, prime_count, valuation)
from cubicl_project.settings import (CUTOFFS, S_FIT_START, S_RATIO_LIMIT,
                                     SERIES_MAX_TERMS, TOLERANCES)

logger = logging.getLogger(__name__)

INERT = 'inert'
SPLIT = 'split'
CONVERGENT = 'CONVERGENT'
NON_CONVERGENT = 'NON_CONVERGENT'
CLOSED = 'closed'
SERIES = 'series'
ROOTS = 'roots'
REAL = 'real'

SERIES_DIVERGES = 'Ряд G_P расходится: |v^n| = {} >= 1'
OUT_OF_REGION = 'P(u) сходится при |u| < 1/q, получено |u| = {}'
POLE_AT = 'zeta_q имеет полюс: q^(1-s) = 1 при {}'
ODD_GENUS = 'Главный член определен для четного рода, получено g = {}'
BAD_MODE = 'Неизвестный режим {}'
OMITTED_PRIMES = 'В C(h1, h2) пропущены простые степени больше %s: %s'
NON_CONVERGENT_S = 'Произведение S не сходится при v = %s: отношение %.3f'
EVEN_DENOMINATOR = ('Знаменатель четного случая G_P: ряд совпадает с %s '
                    '(расхождение %.3g против %.3g)')


@dataclass(frozen=True)
class LocalFactorSpec:
    n: int
    x: complex

    @property
    def parity(self):
        return SPLIT if self.n % 2 == 0 else INERT


@dataclass
class TruncatedProduct:
    cutoff: int
    partials: list = field(default_factory=list)
    increments: list = field(default_factory=list)
    value: complex = 1
    tail_estimate: float = None
    flag: str = CONVERGENT
    fit_constant: float = None
    omitted: list = field(default_factory=list)


def local_prefactor(q, n):
    """Definitional prefactor of the degree-n local factor of S, exact."""
    inverse_norm = Fraction(1, q ** (2 * n))
    if n % 2:
        norms = [q ** (2 * n)]
    else:
        norms = [q ** n, q ** n]
    product = Fraction(1)
    for norm in norms:
        product /= 1 + Fraction(1, norm)
    return product / (1 - inverse_norm * product)


def series_coefficient(m):
    """Number of (c, d) with c + d = m and 3 | c + 2d, by direct scan."""
    return sum(1 for c in range(m + 1) if (c + 2 * (m - c)) % 3 == 0)


def series_coefficient_formula(m):
    """Count of c in [0, m] with c = 2m (mod 3)."""
    residue = 2 * m % 3
    return 0 if residue > m else (m - residue) // 3 + 1


def sigma_minus_one(x):
    return x ** 2 * (1 + x - x ** 2) / ((1 - x) ** 2 * (1 + x + x ** 2))


def sigma_series(x, tolerance=TOLERANCES['SERIES_INCREMENT']):
    """Truncated sum over (c, d) != (0, 0) with 3 | c + 2d of x^(c+d)."""
    if abs(x) >= 1:
        raise SeriesDiverges(SERIES_DIVERGES.format(abs(x)))
    total, power = 0, 1
    for m in range(1, SERIES_MAX_TERMS):
        power *= x
        total += series_coefficient_formula(m) * power
        # remaining terms are bounded by a geometric tail of the next one
        if (m / 3 + 2) * abs(power * x) / (1 - abs(x)) < tolerance:
            break
    return total


def local_factor_gp(q, n, v, mode=CLOSED):
    x = v ** n
    prefactor = float(local_prefactor(q, n))
    if mode == CLOSED:
        return 1 + prefactor * sigma_minus_one(x)
    if mode == SERIES:
        return 1 + prefactor * sigma_series(x)
    raise ValueError(BAD_MODE.format(mode))


def even_denominator_resolution(q, n, v):
    """Compare the series with both candidate even-degree denominators.

    Returns the name of the matching form and the two deviations.
    """
    x = v ** n
    prefactor = float(local_prefactor(q, n))
    series = 1 + prefactor * sigma_series(x)
    single = 1 + prefactor * sigma_minus_one(x)
    squared = 1 + prefactor * (
        x ** 2 * (1 + x - x ** 2) / ((1 - x ** 2) ** 2 * (1 + x + x ** 2)))
    deviations = abs(series - single), abs(series - squared)
    resolved = '(1 - v^n)^2' if deviations[0] < deviations[1] else (
        '(1 - v^(2n))^2')
    logger.info(EVEN_DENOMINATOR, resolved, *deviations)
    return resolved, deviations


def _log1p(z):
    """log(1 + z), keeping precision for tiny complex z."""
    if abs(z) > 1e-4:
        return complex(np.log(1 + z))
    return z - z ** 2 / 2 + z ** 3 / 3 - z ** 4 / 4


def product_P(q, u, cutoff=CUTOFFS['P']):
    if abs(u) * q >= 1:
        raise OutOfRegion(OUT_OF_REGION.format(abs(u)))
    product = TruncatedProduct(cutoff)
    value = complex(1)
    for n in range(1, cutoff + 1):
        if n % 2:
            delta = -u ** n / (1 + u ** n)
        else:
            delta = -u ** n / (1 + u ** (n // 2)) ** 2
        count = prime_count(q, n)
        product.increments.append(count * _log1p(complex(delta)))
        value *= (1 + delta) ** count
        product.partials.append(value)
    ratio = q * abs(u)
    product.value = value
    product.tail_estimate = (
        ratio ** (cutoff + 1) / ((cutoff + 1) * (1 - ratio)))
    return product


def product_S(q, v, cutoff=CUTOFFS['S']):
    """Truncated S with per-degree log-increments and divergence flag."""
    product = TruncatedProduct(cutoff)
    value = complex(1)
    for n in range(1, cutoff + 1):
        local = local_factor_gp(q, n, v)
        count = prime_count(q, n)
        product.increments.append(complex(count * np.log(complex(local))))
        value *= local ** count
        product.partials.append(value)
    product.value = value
    *_, previous, last = [0.0] + [abs(i) for i in product.increments]
    ratio = last / previous if previous else 0.0
    if ratio > S_RATIO_LIMIT:
        product.flag = NON_CONVERGENT
        logger.info(NON_CONVERGENT_S, v, ratio)
    elif ratio:
        product.tail_estimate = last * ratio / (1 - ratio)
    else:
        product.tail_estimate = 0.0
    product.fit_constant = fit_harmonic(product.increments)
    return product


def fit_harmonic(increments, start=S_FIT_START):
    """Least-squares c in increment_n = c / n for degrees n >= start."""
    degrees = np.arange(start, len(increments) + 1)
    if not len(degrees):
        return None
    values = np.real(np.array(increments[start - 1:]))
    design = (1 / degrees)[:, None]
    solution, *_ = np.linalg.lstsq(design, values, rcond=None)
    return float(solution[0])


def twisted_sum(x, a, b, form=ROOTS):
    """(1/3)(1/(1-x)^2 + (w^(a+2b) + w^(2a+b))/(1+x+x^2))."""
    if form == ROOTS:
        weight = (OMEGA_POWERS[(a + 2 * b) % 3]
                  + OMEGA_POWERS[(2 * a + b) % 3])
    elif form == REAL:
        weight = 2 if (a + 2 * b) % 3 == 0 else -1
    else:
        raise ValueError(BAD_MODE.format(form))
    return (1 / (1 - x) ** 2 + weight / (1 + x + x ** 2)) / 3


def c_local_factors(t, h1, h2, v, cutoff=CUTOFFS['C'], form=ROOTS):
    """Local factors of C(h1, h2, v) over base primes dividing h1*h2."""
    q = t.q
    product = MonicPoly(BASE, tuple(poly_mul(t, h1.coeffs, h2.coeffs)))
    factors, omitted = [], []
    for prime in factorize(t, product).primes:
        n = prime.degree
        if n > cutoff:
            omitted.append(format_poly(t, prime))
            continue
        a, b = valuation(t, h1, prime), valuation(t, h2, prime)
        x = v ** n
        local = (float(local_prefactor(q, n)) * twisted_sum(x, a, b, form)
                 / local_factor_gp(q, n, v))
        factors.append((format_poly(t, prime), a, b, local))
    if omitted:
        logger.warning(OMITTED_PRIMES, cutoff, ', '.join(omitted))
    return factors, omitted


def factor_C(t, h1, h2, v, cutoff=CUTOFFS['C'], form=ROOTS):
    factors, _ = c_local_factors(t, h1, h2, v, cutoff, form)
    value = complex(1)
    for *_, local in factors:
        value *= local
    return value


def zeta_q(q, s=None, u=None):
    """1/(1 - q^(1-s)), or 1/(1 - q*u) in the u-form."""
    if u is None:
        u = q ** -complex(s)
    denominator = 1 - q * u
    if abs(denominator) < 1e-15:
        raise PoleAt(POLE_AT.format(s if s is not None else u))
    return 1 / denominator


@dataclass
class MainTerm:
    q: int
    g: int
    value: float
    residue_form: float
    identity_residual: float
    S: TruncatedProduct
    C: complex
    P: TruncatedProduct
    omitted: list

    @property
    def flags(self):
        flags = [self.S.flag]
        if self.value < 0:
            flags.append('NEGATIVE')
        if self.omitted:
            flags.append('C_TRUNCATED')
        return flags


def main_term(t, g, h1, h2, cutoffs=None):
    """(1 - q^2) S C(h1, h2) P(q^-2) q^g with the residue form alongside."""
    if g < 0 or g % 2:
        raise OddGenus(ODD_GENUS.format(g))
    cutoffs = {**CUTOFFS, **(cutoffs or {})}
    q = t.q
    half = q ** -0.5
    S = product_S(q, half, cutoffs['S'])
    factors, omitted = c_local_factors(t, h1, h2, half, cutoffs['C'])
    C = complex(1)
    for *_, local in factors:
        C *= local
    P = product_P(q, q ** -2, cutoffs['P'])
    constant = (S.value * C * P.value).real
    value = (1 - q ** 2) * constant * q ** g
    residue = (q ** -4 - q ** -2) * constant
    scale = abs(value) or 1
    return MainTerm(
        q, g, value, residue,
        abs(value - residue * q ** (g + 4)) / scale,
        S, C, P, omitted)
