"""The genus-g family and its exact twisted second moment."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from django.core.cache import cache

from characters.cubic_characters import (ZERO_EXPONENT, has_base_divisor,
                                         has_base_prime_factor,
                                         primitivity_and_conductor)
from characters.eisenstein import SQRT3_HALF, EisensteinInt
from characters.exceptions import HasBaseDivisor, OddGenus
from characters.field_tower import BASE, EXT, build_tower
from characters.l_functions import l_polynomial
from characters.poly_algebra import (SQUAREFREE, MonicPoly, enumerate_monic,
                                     format_poly, poly_frobenius, prime_count)
from cubicl_project.settings import THREADS, TOOL_VERSION

from .euler_constants import main_term

logger = logging.getLogger(__name__)

ODD_GENUS = 'Род должен быть четным неотрицательным числом, получено g = {}'
FAMILY_SIZE = 'Семейство q = %s, g = %s: %s характеров'
SHARD_DONE = 'Часть %s-%s: %s характеров, %s с нулевым твистом'
CACHE_MISS = 'Семейство %s не найдено в кэше'
TWINS_REUSED = 'Сопряженные L-многочлены: %s из %s взяты у пары F, F^sigma'

GCD = 'gcd'
RAW = 'raw'


@dataclass(frozen=True)
class FamilySpec:
    tower: object
    g: int
    h1: MonicPoly = MonicPoly(BASE, (1,))
    h2: MonicPoly = MonicPoly(BASE, (1,))

    def __post_init__(self):
        if self.g < 0 or self.g % 2:
            raise OddGenus(ODD_GENUS.format(self.g))

    @property
    def q(self):
        return self.tower.q

    @property
    def degree(self):
        return self.g // 2 + 1

    def swapped(self):
        return FamilySpec(self.tower, self.g, self.h2, self.h1)


def enumerate_family(spec, start=0, stop=None):
    """Accepted characters of degree g/2 + 1 over a candidate index range."""
    t = spec.tower
    for F in enumerate_monic(t, EXT, spec.degree, SQUAREFREE, start, stop):
        try:
            yield primitivity_and_conductor(t, F)
        except HasBaseDivisor:
            continue


def family_cache_key(t, g):
    """Cache key without spaces or control characters."""
    moduli = [','.join(map(str, m)) if m else '-'
              for m in (t.base_modulus, t.ext_modulus)]
    return 'family:{}:{}:{}:{}:{}:{}'.format(
        t.p, t.k, g, *moduli, TOOL_VERSION)


def family_polynomials(spec):
    """Defining polynomials of the family, cached when a cache is set."""
    key = family_cache_key(spec.tower, spec.g)
    if (polys := cache.get(key)) is None:
        logger.debug(CACHE_MISS, key)
        polys = [chi.F.coeffs for chi in enumerate_family(spec)]
        cache.set(key, polys)
    logger.info(FAMILY_SIZE, spec.q, spec.g, len(polys))
    return polys


def family_members(spec, polys=None):
    t = spec.tower
    for coeffs in (family_polynomials(spec) if polys is None else polys):
        yield primitivity_and_conductor(t, MonicPoly(EXT, coeffs))


def family_count_oracle(q, g, predicate=GCD):
    """Family size from the prime counts alone.

    A base prime of even degree n splits into two conjugate primes of
    degree n/2; with the gcd predicate F takes at most one of them, with
    the raw predicate any subset. Odd-degree base primes are excluded.
    """
    m = g // 2 + 1
    series = [1] + [0] * m
    for n in range(2, 2 * m + 1, 2):
        d, count = n // 2, prime_count(q, n)
        if predicate == GCD:
            terms = [(comb(count, i) * 2 ** i, i * d)
                     for i in range(m // d + 1)]
        else:
            terms = [(comb(2 * count, i), i * d) for i in range(m // d + 1)]
        product = [0] * (m + 1)
        for i, a in enumerate(series):
            for coefficient, shift in terms:
                if i + shift <= m:
                    product[i + shift] += a * coefficient
        series = product
    return series[m]


def family_counts(spec):
    t = spec.tower
    d = spec.degree
    candidates = t.Q ** d
    squarefree = raw = accepted = 0
    for F in enumerate_monic(t, EXT, d, SQUAREFREE):
        squarefree += 1
        if not has_base_prime_factor(t, F):
            raw += 1
        if not has_base_divisor(t, F):
            accepted += 1
    return {
        'q': spec.q,
        'g': spec.g,
        'candidates': candidates,
        'squarefree': squarefree,
        'base_prime_factor_free': raw,
        'accepted': accepted,
        'oracle_gcd': family_count_oracle(spec.q, spec.g, GCD),
        'oracle_raw': family_count_oracle(spec.q, spec.g, RAW),
    }


def rotate(real, omega, exponent):
    """Multiply a + b*w coefficient arrays by w^exponent."""
    for _ in range(exponent % 3):
        real, omega = -omega, real - omega
    return real, omega


def summand_parts(L):
    """L(x) * conj(L)(x) as integer arrays of its 1 and w parts."""
    a = np.array([c.a for c in L.coeffs], dtype=np.int64)
    b = np.array([c.b for c in L.coeffs], dtype=np.int64)
    # conj(a + b*w) = (a - b) - b*w
    real = np.convolve(a, a - b) + np.convolve(b, b)
    omega = np.convolve(a, -b) + np.convolve(b, a - b) + np.convolve(b, b)
    return real, omega


@dataclass(frozen=True)
class MomentPolynomial:
    """Exact sum of twisted |L|^2 as a polynomial in x = q^(-1/2)."""

    real: tuple
    omega: tuple
    family_size: int = 0
    zero_twist_count: int = 0

    @classmethod
    def empty(cls, g):
        zeros = (0,) * (2 * g + 3)
        return cls(zeros, zeros)

    def __add__(self, other):
        return MomentPolynomial(
            tuple(x + y for x, y in zip(self.real, other.real)),
            tuple(x + y for x, y in zip(self.omega, other.omega)),
            self.family_size + other.family_size,
            self.zero_twist_count + other.zero_twist_count)

    @property
    def coeffs(self):
        return [EisensteinInt(a, b) for a, b in zip(self.real, self.omega)]

    def conjugate(self):
        return MomentPolynomial(
            tuple(a - b for a, b in zip(self.real, self.omega)),
            tuple(-b for b in self.omega),
            self.family_size, self.zero_twist_count)

    def _at_half_power(self, coeffs, q):
        even = sum(Fraction(c, q ** (k // 2))
                   for k, c in enumerate(coeffs) if k % 2 == 0)
        odd = sum(Fraction(c, q ** (k // 2))
                  for k, c in enumerate(coeffs) if k % 2)
        return float(even) + float(odd) / np.sqrt(q)

    def evaluate(self, q):
        """Value at x = q^(-1/2) as a complex number."""
        real = self._at_half_power(self.real, q)
        omega = self._at_half_power(self.omega, q)
        return complex(real - omega / 2, omega * SQRT3_HALF)


def pair_order(t, polys):
    """The family with each F followed by its Frobenius twin F^sigma."""
    members = set(polys)
    ordered, seen = [], set()
    for coeffs in polys:
        if coeffs in seen:
            continue
        ordered.append(coeffs)
        seen.add(coeffs)
        twin = tuple(poly_frobenius(t, coeffs))
        if twin in members and twin not in seen:
            ordered.append(twin)
            seen.add(twin)
    return ordered


def moment_shard(p, k, g, h1, h2, polys):
    """Exact moment over one slice of the family.

    chi of F^sigma is the conjugate of chi of F, so the L-polynomial of a
    twin met later in the slice is the conjugate of one already built.
    """
    t = build_tower(p, k)
    size = 2 * g + 3
    real = np.zeros(size, dtype=object)
    omega = np.zeros(size, dtype=object)
    family_size = zero_twist = reused = 0
    twins = {}
    for coeffs in polys:
        chi = primitivity_and_conductor(t, MonicPoly(EXT, coeffs))
        family_size += 1
        e1, e2 = chi.exponent(h1), chi.exponent(h2)
        if ZERO_EXPONENT in (e1, e2):
            zero_twist += 1
            continue
        if (L := twins.pop(tuple(coeffs), None)) is None:
            L = l_polynomial(chi, verify=False)
            twins[tuple(poly_frobenius(t, coeffs))] = L.conjugate()
        else:
            reused += 1
        parts = rotate(*summand_parts(L), e1 - e2)
        real += parts[0].astype(object)
        omega += parts[1].astype(object)
    logger.debug(TWINS_REUSED, reused, family_size)
    return MomentPolynomial(
        tuple(int(x) for x in real), tuple(int(x) for x in omega),
        family_size, zero_twist)


def split_shards(polys, shards):
    bounds = np.linspace(0, len(polys), shards + 1).astype(int)
    return [polys[start:stop] for start, stop in zip(bounds, bounds[1:])]


@dataclass
class MomentResult:
    spec: FamilySpec
    polynomial: MomentPolynomial
    value: complex
    runtime_ms: int = 0
    main: object = None
    shards: int = 1

    def report(self):
        spec, t = self.spec, self.spec.tower
        q, g = spec.q, spec.g
        value = self.value
        main = self.main.value if self.main else None
        return {
            'q': q,
            'g': g,
            'h1': format_poly(t, spec.h1),
            'h2': format_poly(t, spec.h2),
            'family_size': self.polynomial.family_size,
            'zero_twist_count': self.polynomial.zero_twist_count,
            'moment_re': value.real,
            'moment_im': value.imag,
            'q_pow_g_ratio': value.real / q ** g,
            'untwisted_ratio': (
                value.real / (g * (g + 2) * q ** (g + 2)) if g else None),
            'main_term': main,
            'main_term_ratio': value.real / main if main else None,
            'abs_main_term_ratio': value.real / abs(main) if main else None,
            'flags': self.main.flags if self.main else [],
            'coefficients': [[a, b] for a, b in zip(
                self.polynomial.real, self.polynomial.omega)],
            'runtime_ms': self.runtime_ms,
            'tool_version': TOOL_VERSION,
            'tower_moduli': t.describe(),
        }


def twisted_second_moment(spec, threads=THREADS, shards=None,
                          with_main_term=True, cutoffs=None):
    started = time.monotonic()
    t = spec.tower
    polys = family_polynomials(spec)
    shards = shards or threads
    args = (t.p, t.k, spec.g, spec.h1.coeffs, spec.h2.coeffs)
    parts = split_shards(pair_order(t, polys), shards)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            tasks = [executor.submit(moment_shard, *args, part)
                     for part in parts]
        results = [task.result() for task in tasks]
    else:
        results = [moment_shard(*args, part) for part in parts]
    polynomial = MomentPolynomial.empty(spec.g)
    for (start, stop), result in zip(shard_bounds(parts), results):
        logger.info(SHARD_DONE, start, stop, result.family_size,
                    result.zero_twist_count)
        polynomial = polynomial + result
    main = (main_term(t, spec.g, spec.h1, spec.h2, cutoffs)
            if with_main_term else None)
    return MomentResult(
        spec, polynomial, polynomial.evaluate(spec.q),
        int((time.monotonic() - started) * 1000), main, shards)


def shard_bounds(parts):
    start = 0
    for part in parts:
        yield start, start + len(part)
        start += len(part)


def direct_moment(spec, polys=None):
    """Sum of w^(e1-e2) |L(q^(-1/2))|^2 one character at a time."""
    total = complex(0)
    for chi in family_members(spec, polys):
        e1, e2 = chi.exponent(spec.h1), chi.exponent(spec.h2)
        if ZERO_EXPONENT in (e1, e2):
            continue
        total += (EisensteinInt(1, 0).rotate(e1 - e2).to_complex()
                  * l_polynomial(chi, verify=False).central_value_sq())
    return total
