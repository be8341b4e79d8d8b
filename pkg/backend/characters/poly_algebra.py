"""Dense monic polynomials over F_q and F_{q^2}.

Internally a polynomial is a list of element indices from the constant term
up; the zero polynomial is the empty list.
"""
import logging
import random
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from sympy import divisors, factorint

from cubicl_project.settings import FACTOR_SEED

from .exceptions import BadLiteral, LevelMismatch, NotPrime
from .field_tower import BASE, EXT, build_tower

logger = logging.getLogger(__name__)

ALL = 'all'
SQUAREFREE = 'squarefree'

NOT_MONIC = 'Многочлен должен быть унитарным: {}'
NOT_PRIME = 'Многочлен {} приводим'
LEVEL_MISMATCH = 'Многочлены разных уровней: {} и {}'
NEED_EXT = 'Нужен многочлен над F_(q^2), получен уровень {}'
BAD_POLY = 'Не удалось разобрать многочлен: {}'

TERM = re.compile(r'([+-]?)([^+-]+)')
MONOMIAL = re.compile(r'^(?:(.+)\*)?T(?:\^(\d+))?$')


@dataclass(frozen=True)
class MonicPoly:
    level: str
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise BadLiteral(NOT_MONIC.format(self.coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def sort_key(self):
        return self.degree, self.coeffs[::-1]


@dataclass(frozen=True)
class Factorization:
    factors: tuple

    @property
    def is_irreducible(self):
        return len(self.factors) == 1 and self.factors[0][1] == 1

    @property
    def is_squarefree(self):
        return all(e == 1 for _, e in self.factors)

    @property
    def moebius(self):
        if not self.is_squarefree:
            return 0
        return (-1) ** len(self.factors)

    @property
    def primes(self):
        return tuple(prime for prime, _ in self.factors)

    def expand(self, tower):
        level = self.factors[0][0].level if self.factors else BASE
        product = [1]
        for prime, e in self.factors:
            for _ in range(e):
                product = poly_mul(tower, product, prime.coeffs)
        return MonicPoly(level, tuple(product))


# Coefficient list arithmetic

def strip(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def degree(f):
    return len(f) - 1


def poly_add(t, f, g):
    if len(f) < len(g):
        f, g = g, f
    result = list(f)
    for i, c in enumerate(g):
        result[i] = t.add(result[i], c)
    return strip(result)


def poly_neg(t, f):
    return [t.neg(c) for c in f]


def poly_sub(t, f, g):
    return poly_add(t, f, poly_neg(t, g))


def poly_scale(t, f, c):
    return strip([t.mul(a, c) for a in f])


def poly_mul(t, f, g):
    if not f or not g:
        return []
    add, mul = t.add, t.mul
    result = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                result[i + j] = add(result[i + j], mul(a, b))
    return strip(result)


def poly_divmod(t, f, g):
    if not g:
        raise ZeroDivisionError('деление на нулевой многочлен')
    f = list(f)
    dg = degree(g)
    if len(f) <= dg:
        return [], strip(f)
    add, mul, neg = t.add, t.mul, t.neg
    lead_inv = t.inv(g[-1])
    quotient = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        if (c := f[i]):
            c = mul(c, lead_inv)
            quotient[i - dg] = c
            c = neg(c)
            for j, b in enumerate(g):
                f[i - dg + j] = add(f[i - dg + j], mul(c, b))
    return strip(quotient), strip(f[:dg])


def poly_rem(t, f, g):
    return poly_divmod(t, f, g)[1]


def poly_quo(t, f, g):
    return poly_divmod(t, f, g)[0]


def poly_monic(t, f):
    if not f:
        return 0, []
    lead = f[-1]
    return lead, poly_scale(t, f, t.inv(lead))


def poly_gcd(t, f, g):
    f, g = strip(f), strip(g)
    while g:
        f, g = g, poly_rem(t, f, g)
    return poly_monic(t, f)[1]


def poly_derivative(t, f):
    result = []
    for i, c in enumerate(f[1:], start=1):
        term = 0
        for _ in range(i % t.p):
            term = t.add(term, c)
        result.append(term)
    return strip(result)


def poly_pow_mod(t, f, n, modulus):
    result, base = [1], poly_rem(t, f, modulus)
    while n:
        if n & 1:
            result = poly_rem(t, poly_mul(t, result, base), modulus)
        base = poly_rem(t, poly_mul(t, base, base), modulus)
        n >>= 1
    return result


def poly_eval(t, f, x):
    result = 0
    for c in reversed(f):
        result = t.add(t.mul(result, x), c)
    return result


def poly_frobenius(t, f):
    return [t.frobenius_index(c) for c in f]


def poly_resultant(t, f, g):
    """Res(f, g); for monic f it is the product of g over the roots of f."""
    f, g = strip(f), strip(g)
    if not f or not g:
        return 0
    result = 1
    minus_one = t.neg(1)
    m = degree(f)
    while True:
        n = degree(g)
        if n == 0:
            return t.mul(result, t.pow(g[0], m))
        r = poly_rem(t, f, g)
        if not r:
            return 0
        result = t.mul(result, t.pow(g[-1], m - degree(r)))
        if m * n % 2:
            result = t.mul(result, minus_one)
        f, g, m = g, r, n


def is_squarefree_coeffs(t, f):
    if degree(f) < 1:
        return True
    return degree(poly_gcd(t, f, poly_derivative(t, f))) == 0


# Factorization

def _pth_root(t, f, size):
    exponent = size // t.p
    return [t.pow(c, exponent) for c in f[::t.p]]


def _squarefree_decomposition(t, f, size):
    multiplier, done, factors = 1, False, []
    if degree(f) < 1:
        return factors
    while True:
        derivative = poly_derivative(t, f)
        if derivative:
            g = poly_gcd(t, f, derivative)
            h = poly_quo(t, f, g)
            i = 1
            while h != [1]:
                common = poly_gcd(t, g, h)
                part = poly_quo(t, h, common)
                if degree(part) > 0:
                    factors.append((part, i * multiplier))
                g, h, i = poly_quo(t, g, common), common, i + 1
            if g == [1]:
                done = True
            else:
                f = g
        if done:
            return factors
        f = _pth_root(t, f, size)
        multiplier *= t.p


def _distinct_degree(t, f, size):
    i, h, factors = 1, [0, 1], []
    while 2 * i <= degree(f):
        h = poly_pow_mod(t, h, size, f)
        g = poly_gcd(t, f, poly_sub(t, h, [0, 1]))
        if g != [1]:
            factors.append((g, i))
            f = poly_quo(t, f, g)
            h = poly_rem(t, h, f)
        i += 1
    if f != [1]:
        factors.append((f, degree(f)))
    return factors


def _equal_degree(t, f, n, size, rng):
    factors = [f]
    if degree(f) <= n:
        return factors
    count = degree(f) // n
    exponent = (size ** n - 1) // 2
    while len(factors) < count:
        r = [rng.randrange(size) for _ in range(2 * n - 1)] + [1]
        h = poly_pow_mod(t, r, exponent, f)
        g = poly_gcd(t, f, poly_sub(t, h, [1]))
        if g != [1] and g != f:
            factors = (_equal_degree(t, g, n, size, rng)
                       + _equal_degree(t, poly_quo(t, f, g), n, size, rng))
    return factors


def factorize(t, f):
    """Squarefree, distinct-degree and equal-degree splitting."""
    size = t.field_order(f.level)
    rng = random.Random(FACTOR_SEED)
    counts = Counter()
    for part, e in _squarefree_decomposition(t, list(f.coeffs), size):
        for block, d in _distinct_degree(t, part, size):
            for prime in _equal_degree(t, block, d, size, rng):
                counts[tuple(prime)] += e
    return Factorization(tuple(sorted(
        ((MonicPoly(f.level, coeffs), e) for coeffs, e in counts.items()),
        key=lambda item: item[0].sort_key())))


def is_irreducible(t, f):
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    if n == 2:
        return all(poly_eval(t, f.coeffs, x)
                   for x in range(t.field_order(f.level)))
    size = t.field_order(f.level)
    coeffs, h = list(f.coeffs), [0, 1]
    for _ in range(n // 2):
        h = poly_pow_mod(t, h, size, coeffs)
        if poly_gcd(t, coeffs, poly_sub(t, h, [0, 1])) != [1]:
            return False
    return True


def is_squarefree(t, f):
    return is_squarefree_coeffs(t, list(f.coeffs))


def conjugate_and_norm(t, f):
    """(f^sigma, f*f^sigma at base level, gcd(f, f^sigma))."""
    if f.level != EXT:
        raise LevelMismatch(NEED_EXT.format(f.level))
    conjugate = poly_frobenius(t, f.coeffs)
    norm = poly_mul(t, f.coeffs, conjugate)
    assert all(t.is_base(c) for c in norm)
    return (
        MonicPoly(EXT, tuple(conjugate)),
        MonicPoly(BASE, tuple(norm)),
        MonicPoly(EXT, tuple(poly_gcd(t, f.coeffs, conjugate))))


def valuation(t, f, prime):
    if f.level != prime.level:
        raise LevelMismatch(LEVEL_MISMATCH.format(f.level, prime.level))
    if not is_irreducible(t, prime):
        raise NotPrime(NOT_PRIME.format(format_poly(t, prime)))
    coeffs, e = list(f.coeffs), 0
    while True:
        quotient, remainder = poly_divmod(t, coeffs, prime.coeffs)
        if remainder:
            return e
        coeffs, e = quotient, e + 1


def monic_from_index(index, d, size):
    coeffs = []
    for _ in range(d):
        index, c = divmod(index, size)
        coeffs.append(c)
    return tuple(coeffs) + (1,)


def poly_index(coeffs, size):
    """Position of a monic polynomial in the canonical order."""
    return sum(c * size ** i for i, c in enumerate(coeffs[:-1]))


def enumerate_monic(t, level, d, filter=ALL, start=0, stop=None):
    """Monic polynomials of degree d in canonical order.

    The stream is addressed by candidate index, so [start, stop) ranges
    partition it across workers whatever the filter.
    """
    size = t.field_order(level)
    stop = size ** d if stop is None else min(stop, size ** d)
    for index in range(start, stop):
        coeffs = monic_from_index(index, d, size)
        if filter == SQUAREFREE and not is_squarefree_coeffs(t, coeffs):
            continue
        yield MonicPoly(level, coeffs)


def moebius_int(n):
    factors = factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return (-1) ** len(factors)


def prime_count(q, n):
    """Number of monic irreducibles of degree n over F_q."""
    return sum(moebius_int(d) * q ** (n // d) for d in divisors(n)) // n


# Literals

def parse_poly(t, text, level=BASE):
    text = text.replace(' ', '')
    if not text or TERM.sub('', text):
        raise BadLiteral(BAD_POLY.format(text))
    terms = {}
    for sign, body in TERM.findall(text):
        if (match := MONOMIAL.match(body)):
            coefficient = (
                t.parse_element(match.group(1), level)
                if match.group(1) else 1)
            power = int(match.group(2) or 1)
        else:
            coefficient, power = t.parse_element(body, level), 0
        if sign == '-':
            coefficient = t.neg(coefficient)
        terms[power] = t.add(terms.get(power, 0), coefficient)
    top = max(terms)
    result = strip([terms.get(i, 0) for i in range(top + 1)])
    if not result or result[-1] != 1:
        raise BadLiteral(NOT_MONIC.format(text))
    return MonicPoly(level, tuple(result))


def format_poly(t, f):
    coeffs = f.coeffs if isinstance(f, MonicPoly) else f
    level = f.level if isinstance(f, MonicPoly) else EXT
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        if not (c := coeffs[power]):
            continue
        literal = t.format_element(c, level)
        if power == 0:
            terms.append(literal)
            continue
        monomial = 'T' if power == 1 else f'T^{power}'
        terms.append(monomial if c == 1 else f'{literal}*{monomial}')
    return '+'.join(terms) or '0'


# Prime factor sieve

class FactorTable:
    """Every monic polynomial up to max_degree with its prime factors.

    Each polynomial N is produced once as P*M with P the smallest prime
    dividing N; the polynomials of degree n left untouched are the primes
    of degree n. Prime ids follow (degree, canonical index).
    """

    def __init__(self, tower, level, max_degree):
        self.tower = tower
        self.level = level
        self.max_degree = max_degree
        self.size = tower.field_order(level)
        self.primes = []
        self.degrees = []
        self.factors = [[()]]
        for n in range(1, max_degree + 1):
            self.factors.append(self._sieve(n))
        logger.info(
            'Таблица разложений %s до степени %s: %s простых',
            level, max_degree, len(self.primes))

    def _sieve(self, n):
        size = self.size
        table = [None] * size ** n
        for pid, prime in enumerate(self.primes):
            d = self.degrees[pid]
            if d >= n:
                break
            for index, cofactor in enumerate(self.factors[n - d]):
                if cofactor and cofactor[0] < pid:
                    continue
                cofactor_coeffs = monic_from_index(index, n - d, size)
                product = poly_mul(self.tower, prime, cofactor_coeffs)
                table[poly_index(product, size)] = (pid,) + cofactor
        for index, entry in enumerate(table):
            if entry is None:
                table[index] = (len(self.primes),)
                self.primes.append(monic_from_index(index, n, size))
                self.degrees.append(n)
        return table

    def primes_of_degree(self, n):
        return [p for p, d in zip(self.primes, self.degrees) if d == n]

    def prime_ids_up_to(self, n):
        return [pid for pid, d in enumerate(self.degrees) if d <= n]

    def factorization(self, coeffs):
        return self.factors[degree(coeffs)][
            poly_index(coeffs, self.size)]

    @cached_property
    def sentinel(self):
        return len(self.primes)

    def padded(self, n):
        """Prime ids of all degree-n polynomials, padded with the sentinel."""
        return self._padded[n]

    @cached_property
    def _padded(self):
        arrays = [np.full((1, 1), self.sentinel, dtype=np.int64)]
        for n in range(1, self.max_degree + 1):
            array = np.full(
                (len(self.factors[n]), n), self.sentinel, dtype=np.int64)
            for row, entry in enumerate(self.factors[n]):
                array[row, :len(entry)] = entry
            arrays.append(array)
        return arrays


@lru_cache(maxsize=None)
def factor_table(p, k, level, max_degree):
    return FactorTable(build_tower(p, k), level, max_degree)
