"""Cubic residue symbols and the primitive characters chi_F.

A character value is carried as an exponent j of w^j, with ZERO_EXPONENT
standing for the value 0, so that whole families of values fit in numpy
integer arrays.
"""
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .eisenstein import (OMEGA_POWERS, ZERO_VALUE, EisensteinInt,
                         EisensteinValue)
from .exceptions import (HasBaseDivisor, LevelMismatch, NotPrimitive,
                         NotPrime, NotSquarefree)
from .field_tower import BASE, EXT
from .poly_algebra import (MonicPoly, conjugate_and_norm, factor_table,
                           factorize, format_poly, is_irreducible,
                           is_squarefree, poly_frobenius, poly_gcd,
                           poly_pow_mod, poly_rem, poly_resultant, strip)

logger = logging.getLogger(__name__)

ZERO_EXPONENT = 3

NOT_PRIME = 'Модуль символа {} приводим над F_(q^2)'
NOT_EXT = 'Символ вычета определен для простых над F_(q^2), получен {}'
DEGREE_ZERO = 'Многочлен F = {} должен иметь степень не меньше 1'
NOT_SQUAREFREE = 'F = {} не свободен от квадратов'
HAS_BASE_DIVISOR = 'F = {} делится на многочлен {} из F_q[T]'
NOT_PRIMITIVE = 'Характер с F = {} не примитивен'

# Complex weights of the exponents 0, 1, 2 and of ZERO_EXPONENT.
VALUE_WEIGHTS = np.append(OMEGA_POWERS, 0)


def as_coeffs(a):
    if isinstance(a, MonicPoly):
        return a.coeffs
    return tuple(strip(a))


def cubic_residue_symbol(t, prime, a):
    """chi_prime(a) by modular exponentiation."""
    if prime.level != EXT:
        raise LevelMismatch(NOT_EXT.format(format_poly(t, prime)))
    if not is_irreducible(t, prime):
        raise NotPrime(NOT_PRIME.format(format_poly(t, prime)))
    return power_residue(t, prime, a)


def power_residue(t, prime, a):
    """The symbol for a prime already known to be irreducible."""
    residue = poly_rem(t, list(as_coeffs(a)), list(prime.coeffs))
    if not residue:
        return ZERO_VALUE
    power = poly_pow_mod(
        t, residue, (t.Q ** prime.degree - 1) // 3, list(prime.coeffs))
    if len(power) != 1:
        raise NotPrime(NOT_PRIME.format(format_poly(t, prime)))
    return EisensteinValue(exponent=t.omega_exponent(power[0]))


def residue_exponent(t, modulus, a):
    """Exponent of chi_modulus(a) through the resultant Res(modulus, a).

    For monic modulus the resultant is the norm of a modulo each prime
    factor, so its discrete log mod 3 is the symbol's exponent. Works for
    non-monic a and for constants.
    """
    resultant = poly_resultant(t, list(modulus), list(a))
    if not resultant:
        return ZERO_EXPONENT
    return t.log(resultant) % 3


def exponents_to_eisenstein(exponents):
    """Exact sum of w^j over an array of exponents."""
    a0, a1, a2 = np.bincount(exponents, minlength=4)[:3].tolist()
    return EisensteinInt(a0 - a2, a1 - a2)


@dataclass(frozen=True)
class CubicCharacter:
    tower: object = field(repr=False)
    F: MonicPoly
    conductor: MonicPoly = field(compare=False)
    conjugated: bool = False

    @cached_property
    def factorization(self):
        return factorize(self.tower, self.F)

    @property
    def genus(self):
        return 2 * self.F.degree - 2

    @property
    def degree(self):
        return self.F.degree

    def __str__(self):
        name = format_poly(self.tower, self.F)
        return f'conj({name})' if self.conjugated else name

    def conjugate(self):
        return replace(self, conjugated=not self.conjugated)

    def frobenius_twin(self):
        """The character of F^sigma; on F_q[T] it equals the conjugate."""
        return primitivity_and_conductor(
            self.tower,
            MonicPoly(EXT, tuple(poly_frobenius(self.tower, self.F.coeffs))))

    def _orient(self, exponent):
        if self.conjugated and exponent != ZERO_EXPONENT:
            return -exponent % 3
        return exponent

    def exponent(self, a):
        return self._orient(
            residue_exponent(self.tower, self.F.coeffs, as_coeffs(a)))

    def value(self, a):
        exponent = self.exponent(a)
        if exponent == ZERO_EXPONENT:
            return ZERO_VALUE
        return EisensteinValue(exponent=exponent)

    @cached_property
    def _prime_exponents(self):
        return {}

    def prime_exponents(self, table):
        """Exponents on the base primes of a factor table, sentinel last."""
        cache = self._prime_exponents
        if 'values' not in cache or len(cache['values']) < table.sentinel:
            cache['values'] = np.array([
                residue_exponent(self.tower, self.F.coeffs, prime)
                for prime in table.primes], dtype=np.int64)
        return np.append(cache['values'][:table.sentinel], 0)

    def monic_exponents(self, n, max_degree=None):
        """Exponents on all monic N in F_q[T] of degree n, canonical order."""
        t = self.tower
        if max_degree is None:
            max_degree = self.genus + 1
        max_degree = max(n, max_degree)
        table = factor_table(t.p, t.k, BASE, max_degree)
        exponents = self.prime_exponents(table)
        ids = table.padded(n)
        # values are multiplicative, zero if any prime factor gives zero
        total = exponents[ids].sum(axis=1) % 3
        zero = (exponents[ids] == ZERO_EXPONENT).any(axis=1)
        total = np.where(zero, ZERO_EXPONENT, total)
        if self.conjugated:
            total = np.where(zero, ZERO_EXPONENT, -total % 3)
        return total


def primitivity_and_conductor(t, F):
    """The primitive character of F, or the reason F is rejected."""
    if F.level == BASE:
        F = MonicPoly(EXT, F.coeffs)
    if F.degree < 1:
        raise NotPrimitive(DEGREE_ZERO.format(format_poly(t, F)))
    if not is_squarefree(t, F):
        raise NotSquarefree(NOT_SQUAREFREE.format(format_poly(t, F)))
    _, norm, common = conjugate_and_norm(t, F)
    if common.degree:
        raise HasBaseDivisor(HAS_BASE_DIVISOR.format(
            format_poly(t, F), format_poly(t, MonicPoly(BASE, common.coeffs))))
    return CubicCharacter(t, F, norm)


def is_primitive(t, F):
    try:
        primitivity_and_conductor(t, F)
    except (NotPrimitive, NotSquarefree, HasBaseDivisor):
        return False
    return True


def has_base_prime_factor(t, F):
    """Whether some prime factor of F lies in F_q[T]."""
    return any(
        all(t.is_base(c) for c in prime.coeffs)
        for prime in factorize(t, F).primes)


def has_base_divisor(t, F):
    """Whether gcd(F, F^sigma) is nontrivial."""
    conjugate = poly_frobenius(t, F.coeffs)
    return len(poly_gcd(t, list(F.coeffs), conjugate)) > 1


def character_value(chi, a):
    return chi.value(a)


def residue_sum(t, n, monic_exponents, zero_exponent=ZERO_EXPONENT):
    """Sum of w^j(a) * psi(coefficient of T^(n-1) in a) over deg a < n.

    Every nonzero residue is c*M with c in F_q^* and M monic; the value
    depends on M only, which holds for even characters. zero_exponent is
    the value taken at a = 0.
    """
    counts = np.zeros((4, t.q), dtype=np.int64)
    counts[zero_exponent, 0] += 1
    for m in range(n):
        histogram = np.bincount(monic_exponents(m), minlength=4)
        if m == n - 1:
            counts[:, 1:] += histogram[:, None]
        else:
            counts[:, 0] += (t.q - 1) * histogram
    psi = np.array([t.psi(c) for c in range(t.q)])
    return complex(VALUE_WEIGHTS @ counts @ psi)


def gauss_sum_and_epsilon(chi):
    t = chi.tower
    if not is_primitive(t, chi.F):
        raise NotPrimitive(NOT_PRIMITIVE.format(chi))
    n = chi.conductor.degree
    gauss = residue_sum(
        t, n, lambda m: chi.monic_exponents(m, max_degree=n - 1))
    return gauss, gauss / t.q ** chi.degree
