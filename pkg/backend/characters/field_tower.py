"""Arithmetic in F_q and F_{q^2} for odd q = p^k with q = 2 (mod 3).

Elements are integer indices. A base element with F_p coordinates
(d_0, ..., d_{k-1}) has index sum(d_i * p^i); an extension element
c0 + c1*t, with t a root of the extension modulus, has index c0 + q*c1.
Base elements keep their index inside F_{q^2}, so both levels share one
set of operations. The canonical order of elements is the index order.
"""
import logging
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from sympy import factorint, isprime, primefactors
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from .eisenstein import EisensteinValue
from .exceptions import (BadLiteral, LevelMismatch, NotCubeRoot,
                         NotNonKummer, NotOdd, NotPrimePower)

logger = logging.getLogger(__name__)

BASE = 'base'
EXT = 'ext'
LEVELS = (BASE, EXT)

NOT_PRIME_POWER = 'q = {} не является степенью простого числа'
NOT_ODD = 'Характеристика должна быть нечетной, получено p = {}'
NOT_NON_KUMMER = 'Нужно q ≡ 2 (mod 3), получено q = {} ≡ {} (mod 3)'
LEVEL_MISMATCH = 'Ожидался элемент уровня {}, получен уровень {}'
BAD_COORDS = 'Координаты {} не подходят для уровня {} над F_{}'
NOT_CUBE_ROOT = 'Элемент {} не является кубическим корнем из единицы'
BAD_ELEMENT = 'Не удалось разобрать элемент поля: {}'
BAD_DIRECTION = 'Направление должно быть forward или inverse, получено {}'

ELEMENT_LITERAL = re.compile(r'^\[(\d+(?:,\d+)*)\]$')


@dataclass(frozen=True)
class FieldElement:
    level: str
    coords: tuple


class FieldTower:
    """The pair F_q inside F_{q^2} with a fixed cube root of unity.

    Construction uses the definitional coordinate arithmetic only; the
    discrete log tables behind ``mul``/``pow``/``log`` are built on first
    use.
    """

    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.q = p ** k
        self.Q = self.q ** 2
        self.base_modulus = self._find_base_modulus() if k > 1 else None
        self._badd, self._bmul = self._base_tables()
        self._bneg = [self._badd[a].index(0) for a in range(self.q)]
        self.ext_modulus = self._find_ext_modulus()
        self.generator = self._find_generator()
        self.omega_image = self.pow_slow(self.generator, (self.Q - 1) // 3)
        logger.info(
            'Построена башня F_%s ⊂ F_%s, модуль %s, Ω(w) = %s',
            self.q, self.Q, self.ext_modulus, self.omega_image)

    def __repr__(self):
        return f'FieldTower(p={self.p}, k={self.k})'

    def __reduce__(self):
        return build_tower, (self.p, self.k)

    # Base field

    def _base_coords(self, a):
        coords = []
        for _ in range(self.k):
            a, digit = divmod(a, self.p)
            coords.append(digit)
        return coords

    def _base_index(self, coords):
        return sum(digit * self.p ** i for i, digit in enumerate(coords))

    def _find_base_modulus(self):
        for index in range(self.p ** self.k):
            coeffs = self._base_coords(index) + [1]
            if gf_irreducible_p(ZZ.map(coeffs[::-1]), self.p, ZZ):
                return tuple(coeffs)

    def _base_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            return (
                [[(a + b) % p for b in range(q)] for a in range(q)],
                [[(a * b) % p for b in range(q)] for a in range(q)])
        modulus = ZZ.map(list(self.base_modulus)[::-1])
        coords = [self._base_coords(a) for a in range(q)]
        add = [
            [self._base_index([(x + y) % p for x, y in zip(ca, cb)])
             for cb in coords]
            for ca in coords]
        mul = []
        for ca in coords:
            row = []
            for cb in coords:
                product = gf_rem(
                    gf_mul(ZZ.map(ca[::-1]), ZZ.map(cb[::-1]), p, ZZ),
                    modulus, p, ZZ)
                row.append(self._base_index([int(c) for c in product[::-1]]))
            mul.append(row)
        return add, mul

    # Extension field, definitional arithmetic

    def _find_ext_modulus(self):
        badd, bmul = self._badd, self._bmul
        for index in range(self.Q):
            e0, e1 = index % self.q, index // self.q
            if all(badd[badd[bmul[x][x]][bmul[e1][x]]][e0]
                   for x in range(self.q)):
                return (e0, e1, 1)

    def add(self, x, y):
        q, badd = self.q, self._badd
        return badd[x % q][y % q] + q * badd[x // q][y // q]

    def neg(self, x):
        q = self.q
        return self._bneg[x % q] + q * self._bneg[x // q]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul_slow(self, x, y):
        q, badd, bmul, bneg = self.q, self._badd, self._bmul, self._bneg
        x0, x1, y0, y1 = x % q, x // q, y % q, y // q
        e0, e1, _ = self.ext_modulus
        low = bmul[x0][y0]
        mid = badd[bmul[x0][y1]][bmul[x1][y0]]
        top = bmul[x1][y1]
        # t^2 = -e1*t - e0
        return (badd[low][bneg[bmul[top][e0]]]
                + q * badd[mid][bneg[bmul[top][e1]]])

    def pow_slow(self, x, n):
        result = 1
        while n:
            if n & 1:
                result = self.mul_slow(result, x)
            x = self.mul_slow(x, x)
            n >>= 1
        return result

    def _find_generator(self):
        order = self.Q - 1
        cofactors = [order // r for r in primefactors(order)]
        for x in range(1, self.Q):
            if all(self.pow_slow(x, c) != 1 for c in cofactors):
                return x

    # Extension field, log table fast path

    @cached_property
    def _exp(self):
        table = [1]
        for _ in range(self.Q - 2):
            table.append(self.mul_slow(table[-1], self.generator))
        return table

    @cached_property
    def _log(self):
        table = [None] * self.Q
        for i, x in enumerate(self._exp):
            table[x] = i
        return table

    def log(self, x):
        """Discrete logarithm to the canonical generator."""
        return self._log[x]

    def mul(self, x, y):
        if not x or not y:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.Q - 1)]

    def pow(self, x, n):
        if not x:
            return 0 if n else 1
        return self._exp[(self._log[x] * n) % (self.Q - 1)]

    def inv(self, x):
        if not x:
            raise ZeroDivisionError('0 не обратим')
        return self._exp[-self._log[x] % (self.Q - 1)]

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def frobenius_index(self, x):
        """x^q, using t^q = -e1 - t."""
        q, badd, bmul, bneg = self.q, self._badd, self._bmul, self._bneg
        x0, x1 = x % q, x // q
        e1 = self.ext_modulus[1]
        return badd[x0][bneg[bmul[x1][e1]]] + q * bneg[x1]

    def trace(self, x):
        """Tr_{F_q/F_p} of a base element."""
        result, power = 0, x
        for _ in range(self.k):
            result = self.add(result, power)
            power = self.pow(power, self.p)
        return result

    def norm_to_base(self, x):
        return self.pow(x, self.q + 1)

    def is_base(self, x):
        return x < self.q

    def field_order(self, level):
        return self.q if level == BASE else self.Q

    def omega_power(self, exponent):
        return self.pow(self.omega_image, exponent % 3)

    def omega_exponent(self, x):
        """Inverse of the cube root embedding on indices."""
        for exponent in range(3):
            if self.omega_power(exponent) == x:
                return exponent
        raise NotCubeRoot(NOT_CUBE_ROOT.format(self.format_element(x)))

    @cached_property
    def _psi(self):
        return np.exp(
            2j * np.pi * np.array([self.trace(x) for x in range(self.q)])
            / self.p)

    def psi(self, x):
        return complex(self._psi[x])

    # Public element interface

    def element(self, index, level=EXT):
        coords = self._base_coords(index % self.q)
        if level == EXT:
            coords += self._base_coords(index // self.q)
        elif index >= self.q:
            raise LevelMismatch(LEVEL_MISMATCH.format(BASE, EXT))
        return FieldElement(level, tuple(coords))

    def index(self, element):
        length = self.k if element.level == BASE else 2 * self.k
        if (element.level not in LEVELS or len(element.coords) != length
                or any(not 0 <= c < self.p for c in element.coords)):
            raise BadLiteral(BAD_COORDS.format(
                element.coords, element.level, self.q))
        return (self._base_index(element.coords[:self.k])
                + self.q * self._base_index(element.coords[self.k:]))

    def frobenius(self, x):
        if x.level != EXT:
            raise LevelMismatch(LEVEL_MISMATCH.format(EXT, x.level))
        return self.element(self.frobenius_index(self.index(x)))

    def cube_root_embedding(self, value, direction='forward'):
        if direction == 'forward':
            return self.element(self.omega_power(value.exponent))
        if direction == 'inverse':
            return EisensteinValue(
                exponent=self.omega_exponent(self.index(value)))
        raise ValueError(BAD_DIRECTION.format(direction))

    def additive_character(self, x):
        if x.level != BASE:
            raise LevelMismatch(LEVEL_MISMATCH.format(BASE, x.level))
        return self.psi(self.index(x))

    # Literals

    def format_element(self, x, level=EXT):
        if x < self.q and (level == BASE or self.k == 1):
            if self.k == 1:
                return str(x)
            return '[{}]'.format(','.join(map(str, self._base_coords(x))))
        return '[{}]'.format(','.join(map(str, self.element(x).coords)))

    def parse_element(self, text, level=EXT):
        text = text.strip()
        if text.isdigit():
            if int(text) >= self.p:
                raise BadLiteral(BAD_ELEMENT.format(text))
            return int(text)
        if not (match := ELEMENT_LITERAL.match(text.replace(' ', ''))):
            raise BadLiteral(BAD_ELEMENT.format(text))
        coords = tuple(int(c) for c in match.group(1).split(','))
        if len(coords) == self.k:
            coords += (0,) * self.k
        elif len(coords) != 2 * self.k:
            raise BadLiteral(BAD_ELEMENT.format(text))
        index = self.index(FieldElement(EXT, coords))
        if level == BASE and index >= self.q:
            raise LevelMismatch(LEVEL_MISMATCH.format(BASE, EXT))
        return index

    def describe(self):
        return {
            'p': self.p,
            'k': self.k,
            'base_modulus': (
                list(self.base_modulus) if self.base_modulus else None),
            'ext_modulus': list(self.ext_modulus),
            'omega_image': self.format_element(self.omega_image),
        }


@lru_cache(maxsize=None)
def build_tower(p, k=1):
    if not isprime(p):
        raise NotPrimePower(NOT_PRIME_POWER.format(p ** k))
    if p == 2:
        raise NotOdd(NOT_ODD.format(p))
    if (q := p ** k) % 3 != 2:
        raise NotNonKummer(NOT_NON_KUMMER.format(q, q % 3))
    return FieldTower(p, k)


def build_tower_for_q(q):
    if q < 2 or len(factors := factorint(q)) != 1:
        raise NotPrimePower(NOT_PRIME_POWER.format(q))
    (p, k), = factors.items()
    return build_tower(p, k)
