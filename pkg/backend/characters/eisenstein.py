from dataclasses import dataclass

import numpy as np

# Complex images of 1, w, w^2 with w = exp(2*pi*i/3).
OMEGA_POWERS = np.exp(2j * np.pi * np.arange(3) / 3)
OMEGA = complex(OMEGA_POWERS[1])
SQRT3_HALF = np.sqrt(3) / 2


@dataclass(frozen=True)
class EisensteinValue:
    """A value in {0, 1, w, w^2}."""

    zero: bool = False
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, 'exponent', 0 if self.zero else self.exponent % 3)

    def __mul__(self, other):
        if self.zero or other.zero:
            return ZERO_VALUE
        return EisensteinValue(exponent=self.exponent + other.exponent)

    def __pow__(self, n):
        if self.zero:
            return ZERO_VALUE if n else ONE_VALUE
        return EisensteinValue(exponent=self.exponent * n)

    def conjugate(self):
        if self.zero:
            return self
        return EisensteinValue(exponent=-self.exponent)

    def to_complex(self):
        if self.zero:
            return 0j
        return complex(OMEGA_POWERS[self.exponent])

    def to_int(self):
        if self.zero:
            return EisensteinInt(0, 0)
        return UNIT_POWERS[self.exponent]

    def __str__(self):
        if self.zero:
            return '0'
        return ('1', 'w', 'w^2')[self.exponent]


@dataclass(frozen=True)
class EisensteinInt:
    """a + b*w with w^2 + w + 1 = 0."""

    a: int = 0
    b: int = 0

    @classmethod
    def coerce(cls, value):
        if isinstance(value, EisensteinInt):
            return value
        return cls(value, 0)

    def __add__(self, other):
        other = EisensteinInt.coerce(other)
        return EisensteinInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-EisensteinInt.coerce(other))

    def __mul__(self, other):
        other = EisensteinInt.coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a or self.b)

    def conjugate(self):
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self):
        return self.a * self.a - self.a * self.b + self.b * self.b

    def rotate(self, exponent):
        """Multiply by w^exponent."""
        a, b = self.a, self.b
        for _ in range(exponent % 3):
            a, b = -b, a - b
        return EisensteinInt(a, b)

    @property
    def real(self):
        return self.a - self.b / 2

    @property
    def imag(self):
        return self.b * SQRT3_HALF

    def to_complex(self):
        return complex(self.real, self.imag)

    def as_pair(self):
        return [self.a, self.b]

    def __str__(self):
        return f'({self.a},{self.b})'


ZERO_VALUE = EisensteinValue(zero=True)
ONE_VALUE = EisensteinValue()
ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
UNIT_POWERS = (ONE, EisensteinInt(0, 1), EisensteinInt(-1, -1))
