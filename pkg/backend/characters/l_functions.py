"""L-polynomials of primitive cubic characters in u = q^(-s)."""
import logging
from dataclasses import dataclass

import numpy as np

from cubicl_project.settings import FE_SAMPLE_POINTS, TOLERANCES

from .cubic_characters import exponents_to_eisenstein
from .eisenstein import ZERO
from .exceptions import DegreeZero, NonzeroRemainder
from .field_tower import BASE
from .poly_algebra import enumerate_monic

logger = logging.getLogger(__name__)

NOT_VANISHING = 'Коэффициент c_{} характера {} не равен нулю: {}'
NONZERO_REMAINDER = 'Деление на (1 - u) дало остаток {}'
DEGREE_ZERO = 'Род 0: у дополненного многочлена нет корней'
ALREADY_COMPLETED = 'Многочлен уже дополнен'
BACKWARD_ERROR = 'Корень %s многочлена рода %s: обратная ошибка %.3g'


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple
    q: int
    genus: int
    completed: bool = False

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def as_array(self, dtype=complex):
        return np.array(
            [c.to_complex() for c in self.coeffs], dtype=dtype)

    def evaluate(self, u):
        """Value at a complex u, by Horner's rule."""
        return complex(np.polyval(self.as_array()[::-1], u))

    def conjugate(self):
        return LPolynomial(
            tuple(c.conjugate() for c in self.coeffs),
            self.q, self.genus, self.completed)

    def value_parts(self, x, dtype=float):
        """Real A, B with L(x) = A + B*w for a real x."""
        x = dtype(x)
        a = b = dtype(0)
        for c in reversed(self.coeffs):
            a, b = a * x + c.a, b * x + c.b
        return a, b

    def central_value_sq(self, dtype=float):
        """|L(q^(-1/2))|^2 = A^2 - AB + B^2."""
        a, b = self.value_parts(1 / np.sqrt(dtype(self.q)), dtype)
        return a * a - a * b + b * b


def l_coefficients(chi, stop, max_degree=None):
    """c_n = sum of chi(N) over monic N in F_q[T] of degree n < stop."""
    if max_degree is None:
        max_degree = max(stop - 1, chi.genus + 1)
    return [
        exponents_to_eisenstein(chi.monic_exponents(n, max_degree))
        for n in range(stop)]


def l_coefficients_direct(chi, stop):
    """Same as l_coefficients, one character value at a time."""
    coeffs = []
    t = chi.tower
    for n in range(stop):
        total = ZERO
        for N in enumerate_monic(t, BASE, n):
            total += chi.value(N).to_int()
        coeffs.append(total)
    return coeffs


def vanishing_coefficients(chi, start, stop):
    """Coefficients c_n for start <= n < stop, which vanish past g + 1."""
    return l_coefficients(chi, stop)[start:]


def l_polynomial(chi, verify=True):
    g = chi.genus
    coeffs = l_coefficients(chi, g + 3 if verify else g + 2)
    if verify and coeffs[g + 2]:
        raise NonzeroRemainder(NOT_VANISHING.format(g + 2, chi, coeffs[g + 2]))
    return LPolynomial(tuple(coeffs[:g + 2]), chi.tower.q, g)


def complete(L):
    """Exact division by 1 - u: the completed coefficients are prefix sums."""
    if L.completed:
        raise NonzeroRemainder(ALREADY_COMPLETED)
    completed, total = [], ZERO
    for c in L.coeffs:
        total += c
        completed.append(total)
    if (remainder := completed.pop()):
        raise NonzeroRemainder(NONZERO_REMAINDER.format(remainder))
    return LPolynomial(tuple(completed), L.q, L.genus, completed=True)


def complete_and_evaluate(L, point):
    return complete(L), L.evaluate(point), L.central_value_sq()


def central_value_longdouble(L):
    return L.central_value_sq(dtype=np.longdouble)


def root_number_from_coefficients(L):
    """epsilon = d_g / q^(g/2) read off the completed polynomial."""
    completed = L if L.completed else complete(L)
    return completed.coeffs[-1].to_complex() / L.q ** (L.genus / 2)


def gauss_sum_from_coefficients(L):
    """G = -q * c_(g+1)."""
    return -L.q * L.coeffs[-1].to_complex()


def verify_functional_equation(chi, L, epsilon, points=FE_SAMPLE_POINTS):
    """Largest relative residual of the functional equation at points s."""
    q = L.q
    dual = L.conjugate()
    norm = q ** (2 * chi.degree)
    residual = 0.0
    for s in points:
        s = complex(s)
        left = L.evaluate(q ** -s)
        right = (
            epsilon * q ** (2 * s - 1) * (1 - q ** -s) / (1 - q ** (s - 1))
            * dual.evaluate(q ** (s - 1)) / norm ** (s - 0.5))
        scale = max(abs(left), abs(right))
        if scale:
            residual = max(residual, abs(left - right) / scale)
    return residual


def completed_roots(L):
    """Roots of the completed polynomial, polished by Newton steps."""
    completed = L if L.completed else complete(L)
    coeffs = completed.as_array()[::-1]
    derivative = np.polyder(coeffs)
    roots = np.roots(coeffs)
    for _ in range(3):
        slopes = np.polyval(derivative, roots)
        safe = np.abs(slopes) > 0
        step = np.zeros_like(roots)
        step[safe] = np.polyval(coeffs, roots[safe]) / slopes[safe]
        polished = roots - step
        better = (np.abs(np.polyval(coeffs, polished))
                  <= np.abs(np.polyval(coeffs, roots)))
        roots = np.where(better, polished, roots)
    magnitudes = np.polyval(np.abs(coeffs), np.abs(roots))
    backward = np.abs(np.polyval(coeffs, roots)) / magnitudes
    for root, error in zip(roots, backward):
        if error > TOLERANCES['ROOT_BACKWARD']:
            logger.warning(BACKWARD_ERROR, root, L.genus, error)
    return roots, backward


def verify_riemann_hypothesis(L, strict=False):
    """max | |root| * q^(1/2) - 1 | over the roots of the completed L."""
    if L.genus == 0:
        if strict:
            raise DegreeZero(DEGREE_ZERO)
        return 0.0
    roots, _ = completed_roots(L)
    return float(np.max(np.abs(np.abs(roots) * np.sqrt(L.q) - 1)))
