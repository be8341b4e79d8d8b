from .exceptions import OddGenus
from .field_tower import BASE, build_tower_for_q
from .poly_algebra import parse_poly

ODD_GENUS = 'Род должен быть четным неотрицательным числом, получено g = {}'


def validate_q(q):
    return build_tower_for_q(q)


def validate_genus(g):
    if g < 0 or g % 2:
        raise OddGenus(ODD_GENUS.format(g))
    return g


def validate_poly(tower, text, level=BASE):
    return parse_poly(tower, text, level)
