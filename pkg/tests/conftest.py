from fractions import Fraction

import pytest

from sumsetlab.bodies import VPolytope, make_simplex
from sumsetlab.bundles import unit_cube


@pytest.fixture
def square():
    return unit_cube(2)


@pytest.fixture
def triangle():
    return make_simplex(2, 1)


def frac_points(points):
    return [tuple(Fraction(c) for c in p) for p in points]


def vertex_set(poly: VPolytope):
    return set(frac_points(poly.exact_vertices()))
