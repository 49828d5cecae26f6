"""Deterministic body generators for the bundled regression suite and tests.

Randomness always flows through a named Philox substream, so a (seed, label)
pair fully determines every generated body.
"""

from __future__ import annotations

from fractions import Fraction

from .bodies import GridSet, LatticeSet, VPolytope, make_simplex
from .geometry import hull_of
from .measure import rng_for

SNAP = 1000  # random rational coordinates land on a 1/SNAP grid


def unit_cube(n: int) -> VPolytope:
    from itertools import product

    verts = [tuple(Fraction(c) for c in v) for v in product((0, 1), repeat=n)]
    return VPolytope.from_points(verts)


def box(sides) -> VPolytope:
    from itertools import product

    sides = [Fraction(s) for s in sides]
    verts = [tuple(s if bit else Fraction(0) for s, bit in zip(sides, v))
             for v in product((0, 1), repeat=len(sides))]
    return VPolytope.from_points(verts)


def cross_polytope(n: int, radius=1) -> VPolytope:
    radius = Fraction(radius)
    verts = []
    for j in range(n):
        for sgn in (1, -1):
            verts.append(tuple(sgn * radius if i == j else Fraction(0) for i in range(n)))
    return VPolytope.from_points(verts)


def random_lattice_set(seed: int, label: str, dim: int, max_points: int = 20,
                       coord_range: int = 12) -> LatticeSet:
    rg = rng_for(seed, label)
    count = int(rg.integers(1, max_points + 1))
    pts = {tuple(int(v) for v in rg.integers(-coord_range, coord_range + 1, size=dim))
           for _ in range(count)}
    return LatticeSet.from_points(pts)


def random_polytope(seed: int, label: str, dim: int, points: int = 8) -> VPolytope:
    """Hull of random points snapped to a 1/SNAP rational grid; full-dim retries."""
    for attempt in range(64):
        rg = rng_for(seed, f"{label}#{attempt}")
        raw = rg.random((points, dim))
        verts = [tuple(Fraction(int(round(c * SNAP)), SNAP) for c in row)
                 for row in raw.tolist()]
        poly = hull_of(VPolytope.from_points(verts))
        if poly.full_dim:
            return poly
    raise RuntimeError("could not draw a full-dimensional polytope")


def lshape_grid(cell=Fraction(1, 4), arm: int = 4) -> GridSet:
    """A non-convex L-shaped voxel union in the plane."""
    cells = set()
    for i in range(2 * arm):
        for j in range(arm):
            cells.add((i, j))
    for i in range(arm):
        for j in range(arm, 2 * arm):
            cells.add((i, j))
    return GridSet.from_cells(cells, cell=cell, dim=2)


def two_interval_grid(cell=Fraction(1, 8)) -> GridSet:
    """A non-convex union of two segments on the line."""
    cells = {(i,) for i in range(0, 4)} | {(i,) for i in range(8, 12)}
    return GridSet.from_cells(cells, cell=cell, dim=1)


def interval(lo, hi) -> VPolytope:
    return VPolytope.from_points([(Fraction(lo),), (Fraction(hi),)])


def triangle_simplex() -> VPolytope:
    return make_simplex(2, 1)
