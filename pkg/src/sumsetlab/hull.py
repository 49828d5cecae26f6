"""Exact incremental convex hull over integer coordinates.

The beneath-beyond (placing) construction inserts points one at a time and
keeps a simplicial boundary complex plus the full-dimensional simplices it
cones off.  All predicates are exact integer sign tests, so coplanar and
otherwise degenerate configurations are handled without tolerances.

The boundary pieces are (n-1)-simplices; coplanar pieces are merged into
facets afterwards.  A point of the complex is a true hull vertex iff the
normals of the facets through it span R^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateInputError
from .linalg import det_int, dot, hyperplane_normal, rank_int


@dataclass(frozen=True)
class Facet:
    """A merged hull facet: primitive outward normal, offset, incident points."""

    normal: tuple[int, ...]
    offset: Fraction
    vertex_ids: tuple[int, ...]


@dataclass
class HullResult:
    dim: int
    points: list[tuple[int, ...]]
    simplices: list[tuple[int, ...]]          # placing triangulation of the hull
    pieces: dict                              # frozenset ids -> (normal, offset int)
    facets: list[Facet]
    vertex_ids: list[int]                     # minimal vertex set, sorted

    def volume_times_factorial(self) -> int:
        """Sum of |det| over the triangulation; volume = this / dim!."""
        total = 0
        for simplex in self.simplices:
            base = self.points[simplex[0]]
            rows = [
                [self.points[i][j] - base[j] for j in range(self.dim)]
                for i in simplex[1:]
            ]
            total += abs(det_int(rows))
        return total

    def fan_volume(self, apex_num: Sequence[int], apex_den: int) -> Fraction:
        """Exact volume by coning every boundary piece to apex_num/apex_den.

        The apex may be any point; signed cones cancel correctly, but for an
        interior apex every cone is positively oriented.
        """
        n = self.dim
        total = 0
        for ids in self.pieces:
            pts = sorted(ids)
            rows = []
            for i in pts:
                p = self.points[i]
                rows.append([p[j] * apex_den - apex_num[j] for j in range(n)])
            total += abs(det_int(rows))
        return Fraction(total, apex_den ** n * math.factorial(n))


def _initial_simplex(points: list[tuple[int, ...]], dim: int) -> list[int]:
    """Greedy affinely independent subset of size dim+1 (lex-first choices)."""
    chosen = [0]
    base = points[0]
    reduced: list[list[Fraction]] = []  # row-echelon basis of difference vectors
    for idx in range(1, len(points)):
        vec = [Fraction(points[idx][j] - base[j]) for j in range(dim)]
        for row in reduced:
            lead = next(j for j, v in enumerate(row) if v != 0)
            if vec[lead] != 0:
                f = vec[lead] / row[lead]
                vec = [a - f * b for a, b in zip(vec, row)]
        if any(v != 0 for v in vec):
            reduced.append(vec)
            chosen.append(idx)
            if len(chosen) == dim + 1:
                return chosen
    raise DegenerateInputError(
        f"points span an affine subspace of dimension {len(chosen) - 1} < {dim}"
    )


def build_hull(points: list[tuple[int, ...]], dim: int) -> HullResult:
    """Hull of deduplicated integer points; requires a full-dimensional span."""
    if not points:
        raise DegenerateInputError("empty point set")
    if any(len(p) != dim for p in points):
        raise ValueError("inconsistent point dimension")
    points = sorted(set(points))
    if len(points) <= dim:
        raise DegenerateInputError(
            f"{len(points)} distinct points cannot span R^{dim}"
        )

    seed = _initial_simplex(points, dim)
    # interior reference: centroid of the seed simplex, kept as an integer
    # sum to avoid fractions (compare a.c_sum against b*(dim+1))
    c_sum = tuple(sum(points[i][j] for i in seed) for j in range(dim))

    def oriented(ids: frozenset) -> tuple[tuple[int, ...], int]:
        pts = [points[i] for i in sorted(ids)]
        a = hyperplane_normal(pts)
        b = dot(a, pts[0])
        side = dot(a, c_sum) - b * (dim + 1)
        if side > 0:
            a = tuple(-v for v in a)
            b = -b
        elif side == 0:
            raise AssertionError("interior reference lies on a boundary hyperplane")
        return a, b

    pieces: dict = {}
    for drop in seed:
        ids = frozenset(i for i in seed if i != drop)
        pieces[ids] = oriented(ids)
    simplices = [tuple(seed)]

    in_seed = set(seed)
    for idx in range(len(points)):
        if idx in in_seed:
            continue
        p = points[idx]
        visible = [ids for ids, (a, b) in pieces.items() if dot(a, p) > b]
        if not visible:
            continue
        ridge_count: dict = {}
        for ids in visible:
            for v in ids:
                ridge = ids - {v}
                ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
        for ids in visible:
            simplices.append(tuple(sorted(ids)) + (idx,))
            del pieces[ids]
        for ridge, count in ridge_count.items():
            if count == 1:
                new_ids = ridge | {idx}
                pieces[new_ids] = oriented(new_ids)

    facets = _merge_facets(pieces)
    vertex_ids = _minimal_vertices(facets, dim)
    return HullResult(dim, points, simplices, pieces, facets, vertex_ids)


def _merge_facets(pieces: dict) -> list[Facet]:
    groups: dict = {}
    for ids, (a, b) in pieces.items():
        g = math.gcd(*[abs(v) for v in a]) or 1
        key = (tuple(v // g for v in a), Fraction(b, g))
        groups.setdefault(key, set()).update(ids)
    facets = [
        Facet(normal=key[0], offset=key[1], vertex_ids=tuple(sorted(members)))
        for key, members in groups.items()
    ]
    facets.sort(key=lambda f: (f.normal, f.offset))
    return facets


def _minimal_vertices(facets: list[Facet], dim: int) -> list[int]:
    incident: dict = {}
    for f in facets:
        for i in f.vertex_ids:
            incident.setdefault(i, []).append(f.normal)
    out = []
    for i, normals in incident.items():
        if len(normals) >= dim and rank_int(normals) == dim:
            out.append(i)
    out.sort()
    return out
