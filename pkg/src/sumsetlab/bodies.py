"""Set models: polytopes in vertex/halfspace form, voxel grids, lattice sets.

All bodies are immutable.  Polytopes carry a coordinate mode:

* ``rational`` - coordinates are Fractions, every construction and volume
  downstream is exact;
* ``float`` - coordinates are doubles, used on the Monte Carlo / grid paths.

A container never mixes modes.  Exact kernels accept float-mode bodies by
converting coordinates with ``Fraction(float)``, which is lossless.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DegenerateInputError,
    InputFormatError,
    PreconditionError,
    ResolutionMismatchError,
)
from .linalg import affine_rank
from .rationals import exactify, format_exact, lcm_of_denominators, parse_scalar

MODE_RATIONAL = "rational"
MODE_FLOAT = "float"

# scale-aware vertex dedup tolerance for float-mode polytopes
def dedup_tolerance(point: Sequence[float]) -> float:
    return 1e-9 * (1.0 + max(abs(c) for c in point))


def _as_vector(coords, dim: int, mode: str):
    if len(coords) != dim:
        raise PreconditionError(f"vector of length {len(coords)}, expected {dim}")
    if mode == MODE_RATIONAL:
        return tuple(exactify(c) for c in coords)
    return tuple(float(c) for c in coords)


@dataclass(frozen=True)
class VPolytope:
    """Convex polytope given by vertices (not necessarily minimal)."""

    dim: int
    vertices: tuple
    mode: str = MODE_RATIONAL
    full_dim: bool = True
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @staticmethod
    def from_points(points: Iterable[Sequence], mode: str = MODE_RATIONAL) -> "VPolytope":
        pts = [tuple(p) for p in points]
        if not pts:
            raise PreconditionError("a polytope needs at least one vertex")
        dim = len(pts[0])
        if dim < 1:
            raise PreconditionError("dimension must be positive")
        vecs = [_as_vector(p, dim, mode) for p in pts]
        if mode == MODE_RATIONAL:
            seen = []
            known = set()
            for v in vecs:
                if v not in known:
                    known.add(v)
                    seen.append(v)
        else:
            seen = []
            for v in vecs:
                tol = dedup_tolerance(v)
                if not any(max(abs(a - b) for a, b in zip(v, w)) <= tol for w in seen):
                    seen.append(v)
        full = _points_full_dim(seen, dim)
        return VPolytope(dim=dim, vertices=tuple(seen), mode=mode, full_dim=full)

    def exact_vertices(self) -> list:
        """Vertices as exact Fraction tuples regardless of mode."""
        return [tuple(exactify(c) for c in v) for v in self.vertices]

    def cache_once(self, key: str, factory):
        """Write-once per-polytope cache (facet enumeration, hull data)."""
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]


def _points_full_dim(points, dim: int) -> bool:
    if len(points) <= dim:
        return False
    exact = [tuple(exactify(c) for c in p) for p in points]
    den = lcm_of_denominators([c for p in exact for c in p])
    ints = [tuple(int(c * den) for c in p) for p in exact]
    return affine_rank(ints) == dim


@dataclass(frozen=True)
class HPolytope:
    """Intersection of halfspaces normal . x <= offset."""

    dim: int
    halfspaces: tuple  # tuple of (normal tuple[Fraction], offset Fraction)
    bounded: bool = True

    @staticmethod
    def from_rows(rows: Iterable[tuple], dim: int, bounded: bool = True) -> "HPolytope":
        hs = []
        for normal, offset in rows:
            n = tuple(exactify(c) for c in normal)
            if len(n) != dim:
                raise PreconditionError("normal dimension mismatch")
            if all(c == 0 for c in n):
                raise PreconditionError("zero normal in halfspace")
            hs.append((n, exactify(offset)))
        return HPolytope(dim=dim, halfspaces=tuple(hs), bounded=bounded)

    def contains(self, point: Sequence) -> bool:
        p = [exactify(c) for c in point]
        for normal, offset in self.halfspaces:
            if sum(a * x for a, x in zip(normal, p)) > offset:
                return False
        return True


@dataclass(frozen=True)
class GridSet:
    """Axis-aligned voxel union: cell i covers origin + h*(i + [0,1]^dim)."""

    dim: int
    cell: Fraction
    origin: tuple
    cells: frozenset

    @staticmethod
    def from_cells(cells: Iterable[Sequence[int]], cell, origin=None, dim=None) -> "GridSet":
        cell = exactify(cell)
        if cell <= 0:
            raise PreconditionError("cell size must be positive")
        cs = frozenset(tuple(int(c) for c in ix) for ix in cells)
        if dim is None:
            if not cs:
                raise PreconditionError("empty grid needs an explicit dim")
            dim = len(next(iter(cs)))
        if any(len(ix) != dim for ix in cs):
            raise PreconditionError("inconsistent cell index dimension")
        if origin is None:
            origin = (Fraction(0),) * dim
        else:
            origin = tuple(exactify(c) for c in origin)
            if len(origin) != dim:
                raise PreconditionError("origin dimension mismatch")
        return GridSet(dim=dim, cell=cell, origin=origin, cells=cs)

    def measure(self) -> Fraction:
        return len(self.cells) * self.cell ** self.dim

    def offset_to(self, other: "GridSet") -> tuple:
        """Integer index offset between aligned grids; raises if incompatible."""
        if self.dim != other.dim:
            raise PreconditionError("grid dimension mismatch")
        if self.cell != other.cell:
            raise ResolutionMismatchError(
                f"cell sizes differ: {self.cell} vs {other.cell}"
            )
        shift = []
        for a, b in zip(other.origin, self.origin):
            d = (a - b) / self.cell
            if d.denominator != 1:
                raise ResolutionMismatchError("grid origins are not lattice-aligned")
            shift.append(int(d))
        return tuple(shift)

    def contains_point(self, point: Sequence) -> bool:
        """True iff the point lies in the closed voxel union."""
        p = [exactify(c) for c in point]
        if len(p) != self.dim:
            raise PreconditionError("point dimension mismatch")
        # a point on a shared face belongs to several candidate cells
        lows = [(x - o) / self.cell for x, o in zip(p, self.origin)]
        from itertools import product

        candidates = []
        for l in lows:
            fl = l.numerator // l.denominator
            opts = {fl}
            if l == fl:  # exactly on a face
                opts.add(fl - 1)
            candidates.append(sorted(opts))
        return any(ix in self.cells for ix in product(*candidates))


@dataclass(frozen=True)
class LatticeSet:
    """Finite subset of Z^dim."""

    dim: int
    points: frozenset

    @staticmethod
    def from_points(points: Iterable[Sequence[int]], dim=None) -> "LatticeSet":
        ps = frozenset(tuple(int(c) for c in p) for p in points)
        if dim is None:
            if not ps:
                raise PreconditionError("empty lattice set needs an explicit dim")
            dim = len(next(iter(ps)))
        if any(len(p) != dim for p in ps):
            raise PreconditionError("inconsistent point dimension")
        return LatticeSet(dim=dim, points=ps)

    def __len__(self) -> int:
        return len(self.points)


Body = Union[VPolytope, GridSet, LatticeSet]


# ---------------------------------------------------------------------------
# constructions


def make_simplex(n: int, length) -> VPolytope:
    """Standard corner simplex: x_j >= 0, sum x_j <= length, exact rationals."""
    if n < 1:
        raise PreconditionError("dimension must be >= 1")
    length = exactify(length)
    if length <= 0:
        raise PreconditionError("edge parameter must be positive")
    verts = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        verts.append(tuple(length if j == i else Fraction(0) for j in range(n)))
    return VPolytope(dim=n, vertices=tuple(verts), mode=MODE_RATIONAL, full_dim=True)


def reflect(body: Body) -> Body:
    """Pointwise negation -B; exact in every representation."""
    if isinstance(body, VPolytope):
        verts = tuple(tuple(-c for c in v) for v in body.vertices)
        return VPolytope(body.dim, verts, body.mode, body.full_dim)
    if isinstance(body, GridSet):
        cells = frozenset(tuple(-i - 1 for i in ix) for ix in body.cells)
        origin = tuple(-c for c in body.origin)
        return GridSet(body.dim, body.cell, origin, cells)
    if isinstance(body, LatticeSet):
        return LatticeSet(body.dim, frozenset(tuple(-c for c in p) for p in body.points))
    raise PreconditionError(f"cannot reflect {type(body).__name__}")


def scale_about(poly: VPolytope, center: Sequence, t) -> VPolytope:
    """Homothety p -> center + t (p - center) with t in [0, 1]."""
    if poly.mode == MODE_RATIONAL:
        t = exactify(t)
        c = tuple(exactify(x) for x in center)
    else:
        t = float(t)
        c = tuple(float(x) for x in center)
    if not 0 <= t <= 1:
        raise PreconditionError(f"homothety factor {t} outside [0, 1]")
    if len(c) != poly.dim:
        raise PreconditionError("center dimension mismatch")
    verts = tuple(
        tuple(cc + t * (v - cc) for cc, v in zip(c, vert)) for vert in poly.vertices
    )
    if t == 0:
        return VPolytope(poly.dim, (verts[0],), poly.mode, full_dim=False)
    return VPolytope(poly.dim, tuple(dict.fromkeys(verts)), poly.mode, poly.full_dim)


# ---------------------------------------------------------------------------
# JSON set-description format


def _scalar_to_json(value):
    if isinstance(value, float):
        return value
    q = Fraction(value)
    if q.denominator == 1:
        return int(q)
    return format_exact(q)


def body_to_json_dict(body: Body) -> dict:
    if isinstance(body, VPolytope):
        return {
            "kind": "vpolytope",
            "dim": body.dim,
            "mode": body.mode,
            "vertices": [[_scalar_to_json(c) for c in v] for v in body.vertices],
        }
    if isinstance(body, GridSet):
        return {
            "kind": "grid",
            "dim": body.dim,
            "cell": _scalar_to_json(body.cell),
            "origin": [_scalar_to_json(c) for c in body.origin],
            "cells": sorted(list(ix) for ix in body.cells),
        }
    if isinstance(body, LatticeSet):
        return {
            "kind": "lattice",
            "dim": body.dim,
            "points": sorted(list(p) for p in body.points),
        }
    raise PreconditionError(f"cannot serialize {type(body).__name__}")


def body_from_json_dict(data) -> Body:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputFormatError("set description must be an object with a 'kind'")
    kind = data["kind"]
    try:
        if kind == "vpolytope":
            rows = data["vertices"]
            mode = data.get("mode")
            if mode is None:
                scalars = [parse_scalar(c) for row in rows for c in row]
                mode = MODE_FLOAT if any(isinstance(s, float) for s in scalars) else MODE_RATIONAL
            if mode not in (MODE_RATIONAL, MODE_FLOAT):
                raise InputFormatError(f"unknown mode {mode!r}")
            if mode == MODE_RATIONAL:
                pts = [[exactify(parse_scalar(c)) for c in row] for row in rows]
            else:
                pts = [[float(parse_scalar(c)) for c in row] for row in rows]
            return VPolytope.from_points(pts, mode=mode)
        if kind == "grid":
            return GridSet.from_cells(
                data["cells"],
                cell=exactify(parse_scalar(data["cell"])),
                origin=[exactify(parse_scalar(c)) for c in data.get("origin", [])] or None,
                dim=data.get("dim"),
            )
        if kind == "lattice":
            return LatticeSet.from_points(data["points"], dim=data.get("dim"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed {kind} description: {exc}") from exc
    raise InputFormatError(f"unknown set kind {kind!r}")


def load_body(path: str) -> Body:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read set description {path}: {exc}") from exc
    return body_from_json_dict(data)
