"""Geometric kernel: hulls, Minkowski sums, facets, slices, membership.

Exact paths work over scaled integer coordinates: rational inputs are
multiplied by the lcm of their denominators, all predicates and volumes are
computed with integer determinants, and results are rescaled.  Float-mode
bodies are converted losslessly (binary floats are dyadic rationals), so the
same kernel serves both modes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import hull as hull_mod
from .bodies import (
    MODE_FLOAT,
    MODE_RATIONAL,
    GridSet,
    HPolytope,
    LatticeSet,
    VPolytope,
    reflect,
    scale_about,
)
from .errors import (
    DegenerateInputError,
    DimensionCapError,
    PreconditionError,
    ResolutionMismatchError,
)
from .linalg import dot, rank_int, solve_cramer
from .rationals import exactify, lcm_of_denominators, nth_root_bounds, perfect_nth_root

# Exact facet enumeration beyond this dimension blows up combinatorially;
# callers are directed to grid / Monte Carlo paths instead.
FACET_DIM_CAP = 6

# Cap on halfspace-subset enumeration during vertex recovery.
_VERTEX_ENUM_CAP = 400_000


# ---------------------------------------------------------------------------
# scaled-integer plumbing


def _scale_to_ints(points: Sequence[Sequence[Fraction]]) -> tuple[list[tuple[int, ...]], int]:
    den = lcm_of_denominators([c for p in points for c in p])
    ints = [tuple(int(c * den) for c in p) for p in points]
    return ints, den


def _hull_cached(poly: VPolytope):
    """Hull data for a full-dimensional polytope: (HullResult, scale, point->vertex map)."""

    def build():
        exact = poly.exact_vertices()
        ints, den = _scale_to_ints(exact)
        back = {ip: poly.vertices[i] for i, ip in enumerate(ints)}
        data = hull_mod.build_hull(ints, poly.dim)
        return data, den, back

    return poly.cache_once("hull", build)


def vertex_centroid(poly: VPolytope) -> tuple:
    """Exact average of the (stored) vertex list."""
    exact = poly.exact_vertices()
    k = len(exact)
    return tuple(sum(col) / k for col in zip(*exact))


def bounding_box(poly: VPolytope) -> list[tuple[Fraction, Fraction]]:
    exact = poly.exact_vertices()
    return [(min(col), max(col)) for col in zip(*exact)]


# ---------------------------------------------------------------------------
# convex hull


def convex_hull(points: Iterable[Sequence], mode: Optional[str] = None) -> VPolytope:
    """Minimal vertex description of conv(points); exact in rational mode.

    Degenerate inputs are reduced to their affine hull first, so collinear
    or otherwise flat point sets still get a minimal vertex set (with
    full_dim=False on the result).
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise PreconditionError("convex hull of an empty point set")
    if mode is None:
        mode = MODE_FLOAT if any(isinstance(c, float) for p in pts for c in p) else MODE_RATIONAL
    staged = VPolytope.from_points(pts, mode=mode)
    return hull_of(staged)


def hull_of(poly: VPolytope) -> VPolytope:
    """Hull of a polytope's vertex cloud, dropping non-extreme points."""
    exact = poly.exact_vertices()
    ints, _den = _scale_to_ints(exact)
    order = sorted(range(len(ints)), key=lambda i: ints[i])
    ints_sorted = [ints[i] for i in order]
    originals = [poly.vertices[i] for i in order]
    lookup = dict(zip(ints_sorted, originals))

    if len(ints_sorted) == 1:
        return VPolytope(poly.dim, (originals[0],), poly.mode, full_dim=False)

    try:
        data = hull_mod.build_hull(ints_sorted, poly.dim)
    except DegenerateInputError:
        return _degenerate_hull(ints_sorted, lookup, poly)

    verts = tuple(lookup[data.points[i]] for i in data.vertex_ids)
    return VPolytope(poly.dim, verts, poly.mode, full_dim=True)


def _degenerate_hull(ints: list[tuple[int, ...]], lookup, poly: VPolytope) -> VPolytope:
    dim = poly.dim
    base = ints[0]
    basis: list[tuple[int, ...]] = []
    reduced: list[list[Fraction]] = []
    for p in ints[1:]:
        vec = [Fraction(p[j] - base[j]) for j in range(dim)]
        work = list(vec)
        for row in reduced:
            lead = next(j for j, v in enumerate(row) if v != 0)
            if work[lead] != 0:
                f = work[lead] / row[lead]
                work = [a - f * b for a, b in zip(work, row)]
        if any(v != 0 for v in work):
            reduced.append(work)
            basis.append(tuple(p[j] - base[j] for j in range(dim)))
    d = len(basis)
    if d == 0:
        return VPolytope(dim, (lookup[base],), poly.mode, full_dim=False)

    # pivot columns where the basis matrix has full column rank
    pivots = []
    for j in range(dim):
        if len(pivots) == d:
            break
        if rank_int([[b[c] for c in pivots + [j]] for b in basis]) == len(pivots) + 1:
            pivots.append(j)
    square = [[basis[i][j] for i in range(d)] for j in pivots]  # d x d, columns=basis
    coords = []
    for p in ints:
        rhs = [p[j] - base[j] for j in pivots]
        sol = solve_cramer(square, rhs)
        if sol is None:
            raise AssertionError("affine basis lost rank")
        nums, den = sol
        coords.append(tuple(Fraction(v, den) for v in nums))
    flat_ints, _ = _scale_to_ints(coords)
    seen = {}
    for ip, fp in zip(ints, flat_ints):
        seen.setdefault(fp, ip)
    distinct = sorted(seen)
    if len(distinct) == 1:
        return VPolytope(dim, (lookup[seen[distinct[0]]],), poly.mode, full_dim=False)
    if d == 1 or len(distinct) <= d + 1:
        # low content: extremes suffice in 1-D; otherwise all points are vertices
        if d == 1:
            keep = [distinct[0], distinct[-1]]
        else:
            keep = distinct
    else:
        sub = hull_mod.build_hull(distinct, d)
        keep = [sub.points[i] for i in sub.vertex_ids]
    verts = tuple(lookup[seen[fp]] for fp in keep)
    return VPolytope(dim, verts, poly.mode, full_dim=False)


# ---------------------------------------------------------------------------
# Minkowski algebra


def _require_same_mode(p: VPolytope, q: VPolytope) -> None:
    if p.dim != q.dim:
        raise PreconditionError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if p.mode != q.mode:
        raise PreconditionError("mixed coordinate modes in a binary operation")


def minkowski_sum(p: VPolytope, q: VPolytope) -> VPolytope:
    """Sumset of convex polytopes: hull of all pairwise vertex sums."""
    _require_same_mode(p, q)
    pe, qe = p.exact_vertices(), q.exact_vertices()
    sums = {tuple(a + b for a, b in zip(u, v)) for u in pe for v in qe}
    staged = VPolytope(p.dim, tuple(sorted(sums)), MODE_RATIONAL,
                       full_dim=p.full_dim or q.full_dim)
    out = hull_of(staged)
    if p.mode == MODE_FLOAT:
        verts = tuple(tuple(float(c) for c in v) for v in out.vertices)
        return VPolytope(p.dim, verts, MODE_FLOAT, out.full_dim)
    return out


def grid_minkowski(g1: GridSet, g2: GridSet) -> GridSet:
    """Index-lattice dilation {i + j}; exact on the voxel lattice."""
    g1.offset_to(g2)  # validates cell size and origin alignment
    if not g1.cells or not g2.cells:
        return GridSet(g1.dim, g1.cell,
                       tuple(a + b for a, b in zip(g1.origin, g2.origin)),
                       frozenset())
    cells = _dilate_indices(g1.cells, g2.cells, g1.dim)
    origin = tuple(a + b for a, b in zip(g1.origin, g2.origin))
    return GridSet(g1.dim, g1.cell, origin, cells)


def _dilate_indices(cells1, cells2, dim: int) -> frozenset:
    import numpy as np

    a = np.array(sorted(cells1), dtype=np.int64)
    b = np.array(sorted(cells2), dtype=np.int64)
    lo = a.min(axis=0) + b.min(axis=0)
    hi = a.max(axis=0) + b.max(axis=0)
    spans = (hi - lo + 1).astype(np.int64)
    total = int(spans.prod())
    if total > 50_000_000:
        # bounding box too sparse for the dense-code path
        out = set()
        bl = [tuple(int(v) for v in row) for row in b]
        for pa in cells1:
            for pb in bl:
                out.add(tuple(x + y for x, y in zip(pa, pb)))
        return frozenset(out)
    strides = np.ones(dim, dtype=np.int64)
    for j in range(dim - 2, -1, -1):
        strides[j] = strides[j + 1] * spans[j + 1]
    # code(pa + pb) = (pa - a_min).strides + (pb - b_min).strides, both nonneg
    enc_a = (a - a.min(axis=0)) @ strides
    enc_b = (b - b.min(axis=0)) @ strides
    seen = np.zeros(total, dtype=bool)
    for ea in enc_a:
        seen[ea + enc_b] = True
    idx = np.flatnonzero(seen)
    out = []
    for code in idx:
        rem = int(code)
        tup = []
        for j in range(dim):
            q, rem = divmod(rem, int(strides[j]))
            tup.append(q + int(lo[j]))
        out.append(tuple(tup))
    return frozenset(out)


def grid_translate(g: GridSet, shift: Sequence[int]) -> GridSet:
    cells = frozenset(tuple(i + s for i, s in zip(ix, shift)) for ix in g.cells)
    return GridSet(g.dim, g.cell, g.origin, cells)


def grid_intersection(g1: GridSet, g2: GridSet) -> GridSet:
    shift = g1.offset_to(g2)
    other = frozenset(tuple(i + s for i, s in zip(ix, shift)) for ix in g2.cells)
    return GridSet(g1.dim, g1.cell, g1.origin, g1.cells & other)


def grid_union(g1: GridSet, g2: GridSet) -> GridSet:
    shift = g1.offset_to(g2)
    other = frozenset(tuple(i + s for i, s in zip(ix, shift)) for ix in g2.cells)
    return GridSet(g1.dim, g1.cell, g1.origin, g1.cells | other)


def difference_body(body):
    """B + (-B); centrally symmetric in every representation."""
    if isinstance(body, VPolytope):
        return minkowski_sum(body, reflect(body))
    if isinstance(body, GridSet):
        return grid_minkowski(body, reflect(body))
    if isinstance(body, LatticeSet):
        pts = frozenset(
            tuple(a - b for a, b in zip(p, q)) for p in body.points for q in body.points
        )
        return LatticeSet(body.dim, pts)
    raise PreconditionError(f"cannot form difference body of {type(body).__name__}")


def lattice_sum(a: LatticeSet, b: LatticeSet) -> LatticeSet:
    if a.dim != b.dim:
        raise PreconditionError("dimension mismatch")
    return LatticeSet(a.dim, frozenset(
        tuple(x + y for x, y in zip(p, q)) for p in a.points for q in b.points
    ))


def lattice_difference(a: LatticeSet, b: LatticeSet) -> LatticeSet:
    return lattice_sum(a, reflect(b))


def lattice_slice(a: LatticeSet, x: Sequence[int]) -> LatticeSet:
    """A_x = A intersect (A - x) = {p in A : p + x in A}."""
    x = tuple(int(v) for v in x)
    pts = frozenset(p for p in a.points
                    if tuple(u + v for u, v in zip(p, x)) in a.points)
    return LatticeSet(a.dim, pts)


def grid_slice(g: GridSet, x: Sequence) -> GridSet:
    """G_x on the voxel lattice; x must be an exact multiple of the cell size."""
    shift = []
    for v in x:
        q = exactify(v) / g.cell
        if q.denominator != 1:
            raise ResolutionMismatchError("slice vector is not lattice-aligned")
        shift.append(int(q))
    moved = frozenset(tuple(i - s for i, s in zip(ix, shift)) for ix in g.cells)
    return GridSet(g.dim, g.cell, g.origin, g.cells & moved)


# ---------------------------------------------------------------------------
# facet enumeration and halfspace-side operations


def facet_enum(poly: VPolytope) -> HPolytope:
    """Irredundant halfspace description of a bounded full-dimensional polytope."""
    if poly.dim > FACET_DIM_CAP:
        raise DimensionCapError(
            f"facet enumeration capped at dimension {FACET_DIM_CAP}; "
            "use grid or Monte Carlo paths instead"
        )
    if not poly.full_dim:
        raise DegenerateInputError("facet enumeration needs a full-dimensional polytope")

    def build():
        data, den, _back = _hull_cached(poly)
        rows = []
        for f in data.facets:
            rows.append((tuple(Fraction(c) for c in f.normal), f.offset / den))
        return HPolytope(dim=poly.dim, halfspaces=tuple(rows), bounded=True)

    return poly.cache_once("facets", build)


def slice_body(h: HPolytope, x: Sequence) -> HPolytope:
    """A intersect (A - x): the original halfspaces plus their x-shifted copies.

    Redundant halfspaces are kept; downstream volume routines tolerate them.
    The result may be empty or lower-dimensional.
    """
    xe = [exactify(v) for v in x]
    if len(xe) != h.dim:
        raise PreconditionError("slice vector dimension mismatch")
    extra = []
    for normal, offset in h.halfspaces:
        extra.append((normal, offset - sum(a * v for a, v in zip(normal, xe))))
    return HPolytope(h.dim, h.halfspaces + tuple(extra), bounded=h.bounded)


def _canonical_rows(h: HPolytope) -> list[tuple[tuple[int, ...], int, int]]:
    """Halfspaces as primitive integer rows (a, b_num, b_den): a.x <= b_num/b_den."""
    rows = []
    seen = set()
    for normal, offset in h.halfspaces:
        den = lcm_of_denominators(list(normal) + [offset])
        a = tuple(int(c * den) for c in normal)
        b = int(offset * den)
        g = math.gcd(*[abs(v) for v in a], abs(b))
        if g > 1:
            a = tuple(v // g for v in a)
            b //= g
        if (a, b) not in seen:
            seen.add((a, b))
            rows.append((a, b))
    rows.sort()
    return rows


def vertex_candidates(h: HPolytope) -> list[tuple]:
    """All basic feasible points of an H-polytope (brute-force subsets).

    Every vertex appears; extra points on faces are harmless for volume and
    hull reconstruction.  Raises DimensionCapError when the subset count is
    unreasonable.
    """
    if not h.bounded:
        raise PreconditionError("vertex enumeration needs a bounded polytope")
    rows = _canonical_rows(h)
    m, n = len(rows), h.dim
    if m < n:
        return []
    if math.comb(m, n) > _VERTEX_ENUM_CAP:
        raise DimensionCapError(
            f"vertex enumeration over {m} halfspaces in R^{n} is too large"
        )
    normals = [r[0] for r in rows]
    offsets = [r[1] for r in rows]
    found = {}
    for combo in itertools.combinations(range(m), n):
        sol = solve_cramer([normals[i] for i in combo], [offsets[i] for i in combo])
        if sol is None:
            continue
        nums, den = sol
        ok = True
        for a, b in rows:
            if dot(a, nums) > b * den:
                ok = False
                break
        if ok:
            key = tuple(Fraction(v, den) for v in nums)
            found[key] = True
    return sorted(found)


def vertex_enum(h: HPolytope) -> VPolytope:
    """V-description of an H-polytope (minimal vertex set)."""
    cands = vertex_candidates(h)
    if not cands:
        raise DegenerateInputError("empty polytope has no vertices")
    return convex_hull(cands, mode=MODE_RATIONAL)


# ---------------------------------------------------------------------------
# membership


def membership(poly: VPolytope, point: Sequence) -> bool:
    """Exact point-in-polytope test (boundary inclusive)."""
    if len(point) != poly.dim:
        raise PreconditionError("point dimension mismatch")
    if poly.full_dim and poly.dim <= FACET_DIM_CAP:
        h = facet_enum(poly)
        return h.contains([exactify(c) for c in point])
    return membership_lp(poly, point)


def membership_lp(poly: VPolytope, point: Sequence) -> bool:
    """Exact convex-combination feasibility via a rational phase-I simplex.

    Works in any dimension and for degenerate polytopes; used where facet
    enumeration is unavailable, and as an independent cross-check in tests.
    """
    verts = poly.exact_vertices()
    p = [exactify(c) for c in point]
    return _lp_in_hull(verts, p)


def _lp_in_hull(verts: list[tuple], p: list[Fraction]) -> bool:
    n = len(p)
    m = len(verts)
    # constraint rows: sum_i v_i[j] lam_i = p[j]; sum_i lam_i = 1
    rows = [[verts[i][j] for i in range(m)] for j in range(n)]
    rows.append([Fraction(1)] * m)
    rhs = [Fraction(v) for v in p] + [Fraction(1)]
    for r in range(n + 1):
        if rhs[r] < 0:
            rows[r] = [-v for v in rows[r]]
            rhs[r] = -rhs[r]
    k = n + 1
    # tableau with artificial identity block; minimize sum of artificials
    tab = [rows[r] + [Fraction(1) if c == r else Fraction(0) for c in range(k)] + [rhs[r]]
           for r in range(k)]
    basis = list(range(m, m + k))
    obj = [sum(tab[r][c] for r in range(k)) for c in range(m + k + 1)]
    while True:
        enter = None
        for c in range(m):  # structural columns only (artificials never re-enter)
            if obj[c] > 0 and c not in basis:
                enter = c
                break
        if enter is None:
            break
        leave = None
        best = None
        for r in range(k):
            if tab[r][enter] > 0:
                q = tab[r][-1] / tab[r][enter]
                if best is None or q < best or (q == best and basis[r] < basis[leave]):
                    best = q
                    leave = r
        if leave is None:
            break  # unbounded cannot happen in phase I; defensive
        pv = tab[leave][enter]
        tab[leave] = [v / pv for v in tab[leave]]
        for r in range(k):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [a - f * b for a, b in zip(tab[r], tab[leave])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, tab[leave])]
        basis[leave] = enter
    return obj[-1] == 0


# ---------------------------------------------------------------------------
# measure-matched subset selection


def select_subset_of_measure(body, target):
    """Subset of B with prescribed measure.

    Convex B: homothety about the vertex centroid with factor
    (target / measure)^(1/n); exact when that root is rational, otherwise a
    128-bit rational under-approximation (the result is then minutely
    smaller than the target, never larger, and still a subset).

    GridSet: keeps the lexicographically first floor(target / h^n) cells,
    leaving a residual below one voxel.
    """
    target = exactify(target)
    if target <= 0:
        raise PreconditionError("target measure must be positive")
    if isinstance(body, VPolytope):
        total = exact_volume(body)
        if target > total:
            raise PreconditionError(f"target {target} exceeds measure {total}")
        if target == total:
            return body
        ratio = target / total
        t = perfect_nth_root(ratio, body.dim)
        if t is None:
            t, _hi = nth_root_bounds(ratio, body.dim, bits=128)
        return scale_about(body, vertex_centroid(body), t)
    if isinstance(body, GridSet):
        total = body.measure()
        if target > total:
            raise PreconditionError(f"target {target} exceeds measure {total}")
        cell_measure = body.cell ** body.dim
        keep = int(target / cell_measure)  # floor
        cells = sorted(body.cells)[:keep]
        return GridSet(body.dim, body.cell, body.origin, frozenset(cells))
    raise PreconditionError(f"cannot select a subset of {type(body).__name__}")


# ---------------------------------------------------------------------------
# exact volume (fan triangulation over facets from an interior apex)


def exact_volume(poly: VPolytope) -> Fraction:
    """Exact volume of a full-dimensional polytope, 0 for degenerate ones."""
    if not poly.full_dim:
        return Fraction(0)
    if poly.dim > FACET_DIM_CAP:
        raise DimensionCapError(
            f"exact volume capped at dimension {FACET_DIM_CAP}; "
            "use grid or Monte Carlo estimates"
        )

    def compute():
        data, den, _back = _hull_cached(poly)
        apex_num = tuple(sum(data.points[i][j] for i in data.vertex_ids)
                         for j in range(poly.dim))
        apex_den = len(data.vertex_ids)
        vol_scaled = data.fan_volume(apex_num, apex_den)
        return vol_scaled / Fraction(den) ** poly.dim

    return poly.cache_once("volume", compute)


def exact_volume_from_apex(poly: VPolytope, apex: Sequence) -> Fraction:
    """Fan volume from a caller-chosen interior apex (triangulation-invariance probe)."""
    if not poly.full_dim:
        return Fraction(0)
    data, den, _back = _hull_cached(poly)
    scaled = [exactify(c) * den for c in apex]  # apex in scaled coordinates
    aden = lcm_of_denominators(scaled)
    apex_num = tuple(int(c * aden) for c in scaled)
    vol_scaled = data.fan_volume(apex_num, aden)
    return vol_scaled / Fraction(den) ** poly.dim


def hpoly_volume(h: HPolytope) -> Fraction:
    """Exact volume of a bounded H-polytope (0 when empty or degenerate)."""
    cands = vertex_candidates(h)
    if len(cands) <= h.dim:
        return Fraction(0)
    staged = VPolytope.from_points(cands, mode=MODE_RATIONAL)
    if not staged.full_dim:
        return Fraction(0)
    return exact_volume(staged)


# ---------------------------------------------------------------------------
# rasterization


def rasterize(poly: VPolytope, h, origin: Optional[Sequence] = None) -> GridSet:
    """Voxelize a polytope: a cell is occupied iff its center lies inside.

    Cell i covers origin + h*(i + [0,1]^n); centers sit at origin + h*(i + 1/2).
    """
    step = exactify(h)
    if step <= 0:
        raise PreconditionError("cell size must be positive")
    dim = poly.dim
    if origin is None:
        origin = (Fraction(0),) * dim
    else:
        origin = tuple(exactify(c) for c in origin)

    if not poly.full_dim:
        cells = _rasterize_degenerate(poly, step, origin)
        return GridSet(dim, step, origin, cells)

    hp = facet_enum(poly)
    box = bounding_box(poly)
    ranges = []
    for j, (lo, hi) in enumerate(box):
        imin = math.ceil((lo - origin[j]) / step - Fraction(1, 2))
        imax = math.floor((hi - origin[j]) / step - Fraction(1, 2))
        if imax < imin:
            return GridSet(dim, step, origin, frozenset())
        ranges.append(range(imin, imax + 1))

    # integer thresholds: a . i <= floor((b - a.origin - (h/2) sum(a)) / h)
    tests = []
    for normal, offset in hp.halfspaces:
        a = tuple(int(c) for c in normal)
        bound = (offset - sum(n * o for n, o in zip(normal, origin))
                 - step / 2 * sum(normal)) / step
        tests.append((a, math.floor(bound)))

    cells = []
    for ix in itertools.product(*ranges):
        ok = True
        for a, cap in tests:
            if dot(a, ix) > cap:
                ok = False
                break
        if ok:
            cells.append(ix)
    return GridSet(dim, step, origin, frozenset(cells))


def _rasterize_degenerate(poly: VPolytope, step: Fraction, origin) -> frozenset:
    box = bounding_box(poly)
    dim = poly.dim
    ranges = []
    for j, (lo, hi) in enumerate(box):
        imin = math.ceil((lo - origin[j]) / step - Fraction(1, 2))
        imax = math.floor((hi - origin[j]) / step - Fraction(1, 2))
        if imax < imin:
            return frozenset()
        ranges.append(range(imin, imax + 1))
    cells = []
    for ix in itertools.product(*ranges):
        center = [origin[j] + step * (ix[j] + Fraction(1, 2)) for j in range(dim)]
        if membership_lp(poly, center):
            cells.append(ix)
    return frozenset(cells)


# ---------------------------------------------------------------------------
# membership oracles for Monte Carlo


@dataclass(frozen=True)
class MembershipOracle:
    """Deterministic point-in-set oracle backing Monte Carlo volume."""

    dim: int
    test: Callable[[Sequence[float]], bool]
    description: str
    batch: Optional[Callable] = field(default=None, compare=False)


def polytope_oracle(poly: VPolytope) -> MembershipOracle:
    """Float halfspace oracle (with vectorized batch path) for a polytope."""
    import numpy as np

    hp = facet_enum(poly)
    a = np.array([[float(c) for c in normal] for normal, _ in hp.halfspaces])
    b = np.array([float(offset) for _, offset in hp.halfspaces])
    tol = 1e-12 * (1.0 + float(np.abs(b).max()))

    def test(point) -> bool:
        x = np.asarray(point, dtype=float)
        return bool(np.all(a @ x <= b + tol))

    def batch(points):
        pts = np.asarray(points, dtype=float)
        return np.all(pts @ a.T <= b + tol, axis=1)

    return MembershipOracle(dim=poly.dim, test=test,
                            description=f"halfspace test, {len(b)} facets",
                            batch=batch)
