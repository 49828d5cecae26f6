"""Verifiers for the sumset volume inequalities.

Each checker returns a CheckReport.  Exact checks (discrete sumsets, exact
polytope volumes) carry errorBudget 0: any failure there is a kernel bug,
not numerical noise.  Quadrature and grid-backed checks carry an explicit
budget and a note that non-convex bodies are resolution-limited.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
import json
import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from .bodies import (
    GridSet,
    HPolytope,
    LatticeSet,
    VPolytope,
    body_to_json_dict,
)
from .errors import DimensionCapError, PreconditionError
from .geometry import (
    FACET_DIM_CAP,
    bounding_box,
    difference_body,
    exact_volume,
    facet_enum,
    grid_minkowski,
    grid_slice,
    hpoly_volume,
    lattice_slice,
    lattice_sum,
    membership,
    minkowski_sum,
    rasterize,
    select_subset_of_measure,
    slice_body,
    vertex_candidates,
)
from .linalg import dot
from .measure import rng_for
from .rationals import exactify, nth_root_bounds
from .report import CheckReport, le_report

GRID_NOTE = "non-convex operands are voxelized; this comparison is resolution-limited"


def describe(body) -> str:
    """Short provenance string with a content digest."""
    payload = json.dumps(body_to_json_dict(body), sort_keys=True).encode()
    digest = hashlib.sha256(payload).hexdigest()[:12]
    if isinstance(body, VPolytope):
        return f"vpolytope dim={body.dim} vertices={len(body.vertices)} sha256:{digest}"
    if isinstance(body, GridSet):
        return f"grid dim={body.dim} h={body.cell} cells={len(body.cells)} sha256:{digest}"
    if isinstance(body, LatticeSet):
        return f"lattice dim={body.dim} points={len(body.points)} sha256:{digest}"
    return type(body).__name__


# ---------------------------------------------------------------------------
# discrete checks


def check_ruzsa_triangle(a: LatticeSet, b: LatticeSet, c: LatticeSet) -> CheckReport:
    """|A-B| |C| <= |A+C| |C+B| for finite sets in Z^d, exactly."""
    if not (a.dim == b.dim == c.dim):
        raise PreconditionError("dimension mismatch")
    if not c.points:
        raise PreconditionError("C must be nonempty (it divides)")
    from .geometry import lattice_difference

    lhs = len(lattice_difference(a, b)) * len(c)
    rhs = len(lattice_sum(a, c)) * len(lattice_sum(c, b))
    return le_report(
        "ruzsa_triangle", lhs, rhs,
        inputs={"A": describe(a), "B": describe(b), "C": describe(c)},
        parameters={"card_A_minus_B": len(lattice_difference(a, b)),
                    "card_A_plus_C": len(lattice_sum(a, c)),
                    "card_C_plus_B": len(lattice_sum(c, b)),
                    "card_C": len(c)},
    )


def check_koester_katz(a, b, x) -> CheckReport:
    """Containment A_x + B inside (A+B)_x, exact on lattices and voxel grids."""
    if isinstance(a, LatticeSet) and isinstance(b, LatticeSet):
        if a.dim != b.dim:
            raise PreconditionError("dimension mismatch")
        xv = tuple(int(v) for v in x)
        ax_plus_b = lattice_sum(lattice_slice(a, xv), b)
        ab_x = lattice_slice(lattice_sum(a, b), xv)
        subset = ax_plus_b.points <= ab_x.points
        lhs: Union[int, Fraction] = len(ax_plus_b)
        rhs: Union[int, Fraction] = len(ab_x)
    elif isinstance(a, GridSet) and isinstance(b, GridSet):
        ax_plus_b = grid_minkowski(grid_slice(a, x), b)
        ab_x = grid_slice(grid_minkowski(a, b), x)
        subset = ax_plus_b.cells <= ab_x.cells
        lhs = ax_plus_b.measure()
        rhs = ab_x.measure()
    else:
        raise PreconditionError("operands must be two lattice sets or two grids")
    report = le_report(
        "koester_katz", lhs, rhs,
        inputs={"A": describe(a), "B": describe(b)},
        parameters={"relation": "subset", "x": list(x), "subset": bool(subset)},
    )
    report.passed = bool(subset)
    return report


# ---------------------------------------------------------------------------
# slice volume lower bound: mu(A_x) >= (1-r)^n mu(A) for x in r(A-A)


def check_slice_lower_bound(
    a: VPolytope,
    r,
    trials: int = 200,
    seed: int = 0,
    tol_rel: float = 1e-9,
) -> CheckReport:
    """Sample x = r(a1 - a2) and verify the slice volume bound exactly.

    a1, a2 are drawn uniformly from A by rejection sampling in the bounding
    box; acceptance uses the exact halfspace test on the exactified sample,
    so every x certifiably lies in r(A-A) and the volume comparison is a
    theorem instance, not an approximation.
    """
    r = exactify(r)
    if not 0 <= r <= 1:
        raise PreconditionError("r must lie in [0, 1]")
    if not a.full_dim:
        raise PreconditionError("A must be full-dimensional")
    n = a.dim
    vol_a = exact_volume(a)
    a_h = facet_enum(a)
    bound = (1 - r) ** n * vol_a

    rg = rng_for(seed, "slice_lower_bound")
    box = [(float(lo), float(hi)) for lo, hi in bounding_box(a)]
    rejected = 0

    def sample() -> tuple:
        nonlocal rejected
        while True:
            u = rg.random(n)
            point = tuple(
                Fraction(lo + ui * (hi - lo))
                for ui, (lo, hi) in zip(u.tolist(), box)
            )
            if a_h.contains(point):
                return point
            rejected += 1

    min_vol: Optional[Fraction] = None
    for _ in range(max(1, trials)):
        a1 = sample()
        a2 = sample()
        x = tuple(r * (u - v) for u, v in zip(a1, a2))
        vol_x = hpoly_volume(slice_body(a_h, x))
        if min_vol is None or vol_x < min_vol:
            min_vol = vol_x

    lhs = bound * (1 - Fraction(tol_rel))
    min_ratio = float(min_vol / bound) if bound > 0 else float("inf")
    return le_report(
        "slice_lower_bound", lhs, min_vol,
        inputs={"A": describe(a)},
        parameters={"r": r, "trials": trials, "seed": seed,
                    "tol_rel": tol_rel, "rejected_samples": rejected,
                    "min_ratio": min_ratio,
                    "bound": bound, "vol_A": vol_a},
    )


# ---------------------------------------------------------------------------
# slice-sum integral bound: int over A-A of mu(A_x + B) dx <= mu(A+B)^2


def _index_ranges(box, step: Fraction, origin) -> list[range]:
    ranges = []
    for j, (lo, hi) in enumerate(box):
        imin = math.ceil((lo - origin[j]) / step - Fraction(1, 2))
        imax = math.floor((hi - origin[j]) / step - Fraction(1, 2))
        ranges.append(range(imin, imax + 1))
    return ranges


def _halfspace_index_tests(h: HPolytope, step: Fraction, origin) -> list[tuple[tuple[int, ...], int]]:
    tests = []
    for normal, offset in h.halfspaces:
        den = 1
        for c in normal:
            den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
        a = tuple(int(c * den) for c in normal)
        bound = (offset * den - sum(ai * o for ai, o in zip(a, origin))
                 - step / 2 * sum(a)) / step
        tests.append((a, math.floor(bound)))
    return tests


def rasterize_hpoly(h: HPolytope, step: Fraction, origin, box) -> GridSet:
    """Center-rule voxelization of an H-polytope over a known bounding box."""
    ranges = _index_ranges(box, step, origin)
    tests = _halfspace_index_tests(h, step, origin)
    cells = []
    for ix in itertools.product(*ranges):
        if all(dot(a, ix) <= cap for a, cap in tests):
            cells.append(ix)
    return GridSet(h.dim, step, tuple(origin), frozenset(cells))


def check_slice_sum_bound(a: VPolytope, b, hx) -> CheckReport:
    """Midpoint-rule quadrature of the slice-sum integral against mu(A+B)^2.

    The integrand mu(A_x + B) is evaluated exactly per grid point: as an
    exact polytope volume for convex B, or as a voxel measure when B is a
    grid (resolution-limited, noted in the report).  The error budget covers
    midpoint variation (sampled Lipschitz estimate, inflated by 4) plus full
    mass of the cells straddling the boundary of A-A.
    """
    if a.dim > 3:
        raise DimensionCapError("slice-sum quadrature supported for dimension <= 3")
    if not a.full_dim:
        raise PreconditionError("A must be full-dimensional")
    step = exactify(hx)
    if step <= 0:
        raise PreconditionError("quadrature step must be positive")
    n = a.dim
    notes = []

    diff = difference_body(a)
    diff_h = facet_enum(diff)
    a_h = facet_enum(a)
    zero_origin = (Fraction(0),) * n

    grid_b = isinstance(b, GridSet)
    if grid_b:
        notes.append(GRID_NOTE)
        raster_a = rasterize(a, b.cell, origin=zero_origin)
        sum_ab = grid_minkowski(raster_a, b)
        rhs_measure = sum_ab.measure()
        b_exact_vertices = None
    else:
        sum_ab = minkowski_sum(a, b)
        rhs_measure = exact_volume(sum_ab)
        b_exact_vertices = b.exact_vertices()
    rhs = rhs_measure ** 2

    # midpoint grid over the difference body
    diff_box = bounding_box(diff)
    ranges = _index_ranges(diff_box, step, zero_origin)
    inside_tests = _halfspace_index_tests(diff_h, step, zero_origin)
    a_box = bounding_box(a)

    values: dict = {}
    for ix in itertools.product(*ranges):
        if not all(dot(t, ix) <= cap for t, cap in inside_tests):
            continue
        x = tuple(step * (i + Fraction(1, 2)) for i in ix)
        ax = slice_body(a_h, x)
        if grid_b:
            raster_x = rasterize_hpoly(ax, b.cell, zero_origin, a_box)
            if raster_x.cells:
                g = grid_minkowski(raster_x, b).measure()
            else:
                g = Fraction(0)
        else:
            cands = vertex_candidates(ax)
            if not cands:
                g = Fraction(0)
            else:
                sums = sorted({tuple(p + q for p, q in zip(u, v))
                               for u in cands for v in b_exact_vertices})
                g = exact_volume(VPolytope.from_points(sums))
        values[ix] = g

    lhs = step ** n * sum(values.values(), Fraction(0))

    # sampled Lipschitz constant from axis-neighbor finite differences
    lip = Fraction(0)
    straddle_mass = Fraction(0)
    for ix, g in values.items():
        on_boundary = False
        for j in range(n):
            for sgn in (1, -1):
                jx = tuple(v + (sgn if t == j else 0) for t, v in enumerate(ix))
                if jx in values:
                    diff_g = abs(values[jx] - g) / step
                    if diff_g > lip:
                        lip = diff_g
                else:
                    on_boundary = True
        if on_boundary:
            straddle_mass += g
    budget = 4 * lip * n * step * (len(values) * step ** n) + straddle_mass * step ** n

    return le_report(
        "slice_sum_bound", lhs, rhs, error_budget=budget,
        inputs={"A": describe(a), "B": describe(b)},
        parameters={"hx": step, "grid_points": len(values),
                    "lipschitz_sampled": float(lip),
                    "sum_measure": rhs_measure,
                    "quadrature_lhs": float(lhs)},
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Brunn-Minkowski with directed rounding


def check_brunn_minkowski(a: VPolytope, b: VPolytope, bits: int = 160) -> CheckReport:
    """mu(A+B)^(1/n) >= mu(A)^(1/n) + mu(B)^(1/n) with certified roots.

    The sum side's roots are rounded up and the left side down, so a pass is
    conservative.  Perfect-power volumes round exactly, which keeps the
    homothetic equality cases (like A = B = cube) passing.
    """
    if not (a.full_dim and b.full_dim):
        raise PreconditionError("both bodies must be full-dimensional")
    if a.dim != b.dim:
        raise PreconditionError("dimension mismatch")
    n = a.dim
    vol_a = exact_volume(a)
    vol_b = exact_volume(b)
    vol_ab = exact_volume(minkowski_sum(a, b))
    up_a = nth_root_bounds(vol_a, n, bits)[1]
    up_b = nth_root_bounds(vol_b, n, bits)[1]
    lo_ab = nth_root_bounds(vol_ab, n, bits)[0]
    return le_report(
        "brunn_minkowski", up_a + up_b, lo_ab,
        inputs={"A": describe(a), "B": describe(b)},
        parameters={"vol_A": vol_a, "vol_B": vol_b, "vol_sum": vol_ab,
                    "root_bits": bits},
    )


# ---------------------------------------------------------------------------
# the difference-body bound in its three forms


class BoundForm(enum.Enum):
    FULL = "full"          # geometric-sum form, no measure precondition
    A_GE_B = "a_ge_b"      # requires mu(A) >= mu(B)
    B_GE_A = "b_ge_a"      # requires mu(B) >= mu(A); routes through a subset B'


def check_difference_bound(
    a: VPolytope,
    b,
    form: BoundForm,
    c_budget: float = 10.0,
) -> CheckReport:
    """Empirical implied constant of the selected bound form against a budget.

    The asymptotic statement hides an absolute constant; this reports
    c_emp = lhs / mu(A+B)^2 for the chosen form and passes iff
    c_emp <= c_budget.  All measure ratios are taken as exact rationals
    before any float enters, so c_emp is scale-invariant bit for bit.
    """
    if not a.full_dim:
        raise PreconditionError("A must be full-dimensional")
    n = a.dim
    notes = []
    vol_a = exact_volume(a)
    vol_diff = exact_volume(difference_body(a))

    if isinstance(b, GridSet):
        notes.append(GRID_NOTE)
        vol_b = b.measure()
        raster_a = rasterize(a, b.cell, origin=(Fraction(0),) * n)
        sum_ab = grid_minkowski(raster_a, b)
        vol_ab = sum_ab.measure()
    elif isinstance(b, VPolytope):
        vol_b = exact_volume(b)
        vol_ab = exact_volume(minkowski_sum(a, b))
    else:
        raise PreconditionError("B must be a polytope or a grid")
    if vol_b <= 0 or vol_ab <= 0:
        raise PreconditionError("measures must be positive")

    rho = vol_a / vol_b                      # exact; omega = rho^(1/n)
    omega = float(rho) ** (1.0 / n)
    sqrt_n = math.sqrt(n)
    ratio_q = vol_diff * vol_b / vol_ab ** 2  # exact scale-invariant part
    geom_statement = math.fsum(omega ** k for k in range(0, math.isqrt(n) + 1))
    geom_proof = math.fsum(omega ** k for k in range(1, math.isqrt(n) + 2))

    params = {
        "form": form.value,
        "omega": omega,
        "vol_A": vol_a, "vol_B": vol_b, "vol_diff": vol_diff, "vol_sum": vol_ab,
        "geometric_sum_statement": geom_statement,
        "geometric_sum_proof_chain": geom_proof,
        "c_budget": float(c_budget),
    }

    if form is BoundForm.FULL:
        c_emp = geom_statement * omega * float(ratio_q)
    elif form is BoundForm.A_GE_B:
        if vol_a < vol_b:
            raise PreconditionError("form a_ge_b requires mu(A) >= mu(B)")
        c_emp = sqrt_n * omega * float(ratio_q)
    elif form is BoundForm.B_GE_A:
        if vol_b < vol_a:
            raise PreconditionError("form b_ge_a requires mu(B) >= mu(A)")
        b_prime = select_subset_of_measure(b, vol_a)
        subset_ok, vol_ab_prime, achieved = _subset_and_sum(a, b, b_prime)
        residual = vol_a - achieved
        monotone_ok = vol_ab_prime <= vol_ab
        params.update({
            "b_prime": describe(b_prime),
            "b_prime_measure": achieved,
            "b_prime_residual": residual,
            "subset_ok": bool(subset_ok),
            "monotone_ok": bool(monotone_ok),
            "vol_sum_b_prime": vol_ab_prime,
        })
        c_emp = sqrt_n * float(vol_a * vol_diff / vol_ab ** 2)
        if not (subset_ok and monotone_ok):
            report = le_report("difference_bound", c_emp, float(c_budget),
                               inputs={"A": describe(a), "B": describe(b)},
                               parameters=params, notes=notes)
            report.passed = False
            return report
    else:  # pragma: no cover - exhaustive enum
        raise PreconditionError(f"unknown form {form}")

    params["c_emp"] = c_emp
    return le_report(
        "difference_bound", c_emp, float(c_budget),
        inputs={"A": describe(a), "B": describe(b)},
        parameters=params, notes=notes,
    )


def _subset_and_sum(a: VPolytope, b, b_prime):
    """Containment of B' in B, mu(A + B'), and the achieved measure of B'."""
    if isinstance(b, VPolytope):
        subset_ok = all(membership(b, v) for v in b_prime.exact_vertices())
        vol_ab_prime = exact_volume(minkowski_sum(a, b_prime))
        achieved = exact_volume(b_prime)
    else:
        subset_ok = b_prime.cells <= b.cells
        raster_a = rasterize(a, b.cell, origin=(Fraction(0),) * a.dim)
        vol_ab_prime = grid_minkowski(raster_a, b_prime).measure()
        achieved = b_prime.measure()
    return subset_ok, vol_ab_prime, achieved
