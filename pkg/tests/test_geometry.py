import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sumsetlab.bodies import GridSet, LatticeSet, VPolytope, make_simplex, reflect
from sumsetlab.bundles import lshape_grid, random_polytope, unit_cube
from sumsetlab.errors import (
    DegenerateInputError,
    DimensionCapError,
    PreconditionError,
    ResolutionMismatchError,
)
from sumsetlab.geometry import (
    convex_hull,
    difference_body,
    exact_volume,
    facet_enum,
    grid_minkowski,
    grid_slice,
    hpoly_volume,
    hull_of,
    lattice_slice,
    membership,
    membership_lp,
    minkowski_sum,
    rasterize,
    select_subset_of_measure,
    slice_body,
    vertex_candidates,
    vertex_enum,
)

from conftest import vertex_set

small_coord = st.integers(-6, 6)


def rational_points(dim, min_size, max_size=6):
    return st.lists(
        st.tuples(*[st.fractions(min_value=-4, max_value=4, max_denominator=8)
                    for _ in range(dim)]),
        min_size=min_size, max_size=max_size,
    )


class TestMinkowskiSum:
    def test_squares_add_to_double_square(self, square):
        out = minkowski_sum(square, square)
        assert exact_volume(out) == 4
        assert vertex_set(out) == {(Fraction(a), Fraction(b))
                                   for a in (0, 2) for b in (0, 2)}

    def test_simplex_doubling(self, triangle):
        out = minkowski_sum(triangle, triangle)
        assert vertex_set(out) == vertex_set(make_simplex(2, 2))
        assert exact_volume(out) == 2  # 2^n times the simplex measure

    def test_simplex_plus_reflection_hexagon(self, triangle):
        out = minkowski_sum(triangle, reflect(triangle))
        expected = {(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1)}
        assert vertex_set(out) == {(Fraction(a), Fraction(b)) for a, b in expected}
        assert exact_volume(out) == 3  # matches C(4, 2) * area(triangle)

    def test_dim_mismatch(self, square, triangle):
        with pytest.raises(PreconditionError):
            minkowski_sum(square, make_simplex(3, 1))

    def test_mode_mismatch(self, square):
        f = VPolytope.from_points([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], mode="float")
        with pytest.raises(PreconditionError):
            minkowski_sum(square, f)

    @given(rational_points(2, 3), rational_points(2, 3))
    @settings(max_examples=30, deadline=None, derandomize=True)
    def test_commutativity(self, pts_a, pts_b):
        a = VPolytope.from_points(pts_a)
        b = VPolytope.from_points(pts_b)
        assert vertex_set(minkowski_sum(a, b)) == vertex_set(minkowski_sum(b, a))

    @given(rational_points(2, 3),
           st.tuples(st.fractions(min_value=-3, max_value=3, max_denominator=6),
                     st.fractions(min_value=-3, max_value=3, max_denominator=6)))
    @settings(max_examples=30, deadline=None, derandomize=True)
    def test_translation_equivariance(self, pts, shift):
        a = VPolytope.from_points(pts)
        b = make_simplex(2, 1)
        moved = VPolytope.from_points([tuple(c + s for c, s in zip(p, shift))
                                       for p in a.exact_vertices()])
        lhs = vertex_set(minkowski_sum(moved, b))
        rhs = {tuple(c + s for c, s in zip(p, shift))
               for p in vertex_set(minkowski_sum(a, b))}
        assert lhs == rhs


class TestGridMinkowski:
    def test_zero_cell_translates(self):
        g = GridSet.from_cells([(1, 1), (2, 3)], cell=1)
        zero = GridSet.from_cells([(0, 0)], cell=1)
        assert grid_minkowski(zero, g).cells == g.cells

    def test_two_blocks_dilate(self):
        g = GridSet.from_cells([(i, j) for i in range(2) for j in range(2)], cell=1)
        out = grid_minkowski(g, g)
        assert out.cells == frozenset((i, j) for i in range(3) for j in range(3))

    def test_difference_contains_origin_point(self):
        g = GridSet.from_cells([(2, 5), (3, 5), (3, 6)], cell=Fraction(1, 2))
        d = difference_body(g)
        assert d.contains_point((0, 0))

    def test_resolution_mismatch(self):
        g1 = GridSet.from_cells([(0,)], cell=Fraction(1, 2))
        g2 = GridSet.from_cells([(0,)], cell=Fraction(1, 3))
        with pytest.raises(ResolutionMismatchError):
            grid_minkowski(g1, g2)


class TestDifferenceBody:
    def test_interval(self):
        seg = VPolytope.from_points([(0,), (1,)])
        d = difference_body(seg)
        assert vertex_set(d) == {(Fraction(-1),), (Fraction(1),)}
        assert exact_volume(d) == 2

    def test_triangle_hexagon_area(self, triangle):
        assert exact_volume(difference_body(triangle)) == 3

    def test_central_symmetry(self):
        p = random_polytope(5, "sym", 3, points=7)
        d = difference_body(p)
        assert vertex_set(d) == vertex_set(reflect(d))

    def test_lattice(self):
        l = LatticeSet.from_points([(0,), (1,), (3,)])
        d = difference_body(l)
        assert d.points == {(-3,), (-2,), (-1,), (0,), (1,), (2,), (3,)}


class TestFacetEnum:
    def test_square_has_four(self, square):
        assert len(facet_enum(square).halfspaces) == 4

    def test_simplex_has_n_plus_one(self):
        for n in (1, 2, 3, 4):
            assert len(facet_enum(make_simplex(n, Fraction(7, 2))).halfspaces) == n + 1

    def test_difference_body_facet_count(self):
        # the simplex difference body has 2(2^n - 1) facets
        for n in (2, 3):
            d = difference_body(make_simplex(n, 1))
            assert len(facet_enum(d).halfspaces) == 2 * (2 ** n - 1)

    def test_membership_agrees_on_vertices(self, triangle):
        h = facet_enum(triangle)
        for v in triangle.exact_vertices():
            assert h.contains(v)

    def test_round_trip_vertex_enum(self):
        for body in (unit_cube(2), make_simplex(3, Fraction(5, 2)),
                     difference_body(make_simplex(2, 1))):
            back = vertex_enum(facet_enum(body))
            assert vertex_set(back) == vertex_set(hull_of(body))

    def test_cap(self):
        with pytest.raises(DimensionCapError):
            facet_enum(make_simplex(7, 1))

    def test_degenerate_rejected(self):
        flat = VPolytope.from_points([(0, 0), (1, 1)])
        with pytest.raises(DegenerateInputError):
            facet_enum(flat)


class TestSliceBody:
    def test_zero_shift_is_identity(self, square):
        h = facet_enum(square)
        s = slice_body(h, (0, 0))
        assert hpoly_volume(s) == 1

    def test_interval_slice(self):
        seg = VPolytope.from_points([(0,), (1,)])
        s = slice_body(facet_enum(seg), (Fraction(1, 2),))
        assert hpoly_volume(s) == Fraction(1, 2)
        assert sorted(vertex_candidates(s)) == [(Fraction(0),), (Fraction(1, 2),)]

    def test_extreme_shift_gives_point(self, triangle):
        s = slice_body(facet_enum(triangle), (1, 0))
        assert hpoly_volume(s) == 0
        assert vertex_candidates(s) == [(Fraction(0), Fraction(0))]

    def test_outside_difference_body_empty(self, triangle):
        s = slice_body(facet_enum(triangle), (2, 2))
        assert vertex_candidates(s) == []
        assert hpoly_volume(s) == 0

    def test_slice_never_larger(self, triangle):
        h = facet_enum(triangle)
        vol = exact_volume(triangle)
        for x in [(Fraction(1, 3), Fraction(-1, 5)), (Fraction(-1, 2), Fraction(1, 7)),
                  (Fraction(1, 9), Fraction(1, 9))]:
            assert hpoly_volume(slice_body(h, x)) <= vol

    def test_lattice_and_grid_slices(self):
        l = LatticeSet.from_points([(0,), (1,), (3,)])
        assert lattice_slice(l, (1,)).points == {(0,)}
        g = GridSet.from_cells([(0,), (1,), (3,)], cell=Fraction(1, 2))
        assert grid_slice(g, (Fraction(1, 2),)).cells == {(0,)}
        with pytest.raises(ResolutionMismatchError):
            grid_slice(g, (Fraction(1, 3),))


class TestMembership:
    def test_trivial_points(self, triangle):
        assert membership(triangle, (Fraction(1, 4), Fraction(1, 4)))
        assert membership(triangle, (0, 0))  # vertex included
        assert membership(triangle, (1, 0))
        assert not membership(triangle, (2, 2))

    def test_lp_agrees_with_facets(self):
        body = random_polytope(3, "member", 3, points=8)
        import numpy as np

        rng = np.random.default_rng(0)
        for _ in range(40):
            p = tuple(Fraction(c) for c in (rng.random(3) * 1.2 - 0.1).tolist())
            assert membership(body, p) == membership_lp(body, p)

    def test_lp_against_scipy(self):
        scipy_opt = pytest.importorskip("scipy.optimize")
        import numpy as np

        body = random_polytope(9, "member2", 2, points=7)
        verts = np.array([[float(c) for c in v] for v in body.exact_vertices()])
        rng = np.random.default_rng(1)
        for _ in range(25):
            p = rng.random(2) * 1.2 - 0.1
            m = len(verts)
            res = scipy_opt.linprog(
                c=np.zeros(m),
                A_eq=np.vstack([verts.T, np.ones(m)]),
                b_eq=np.append(p, 1.0),
                bounds=[(0, None)] * m,
                method="highs",
            )
            exact = membership_lp(body, tuple(Fraction(v) for v in p.tolist()))
            # skip the knife-edge disagreements the float LP cannot resolve
            dist = min(abs(float(sum(a * Fraction(v) for a, v in zip(normal, p.tolist()))
                             - off))
                       for normal, off in
                       (facet_enum(body).halfspaces))
            if dist > 1e-7:
                assert exact == res.success

    def test_degenerate_membership_via_lp(self):
        flat = VPolytope.from_points([(0, 0), (2, 2)])
        assert membership(flat, (1, 1))
        assert not membership(flat, (1, 0))


class TestSelectSubset:
    def test_full_measure_returns_same_body(self, square):
        assert select_subset_of_measure(square, 1) is square

    def test_exact_homothety(self):
        big = VPolytope.from_points([(0, 0), (2, 0), (0, 2), (2, 2)])
        out = select_subset_of_measure(big, 1)
        assert exact_volume(out) == 1
        assert vertex_set(out) == {(Fraction(1, 2), Fraction(1, 2)),
                                   (Fraction(3, 2), Fraction(1, 2)),
                                   (Fraction(1, 2), Fraction(3, 2)),
                                   (Fraction(3, 2), Fraction(3, 2))}

    def test_irrational_ratio_under_approximates(self, square):
        target = Fraction(1, 3)
        out = select_subset_of_measure(square, target)
        got = exact_volume(out)
        assert got <= target
        assert target - got < Fraction(1, 10 ** 30)
        assert all(membership(square, v) for v in out.exact_vertices())

    def test_grid_lexicographic(self):
        g = GridSet.from_cells([(i,) for i in range(10)], cell=1)
        out = select_subset_of_measure(g, 4)
        assert out.cells == {(0,), (1,), (2,), (3,)}

    def test_grid_residual_below_one_voxel(self):
        g = GridSet.from_cells([(i, j) for i in range(3) for j in range(3)],
                               cell=Fraction(1, 2))
        target = Fraction(1, 3)
        out = select_subset_of_measure(g, target)
        assert out.measure() <= target < out.measure() + g.cell ** 2
        assert out.cells <= g.cells

    def test_target_validation(self, square):
        with pytest.raises(PreconditionError):
            select_subset_of_measure(square, 2)
        with pytest.raises(PreconditionError):
            select_subset_of_measure(square, 0)

    def test_containment_of_vertices(self):
        body = random_polytope(21, "subset", 3, points=8)
        out = select_subset_of_measure(body, exact_volume(body) / 7)
        assert all(membership(body, v) for v in out.exact_vertices())


class TestRasterize:
    def test_unit_square_half_step(self, square):
        g = rasterize(square, Fraction(1, 2))
        assert g.cells == {(0, 0), (0, 1), (1, 0), (1, 1)}
        assert g.measure() == 1

    def test_point_polytope(self):
        pt = VPolytope.from_points([(Fraction(1, 4), Fraction(1, 4))])
        g = rasterize(pt, Fraction(1, 2))
        assert g.measure() in (0, Fraction(1, 4))

    def test_triangle_converges(self, triangle):
        g = rasterize(triangle, Fraction(1, 100))
        assert abs(g.measure() - Fraction(1, 2)) < Fraction(5, 100)

    def test_refinement_improves(self, triangle):
        errs = []
        for k in (5, 10, 20, 40):
            g = rasterize(triangle, Fraction(1, k))
            errs.append(abs(g.measure() - Fraction(1, 2)))
        for coarse, fine in zip(errs, errs[1:]):
            assert fine <= 2 * coarse  # halving h at least halves the error, slack 4

    def test_grid_exact_agreement_improves(self, triangle, square):
        errors = []
        exact = exact_volume(minkowski_sum(triangle, square))
        for k in (4, 8):
            ga = rasterize(triangle, Fraction(1, k))
            gb = rasterize(square, Fraction(1, k))
            approx = grid_minkowski(ga, gb).measure()
            errors.append(abs(approx - exact))
        assert errors[0] >= Fraction(3, 2) * errors[1]


class TestConvexHullIdempotence:
    @given(rational_points(2, 3, 7))
    @settings(max_examples=30, deadline=None, derandomize=True)
    def test_hull_idempotent(self, pts):
        first = convex_hull(pts)
        second = convex_hull(first.vertices)
        assert vertex_set(first) == vertex_set(second)
