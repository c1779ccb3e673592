import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qnets import (
    INFINITY,
    GeometryError,
    HPoint,
    Quadric,
    Subspace,
    UndefinedCrossRatioError,
    central_projection,
    cross_ratio,
    is_conjugate,
    join,
    meet,
    multi_ratio,
    polar,
    singular_locus,
    span,
)
from qnets.errors import DimensionMismatchError, ProjectionUndefinedError
from qnets.projective import transform_point
from helpers import oracle_rank, random_collinear, random_invertible, random_point

F = Fraction


def pt(*coords):
    return HPoint(coords)


class TestHPoint:
    def test_projective_equality(self):
        assert pt(2, 4, 6) == pt(1, 2, 3)
        assert pt(-1, -2, -3) == pt(1, 2, 3)
        assert pt(F(1, 2), F(1, 3), 0) == pt(3, 2, 0)
        assert pt(1, 0) != pt(0, 1)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            pt(0, 0, 0)

    @given(st.fractions(min_value=-50, max_value=50), st.integers(0, 2))
    def test_scaling_is_identity(self, lam, idx):
        if lam == 0:
            return
        p = [pt(1, 2, 3), pt(0, 5, -1), pt(7, 0, 0)][idx]
        assert p.scaled(lam) == p


class TestJoinMeet:
    def test_join_of_axes_is_a_line(self):
        s = join([pt(1, 0, 0), pt(0, 1, 0)])
        assert s.projective_dim == 1

    def test_join_idempotent_on_a_point(self):
        p = pt(3, 1, 4)
        assert join([p, p]).projective_dim == 0
        assert join([p, p]).point() == p

    def test_join_dimension_agrees_with_rank_oracle(self):
        rng = random.Random(10)
        for _ in range(50):
            pts = [random_point(rng, 3) for _ in range(3)]
            expected = oracle_rank([p.coords for p in pts]) - 1
            assert join(pts).projective_dim == expected

    def test_meet_of_coordinate_planes(self):
        a = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0]], 3)
        b = Subspace.from_rows([[0, 1, 0, 0], [0, 0, 1, 0]], 3)
        m = meet(a, b)
        assert m.projective_dim == 0
        assert m.point() == pt(0, 1, 0, 0)

    def test_meet_idempotent(self):
        a = Subspace.from_rows([[1, 2, 3, 4], [0, 1, 1, 1]], 3)
        assert meet(a, a) == a

    def test_skew_lines_meet_empty(self):
        rng = random.Random(11)
        found = 0
        for _ in range(40):
            p1, p2, p3, p4 = (random_point(rng, 3) for _ in range(4))
            if oracle_rank([p.coords for p in (p1, p2, p3, p4)]) != 4:
                continue
            found += 1
            assert meet(join([p1, p2]), join([p3, p4])).is_empty
        assert found >= 20

    def test_dimension_formula_on_seeded_pairs(self):
        # rank(A u B) + dim(span A n span B) = rank A + rank B
        rng = random.Random(12)
        for _ in range(200):
            n = rng.randint(2, 4)
            a = join([random_point(rng, n) for _ in range(rng.randint(1, n))])
            b = join([random_point(rng, n) for _ in range(rng.randint(1, n))])
            lhs = oracle_rank(list(a.basis) + list(b.basis)) + (meet(a, b).projective_dim + 1)
            assert lhs == len(a.basis) + len(b.basis)
            assert join([a, b]).projective_dim == oracle_rank(list(a.basis) + list(b.basis)) - 1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            join([pt(1, 0), pt(1, 0, 0)])
        with pytest.raises(DimensionMismatchError):
            meet(Subspace.full(2), Subspace.full(3))


class TestCrossRatio:
    def test_reference_quadruple(self):
        assert cross_ratio(pt(1, 0), pt(1, 1), pt(0, 1), pt(1, -1)) == -1

    def test_repeated_fourth_point_gives_one(self):
        p1, p2, p3 = pt(1, 0), pt(1, 1), pt(0, 1)
        assert cross_ratio(p1, p2, p3, p2) == 1

    def test_scaling_invariance(self):
        rng = random.Random(13)
        for _ in range(30):
            pts = random_collinear(rng, 2, 4)
            base = cross_ratio(*pts)
            scaled = [p.scaled(F(rng.randint(1, 9), rng.randint(1, 9))) for p in pts]
            assert cross_ratio(*scaled) == base

    def test_not_collinear_raises(self):
        with pytest.raises(GeometryError):
            cross_ratio(pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1))

    def test_all_equal_raises(self):
        p = pt(1, 2)
        with pytest.raises(UndefinedCrossRatioError):
            cross_ratio(p, p, p, p)

    def test_infinity_value(self):
        # fourth point equal to the first makes only the denominator vanish
        p1, p2, p3 = pt(1, 0), pt(1, 1), pt(0, 1)
        assert cross_ratio(p1, p2, p3, p1) is INFINITY

    def test_permutation_orbit(self):
        from itertools import permutations

        rng = random.Random(14)
        for _ in range(10):
            pts = random_collinear(rng, 1, 4)
            lam = cross_ratio(*pts)
            orbit = {lam, 1 / lam, 1 - lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam}
            values = {cross_ratio(*(pts[i] for i in perm)) for perm in permutations(range(4))}
            assert values == orbit

    def test_inverse_pairings(self):
        rng = random.Random(15)
        for _ in range(20):
            p1, p2, p3, p4 = random_collinear(rng, 2, 4)
            lam = cross_ratio(p1, p2, p3, p4)
            assert lam * cross_ratio(p1, p4, p3, p2) == 1
            assert cross_ratio(p2, p3, p4, p1) == 1 / lam

    def test_invariance_under_projective_maps(self):
        rng = random.Random(16)
        for _ in range(100):
            pts = random_collinear(rng, 2, 4)
            m = random_invertible(rng, 3)
            assert cross_ratio(*(transform_point(m, p) for p in pts)) == cross_ratio(*pts)

    def test_chart_independence_via_ambient_change(self):
        # same four points expressed in different coordinates give the same value
        rng = random.Random(17)
        for _ in range(25):
            pts = random_collinear(rng, 3, 4)
            m = random_invertible(rng, 4)
            assert cross_ratio(*(transform_point(m, p) for p in pts)) == cross_ratio(*pts)


class TestMultiRatio:
    def test_coincident_leading_pair_gives_zero(self):
        rng = random.Random(18)
        pts = random_collinear(rng, 1, 5)
        assert multi_ratio(pts[0], pts[0], pts[1], pts[2], pts[3], pts[4]) == 0

    def test_six_point_scaling_invariance(self):
        rng = random.Random(19)
        pts = random_collinear(rng, 2, 6)
        scaled = [p.scaled(F(3, 7)) for p in pts]
        assert multi_ratio(*scaled) == multi_ratio(*pts)


class TestCentralProjection:
    def test_reference_projection(self):
        center = Subspace.from_points([pt(0, 0, 0, 1)])
        screen = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 3)
        assert central_projection(pt(1, 1, 1, 1), center, screen) == pt(1, 1, 1, 0)

    def test_screen_points_are_fixed(self):
        center = Subspace.from_points([pt(0, 0, 0, 1)])
        screen = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 3)
        p = pt(2, -3, 5, 0)
        assert central_projection(p, center, screen) == p

    def test_cross_ratio_preserved(self):
        rng = random.Random(20)
        center = Subspace.from_points([pt(1, 2, 3, 4)])
        screen = Subspace.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 3)
        for _ in range(25):
            pts = random_collinear(rng, 3, 4)
            if any(center.contains_point(p) for p in pts):
                continue
            images = [central_projection(p, center, screen) for p in pts]
            if join(images).projective_dim != 1:
                continue
            assert cross_ratio(*images) == cross_ratio(*pts)

    def test_point_in_center_rejected(self):
        center = Subspace.from_points([pt(0, 0, 1)])
        screen = Subspace.from_rows([[1, 0, 0], [0, 1, 0]], 2)
        with pytest.raises(ProjectionUndefinedError):
            central_projection(pt(0, 0, 5), center, screen)

    def test_non_supplementary_rejected(self):
        center = Subspace.from_points([pt(1, 0, 0)])
        screen = Subspace.from_rows([[1, 0, 0], [0, 1, 0]], 2)
        with pytest.raises(GeometryError):
            central_projection(pt(0, 0, 1), center, screen)


class TestQuadric:
    def sphere(self):
        return Quadric([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])

    def test_symmetry_required(self):
        with pytest.raises(ValueError):
            Quadric([[0, 1], [2, 0]])

    def test_equality_up_to_scale(self):
        q1 = Quadric([[2, 0], [0, -2]])
        q2 = Quadric([[1, 0], [0, -1]])
        assert q1 == q2

    def test_polar_of_sphere_point(self):
        h = polar(self.sphere(), pt(1, 0, 0, 0))
        assert h.projective_dim == 2
        assert h == Subspace.from_rows([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 3)

    def test_polar_of_singular_point_is_everything(self):
        q = Quadric([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
        assert polar(q, pt(0, 0, 1)).is_full

    def test_self_polar_iff_on_quadric(self):
        q = self.sphere()
        rng = random.Random(21)
        for _ in range(30):
            p = random_point(rng, 3)
            assert polar(q, p).contains_point(p) == q.contains_point(p)

    def test_singular_point_is_conjugate_to_everything(self):
        q = Quadric([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
        s = pt(0, 0, 1)
        rng = random.Random(22)
        for _ in range(20):
            assert is_conjugate(q, s, random_point(rng, 2))

    def test_hyperplane_pair_singular_locus(self):
        u = (1, 0, 0, 0)
        v = (0, 1, 1, 0)
        form = [[u[r] * v[c] + v[r] * u[c] for c in range(4)] for r in range(4)]
        q = Quadric(form)
        u1 = Subspace.from_rows([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 3)
        u2 = Subspace.from_rows([[1, 0, 0, 0], [0, 1, -1, 0], [0, 0, 0, 1]], 3)
        assert singular_locus(q) == meet(u1, u2)

    def test_nondegenerate_has_empty_singular_locus(self):
        assert singular_locus(self.sphere()).is_empty

    def test_exactness_under_rescaled_representatives(self):
        rng = random.Random(23)
        q = self.sphere()
        for _ in range(20):
            p = random_point(rng, 3)
            r = random_point(rng, 3)
            s1, s2 = F(rng.randint(1, 9)), F(rng.randint(1, 9), rng.randint(1, 9))
            assert is_conjugate(q, p, r) == is_conjugate(q, p.scaled(s1), r.scaled(s2))
            assert polar(q, p) == polar(q, p.scaled(s2))


@settings(max_examples=40)
@given(
    st.lists(st.fractions(min_value=-9, max_value=9), min_size=3, max_size=3),
    st.fractions(min_value=-9, max_value=9),
)
def test_span_membership_closed_under_scaling(coords, lam):
    if not any(coords) or lam == 0:
        return
    p = HPoint(coords)
    line = span(p, pt(1, 1, 1)) if p != pt(1, 1, 1) else span(p)
    assert line.contains_point(p.scaled(lam))
