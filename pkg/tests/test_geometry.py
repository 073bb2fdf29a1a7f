"""
Tests for exact positive-polyhedron geometry.

Reference data: the worked Rees-package examples (determinantal ideal of a
generic 2x3 matrix, monomial ideal of a non-normal-looking semigroup) and
their joins.
"""

import random
from fractions import Fraction

import pytest

from reeskit.corpus import random_point, random_positive_polyhedron
from reeskit.exceptions import CalculationError, EnumerationCapError, ValidationError
from reeskit.geometry import (
    Hyperplane,
    PositivePolyhedron,
    cone_facets,
    conv_join,
    facet_enumeration,
    find_nonnegative_solution,
    matrix_rank,
    order_of,
    parse_rational,
    polyhedron_membership,
    satisfies_facets,
    scale_and_ceil_lattice,
    stabilized_exponent,
    star,
    star_labels,
)


def polyhedron(*points):
    return PositivePolyhedron(len(points[0]), tuple(tuple(Fraction(x) for x in p) for p in points))


class TestRationals:
    """Parsing and rendering of exact rationals."""

    def test_parse_forms(self):
        """'p/q', 'p', int and Fraction all parse."""
        assert parse_rational("3/2") == Fraction(3, 2)
        assert parse_rational("6/4") == Fraction(3, 2)
        assert parse_rational("-2") == Fraction(-2)
        assert parse_rational(5) == Fraction(5)
        assert parse_rational(Fraction(7, 3)) == Fraction(7, 3)

    @pytest.mark.parametrize("bad", ["1.5", "1/0", "x", "", 1.5, True])
    def test_rejects_non_rationals(self, bad):
        """Floats, zero denominators and junk are input errors."""
        with pytest.raises(ValidationError):
            parse_rational(bad)

    def test_stabilized_exponent(self):
        """w moves up to the grid Z/e."""
        assert stabilized_exponent("3/2", 10) == Fraction(3, 2)
        assert stabilized_exponent("1/3", 2) == Fraction(1, 2)
        assert stabilized_exponent(0, 7) == 0


class TestHyperplane:
    """Canonical form of non-coordinate hyperplanes."""

    def test_joint_gcd_reduction(self):
        """(2,4,0)=8 reduces to (1,2,0)=4."""
        h = Hyperplane((2, 4, 0), 8)
        assert h.normal == (1, 2, 0)
        assert h.offset == 4

    def test_reduction_is_joint(self):
        """gcd of the normal alone does not divide the offset."""
        h = Hyperplane((2, 2), 3)
        assert h == Hyperplane((2, 2), 3)
        assert h.normal == (2, 2)

    @pytest.mark.parametrize("normal,offset", [((0, 0), 1), ((1, -1), 1), ((1, 1), 0)])
    def test_invalid(self, normal, offset):
        """Zero or negative normals and non-positive offsets are rejected."""
        with pytest.raises(ValidationError):
            Hyperplane(normal, offset)

    def test_from_rational(self):
        """(1/2, 1/3) = 1 clears to (3, 2) = 6."""
        assert Hyperplane.from_rational((Fraction(1, 2), Fraction(1, 3)), 1) == Hyperplane((3, 2), 6)
        assert Hyperplane.from_rational(("2/4", 0), "1/2") == Hyperplane((1, 0), 1)

    def test_equation_rendering(self):
        """Coefficient 1 is omitted, zero terms dropped."""
        assert Hyperplane((3, 4, 4), 12).equation(["X", "X1", "X2"]) == "3X+4X1+4X2=12"
        assert Hyperplane((0, 1), 5).equation(["v1", "v2"]) == "v2=5"


class TestFacetEnumeration:
    """Non-coordinate facets by double description."""

    def test_determinantal_example(self):
        """conv{(2,1),(3,0)} -> X1=2, X1+X2=3."""
        facets = facet_enumeration(polyhedron((2, 1), (3, 0)))
        assert facets == [Hyperplane((1, 0), 2), Hyperplane((1, 1), 3)]

    def test_monomial_example(self):
        """conv{(0,10),(5,5)} -> X2=5, X1+X2=10."""
        facets = facet_enumeration(polyhedron((0, 10), (5, 5)))
        assert set(facets) == {Hyperplane((1, 1), 10), Hyperplane((0, 1), 5)}

    def test_shifted_orthant(self):
        """(1,1,1) + orthant has the three unit facets."""
        facets = facet_enumeration(polyhedron((1, 1, 1)))
        assert set(facets) == {
            Hyperplane((1, 0, 0), 1), Hyperplane((0, 1, 0), 1), Hyperplane((0, 0, 1), 1)
        }

    def test_newton_polyhedron_of_two_monomials(self):
        """(xy^3, x^3y): X1=1, X2=1, X1+X2=4; the lines through one vertex are not facets."""
        facets = facet_enumeration(polyhedron((1, 3), (3, 1)))
        assert set(facets) == {Hyperplane((1, 0), 1), Hyperplane((0, 1), 1), Hyperplane((1, 1), 4)}

    def test_origin_means_no_facets(self):
        """A generator at the origin gives the whole orthant."""
        assert facet_enumeration(polyhedron((0, 0), (1, 2))) == []

    def test_generators_are_minimized(self):
        """Dominated and interior generators are dropped."""
        p = polyhedron((2, 1), (3, 0), (3, 3), (5, 1))
        assert p.generators == ((Fraction(2), Fraction(1)), (Fraction(3), Fraction(0)))

    def test_facets_sorted(self):
        """Output is sorted by (normal, offset)."""
        facets = facet_enumeration(polyhedron((0, 10), (5, 5)))
        assert facets == sorted(facets, key=Hyperplane.sort_key)


class TestMembership:
    """LP membership versus the H-representation."""

    def test_examples(self):
        """Three reference verdicts."""
        mon = polyhedron((0, 10), (5, 5))
        det = polyhedron((2, 1), (3, 0))
        assert polyhedron_membership(mon, "3/2", (0, 15))
        assert polyhedron_membership(det, 0, (0, 0))
        assert not polyhedron_membership(det, 1, (1, 0))

    def test_dimension_mismatch(self):
        """Wrong point length is an input error."""
        with pytest.raises(ValidationError):
            polyhedron_membership(polyhedron((1, 1)), 1, (1, 1, 1))

    def test_lp_matches_facets(self):
        """V- and H-representations agree on random points."""
        rng = random.Random(7)
        for _ in range(40):
            dim = rng.randint(1, 3)
            p = random_positive_polyhedron(rng, dim, rng.randint(1, 4), 6)
            facets = facet_enumeration(p)
            for w in (Fraction(0), Fraction(1, 3), Fraction(1), Fraction(7, 2)):
                for _ in range(5):
                    point = random_point(rng, dim, 12, 2)
                    assert polyhedron_membership(p, w, point) == satisfies_facets(facets, w, point)

    def test_homogeneity(self):
        """point in wP iff t*point in (tw)P."""
        p = polyhedron((2, 1), (3, 0))
        point = (Fraction(5, 2), Fraction(1, 2))
        for t in (Fraction(1, 3), Fraction(2), Fraction(5, 4)):
            assert polyhedron_membership(p, 1, point) == polyhedron_membership(
                p, t, tuple(t * x for x in point)
            )

    def test_order(self):
        """Largest w with the point in wP."""
        facets = facet_enumeration(polyhedron((0, 10), (5, 5)))
        assert order_of(facets, (0, 15)) == Fraction(3, 2)
        assert order_of([], (1, 1)) is None


class TestExactSimplex:
    """Phase-one feasibility."""

    def test_feasible(self):
        """x + y = 2, x - y = 0 has (1, 1)."""
        assert find_nonnegative_solution([[1, 1], [1, -1]], [2, 0]) == [1, 1]

    def test_infeasible(self):
        """x + y = -1 has no nonnegative solution."""
        assert find_nonnegative_solution([[1, 1]], [-1]) is None


class TestCones:
    """Cone facets and exact ranks."""

    def test_two_rays(self):
        """Cone over (2,1) and (1,3)."""
        assert cone_facets([(2, 1), (1, 3)]) == [(-1, 2), (3, -1)]

    def test_orthant(self):
        """Rational rays are cleared before the cone is built."""
        assert cone_facets([(Fraction(1, 2), 0), (0, 1)]) == [(0, 1), (1, 0)]

    def test_redundant_ray(self):
        """(1,1) is interior to the orthant and adds no facet."""
        assert cone_facets([(1, 0), (1, 1), (0, 1)]) == [(0, 1), (1, 0)]

    def test_three_dimensional(self):
        """Cone over a square cross-section has four facets."""
        facets = cone_facets([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
        assert facets == [(-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1)]

    @pytest.mark.parametrize("rays", [[(1, 1), (2, 2)], [(0, 0)], []])
    def test_must_span(self, rays):
        """Degenerate cones are rejected."""
        with pytest.raises(CalculationError):
            cone_facets(rays)

    @pytest.mark.parametrize(
        "rows, rank",
        [
            ([[1, 2], [2, 4]], 1),
            ([[Fraction(1, 2), 1], [1, 3]], 2),
            ([[1, 0, 0], [0, 1, 0], [1, 1, 0]], 2),
            ([[0, 0]], 0),
            ([], 0),
        ],
    )
    def test_matrix_rank(self, rows, rank):
        """Rank over Q."""
        assert matrix_rank(rows) == rank


class TestStarAndJoin:
    """Star products and the join of two positive polyhedra."""

    def test_star_examples(self):
        """(X=4)*(X1+X2=3) and (X=4)*(X1=2)."""
        assert star(Hyperplane((1,), 4), Hyperplane((1, 1), 3)) == Hyperplane((3, 4, 4), 12)
        assert star(Hyperplane((1,), 4), Hyperplane((1, 0), 2)) == Hyperplane((1, 2, 0), 4)
        assert star(Hyperplane((1,), 1), Hyperplane((1,), 1)) == Hyperplane((1, 1), 1)

    def test_star_labels(self):
        """Right labels switch stem when they would collide."""
        assert star_labels(1, 2) == (["X"], ["X1", "X2"])
        assert star_labels(2, 2) == (["X1", "X2"], ["Y1", "Y2"])

    def test_join_example(self):
        """(4) joined with conv{(2,1),(3,0)}."""
        joined = conv_join(polyhedron((4,)), polyhedron((2, 1), (3, 0)))
        assert set(joined.generators) == {
            (Fraction(4), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(2), Fraction(1)),
            (Fraction(0), Fraction(3), Fraction(0)),
        }
        assert set(facet_enumeration(joined)) == {Hyperplane((3, 4, 4), 12), Hyperplane((1, 2, 0), 4)}

    def test_join_simplex(self):
        """(1) joined with itself is the simplex X1+X2=1."""
        joined = conv_join(polyhedron((1,)), polyhedron((1,)))
        assert facet_enumeration(joined) == [Hyperplane((1, 1), 1)]

    def test_join_facets_are_star_products(self):
        """Facets of a join are exactly the pairwise star products."""
        rng = random.Random(11)
        for _ in range(25):
            left = random_positive_polyhedron(rng, rng.randint(1, 2), rng.randint(1, 3), 5)
            right = random_positive_polyhedron(rng, rng.randint(1, 2), rng.randint(1, 3), 5)
            expected = {star(a, b) for a in facet_enumeration(left) for b in facet_enumeration(right)}
            assert set(facet_enumeration(conv_join(left, right))) == expected


class TestScaleAndCeil:
    """Lattice points of wP inside a box."""

    def test_examples(self):
        """Three reference boxes."""
        det = polyhedron((2, 1), (3, 0))
        assert scale_and_ceil_lattice(det, 1, (3, 1)) == [(2, 1), (3, 0), (3, 1)]
        assert scale_and_ceil_lattice(det, 0, (1, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert scale_and_ceil_lattice(polyhedron((4,)), "1/2", (2,)) == [(2,)]

    def test_cap(self):
        """Boxes above the cap are refused."""
        with pytest.raises(EnumerationCapError):
            scale_and_ceil_lattice(polyhedron((1, 1)), 1, (100, 100), cap=50)

    def test_negative_box(self):
        """Box coordinates must be nonnegative."""
        with pytest.raises(ValidationError):
            scale_and_ceil_lattice(polyhedron((1, 1)), 1, (1, -1))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
