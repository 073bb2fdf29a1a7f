"""
Cross-checks between the primary algorithms and the brute-force verifiers.
"""

import random
from fractions import Fraction

import pytest

from reeskit.corpus import random_monomial_ideal, random_positive_polyhedron
from reeskit.exceptions import EnumerationCapError, ValidationError
from reeskit.geometry import Hyperplane, PositivePolyhedron, facet_enumeration, scale_and_ceil_lattice
from reeskit.oracle import (
    closure_membership_bruteforce,
    facets_fourier_motzkin,
    lattice_points_naive,
)
from reeskit.semigroup import AffineSemigroup, MonomialIdeal, rational_power_membership


def polyhedron(*points):
    return PositivePolyhedron(len(points[0]), tuple(tuple(Fraction(x) for x in p) for p in points))


def orthant_ideal(*exponents):
    return MonomialIdeal(AffineSemigroup.orthant(len(exponents[0])), tuple(exponents))


class TestFourierMotzkin:
    """Facets by projection."""

    def test_determinantal_example(self):
        """conv{(2,1),(3,0)}."""
        assert facets_fourier_motzkin(polyhedron((2, 1), (3, 0))) == [
            Hyperplane((1, 0), 2), Hyperplane((1, 1), 3)
        ]

    def test_shifted_orthant(self):
        """(1,1) + orthant has X1=1 and X2=1."""
        assert set(facets_fourier_motzkin(polyhedron((1, 1)))) == {
            Hyperplane((1, 0), 1), Hyperplane((0, 1), 1)
        }

    def test_orthant(self):
        """No facets when the origin is a generator."""
        assert facets_fourier_motzkin(polyhedron((0, 0, 0))) == []

    def test_dimension_cap(self):
        """Projection is limited to small dimensions."""
        with pytest.raises(ValidationError):
            facets_fourier_motzkin(polyhedron((1,) * 6))

    @pytest.mark.slow
    def test_agrees_with_double_description(self):
        """Both enumerations return the same facets on 200 random polyhedra."""
        rng = random.Random(17)
        for _ in range(200):
            dim = rng.randint(1, 4)
            p = random_positive_polyhedron(rng, dim, rng.randint(1, 4), 6, rng.choice((1, 2)))
            assert facets_fourier_motzkin(p) == facet_enumeration(p)


class TestNaiveLattice:
    """Full box scans against prefix ceilings."""

    def test_example(self):
        """Determinantal polyhedron at w = 1."""
        assert lattice_points_naive(polyhedron((2, 1), (3, 0)), 1, (3, 1)) == [(2, 1), (3, 0), (3, 1)]

    def test_agrees_with_scale_and_ceil(self):
        """Same points in the same order."""
        rng = random.Random(23)
        for _ in range(25):
            dim = rng.randint(1, 3)
            p = random_positive_polyhedron(rng, dim, rng.randint(1, 3), 4)
            w = Fraction(rng.randint(0, 6), rng.randint(1, 3))
            box = tuple(rng.randint(0, 6) for _ in range(dim))
            assert lattice_points_naive(p, w, box) == scale_and_ceil_lattice(p, w, box)

    def test_cap(self):
        """Naive scans respect the cap too."""
        with pytest.raises(EnumerationCapError):
            lattice_points_naive(polyhedron((1, 1)), 1, (10, 10), cap=5)


class TestBruteForceClosure:
    """x^a in closure(I^p) iff (x^a)^m in I^(pm) for some m."""

    def test_member(self):
        """x^6y^6 is in closure((xy^3, x^3y)^3)."""
        assert closure_membership_bruteforce(orthant_ideal((1, 3), (3, 1)), 3, (6, 6)) is True

    def test_separated(self):
        """x is not in closure((x^2))."""
        assert closure_membership_bruteforce(orthant_ideal((2,)), 1, (1,)) is False

    def test_without_separation(self):
        """An unsuccessful search is inconclusive."""
        assert closure_membership_bruteforce(orthant_ideal((2,)), 1, (1,), m_cap=4, separate=False) is None

    def test_needs_polynomial_ring(self):
        """Semigroup rings are out of scope."""
        ideal = MonomialIdeal(AffineSemigroup(2, ((2, 1), (1, 3))), ((4, 2),))
        with pytest.raises(ValidationError):
            closure_membership_bruteforce(ideal, 1, (4, 2))

    @pytest.mark.slow
    def test_agrees_with_polyhedron(self):
        """Definition and Newton polyhedron agree on 500 (ideal, p, point) triples."""
        rng = random.Random(31)
        for _ in range(50):
            ideal = random_monomial_ideal(rng, 2, rng.randint(1, 3), 3)
            p = rng.randint(1, 2)
            for _ in range(10):
                point = (rng.randint(0, 6), rng.randint(0, 6))
                assert closure_membership_bruteforce(ideal, p, point) == rational_power_membership(
                    ideal, p, point
                )


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
