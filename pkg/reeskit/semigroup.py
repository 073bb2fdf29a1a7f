"""
Affine semigroups, monomial ideals and their Rees packages.

For a monomial ideal I of k[S], the cone valuations v_1..v_d of C(S) map the
exponents of I into R^d_{>=0}; Sigma = conv(v(log I)) + R^d_{>=0} together
with the monomial basis and v is a Rees package for I. Its non-coordinate
facets are the Rees valuations of I.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Protocol, Sequence, Tuple

from .config import resolve_cap
from .exceptions import ConeError, EnumerationCapError, ValidationError
from .geometry import (
    Hyperplane,
    IntVector,
    PositivePolyhedron,
    RationalLike,
    cone_facets,
    facet_enumeration,
    format_linear_form,
    matrix_rank,
    order_of,
    parse_rational,
    satisfies_facets,
    stabilized_exponent,
)

logger = logging.getLogger(__name__)


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _as_int_vector(point: Sequence, length: int) -> IntVector:
    vector = tuple(int(x) for x in point)
    if len(vector) != length:
        raise ValidationError(f"Vector {vector} has length {len(vector)}, expected {length}")
    return vector


@dataclass(frozen=True)
class AffineSemigroup:
    """Subsemigroup of Z^rank generated by finitely many nonzero vectors."""

    rank: int
    generators: Tuple[IntVector, ...]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValidationError(f"Semigroup rank must be positive: {self.rank}")
        generators = []
        for generator in self.generators:
            vector = _as_int_vector(generator, self.rank)
            if not any(vector):
                raise ValidationError("Semigroup generators must be nonzero")
            generators.append(vector)
        if not generators:
            raise ValidationError("A semigroup needs at least one generator")
        object.__setattr__(self, "generators", tuple(sorted(set(generators))))

    @classmethod
    def orthant(cls, rank: int) -> "AffineSemigroup":
        """Z^rank_{>=0}: the exponent semigroup of a polynomial ring."""
        return cls(rank, tuple(_unit(rank, i) for i in range(rank)))

    @property
    def is_orthant(self) -> bool:
        return set(self.generators) == {_unit(self.rank, i) for i in range(self.rank)}


def _unit(rank: int, index: int) -> IntVector:
    return tuple(int(i == index) for i in range(rank))


def product_semigroup(left: AffineSemigroup, right: AffineSemigroup) -> AffineSemigroup:
    """S1 x S2, the exponent semigroup of k[S1] (x) k[S2]."""
    left_pad = (0,) * right.rank
    right_pad = (0,) * left.rank
    generators = [g + left_pad for g in left.generators]
    generators += [right_pad + g for g in right.generators]
    return AffineSemigroup(left.rank + right.rank, tuple(generators))


@dataclass(frozen=True)
class ConeValuation:
    """Monomial valuation x^n -> <normal, n> attached to a facet of C(S)."""

    normal: IntVector

    def value(self, point: Sequence[int]) -> int:
        return _dot(self.normal, point)


@lru_cache(maxsize=1024)
def _cone_valuations(semigroup: AffineSemigroup) -> Tuple[ConeValuation, ...]:
    if semigroup.is_orthant:
        return tuple(ConeValuation(_unit(semigroup.rank, i)) for i in range(semigroup.rank))
    if matrix_rank(semigroup.generators) < semigroup.rank:
        raise ConeError(
            f"Cone of {semigroup.generators} is not full-dimensional in rank {semigroup.rank}"
        )
    normals = cone_facets(semigroup.generators)
    if matrix_rank(normals) < semigroup.rank:
        raise ConeError(f"Cone of {semigroup.generators} is not strongly convex")
    return tuple(ConeValuation(n) for n in normals)


def cone_facet_valuations(semigroup: AffineSemigroup) -> List[ConeValuation]:
    """
    Primitive inner normals of the facets of C(S).

    Orthant semigroups keep coordinate order (v_i = log x_i); otherwise the
    normals are sorted lexicographically.

    Raises:
        ConeError: If C(S) is not full-dimensional or not strongly convex
    """
    return list(_cone_valuations(semigroup))


def valuation_vector(semigroup: AffineSemigroup, point: Sequence[int]) -> IntVector:
    return tuple(v.value(point) for v in _cone_valuations(semigroup))


def _degree_weight(semigroup: AffineSemigroup) -> IntVector:
    # Sum of the facet normals: strictly positive on C(S) minus the origin
    valuations = _cone_valuations(semigroup)
    return tuple(sum(v.normal[i] for v in valuations) for i in range(semigroup.rank))


def degree(semigroup: AffineSemigroup, point: Sequence[int]) -> int:
    return _dot(_degree_weight(semigroup), point)


def semigroup_decomposition(
    semigroup: AffineSemigroup,
    point: Sequence[int],
) -> Optional[Tuple[int, ...]]:
    """
    Nonnegative integer coefficients writing point over the generators.

    Exhaustive search bounded by the degree weight, pruned by the cone
    inequalities and memoized on (generator index, remainder).

    Returns:
        Coefficients aligned with semigroup.generators, or None
    """
    target = _as_int_vector(point, semigroup.rank)
    valuations = _cone_valuations(semigroup)
    weight = _degree_weight(semigroup)
    generators = semigroup.generators
    steps = [_dot(weight, g) for g in generators]

    @lru_cache(maxsize=None)
    def search(index: int, remaining: IntVector) -> Optional[Tuple[int, ...]]:
        if not any(remaining):
            return (0,) * (len(generators) - index)
        if index == len(generators):
            return None
        if any(v.value(remaining) < 0 for v in valuations):
            return None
        generator = generators[index]
        most = _dot(weight, remaining) // steps[index]
        for count in range(most, -1, -1):
            rest = tuple(r - count * x for r, x in zip(remaining, generator))
            found = search(index + 1, rest)
            if found is not None:
                return (count,) + found
        return None

    return search(0, target)


def membership_in_semigroup(semigroup: AffineSemigroup, point: Sequence[int]) -> bool:
    """True iff point is a nonnegative integer combination of the generators."""
    target = _as_int_vector(point, semigroup.rank)
    if semigroup.is_orthant:
        return all(x >= 0 for x in target)
    return semigroup_decomposition(semigroup, target) is not None


def divides(semigroup: AffineSemigroup, smaller: Sequence[int], larger: Sequence[int]) -> bool:
    """smaller <=_S larger, i.e. larger - smaller lies in S."""
    return membership_in_semigroup(
        semigroup, tuple(b - a for a, b in zip(smaller, larger))
    )


def minimal_elements(semigroup: AffineSemigroup, points: Sequence[Sequence[int]]) -> List[IntVector]:
    """Inclusion-minimal points under <=_S, sorted lexicographically."""
    ordered = sorted({tuple(p) for p in points}, key=lambda p: (degree(semigroup, p), p))
    kept: List[IntVector] = []
    for point in ordered:
        if not any(divides(semigroup, q, point) for q in kept):
            kept.append(point)
    return sorted(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Monomial ideal of k[S], given by the exponents of its generators.

    Exponents must lie in S; they are reduced to the minimal ones under <=_S.
    """

    semigroup: AffineSemigroup
    exponents: Tuple[IntVector, ...]

    def __post_init__(self) -> None:
        exponents = []
        for exponent in self.exponents:
            vector = _as_int_vector(exponent, self.semigroup.rank)
            if not membership_in_semigroup(self.semigroup, vector):
                raise ValidationError(f"Exponent {vector} is not in the semigroup")
            exponents.append(vector)
        if not exponents:
            raise ValidationError("A monomial ideal needs at least one generator")
        object.__setattr__(
            self, "exponents", tuple(minimal_elements(self.semigroup, exponents))
        )

    @property
    def rank(self) -> int:
        return self.semigroup.rank

    @property
    def is_unit(self) -> bool:
        return any(not any(a) for a in self.exponents)

    def tensor_sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """IT + JT in T = k[S1] (x) k[S2]."""
        left_pad = (0,) * other.rank
        right_pad = (0,) * self.rank
        exponents = [a + left_pad for a in self.exponents]
        exponents += [right_pad + b for b in other.exponents]
        return MonomialIdeal(product_semigroup(self.semigroup, other.semigroup), tuple(exponents))

    def basis_values(self, w: RationalLike, cap: Optional[int] = None) -> List[IntVector]:
        """Valuation vectors of the monomials of S in the certified box for level w."""
        package = rees_package_monomial(self)
        level = stabilized_exponent(w, denominator_bound(package))
        return [
            valuation_vector(self.semigroup, p)
            for p in _box_points(self, level, cap)
            if membership_in_semigroup(self.semigroup, p)
        ]


class PackageSource(Protocol):
    """An ideal whose basis elements can be listed by value vector."""

    def basis_values(self, w: RationalLike, cap: Optional[int] = None) -> List[IntVector]:
        ...


@dataclass(frozen=True)
class ReesPackage:
    """
    Polyhedral data of a Rees package (B, v, Gamma).

    `labels` names the coordinate valuations (the value map); `facets` are the
    non-coordinate facets of the polyhedron, i.e. the Rees valuations, with
    offsets c_k = V_k(I).
    """

    source: PackageSource
    labels: Tuple[str, ...]
    polyhedron: PositivePolyhedron
    facets: Tuple[Hyperplane, ...]

    @property
    def ambient_dim(self) -> int:
        return self.polyhedron.dim

    @property
    def value_map(self) -> Tuple[str, ...]:
        return self.labels

    @property
    def facet_values(self) -> Tuple[int, ...]:
        return tuple(f.offset for f in self.facets)

    @property
    def is_unit(self) -> bool:
        return not self.facets

    def rees_valuations(self) -> List[str]:
        """Each Rees valuation as a combination of the coordinate valuations."""
        return [format_linear_form(f.normal, self.labels) for f in self.facets]

    def order(self, values: Sequence[RationalLike]) -> Optional[Fraction]:
        return order_of(self.facets, values)

    def contains(self, w: RationalLike, values: Sequence[RationalLike]) -> bool:
        return satisfies_facets(self.facets, w, values)


def build_package(
    source: PackageSource,
    labels: Sequence[str],
    polyhedron: PositivePolyhedron,
) -> ReesPackage:
    facets = tuple(facet_enumeration(polyhedron))
    return ReesPackage(source, tuple(labels), polyhedron, facets)


def denominator_bound(package: ReesPackage) -> int:
    """
    lcm of the facet offsets c_k.

    Rational powers stabilize on the grid Z/e: the closure of I^w equals
    that of I^(ceil(we)/e). A unit package gives 1.
    """
    return math.lcm(*package.facet_values) if package.facets else 1


@lru_cache(maxsize=1024)
def rees_package_monomial(ideal: MonomialIdeal) -> ReesPackage:
    """
    Rees package (x^S, v, Sigma) of a monomial ideal.

    Raises:
        ConeError: Propagated from cone_facet_valuations
    """
    valuations = _cone_valuations(ideal.semigroup)
    points = tuple(
        tuple(Fraction(v.value(a)) for v in valuations) for a in ideal.exponents
    )
    sigma = PositivePolyhedron(len(valuations), points)
    labels = [f"v{i}" for i in range(1, len(valuations) + 1)]
    package = build_package(ideal, labels, sigma)
    logger.info(
        "monomial package: %d exponents, %d cone valuations, %d Rees valuations",
        len(ideal.exponents), len(valuations), len(package.facets),
    )
    return package


def lattice_normals(package: ReesPackage) -> List[IntVector]:
    """Each Rees valuation of a monomial package as x^n -> <sum h_k f_k, n>."""
    ideal = package.source
    if not isinstance(ideal, MonomialIdeal):
        raise ValidationError("Lattice normals exist only for monomial packages")
    valuations = _cone_valuations(ideal.semigroup)
    return [
        tuple(
            sum(h * v.normal[i] for h, v in zip(facet.normal, valuations))
            for i in range(ideal.rank)
        )
        for facet in package.facets
    ]


def rational_power_membership(
    ideal: MonomialIdeal,
    w: RationalLike,
    point: Sequence[int],
) -> bool:
    """
    Decide x^n in the closure of I^w: n in S and v(n) in w*Sigma.

    Raises:
        ValidationError: On dimension mismatch or negative w
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    target = _as_int_vector(point, ideal.rank)
    if not membership_in_semigroup(ideal.semigroup, target):
        return False
    package = rees_package_monomial(ideal)
    return package.contains(w, valuation_vector(ideal.semigroup, target))


def generator_box(ideal: MonomialIdeal, w: RationalLike) -> Tuple[IntVector, IntVector]:
    """
    Bounding box holding every minimal generator of the closure of I^w.

    A point of wGamma(I) is w*sum(lambda_i a_i) + sum(mu_j g_j); when some
    mu_j >= 1 the generator g_j can be split off, so minimal points keep
    every mu_j < 1.
    """
    w = parse_rational(w)
    generators = ideal.semigroup.generators
    lower = []
    upper = []
    for i in range(ideal.rank):
        coords = [a[i] for a in ideal.exponents]
        lower.append(
            min(0, math.floor(w * min(coords))) + sum(min(0, g[i]) for g in generators)
        )
        upper.append(
            math.ceil(w * max(coords)) + sum(max(0, g[i]) for g in generators)
        )
    return tuple(lower), tuple(upper)


def _box_points(ideal: MonomialIdeal, level: Fraction, cap: Optional[int]):
    lower, upper = generator_box(ideal, level)
    limit = resolve_cap(cap)
    size = math.prod(u - l + 1 for l, u in zip(lower, upper))
    if size > limit:
        raise EnumerationCapError(size, limit, f"generators at w={level}")
    logger.debug("generator box %s..%s (%d points)", lower, upper, size)
    return itertools.product(*(range(l, u + 1) for l, u in zip(lower, upper)))


def rational_power_generators(
    ideal: MonomialIdeal,
    w: RationalLike,
    cap: Optional[int] = None,
) -> List[IntVector]:
    """
    Minimal generators (under <=_S) of the closure of I^w.

    w is first moved to ceil(we)/e with e the denominator bound.

    Returns:
        Exponent vectors in lexicographic order; [0] for w = 0 or unit I

    Raises:
        EnumerationCapError: If the bounding box exceeds the cap
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    package = rees_package_monomial(ideal)
    if w == 0 or package.is_unit:
        return [(0,) * ideal.rank]

    level = stabilized_exponent(w, denominator_bound(package))
    members = [
        p for p in _box_points(ideal, level, cap)
        if membership_in_semigroup(ideal.semigroup, p)
        and package.contains(level, valuation_vector(ideal.semigroup, p))
    ]
    return minimal_elements(ideal.semigroup, members)


def ideal_contains(
    semigroup: AffineSemigroup,
    generators: Sequence[Sequence[int]],
    point: Sequence[int],
) -> bool:
    """True iff point lies in the monomial ideal generated by `generators`."""
    return any(divides(semigroup, g, point) for g in generators)
