"""
Seeded random inputs for property checks and the --random CLI mode.

All draws go through a `random.Random(seed)` instance, so a seed fixes the
whole sequence.
"""

import random
from fractions import Fraction
from typing import Iterator, List, Tuple

from .diagrams import Diagram, DiagramIdeal, MatrixFamily
from .geometry import IntVector, PositivePolyhedron, Vector
from .semigroup import AffineSemigroup, MonomialIdeal


def _nonzero_vector(rng: random.Random, dim: int, max_coord: int) -> IntVector:
    while True:
        vector = tuple(rng.randint(0, max_coord) for _ in range(dim))
        if any(vector):
            return vector


def random_positive_polyhedron(
    rng: random.Random,
    dim: int,
    count: int = 3,
    max_coord: int = 6,
    denominator: int = 1,
) -> PositivePolyhedron:
    """conv of `count` nonzero points with coordinates in (1/denominator) * [0, max_coord]."""
    points = [
        tuple(Fraction(x, denominator) for x in _nonzero_vector(rng, dim, max_coord))
        for _ in range(count)
    ]
    return PositivePolyhedron(dim, tuple(points))


def random_monomial_ideal(
    rng: random.Random,
    rank: int,
    count: int = 3,
    max_coord: int = 6,
) -> MonomialIdeal:
    """Monomial ideal of the polynomial ring in `rank` variables."""
    exponents = tuple(_nonzero_vector(rng, rank, max_coord) for _ in range(count))
    return MonomialIdeal(AffineSemigroup.orthant(rank), exponents)


def random_monomial_pair(
    rng: random.Random,
    max_total_rank: int = 3,
    max_generators: int = 4,
    max_coord: int = 6,
) -> Tuple[MonomialIdeal, MonomialIdeal]:
    """Two monomial ideals of separate polynomial rings, ranks adding to at most max_total_rank."""
    left_rank = rng.randint(1, max_total_rank - 1)
    right_rank = rng.randint(1, max_total_rank - left_rank)
    left = random_monomial_ideal(rng, left_rank, rng.randint(1, max_generators), max_coord)
    right = random_monomial_ideal(rng, right_rank, rng.randint(1, max_generators), max_coord)
    return left, right


def monomial_pairs(seed: int, count: int, **kwargs) -> Iterator[Tuple[MonomialIdeal, MonomialIdeal]]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_monomial_pair(rng, **kwargs)


def random_point(rng: random.Random, dim: int, max_coord: int = 12, denominator: int = 2) -> Vector:
    return tuple(Fraction(rng.randint(0, max_coord * denominator), denominator) for _ in range(dim))


def random_diagram_ideal(
    rng: random.Random,
    family: MatrixFamily,
    count: int = 2,
    max_parts: int = 3,
) -> DiagramIdeal:
    """Random Lambda of diagrams respecting the family bound; hankel gets one diagram."""
    if family.kind == "hankel":
        count = 1
    diagrams: List[Diagram] = []
    for _ in range(count):
        parts = sorted(
            (rng.randint(1, family.diagram_bound) for _ in range(rng.randint(1, max_parts))),
            reverse=True,
        )
        diagrams.append(Diagram(tuple(parts)))
    return DiagramIdeal(family, tuple(diagrams))
