"""
Brute-force verifiers.

Nothing here shares an algorithm with the primary paths: facets come from
Fourier-Motzkin projection instead of double description, lattice points
from a full box scan instead of prefix ceilings, and closure membership from
the definition x^a in closure(I^p) iff (x^a)^m in (I^p)^m for some m.
"""

import itertools
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .config import resolve_cap
from .constants import DEFAULT_M_CAP, FM_MAX_DIM
from .exceptions import EnumerationCapError, OracleMismatchError, ValidationError
from .geometry import (
    Hyperplane,
    IntVector,
    PositivePolyhedron,
    RationalLike,
    matrix_rank,
    parse_rational,
)
from .semigroup import MonomialIdeal

logger = logging.getLogger(__name__)

# lam . lambda + xs . x + const >= 0, with the set of source inequalities
_Row = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...], Fraction, FrozenSet[int]]


def _scaled(row: _Row) -> _Row:
    """Scale to primitive integers so duplicates collide."""
    lam, xs, const, history = row
    values = lam + xs + (const,)
    denominator = math.lcm(*(v.denominator for v in values))
    numerators = [int(v * denominator) for v in values]
    divisor = math.gcd(*numerators) or 1
    scaled = [Fraction(n, divisor) for n in numerators]
    k = len(lam)
    return tuple(scaled[:k]), tuple(scaled[k:-1]), scaled[-1], history


def _eliminate(rows: List[_Row], eliminated: int) -> List[_Row]:
    """Drop lambda_0 by pairwise combination, with Chernikov's history bound."""
    positive = [r for r in rows if r[0][0] > 0]
    negative = [r for r in rows if r[0][0] < 0]
    result = {}
    for lam, xs, const, history in rows:
        if lam[0] == 0:
            row = _scaled((lam[1:], xs, const, history))
            result[row[:3]] = row
    for p in positive:
        for n in negative:
            history = p[3] | n[3]
            if len(history) > eliminated + 1:
                continue
            a, b = p[0][0], -n[0][0]
            lam = tuple(b * x + a * y for x, y in zip(p[0], n[0]))[1:]
            xs = tuple(b * x + a * y for x, y in zip(p[1], n[1]))
            const = b * p[2] + a * n[2]
            row = _scaled((lam, xs, const, history))
            result.setdefault(row[:3], row)
    return list(result.values())


def _face_dimension(polyhedron: PositivePolyhedron, normal: Sequence[Fraction], offset: Fraction) -> int:
    tight = [g for g in polyhedron.generators if sum(h * x for h, x in zip(normal, g)) == offset]
    if not tight:
        return -1
    base = tight[0]
    directions = [tuple(x - y for x, y in zip(g, base)) for g in tight[1:]]
    directions += [
        tuple(Fraction(int(i == j)) for j in range(polyhedron.dim))
        for i in range(polyhedron.dim) if normal[i] == 0
    ]
    return matrix_rank(directions) if directions else 0


def facets_fourier_motzkin(polyhedron: PositivePolyhedron) -> List[Hyperplane]:
    """
    Non-coordinate facets by projecting {x = sum(lambda g) + r, lambda, r >= 0, sum(lambda) = 1}.

    The equality is substituted for the last weight, the slack r is read
    off as x - sum(lambda g) >= 0, and the remaining weights are eliminated.

    Raises:
        ValidationError: If the dimension exceeds the supported cap
    """
    dim = polyhedron.dim
    if dim > FM_MAX_DIM:
        raise ValidationError(f"Fourier-Motzkin oracle supports dim <= {FM_MAX_DIM}, got {dim}")
    *free, last = polyhedron.generators
    k = len(free)
    zero_x = (Fraction(0),) * dim

    rows: List[_Row] = []
    for i in range(k):
        lam = tuple(Fraction(int(i == j)) for j in range(k))
        rows.append((lam, zero_x, Fraction(0), frozenset([len(rows)])))
    if k:
        rows.append(((Fraction(-1),) * k, zero_x, Fraction(1), frozenset([len(rows)])))
    for j in range(dim):
        lam = tuple(last[j] - g[j] for g in free)
        xs = tuple(Fraction(int(i == j)) for i in range(dim))
        rows.append((lam, xs, -last[j], frozenset([len(rows)])))

    for step in range(k):
        rows = _eliminate(rows, step + 1)
        logger.debug("fourier-motzkin: eliminated %d of %d, %d rows", step + 1, k, len(rows))

    found = set()
    for _, xs, const, _ in rows:
        offset = -const
        if offset <= 0 or any(a < 0 for a in xs) or not any(xs):
            continue
        if _face_dimension(polyhedron, xs, offset) != dim - 1:
            continue
        found.add(Hyperplane.from_rational(xs, offset))
    return sorted(found, key=Hyperplane.sort_key)


def lattice_points_naive(
    polyhedron: PositivePolyhedron,
    w: RationalLike,
    box: Sequence[int],
    cap: Optional[int] = None,
) -> List[IntVector]:
    """Every point of the box tested against the Fourier-Motzkin facets, in lexicographic order."""
    w = parse_rational(w)
    limit = resolve_cap(cap)
    size = math.prod(b + 1 for b in box)
    if size > limit:
        raise EnumerationCapError(size, limit, "naive lattice box")
    facets = facets_fourier_motzkin(polyhedron)
    return [
        point for point in itertools.product(*(range(b + 1) for b in box))
        if all(facet.is_satisfied(point, w) for facet in facets)
    ]


def _packs(generators: Tuple[IntVector, ...], count: int, target: IntVector) -> bool:
    """Some `count` generators, with repetition, sum to at most target."""

    @lru_cache(maxsize=None)
    def search(index: int, remaining: int, room: IntVector) -> bool:
        if remaining == 0:
            return True
        if index == len(generators):
            return False
        generator = generators[index]
        for used in range(remaining, -1, -1):
            rest = tuple(r - used * g for r, g in zip(room, generator))
            if any(r < 0 for r in rest):
                continue
            if search(index + 1, remaining - used, rest):
                return True
        return False

    return search(0, count, target)


def closure_membership_bruteforce(
    ideal: MonomialIdeal,
    p: int,
    point: Sequence[int],
    m_cap: int = DEFAULT_M_CAP,
    separate: bool = True,
) -> Optional[bool]:
    """
    Decide x^point in closure(I^p) for a monomial ideal of a polynomial ring.

    True when some m <= m_cap has m*point componentwise above a sum of p*m
    generator exponents. False when a Fourier-Motzkin facet separates the
    point. With separation disabled an unsuccessful search returns None.

    Raises:
        OracleMismatchError: If no facet separates the point but the search fails
        ValidationError: On non-polynomial rings or bad parameters
    """
    if not ideal.semigroup.is_orthant:
        raise ValidationError("Brute-force closure membership needs a polynomial ring")
    if p < 0 or m_cap < 1:
        raise ValidationError(f"Need p >= 0 and m_cap >= 1, got p={p}, m_cap={m_cap}")
    target = tuple(int(x) for x in point)
    if len(target) != ideal.rank:
        raise ValidationError(f"Point has length {len(target)}, expected {ideal.rank}")
    if any(x < 0 for x in target):
        return False

    if separate:
        polyhedron = PositivePolyhedron(
            ideal.rank, tuple(tuple(Fraction(x) for x in a) for a in ideal.exponents)
        )
        for facet in facets_fourier_motzkin(polyhedron):
            if not facet.is_satisfied(target, p):
                logger.debug("%s separated by %s at p=%d", target, facet.equation(), p)
                return False

    for m in range(1, m_cap + 1):
        if _packs(ideal.exponents, p * m, tuple(m * x for x in target)):
            logger.debug("%s in closure of I^%d with m=%d", target, p, m)
            return True

    if separate:
        raise OracleMismatchError(
            f"{target} is not separated from {p}*NP(I) but no m <= {m_cap} certifies membership"
        )
    return None
