"""
Exact positive-polyhedron geometry.

A positive polyhedron is conv(Q) + R^d_{>=0} for a finite set Q of
nonnegative rational points. Everything here is exact: integers and
fractions.Fraction, never floating point. Double description is delegated
to PPL and exact ranks to FLINT.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import ppl
from flint import fmpz_mat

from .config import resolve_cap
from .exceptions import CalculationError, EnumerationCapError, ValidationError

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
IntVector = Tuple[int, ...]
RationalLike = Union[Fraction, int, str]

_RATIONAL_PATTERN = re.compile(r"[+-]?\d+(/\d+)?")


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse "p/q", "p", an int or a Fraction.

    Raises:
        ValidationError: On floats, malformed strings or zero denominators
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_PATTERN.fullmatch(text):
            raise ValidationError(f"Not a rational number: {value!r}. Use 'p/q'.")
        numerator, _, denominator = text.partition("/")
        if denominator and int(denominator) == 0:
            raise ValidationError(f"Zero denominator in {value!r}")
        return Fraction(int(numerator), int(denominator) if denominator else 1)
    raise ValidationError(f"Not a rational number: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as "p/q", or "p" when integral."""
    return str(Fraction(value))


def coordinate_labels(dim: int, stem: str = "X") -> List[str]:
    """X for a line, X1..Xd otherwise."""
    if dim == 1:
        return [stem]
    return [f"{stem}{i}" for i in range(1, dim + 1)]


def format_linear_form(coefficients: Sequence[int], labels: Sequence[str]) -> str:
    terms = []
    for coefficient, label in zip(coefficients, labels):
        if coefficient == 0:
            continue
        terms.append(label if coefficient == 1 else f"{coefficient}{label}")
    return "+".join(terms) if terms else "0"


def _dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _integral(vector: Sequence[RationalLike]) -> IntVector:
    """Scale a rational vector by the lcm of its denominators."""
    values = [Fraction(x) for x in vector]
    scale = math.lcm(*(x.denominator for x in values)) if values else 1
    return tuple(int(x * scale) for x in values)


def _primitive(vector: Sequence[int]) -> IntVector:
    divisor = math.gcd(*vector) if vector else 0
    if divisor == 0:
        return tuple(vector)
    return tuple(x // divisor for x in vector)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------

def matrix_rank(rows: Sequence[Sequence[RationalLike]]) -> int:
    """Rank over Q; rows are cleared to integers and handed to FLINT."""
    integral = [_integral(row) for row in rows]
    if not integral or not integral[0]:
        return 0
    return int(fmpz_mat([list(row) for row in integral]).rank())


def _pivot(tableau: List[List[Fraction]], cost: List[Fraction], row: int, col: int) -> None:
    line = tableau[row]
    head = line[col]
    line[:] = [x / head for x in line]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            factor = other[col]
            tableau[i] = [a - factor * b for a, b in zip(other, line)]
    factor = cost[col]
    if factor != 0:
        cost[:] = [a - factor * b for a, b in zip(cost, line)]


def find_nonnegative_solution(
    rows: Sequence[Sequence[RationalLike]],
    rhs: Sequence[RationalLike],
) -> Optional[List[Fraction]]:
    """
    Exact phase-one simplex: find x >= 0 with rows @ x == rhs.

    One artificial variable per row; the sum of artificials is minimized with
    Bland's rule, which cannot cycle.

    Args:
        rows: Constraint matrix (m x n)
        rhs: Right-hand side (length m)

    Returns:
        A feasible x, or None if the system has no nonnegative solution
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    if m == 0:
        return [Fraction(0)] * n

    width = n + m
    tableau: List[List[Fraction]] = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        sign = -1 if Fraction(b) < 0 else 1
        line = [sign * Fraction(x) for x in row]
        line += [Fraction(int(i == j)) for j in range(m)]
        line.append(sign * Fraction(b))
        tableau.append(line)

    basis = list(range(n, width))
    cost = [Fraction(0)] * (width + 1)
    for j in list(range(n)) + [width]:
        cost[j] = -sum(line[j] for line in tableau)

    pivots = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i, line in enumerate(tableau):
            if line[entering] > 0:
                ratio = line[width] / line[entering]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leaving])
                ):
                    best, leaving = ratio, i
        if leaving is None:
            raise CalculationError("Phase-one objective unbounded; tableau is corrupt")
        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering
        pivots += 1

    logger.debug("phase one: %d rows, %d columns, %d pivots", m, n, pivots)
    if cost[width] != 0:
        return None

    solution = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = tableau[i][width]
    return solution


def convex_combination(
    generators: Sequence[Sequence[Fraction]],
    w: Fraction,
    point: Sequence[Fraction],
) -> Optional[List[Fraction]]:
    """
    Find lambda >= 0 with sum(lambda) = w and sum(lambda_i g_i) <= point.

    Returns:
        The coefficients lambda, or None if point is not in w*(conv + orthant)
    """
    if any(x < 0 for x in point):
        return None
    dim = len(point)
    k = len(generators)
    rows = []
    rhs = []
    for j in range(dim):
        rows.append(
            [Fraction(g[j]) for g in generators]
            + [Fraction(int(i == j)) for i in range(dim)]
        )
        rhs.append(Fraction(point[j]))
    rows.append([Fraction(1)] * k + [Fraction(0)] * dim)
    rhs.append(Fraction(w))
    solution = find_nonnegative_solution(rows, rhs)
    if solution is None:
        return None
    return solution[:k]


# Double description
# ---------------------------------------------------------------------------

def _linear_expression(coefficients: Sequence[int]) -> "ppl.Linear_Expression":
    return ppl.Linear_Expression([int(c) for c in coefficients], 0)


def _inequalities(polyhedron: "ppl.C_Polyhedron", dim: int) -> List[Tuple[IntVector, int]]:
    """
    (normal, constant) of the minimized constraints <normal, x> + constant >= 0.

    Raises:
        CalculationError: If the polyhedron is not full-dimensional
    """
    if polyhedron.affine_dimension() != dim:
        raise CalculationError(
            f"Generators span dimension {polyhedron.affine_dimension()}, expected {dim}"
        )
    rows = []
    for constraint in polyhedron.minimized_constraints():
        if constraint.is_equality():
            raise CalculationError(f"Unexpected equality {constraint} in a full-dimensional polyhedron")
        coefficients = [int(c) for c in constraint.coefficients()]
        normal = tuple(coefficients + [0] * (dim - len(coefficients)))
        if any(normal):
            rows.append((normal, int(constraint.inhomogeneous_term())))
    return rows


def cone_facets(rays: Sequence[Sequence[RationalLike]]) -> List[IntVector]:
    """
    Facet normals of the cone generated by `rays`.

    The cone is handed to PPL as a generator system (apex at the origin plus
    one ray per generator) and its minimized constraint system is read back.

    Args:
        rays: Generators of the cone; they must span the ambient space

    Returns:
        Primitive integer normals, one per facet, sorted lexicographically

    Raises:
        CalculationError: If the rays do not span the ambient space
    """
    rows = [_integral(r) for r in rays]
    rows = [r for r in rows if any(r)]
    if not rows:
        raise CalculationError("Cone has no nonzero generators")
    dim = len(rows[0])

    generators = ppl.Generator_System()
    generators.insert(ppl.point(_linear_expression((0,) * dim)))
    for row in rows:
        generators.insert(ppl.ray(_linear_expression(row)))
    cone = ppl.C_Polyhedron(generators)

    normals = {_primitive(normal) for normal, _ in _inequalities(cone, dim)}
    logger.debug("double description: %d rays, %d facets", len(rows), len(normals))
    return sorted(normals)


# ---------------------------------------------------------------------------

# ---------------------------------------------------------------------------
# Hyperplanes and positive polyhedra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """
    Non-coordinate hyperplane <normal, X> = offset.

    The normal is a nonzero nonnegative integer vector and the offset a
    positive integer; (normal, offset) is divided by its gcd on construction.
    """

    normal: IntVector
    offset: int

    def __post_init__(self) -> None:
        normal = tuple(int(h) for h in self.normal)
        offset = int(self.offset)
        if not normal or not any(normal):
            raise ValidationError("Hyperplane normal must be a nonzero vector")
        if any(h < 0 for h in normal):
            raise ValidationError(f"Hyperplane normal must be nonnegative: {normal}")
        if offset < 1:
            raise ValidationError(f"Hyperplane offset must be positive: {offset}")
        divisor = math.gcd(offset, *normal)
        object.__setattr__(self, "normal", tuple(h // divisor for h in normal))
        object.__setattr__(self, "offset", offset // divisor)

    @classmethod
    def from_rational(cls, normal: Sequence[RationalLike], offset: RationalLike) -> "Hyperplane":
        """Clear denominators of a rational (normal, offset) pair."""
        values = [parse_rational(x) for x in normal] + [parse_rational(offset)]
        scale = math.lcm(*(v.denominator for v in values))
        return cls(tuple(int(v * scale) for v in values[:-1]), int(values[-1] * scale))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        return Fraction(_dot(self.normal, [Fraction(x) for x in point]))

    def is_satisfied(self, point: Sequence[RationalLike], w: RationalLike = 1) -> bool:
        """True iff <normal, point> >= w * offset."""
        return self.evaluate(point) >= Fraction(w) * self.offset

    def sort_key(self) -> Tuple[IntVector, int]:
        return (self.normal, self.offset)

    def equation(self, labels: Optional[Sequence[str]] = None) -> str:
        labels = labels or coordinate_labels(self.dim)
        return f"{format_linear_form(self.normal, labels)}={self.offset}"


@dataclass(frozen=True)
class PositivePolyhedron:
    """
    conv(generators) + R^dim_{>=0}.

    Generators are nonnegative rational vectors, reduced on construction to
    the inclusion-minimal set and sorted lexicographically, so equal
    polyhedra compare equal.
    """

    dim: int
    generators: Tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValidationError(f"Polyhedron dimension must be positive: {self.dim}")
        points = []
        for generator in self.generators:
            point = tuple(parse_rational(x) for x in generator)
            if len(point) != self.dim:
                raise ValidationError(
                    f"Generator {generator} has length {len(point)}, expected {self.dim}"
                )
            if any(x < 0 for x in point):
                raise ValidationError(f"Generator {generator} has a negative coordinate")
            points.append(point)
        if not points:
            raise ValidationError("A positive polyhedron needs at least one generator")
        object.__setattr__(
            self, "generators", tuple(_minimize_generators(sorted(set(points))))
        )

    @property
    def is_orthant(self) -> bool:
        """True when the origin is a generator: the whole orthant."""
        return any(not any(g) for g in self.generators)


def _minimize_generators(points: List[Vector]) -> List[Vector]:
    if any(not any(p) for p in points):
        return [tuple(Fraction(0) for _ in points[0])]
    kept = [
        p for p in points
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in points)
    ]
    index = 0
    while index < len(kept):
        others = kept[:index] + kept[index + 1:]
        if others and convex_combination(others, Fraction(1), kept[index]) is not None:
            del kept[index]
        else:
            index += 1
    return kept


@lru_cache(maxsize=4096)
def _facets(polyhedron: PositivePolyhedron) -> Tuple[Hyperplane, ...]:
    dim = polyhedron.dim
    generators = ppl.Generator_System()
    for g in polyhedron.generators:
        denominator = math.lcm(*(x.denominator for x in g))
        generators.insert(
            ppl.point(_linear_expression([int(x * denominator) for x in g]), denominator)
        )
    for i in range(dim):
        generators.insert(ppl.ray(ppl.Variable(i)))
    found = set()
    for normal, constant in _inequalities(ppl.C_Polyhedron(generators), dim):
        if constant < 0:
            found.add(Hyperplane(normal, -constant))
    logger.debug("facets: %d generators, %d non-coordinate facets", len(polyhedron.generators), len(found))
    return tuple(sorted(found, key=Hyperplane.sort_key))


def facet_enumeration(polyhedron: PositivePolyhedron) -> List[Hyperplane]:
    """
    Non-coordinate facets of a positive polyhedron.

    Coordinate facets X_i >= 0 are excluded; a polyhedron containing the
    origin has none and yields an empty list.

    Returns:
        Hyperplanes sorted by (normal, offset)
    """
    return list(_facets(polyhedron))


def _as_point(point: Sequence[RationalLike], dim: int) -> Vector:
    if len(point) != dim:
        raise ValidationError(f"Point {tuple(point)} has length {len(point)}, expected {dim}")
    return tuple(parse_rational(x) for x in point)


def polyhedron_membership(
    polyhedron: PositivePolyhedron,
    w: RationalLike,
    point: Sequence[RationalLike],
) -> bool:
    """
    Decide point in w*P by exact LP feasibility.

    Raises:
        ValidationError: On dimension mismatch or negative w
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Scaling factor must be nonnegative: {w}")
    target = _as_point(point, polyhedron.dim)
    return convex_combination(polyhedron.generators, w, target) is not None


def satisfies_facets(
    facets: Iterable[Hyperplane],
    w: RationalLike,
    point: Sequence[RationalLike],
) -> bool:
    """H-representation test: nonnegative and <h_k, point> >= w c_k for all k."""
    if any(parse_rational(x) < 0 for x in point):
        return False
    return all(facet.is_satisfied(point, w) for facet in facets)


def order_of(facets: Sequence[Hyperplane], point: Sequence[RationalLike]) -> Optional[Fraction]:
    """
    Largest w with point in wP, from the facets of P.

    Returns None when P is the whole orthant (no facets).
    """
    if not facets:
        return None
    return min(facet.evaluate(point) / facet.offset for facet in facets)


def stabilized_exponent(w: RationalLike, denominator: int) -> Fraction:
    """ceil(w*e)/e: the representative of w on the grid Z/e."""
    w = parse_rational(w)
    return Fraction(math.ceil(w * denominator), denominator)


def star(left: Hyperplane, right: Hyperplane) -> Hyperplane:
    """
    Star product: <c2*h1 + c1*h2, (X1, X2)> = c1*c2, reduced.

    Left coordinates come first.
    """
    c1, c2 = left.offset, right.offset
    normal = tuple(c2 * h for h in left.normal) + tuple(c1 * h for h in right.normal)
    return Hyperplane(normal, c1 * c2)


def star_labels(left_dim: int, right_dim: int) -> Tuple[List[str], List[str]]:
    """Coordinate labels for a star product; right labels switch to Y on collision."""
    left = coordinate_labels(left_dim)
    right = coordinate_labels(right_dim)
    if set(left) & set(right):
        right = coordinate_labels(right_dim, "Y")
    return left, right


def conv_join(left: PositivePolyhedron, right: PositivePolyhedron) -> PositivePolyhedron:
    """conv of left x {0} and {0} x right, plus the orthant of dimension dim1+dim2."""
    left_pad = (Fraction(0),) * right.dim
    right_pad = (Fraction(0),) * left.dim
    generators = [tuple(g) + left_pad for g in left.generators]
    generators += [right_pad + tuple(g) for g in right.generators]
    return PositivePolyhedron(left.dim + right.dim, tuple(generators))


def scale_and_ceil_lattice(
    polyhedron: PositivePolyhedron,
    w: RationalLike,
    box: Sequence[int],
    cap: Optional[int] = None,
) -> List[IntVector]:
    """
    Lattice points p with 0 <= p <= box and p in w*P.

    The first dim-1 coordinates are scanned; along the last one the points
    of w*P form a ray, so its start is read off each facet by a ceiling.

    Returns:
        Points in lexicographic order

    Raises:
        EnumerationCapError: If the box holds more points than the cap
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Scaling factor must be nonnegative: {w}")
    box = tuple(int(b) for b in box)
    if len(box) != polyhedron.dim:
        raise ValidationError(f"Box {box} has length {len(box)}, expected {polyhedron.dim}")
    if any(b < 0 for b in box):
        raise ValidationError(f"Box must be componentwise nonnegative: {box}")

    limit = resolve_cap(cap)
    size = math.prod(b + 1 for b in box)
    if size > limit:
        raise EnumerationCapError(size, limit, "lattice box")

    facets = _facets(polyhedron)
    last = polyhedron.dim - 1
    points: List[IntVector] = []
    for prefix in itertools.product(*(range(b + 1) for b in box[:last])):
        start = 0
        feasible = True
        for facet in facets:
            need = w * facet.offset - _dot(facet.normal[:last], prefix)
            step = facet.normal[last]
            if step == 0:
                if need > 0:
                    feasible = False
                    break
            else:
                start = max(start, math.ceil(need / step))
        if feasible and start <= box[last]:
            points.extend(prefix + (x,) for x in range(start, box[last] + 1))
    return points
