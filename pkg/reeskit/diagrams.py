"""
Diagram combinatorics and Rees packages of invariant ideals.

Sums of products of determinantal ideals of a generic or symmetric matrix,
of Pfaffian ideals of an alternating matrix, and products of determinantal
ideals of a Hankel matrix all carry a Rees package whose valuations are the
functions

    gamma_t(s_1, ..., s_p) = sum_i max(0, s_i - t + 1)

evaluated on the shape of a standard monomial. Standard monomials are never
materialized: every question reduces to gamma-images of shapes.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from .config import resolve_cap
from .constants import FAMILY_KINDS, FAMILY_SYMBOLS
from .exceptions import CalculationError, EnumerationCapError, ValidationError
from .geometry import (
    IntVector,
    PositivePolyhedron,
    RationalLike,
    parse_rational,
    scale_and_ceil_lattice,
    stabilized_exponent,
)
from .semigroup import ReesPackage, build_package, denominator_bound

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Diagram:
    """Weakly decreasing tuple of positive integers; () is the unit ideal."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(s) for s in self.parts)
        if any(s < 1 for s in parts):
            raise ValidationError(f"Diagram parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValidationError(f"Diagram parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def width(self) -> int:
        return self.parts[0] if self.parts else 0

    def contains(self, other: "Diagram") -> bool:
        """other is a subdiagram of self."""
        if len(other.parts) > len(self.parts):
            return False
        return all(a <= b for a, b in zip(other.parts, self.parts))

    def union(self, other: "Diagram") -> "Diagram":
        """Concatenated and re-sorted parts: the shape of a product."""
        return Diagram(tuple(sorted(self.parts + other.parts, reverse=True)))

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.parts) + ")"


def gamma(t: int, sigma: Diagram) -> int:
    """gamma_t(sigma) = sum_i max(0, s_i - t + 1)."""
    if t < 1:
        raise ValidationError(f"gamma index must be at least 1, got {t}")
    return sum(max(0, s - t + 1) for s in sigma.parts)


@dataclass(frozen=True)
class MatrixFamily:
    """
    Matrix family of an invariant ideal.

    generic(m, n) with m <= n, symmetric(n), pfaffian(n) (alternating n x n)
    or hankel(n) (Hankel matrix in n variables).
    """

    kind: str
    n: int
    m: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValidationError(
                f"Unknown matrix family {self.kind!r}; expected one of {FAMILY_KINDS}"
            )
        if self.n < 1:
            raise ValidationError(f"Matrix size n must be positive: {self.n}")
        if self.kind == "generic":
            if self.m is None or self.m < 1:
                raise ValidationError("Generic family needs 1 <= m")
            if self.m > self.n:
                raise ValidationError(f"Generic family needs m <= n, got m={self.m}, n={self.n}")
        elif self.m is not None:
            raise ValidationError(f"Family {self.kind!r} takes only n")
        if self.kind == "pfaffian" and self.n < 2:
            raise ValidationError("Pfaffian family needs n >= 2")

    @classmethod
    def generic(cls, m: int, n: int) -> "MatrixFamily":
        return cls("generic", n, m)

    @property
    def gamma_dim(self) -> int:
        """Number of gamma valuations in the package."""
        if self.kind == "generic":
            return self.m
        if self.kind == "pfaffian":
            return self.n // 2
        return self.n

    @property
    def diagram_bound(self) -> int:
        """Largest admissible part of a diagram."""
        if self.kind == "hankel":
            return (self.n + 1) // 2
        return self.gamma_dim

    def ideal_symbol(self, t: int) -> str:
        symbol = FAMILY_SYMBOLS[self.kind]
        return f"{symbol}_{2 * t}" if self.kind == "pfaffian" else f"{symbol}_{t}"

    def __str__(self) -> str:
        if self.kind == "generic":
            return f"generic({self.m},{self.n})"
        return f"{self.kind}({self.n})"


def gamma_vector(family: MatrixFamily, sigma: Diagram) -> IntVector:
    return tuple(gamma(t, sigma) for t in range(1, family.gamma_dim + 1))


def _check_bound(family: MatrixFamily, sigma: Diagram) -> None:
    if sigma.width > family.diagram_bound:
        raise ValidationError(
            f"Diagram {sigma} exceeds the bound {family.diagram_bound} of {family}"
        )


def _partitions(max_part: int, max_size: int) -> Iterator[Tuple[int, ...]]:
    """All diagrams with parts <= max_part and size <= max_size."""
    yield ()
    for first in range(min(max_part, max_size), 0, -1):
        for rest in _partitions(first, max_size - first):
            yield (first,) + rest


@dataclass(frozen=True)
class DiagramIdeal:
    """
    I_Lambda, J_Lambda, P_Lambda (sums over Lambda) or H_sigma (hankel, one diagram).

    Lambda is reduced to its minimal diagrams under containment.
    """

    family: MatrixFamily
    diagrams: Tuple[Diagram, ...]

    def __post_init__(self) -> None:
        diagrams = [d if isinstance(d, Diagram) else Diagram(tuple(d)) for d in self.diagrams]
        if not diagrams:
            raise ValidationError("Lambda must contain at least one diagram")
        for sigma in diagrams:
            _check_bound(self.family, sigma)
        if self.family.kind == "hankel" and len(set(diagrams)) != 1:
            raise ValidationError(
                "Hankel ideals are products H_sigma of a single diagram; sums are not supported"
            )
        unique = set(diagrams)
        minimal = [
            sigma for sigma in unique
            if not any(tau != sigma and sigma.contains(tau) for tau in unique)
        ]
        object.__setattr__(self, "diagrams", tuple(sorted(minimal, reverse=True)))

    def basis_values(self, w: RationalLike, cap: Optional[int] = None) -> List[IntVector]:
        """gamma-images of the shapes of size at most ceil(w' * max |sigma|) + bound."""
        package = rees_package_diagrams(self)
        level = stabilized_exponent(w, denominator_bound(package))
        bound = self.family.diagram_bound
        max_size = math.ceil(level * max(s.size for s in self.diagrams)) + bound
        shapes = []
        limit = resolve_cap(cap)
        for parts in _partitions(bound, max_size):
            shapes.append(gamma_vector(self.family, Diagram(parts)))
            if len(shapes) > limit:
                raise EnumerationCapError(len(shapes), limit, "shapes")
        return shapes


@lru_cache(maxsize=1024)
def rees_package_diagrams(ideal: DiagramIdeal) -> ReesPackage:
    """
    Rees package (B, gamma, Gamma) with Gamma = conv(gamma(Lambda)) + orthant.

    Raises:
        CalculationError: If a hankel valuation falls outside gamma_1..gamma_{s_1}
    """
    family = ideal.family
    points = tuple(
        tuple(Fraction(x) for x in gamma_vector(family, sigma)) for sigma in ideal.diagrams
    )
    polyhedron = PositivePolyhedron(family.gamma_dim, points)
    labels = [f"γ{t}" for t in range(1, family.gamma_dim + 1)]
    package = build_package(ideal, labels, polyhedron)

    if family.kind == "hankel":
        containment, equality = hankel_valuation_flags(package)
        if not containment:
            raise CalculationError(
                f"Rees valuations {package.rees_valuations()} of H_{ideal.diagrams[0]} "
                f"leave gamma_1..gamma_{ideal.diagrams[0].width}"
            )
        if not equality:
            logger.warning(
                "H_%s: Rees valuations are a proper subset of gamma_1..gamma_s1",
                ideal.diagrams[0],
            )
    logger.info(
        "%s package: %d diagrams, %d Rees valuations",
        family, len(ideal.diagrams), len(package.facets),
    )
    return package


def hankel_valuation_flags(package: ReesPackage) -> Tuple[bool, bool]:
    """
    (containment, equality) of the Rees valuations against gamma_1..gamma_{s_1}.

    Containment must hold and is enforced; equality is only reported.
    """
    sigma = package.source.diagrams[0]
    expected = {
        tuple(int(i == t) for i in range(package.ambient_dim)) for t in range(sigma.width)
    }
    found = {facet.normal for facet in package.facets}
    return found <= expected, found == expected


def rational_power_shape_membership(
    ideal: DiagramIdeal,
    w: RationalLike,
    sigma: Diagram,
) -> bool:
    """True iff gamma(sigma) lies in w*Gamma: standard monomials of shape sigma lie in the closure of the w-th power."""
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    _check_bound(ideal.family, sigma)
    package = rees_package_diagrams(ideal)
    return package.contains(w, gamma_vector(ideal.family, sigma))


def _componentwise_minimal(points: Sequence[IntVector]) -> List[IntVector]:
    unique = set(points)
    return sorted(
        p for p in unique
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in unique)
    )


@dataclass(frozen=True)
class SymbolicExponents:
    """
    The closure of the w-th power as a sum of intersections of symbolic powers.

    Each exponent vector a encodes the intersection over i of X_i^{(a_i)}.
    """

    family: MatrixFamily
    w: Fraction
    exponents: Tuple[IntVector, ...]

    def describe(self) -> List[str]:
        terms = []
        for vector in self.exponents:
            factors = [
                f"{self.family.ideal_symbol(i)}^({a})"
                for i, a in enumerate(vector, start=1)
                if a > 0
            ]
            terms.append(" ∩ ".join(factors) if factors else "R")
        return terms


def symbolic_intersection_exponents(
    ideal: DiagramIdeal,
    w: RationalLike,
    cap: Optional[int] = None,
) -> SymbolicExponents:
    """
    Minimal exponent vectors a in w*Gamma, or the single Hankel vector.

    For hankel families the answer is (ceil(w*gamma_i(sigma)))_i, i = 1..n.

    Raises:
        EnumerationCapError: If the lattice box exceeds the cap
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    family = ideal.family

    if family.kind == "hankel":
        sigma = ideal.diagrams[0]
        vector = tuple(math.ceil(w * g) for g in gamma_vector(family, sigma))
        return SymbolicExponents(family, w, (vector,))

    package = rees_package_diagrams(ideal)
    if w == 0 or package.is_unit:
        return SymbolicExponents(family, w, ((0,) * family.gamma_dim,))

    level = stabilized_exponent(w, denominator_bound(package))
    box = [
        math.ceil(level * max(g[i] for g in package.polyhedron.generators))
        for i in range(family.gamma_dim)
    ]
    points = scale_and_ceil_lattice(package.polyhedron, level, box, cap)
    return SymbolicExponents(family, w, tuple(_componentwise_minimal(points)))


def det_asymptotic_resurgence(m: int, t: int) -> Fraction:
    """
    Asymptotic resurgence t(m - t + 1)/m of I_t for a generic m x n matrix.

    Raises:
        ValidationError: Unless 1 <= t <= m
    """
    if m < 1 or not 1 <= t <= m:
        raise ValidationError(f"Need 1 <= t <= m, got m={m}, t={t}")
    return Fraction(t * (m - t + 1), m)
