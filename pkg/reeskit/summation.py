"""
Rees packages of tensor products and the summation formula.

For ideals I of R and J of S with Rees packages (B, v, Gamma) and
(C, gamma, Sigma), the joined package of IT + JT in T = R (x) S has polyhedron
Omega = conv(Gamma x 0, 0 x Sigma) + orthant, whose facets are exactly the
star products of the facets of Gamma and Sigma. Since

    w*Omega = union over 0 <= alpha <= w of (alpha*Gamma x (w - alpha)*Sigma)

the closure of (IT + JT)^w is the sum over alpha of closure(I^alpha) times
closure(J^(w - alpha)), and alpha only has to run over a finite grid.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .config import resolve_cap
from .constants import (
    CONJECTURE_LABEL,
    INCONSISTENT_LABEL,
    VERDICT_EQUAL,
    VERDICT_LHS_NOT_IN_RHS,
    VERDICT_RHS_NOT_IN_LHS,
)
from .exceptions import CalculationError, EnumerationCapError, ValidationError
from .geometry import (
    Hyperplane,
    IntVector,
    PositivePolyhedron,
    RationalLike,
    Vector,
    conv_join,
    facet_enumeration,
    find_nonnegative_solution,
    format_linear_form,
    parse_rational,
    satisfies_facets,
    star,
)
from .semigroup import (
    AffineSemigroup,
    MonomialIdeal,
    ReesPackage,
    cone_facet_valuations,
    denominator_bound,
    divides,
    generator_box,
    ideal_contains,
    membership_in_semigroup,
    minimal_elements,
    rational_power_generators,
    rational_power_membership,
    rees_package_monomial,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Joined package
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairedFacet:
    """Star product of facet k1 of the left package and facet k2 of the right one."""

    hyperplane: Hyperplane
    provenance: Tuple[int, int]


@dataclass(frozen=True)
class JoinedPackage:
    """Rees package of IT + JT: polyhedron Omega and its paired facets."""

    left: ReesPackage
    right: ReesPackage
    omega: PositivePolyhedron
    paired_facets: Tuple[PairedFacet, ...]

    @property
    def split(self) -> int:
        """Number of left coordinates."""
        return self.left.ambient_dim

    @property
    def labels(self) -> Tuple[str, ...]:
        right = tuple(
            f"{label}'" if label in self.left.labels else label
            for label in self.right.labels
        )
        return self.left.labels + right

    @property
    def facets(self) -> Tuple[Hyperplane, ...]:
        return tuple(p.hyperplane for p in self.paired_facets)

    def valuations(self) -> List[str]:
        """Each paired Rees valuation as a combination of both value maps."""
        return [format_linear_form(p.hyperplane.normal, self.labels) for p in self.paired_facets]


def join_packages(left: ReesPackage, right: ReesPackage) -> JoinedPackage:
    """
    Join two Rees packages.

    The paired facets are the star products of all facet pairs, in the order
    (left facet, right facet); the facet enumeration of Omega must return the
    same set.

    Raises:
        CalculationError: If Omega's facets differ from the star products
    """
    omega = conv_join(left.polyhedron, right.polyhedron)
    paired = tuple(
        PairedFacet(star(h1, h2), (k1, k2))
        for k1, h1 in enumerate(left.facets)
        for k2, h2 in enumerate(right.facets)
    )
    enumerated = set(facet_enumeration(omega))
    starred = {p.hyperplane for p in paired}
    if enumerated != starred or len(starred) != len(paired):
        raise CalculationError(
            f"Facets of the join {sorted(enumerated, key=Hyperplane.sort_key)} "
            f"differ from the star products {[p.hyperplane for p in paired]}"
        )
    logger.info(
        "joined package: %d x %d = %d paired valuations",
        len(left.facets), len(right.facets), len(paired),
    )
    return JoinedPackage(left, right, omega, paired)


# ---------------------------------------------------------------------------
# Decomposition of w*Omega
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaCertificate:
    """point = (left_point, right_point) with left in alpha*Gamma, right in (w - alpha)*Sigma."""

    alpha: Fraction
    w: Fraction
    left_point: Vector
    right_point: Vector


def summation_split(
    joined: JoinedPackage,
    w: RationalLike,
    point: Sequence[RationalLike],
) -> Optional[AlphaCertificate]:
    """
    Find alpha with point in alpha*Gamma x (w - alpha)*Sigma.

    Solved as one exact feasibility problem over the convex weights of both
    generator sets; alpha is the total left weight.

    Returns:
        A re-verified certificate, or None if point is not in w*Omega

    Raises:
        ValidationError: On dimension mismatch or negative w
        CalculationError: If the certificate fails re-verification
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    if len(point) != joined.omega.dim:
        raise ValidationError(
            f"Point has length {len(point)}, expected {joined.omega.dim}"
        )
    target = tuple(parse_rational(x) for x in point)
    if any(x < 0 for x in target):
        return None

    split = joined.split
    left_gens = joined.left.polyhedron.generators
    right_gens = joined.right.polyhedron.generators
    k1, k2 = len(left_gens), len(right_gens)
    dim = joined.omega.dim

    rows = []
    for j in range(dim):
        if j < split:
            weights = [g[j] for g in left_gens] + [Fraction(0)] * k2
        else:
            weights = [Fraction(0)] * k1 + [h[j - split] for h in right_gens]
        rows.append(weights + [Fraction(int(i == j)) for i in range(dim)])
    rows.append([Fraction(1)] * (k1 + k2) + [Fraction(0)] * dim)
    solution = find_nonnegative_solution(rows, list(target) + [w])
    if solution is None:
        return None

    alpha = sum(solution[:k1], Fraction(0))
    certificate = AlphaCertificate(alpha, w, target[:split], target[split:])
    if not (
        satisfies_facets(joined.left.facets, alpha, certificate.left_point)
        and satisfies_facets(joined.right.facets, w - alpha, certificate.right_point)
    ):
        raise CalculationError(f"Certificate alpha={alpha} for {target} fails verification")
    return certificate


def alpha_grid(denominator: int, w: RationalLike) -> List[Fraction]:
    """
    Candidate alphas: k/e and w - k/e inside [0, w].

    A product term depends on alpha only through (ceil(alpha*e), ceil((w-alpha)*e)),
    and its largest representatives sit on one of the two grids.
    """
    w = parse_rational(w)
    steps = math.floor(w * denominator)
    grid = {Fraction(k, denominator) for k in range(steps + 1)}
    grid |= {w - Fraction(k, denominator) for k in range(steps + 1)}
    return sorted(grid)


def _tau_grid(denominator: int, w: Fraction) -> List[Fraction]:
    # grid plus midpoints: every open interval between grid values is sampled
    grid = alpha_grid(denominator, w)
    return sorted(set(grid) | {(a + b) / 2 for a, b in zip(grid, grid[1:])})


def _joined_denominator(joined: JoinedPackage) -> int:
    return math.lcm(denominator_bound(joined.left), denominator_bound(joined.right))


def _attained_orders(package: ReesPackage, w: Fraction, cap: Optional[int]) -> Set[Fraction]:
    orders = set()
    for values in package.source.basis_values(w, cap):
        order = package.order(values)
        orders.add(w if order is None else min(order, w))
    return orders


def _covers(alpha: Fraction, w: Fraction, pair: Tuple[Fraction, Fraction]) -> bool:
    return alpha <= pair[0] and w - alpha <= pair[1]


def alpha_term_list(
    joined: JoinedPackage,
    w: RationalLike,
    cap: Optional[int] = None,
) -> List[Fraction]:
    """
    Irredundant alphas of the summation formula at level w.

    A basis element pair with orders (x, y) lies in the alpha term iff
    alpha <= x and w - alpha <= y. Candidates are visited in increasing order
    and dropped when the remaining terms still cover every attained pair they
    cover.

    Raises:
        EnumerationCapError: If a basis box exceeds the cap
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    if w == 0:
        return [Fraction(0)]

    candidates = alpha_grid(_joined_denominator(joined), w)
    left_orders = _attained_orders(joined.left, w, cap)
    right_orders = _attained_orders(joined.right, w, cap)
    pairs = [
        (x, y) for x in sorted(left_orders) for y in sorted(right_orders)
        if any(_covers(a, w, (x, y)) for a in candidates)
    ]

    kept = list(candidates)
    for alpha in candidates:
        others = [a for a in kept if a != alpha]
        covered = [pair for pair in pairs if _covers(alpha, w, pair)]
        if all(any(_covers(b, w, pair) for b in others) for pair in covered):
            kept = others
    logger.debug("alpha terms at w=%s: %d of %d candidates", w, len(kept), len(candidates))
    return kept


# ---------------------------------------------------------------------------
# Summation formula checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SummationReport:
    """Both sides of the summation formula as monomial generator sets."""

    verdict: str
    w: Fraction
    alpha_terms: Tuple[Fraction, ...]
    lhs_generators: Tuple[IntVector, ...]
    rhs_generators: Tuple[IntVector, ...]
    witness: Optional[Tuple] = None

    @property
    def holds(self) -> bool:
        return self.verdict == VERDICT_EQUAL

    @property
    def label(self) -> str:
        return CONJECTURE_LABEL if self.holds else INCONSISTENT_LABEL


def _coordinate_permutation(
    product: AffineSemigroup,
    left: AffineSemigroup,
    right: AffineSemigroup,
) -> List[int]:
    """Position of each (left, right) cone valuation among those of the product."""
    actual = [v.normal for v in cone_facet_valuations(product)]
    joined = [v.normal + (0,) * right.rank for v in cone_facet_valuations(left)]
    joined += [(0,) * left.rank + v.normal for v in cone_facet_valuations(right)]
    if sorted(actual) != sorted(joined):
        raise CalculationError(
            f"Cone valuations of the product {actual} are not those of the factors {joined}"
        )
    return [actual.index(normal) for normal in joined]


def _check_product_package(left: MonomialIdeal, right: MonomialIdeal, joined: JoinedPackage) -> MonomialIdeal:
    total = left.tensor_sum(right)
    order = _coordinate_permutation(total.semigroup, left.semigroup, right.semigroup)
    polyhedron = rees_package_monomial(total).polyhedron
    permuted = PositivePolyhedron(
        polyhedron.dim, tuple(tuple(g[i] for i in order) for g in polyhedron.generators)
    )
    if permuted != joined.omega:
        raise CalculationError(
            f"Package of IT+JT {permuted.generators} differs from the join {joined.omega.generators}"
        )
    return total


def _product_generators(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: Fraction,
    alphas: Iterable[Fraction],
    cap: Optional[int],
) -> List[IntVector]:
    products = []
    for alpha in alphas:
        for a in rational_power_generators(left, alpha, cap):
            for b in rational_power_generators(right, w - alpha, cap):
                products.append(a + b)
    return products


def _first_undominated(
    semigroup: AffineSemigroup,
    points: Sequence[IntVector],
    generators: Sequence[IntVector],
) -> Optional[IntVector]:
    for point in points:
        if not ideal_contains(semigroup, generators, point):
            return point
    return None


def check_summation_monomial(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: RationalLike,
    cap: Optional[int] = None,
) -> SummationReport:
    """
    Compare closure((IT + JT)^w) with the sum over alpha of closure(I^alpha) closure(J^(w-alpha)).

    The two sides are compared by mutual <=_S domination of their generator
    sets in the product semigroup.

    Raises:
        EnumerationCapError: Propagated from generator enumeration
        CalculationError: If the joined package disagrees with that of IT + JT
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    joined = join_packages(rees_package_monomial(left), rees_package_monomial(right))
    total = _check_product_package(left, right, joined)
    semigroup = total.semigroup

    lhs = rational_power_generators(total, w, cap)
    alphas = alpha_term_list(joined, w, cap)
    rhs = minimal_elements(semigroup, _product_generators(left, right, w, alphas, cap))

    verdict = VERDICT_EQUAL
    witness = _first_undominated(semigroup, lhs, rhs)
    if witness is not None:
        verdict = VERDICT_LHS_NOT_IN_RHS
    else:
        witness = _first_undominated(semigroup, rhs, lhs)
        if witness is not None:
            verdict = VERDICT_RHS_NOT_IN_LHS
    logger.info("summation check at w=%s: %s", w, verdict)
    return SummationReport(verdict, w, tuple(alphas), tuple(lhs), tuple(rhs), witness)


def check_summation_values(
    joined: JoinedPackage,
    w: RationalLike,
    cap: Optional[int] = None,
) -> SummationReport:
    """
    Summation formula at the level of value vectors.

    Every pair of basis value vectors (x, y) inside the certified boxes must be
    in w*Omega exactly when some alpha term contains it. Used for packages
    whose bases are not monomials (diagram ideals).
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    alphas = alpha_term_list(joined, w, cap)
    left_values = sorted(set(joined.left.source.basis_values(w, cap)))
    right_values = sorted(set(joined.right.source.basis_values(w, cap)))
    limit = resolve_cap(cap)
    if len(left_values) * len(right_values) > limit:
        raise EnumerationCapError(len(left_values) * len(right_values), limit, "value pairs")

    lhs, rhs = [], []
    verdict, witness = VERDICT_EQUAL, None
    for x in left_values:
        for y in right_values:
            in_lhs = satisfies_facets(joined.facets, w, x + y)
            in_rhs = any(
                joined.left.contains(a, x) and joined.right.contains(w - a, y) for a in alphas
            )
            if in_lhs:
                lhs.append(x + y)
            if in_rhs:
                rhs.append(x + y)
            if in_lhs != in_rhs and witness is None:
                verdict = VERDICT_LHS_NOT_IN_RHS if in_lhs else VERDICT_RHS_NOT_IN_LHS
                witness = x + y
    logger.info("value-level summation check at w=%s: %s", w, verdict)
    return SummationReport(verdict, w, tuple(alphas), tuple(lhs), tuple(rhs), witness)


# ---------------------------------------------------------------------------
# Same-ring sums
# ---------------------------------------------------------------------------

def _ideal_sum(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    return MonomialIdeal(left.semigroup, left.exponents + right.exponents)


def same_ring_sum_membership(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: RationalLike,
    point: Sequence[int],
    cap: Optional[int] = None,
) -> bool:
    """
    Decide x^point in the sum over alpha of closure(I^alpha) closure(J^(w-alpha)), I and J in one ring.

    Raises:
        ValidationError: If the ideals live in different semigroups
    """
    if left.semigroup != right.semigroup:
        raise ValidationError("Both ideals must live in the same semigroup ring")
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    target = tuple(int(x) for x in point)
    semigroup = left.semigroup
    denominator = math.lcm(
        denominator_bound(rees_package_monomial(left)),
        denominator_bound(rees_package_monomial(right)),
    )
    for alpha in alpha_grid(denominator, w):
        for a in rational_power_generators(left, alpha, cap):
            for b in rational_power_generators(right, w - alpha, cap):
                product = tuple(x + y for x, y in zip(a, b))
                if divides(semigroup, product, target):
                    logger.debug("%s lies in the alpha=%s term", target, alpha)
                    return True
    return False


@dataclass(frozen=True)
class CounterexampleReport:
    """Witness that the summation formula fails for two ideals of one ring."""

    n: int
    w: int
    point: IntVector
    in_closure: bool
    in_sum: bool

    @property
    def holds(self) -> bool:
        return self.in_closure and not self.in_sum


def same_ring_counterexample(n: int, cap: Optional[int] = None) -> CounterexampleReport:
    """
    I = (xy^3), J = (x^3y) in k[x, y]: x^(4n+2) y^(4n+2) is in closure((I+J)^(2n+1)) but in no product term.

    Raises:
        ValidationError: If n < 1
    """
    if n < 1:
        raise ValidationError(f"n must be a positive integer, got {n}")
    ring = AffineSemigroup.orthant(2)
    left = MonomialIdeal(ring, ((1, 3),))
    right = MonomialIdeal(ring, ((3, 1),))
    w = 2 * n + 1
    point = (4 * n + 2, 4 * n + 2)
    report = CounterexampleReport(
        n=n,
        w=w,
        point=point,
        in_closure=rational_power_membership(_ideal_sum(left, right), w, point),
        in_sum=same_ring_sum_membership(left, right, w, point, cap),
    )
    logger.info("same-ring witness n=%d: closure=%s sum=%s", n, report.in_closure, report.in_sum)
    return report


# ---------------------------------------------------------------------------
# Sandwich
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SandwichReport:
    """Both inclusions of the asymptotic sandwich at one tau."""

    w: Fraction
    tau: Fraction
    left_holds: bool
    right_holds: bool
    left_witness: Optional[IntVector] = None
    right_witness: Optional[IntVector] = None
    w0: Optional[Fraction] = None

    @property
    def holds(self) -> bool:
        return self.left_holds and self.right_holds

    @property
    def label(self) -> str:
        return CONJECTURE_LABEL if self.holds else INCONSISTENT_LABEL


def _split_exponent(point: IntVector, rank: int) -> Tuple[IntVector, IntVector]:
    return point[:rank], point[rank:]


def _right_inclusion_witness(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: Fraction,
    tau: Fraction,
    generators: Sequence[IntVector],
) -> Optional[IntVector]:
    for point in generators:
        a, b = _split_exponent(point, left.rank)
        if not (
            rational_power_membership(left, tau, a)
            or rational_power_membership(right, w - tau, b)
        ):
            return point
    return None


def asymptotic_w0(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: RationalLike,
    cap: Optional[int] = None,
) -> Optional[Fraction]:
    """
    Least grid value w0 such that the right inclusion holds for all grid tau in [w0, w - w0].

    Returns None when no grid value up to w/2 works. The value is empirical.
    """
    w = parse_rational(w)
    total = left.tensor_sum(right)
    generators = rational_power_generators(total, w, cap)
    denominator = math.lcm(
        denominator_bound(rees_package_monomial(left)),
        denominator_bound(rees_package_monomial(right)),
    )
    grid = alpha_grid(denominator, w)
    failing = [
        tau for tau in grid
        if _right_inclusion_witness(left, right, w, tau, generators) is not None
    ]
    for w0 in (g for g in grid if g <= w / 2):
        if not any(w0 <= tau <= w - w0 for tau in failing):
            return w0
    return None


def asymptotic_sandwich_check(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: RationalLike,
    tau: RationalLike,
    cap: Optional[int] = None,
    search: bool = False,
) -> SandwichReport:
    """
    Check sum_alpha closure(I^alpha) closure(J^(w-alpha)) T inside closure((IT+JT)^w) inside closure(I^tau)T + closure(J^(w-tau))T.

    Both inclusions are checked on generator sets.

    Raises:
        ValidationError: Unless 0 <= tau <= w
    """
    w = parse_rational(w)
    tau = parse_rational(tau)
    if not 0 <= tau <= w:
        raise ValidationError(f"Need 0 <= tau <= w, got tau={tau}, w={w}")
    total = left.tensor_sum(right)
    denominator = math.lcm(
        denominator_bound(rees_package_monomial(left)),
        denominator_bound(rees_package_monomial(right)),
    )
    products = _product_generators(left, right, w, alpha_grid(denominator, w), cap)
    left_witness = next(
        (p for p in products if not rational_power_membership(total, w, p)), None
    )
    generators = rational_power_generators(total, w, cap)
    right_witness = _right_inclusion_witness(left, right, w, tau, generators)
    report = SandwichReport(
        w=w,
        tau=tau,
        left_holds=left_witness is None,
        right_holds=right_witness is None,
        left_witness=left_witness,
        right_witness=right_witness,
        w0=asymptotic_w0(left, right, w, cap) if search else None,
    )
    logger.info("sandwich w=%s tau=%s: left=%s right=%s", w, tau, report.left_holds, report.right_holds)
    return report


@dataclass(frozen=True)
class InclusionReport:
    """Outcome of a containment check between two monomial ideals on a box."""

    holds: bool
    witness: Optional[IntVector] = None


def weaker_form_check(
    left: MonomialIdeal,
    right: MonomialIdeal,
    w: RationalLike,
    cap: Optional[int] = None,
) -> InclusionReport:
    """
    The intersection over tau of (closure(I^tau)T + closure(J^(w-tau))T) equals closure((IT+JT)^w).

    Compared point by point on the generator box of IT + JT at level w.
    """
    w = parse_rational(w)
    if w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {w}")
    total = left.tensor_sum(right)
    denominator = math.lcm(
        denominator_bound(rees_package_monomial(left)),
        denominator_bound(rees_package_monomial(right)),
    )
    taus = _tau_grid(denominator, w)
    lower, upper = generator_box(total, w)
    limit = resolve_cap(cap)
    size = math.prod(u - l + 1 for l, u in zip(lower, upper))
    if size > limit:
        raise EnumerationCapError(size, limit, "weaker-form box")

    for point in itertools.product(*(range(l, u + 1) for l, u in zip(lower, upper))):
        if not membership_in_semigroup(total.semigroup, point):
            continue
        a, b = _split_exponent(point, left.rank)
        in_intersection = all(
            rational_power_membership(left, tau, a) or rational_power_membership(right, w - tau, b)
            for tau in taus
        )
        if in_intersection != rational_power_membership(total, w, point):
            return InclusionReport(False, point)
    return InclusionReport(True)


def madic_approximation_check(
    ideal: MonomialIdeal,
    n: int,
    variables: int,
    w: RationalLike,
    ell: RationalLike,
    cap: Optional[int] = None,
) -> InclusionReport:
    """
    closure((IT + m^n T)^(w+ell)) inside closure(I^w)T + m^ceil(n*ell) T.

    m is the homogeneous maximal ideal of a polynomial ring in `variables`
    variables; powers of m are integrally closed, so membership in
    m^k is total degree >= k.
    """
    w = parse_rational(w)
    ell = parse_rational(ell)
    if n < 1 or variables < 1:
        raise ValidationError("Need n >= 1 and at least one variable")
    if w < 0 or ell < 0:
        raise ValidationError(f"Need w, ell >= 0, got w={w}, ell={ell}")
    ring = AffineSemigroup.orthant(variables)
    power = MonomialIdeal(ring, tuple(_compositions(n, variables)))
    total = ideal.tensor_sum(power)
    needed = math.ceil(n * ell)
    for point in rational_power_generators(total, w + ell, cap):
        a, b = _split_exponent(point, ideal.rank)
        if not (rational_power_membership(ideal, w, a) or sum(b) >= needed):
            return InclusionReport(False, point)
    return InclusionReport(True)


def _compositions(total: int, parts: int) -> Iterable[IntVector]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail
