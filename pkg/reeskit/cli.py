"""
Command-line interface for reeskit.

Each subcommand reads a JSON description, runs one computation and writes
the report to stdout. Exit codes: 0 success, 1 failed verdict or
calculation error, 2 input error, 3 enumeration cap exceeded, 99 unexpected.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from .config import resolve_cap
from .constants import DEFAULT_SEED, OUTPUT_FORMATS, VERDICT_EQUAL
from .corpus import monomial_pairs
from .diagrams import (
    Diagram,
    DiagramIdeal,
    MatrixFamily,
    det_asymptotic_resurgence,
    gamma_vector,
    hankel_valuation_flags,
    rational_power_shape_membership,
    rees_package_diagrams,
    symbolic_intersection_exponents,
)
from .exceptions import (
    CalculationError,
    EnumerationCapError,
    OracleMismatchError,
    ReesKitError,
    ValidationError,
)
from .geometry import (
    Hyperplane,
    PositivePolyhedron,
    conv_join,
    format_rational,
    parse_rational,
    polyhedron_membership,
    satisfies_facets,
    scale_and_ceil_lattice,
    stabilized_exponent,
    star,
    star_labels,
)
from .models import (
    BatchOutput,
    CounterexampleOutput,
    DiagramInput,
    HyperplaneOutput,
    JoinOutput,
    MonomialInput,
    OracleCheck,
    PackageOutput,
    PairInput,
    RationalPowerOutput,
    ResurgenceOutput,
    SandwichOutput,
    StarInput,
    StarOutput,
    SummationOutput,
)
from .oracle import closure_membership_bruteforce, facets_fourier_motzkin, lattice_points_naive
from .render import render
from .semigroup import (
    AffineSemigroup,
    MonomialIdeal,
    ReesPackage,
    denominator_bound,
    generator_box,
    membership_in_semigroup,
    rational_power_generators,
    rational_power_membership,
    rees_package_monomial,
    valuation_vector,
)
from .summation import (
    JoinedPackage,
    SandwichReport,
    SummationReport,
    asymptotic_sandwich_check,
    check_summation_monomial,
    check_summation_values,
    join_packages,
    same_ring_counterexample,
    weaker_form_check,
)

logger = logging.getLogger(__name__)

Ideal = Union[MonomialIdeal, DiagramIdeal]


class VerdictFailure(Exception):
    """A computed verdict did not hold; the report is still printed."""


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per computation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", type=str, help="JSON input file")
    common.add_argument(
        "--format", "-f",
        choices=OUTPUT_FORMATS,
        default="json",
        help="Output format (default: json)"
    )
    common.add_argument(
        "--oracle",
        action="store_true",
        help="Cross-check against brute-force verifiers",
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for random corpora")
    common.add_argument(
        "--cap",
        type=int,
        default=None,
        help="Enumeration cap in points (default: $REESKIT_CAP or 10^6)"
    )
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="rees_package",
        description="reeskit: Rees packages, rational powers and the summation formula",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s package --input tests/golden/mon_example.json
  %(prog)s ratpow --input tests/golden/mon_example.json --w 3/2 --generators
  %(prog)s counterexample --n 1
        """
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("package", parents=[common], help="Rees package of an ideal")

    ratpow = sub.add_parser("ratpow", parents=[common], help="Closure of a rational power")
    ratpow.add_argument("--w", type=_rational, required=True, help="Exponent p/q")
    ratpow.add_argument(
        "--point",
        type=_int_list,
        help="Exponent vector (monomial) or diagram parts (diagram ideal), comma-separated"
    )
    ratpow.add_argument("--generators", action="store_true", help="List minimal generators")

    sub.add_parser("join", parents=[common], help="Joined package of a pair of ideals")

    sum_check = sub.add_parser("sum-check", parents=[common], help="Summation formula check")
    sum_check.add_argument("--w", type=_rational, required=True)
    sum_check.add_argument("--random", type=int, metavar="K", help="Run K seeded random monomial pairs")

    counterexample = sub.add_parser("counterexample", parents=[common], help="Same-ring witness")
    counterexample.add_argument("--n", type=int, default=1)

    sandwich = sub.add_parser("sandwich", parents=[common], help="Asymptotic sandwich check")
    sandwich.add_argument("--w", type=_rational, required=True)
    sandwich.add_argument("--tau", type=_rational, help="Split point (default: w/2)")
    sandwich.add_argument("--search", action="store_true", help="Search the empirical w0")
    sandwich.add_argument("--random", type=int, metavar="K", help="Run K seeded random monomial pairs")

    resurgence = sub.add_parser("resurgence", parents=[common], help="Asymptotic resurgence of I_t")
    resurgence.add_argument("--m", type=int, required=True)
    resurgence.add_argument("--t", type=int, required=True)

    sub.add_parser("star", parents=[common], help="Star product of two hyperplanes")
    return parser


# ---------------------------------------------------------------------------
# Input
# ---------------------------------------------------------------------------

def _load_json(path: Optional[str]) -> Any:
    if not path:
        raise ValidationError("This command needs --input FILE")
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise ValidationError(f"Cannot read {path}: {e.strerror}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(
            f"Malformed JSON in {path} at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from e


def parse_ideal(data: Any) -> Ideal:
    """Monomial or diagram ideal, told apart by the presence of 'family'."""
    if not isinstance(data, dict):
        raise ValidationError("An ideal must be a JSON object")
    if "family" in data:
        return DiagramInput.model_validate(data).to_ideal()
    return MonomialInput.model_validate(data).to_ideal()


def _parse_pair(data: Any) -> Tuple[Ideal, Ideal]:
    pair = PairInput.model_validate(data)
    return pair.left.to_ideal(), pair.right.to_ideal()


def package_of(ideal: Ideal) -> ReesPackage:
    if isinstance(ideal, MonomialIdeal):
        return rees_package_monomial(ideal)
    return rees_package_diagrams(ideal)


def _require_monomial(*ideals: Ideal) -> None:
    if not all(isinstance(i, MonomialIdeal) for i in ideals):
        raise ValidationError("This command needs monomial ideals on both sides")


def _oracle_check(agrees: bool, detail: str) -> OracleCheck:
    if not agrees:
        raise OracleMismatchError(detail)
    return OracleCheck(agrees=True, detail=detail)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_package(args: argparse.Namespace) -> BaseModel:
    package = package_of(parse_ideal(_load_json(args.input)))
    output = PackageOutput.from_package(package)
    if isinstance(package.source, DiagramIdeal) and package.source.family.kind == "hankel":
        output.hankel_equality = hankel_valuation_flags(package)[1]
    if args.oracle:
        fm = facets_fourier_motzkin(package.polyhedron)
        output.oracle = _oracle_check(
            set(fm) == set(package.facets),
            f"Fourier-Motzkin facets: {[f.equation(package.labels) for f in fm]}",
        )
    return output


def _naive_minimal(polyhedron: PositivePolyhedron, level: Fraction, box, cap) -> List[Tuple[int, ...]]:
    points = set(lattice_points_naive(polyhedron, level, box, cap))
    return sorted(
        p for p in points
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in points)
    )


def _ratpow_monomial(ideal: MonomialIdeal, args: argparse.Namespace, cap: int) -> RationalPowerOutput:
    package = rees_package_monomial(ideal)
    e = denominator_bound(package)
    level = stabilized_exponent(args.w, e)
    output = RationalPowerOutput(
        w=format_rational(args.w), stabilized_w=format_rational(level), denominator_bound=e
    )
    if args.point is not None:
        output.point = args.point
        output.member = rational_power_membership(ideal, args.w, args.point)
        if args.oracle:
            lp = membership_in_semigroup(ideal.semigroup, args.point) and polyhedron_membership(
                package.polyhedron, args.w, valuation_vector(ideal.semigroup, args.point)
            )
            agrees = lp == output.member
            detail = f"LP membership: {lp}"
            if ideal.semigroup.is_orthant and args.w.denominator == 1:
                brute = closure_membership_bruteforce(ideal, int(args.w), args.point)
                agrees = agrees and brute == output.member
                detail += f"; brute force: {brute}"
            output.oracle = _oracle_check(agrees, detail)
    if args.generators or args.point is None:
        generators = rational_power_generators(ideal, args.w, cap)
        output.generators = [list(g) for g in generators]
        if args.oracle and ideal.semigroup.is_orthant and not package.is_unit:
            box = generator_box(ideal, level)[1]
            naive = _naive_minimal(package.polyhedron, level, box, cap)
            output.oracle = _oracle_check(
                naive == generators, f"naive lattice scan: {[list(p) for p in naive]}"
            )
    return output


def _ratpow_diagram(ideal: DiagramIdeal, args: argparse.Namespace, cap: int) -> RationalPowerOutput:
    package = rees_package_diagrams(ideal)
    e = denominator_bound(package)
    level = stabilized_exponent(args.w, e)
    output = RationalPowerOutput(
        w=format_rational(args.w), stabilized_w=format_rational(level), denominator_bound=e
    )
    if args.point is not None:
        sigma = Diagram(tuple(args.point))
        output.point = args.point
        output.member = rational_power_shape_membership(ideal, args.w, sigma)
        if args.oracle:
            lp = polyhedron_membership(package.polyhedron, args.w, gamma_vector(ideal.family, sigma))
            output.oracle = _oracle_check(lp == output.member, f"LP membership: {lp}")
    if args.generators or args.point is None:
        symbolic = symbolic_intersection_exponents(ideal, args.w, cap)
        output.attach_symbolic(symbolic)
        if args.oracle and ideal.family.kind != "hankel" and not package.is_unit and args.w > 0:
            box = [max(a[i] for a in symbolic.exponents) for i in range(ideal.family.gamma_dim)]
            fast = scale_and_ceil_lattice(package.polyhedron, level, box, cap)
            naive = lattice_points_naive(package.polyhedron, level, box, cap)
            output.oracle = _oracle_check(fast == naive, f"naive lattice scan: {len(naive)} points")
    return output


def cmd_ratpow(args: argparse.Namespace) -> BaseModel:
    if args.w < 0:
        raise ValidationError(f"Exponent w must be nonnegative: {args.w}")
    ideal = parse_ideal(_load_json(args.input))
    cap = resolve_cap(args.cap)
    if isinstance(ideal, MonomialIdeal):
        return _ratpow_monomial(ideal, args, cap)
    return _ratpow_diagram(ideal, args, cap)


def cmd_join(args: argparse.Namespace) -> BaseModel:
    left, right = _parse_pair(_load_json(args.input))
    joined = join_packages(package_of(left), package_of(right))
    output = JoinOutput.from_joined(joined)
    if args.oracle:
        fm = facets_fourier_motzkin(joined.omega)
        output.oracle = _oracle_check(
            set(fm) == set(joined.facets),
            f"Fourier-Motzkin facets of Omega: {[f.equation(joined.labels) for f in fm]}",
        )
    if not output.counting_law:
        raise VerdictFailure(output)
    return output


def _pair_summary(left: MonomialIdeal, right: MonomialIdeal) -> Dict[str, Any]:
    return {
        "left": [list(a) for a in left.exponents],
        "right": [list(b) for b in right.exponents],
    }


def _joined_values(left: MonomialIdeal, right: MonomialIdeal, point: Sequence[int]) -> Tuple[int, ...]:
    """Value vector of x^point in the coordinates of Omega."""
    a, b = point[:left.rank], point[left.rank:]
    return valuation_vector(left.semigroup, a) + valuation_vector(right.semigroup, b)


def _both_polynomial(left: Ideal, right: Ideal) -> bool:
    return all(isinstance(i, MonomialIdeal) and i.semigroup.is_orthant for i in (left, right))


def _summation_oracle(left: Ideal, right: Ideal, joined: JoinedPackage, report: SummationReport) -> OracleCheck:
    """Both generator sets lie in w*Omega by Fourier-Motzkin; polynomial rings at integral w by brute force."""
    facets = facets_fourier_motzkin(joined.omega)
    points = report.lhs_generators + report.rhs_generators
    if isinstance(left, MonomialIdeal) and isinstance(right, MonomialIdeal):
        values = [_joined_values(left, right, p) for p in points]
    else:
        values = list(points)
    inside = sum(satisfies_facets(facets, report.w, v) for v in values)
    agrees = inside == len(values)
    detail = f"Fourier-Motzkin facets of Omega: {inside} of {len(values)} generators inside"
    if _both_polynomial(left, right) and report.w.denominator == 1:
        total = left.tensor_sum(right)
        brute = sum(
            bool(closure_membership_bruteforce(total, int(report.w), g)) for g in report.lhs_generators
        )
        agrees = agrees and brute == len(report.lhs_generators)
        detail += f"; brute force: {brute} of {len(report.lhs_generators)} lhs generators in the closure"
    return _oracle_check(agrees, detail)


def _summation(left: Ideal, right: Ideal, args: argparse.Namespace, cap: int) -> SummationOutput:
    joined = join_packages(package_of(left), package_of(right))
    if isinstance(left, MonomialIdeal) and isinstance(right, MonomialIdeal):
        report = check_summation_monomial(left, right, args.w, cap)
    else:
        report = check_summation_values(joined, args.w, cap)
    output = SummationOutput.from_report(report)
    if args.oracle:
        output.oracle = _summation_oracle(left, right, joined, report)
    return output


def cmd_sum_check(args: argparse.Namespace) -> BaseModel:
    cap = resolve_cap(args.cap)
    if args.random is not None:
        failures = []
        for index, (left, right) in enumerate(monomial_pairs(args.seed, args.random)):
            output = _summation(left, right, args, cap)
            if output.verdict != VERDICT_EQUAL:
                failures.append({"index": index, "verdict": output.verdict, **_pair_summary(left, right)})
        batch = BatchOutput.from_counts(args.seed, args.random, failures)
        if args.oracle:
            batch.oracle = OracleCheck(agrees=True, detail=f"{args.random} pairs cross-checked")
        if failures:
            raise VerdictFailure(batch)
        return batch

    left, right = _parse_pair(_load_json(args.input))
    output = _summation(left, right, args, cap)
    if output.verdict != VERDICT_EQUAL:
        raise VerdictFailure(output)
    return output


def cmd_counterexample(args: argparse.Namespace) -> BaseModel:
    report = same_ring_counterexample(args.n, resolve_cap(args.cap))
    output = CounterexampleOutput.from_report(report)
    if args.oracle:
        ideal_sum = MonomialIdeal(AffineSemigroup.orthant(2), ((1, 3), (3, 1)))
        brute = closure_membership_bruteforce(ideal_sum, report.w, report.point)
        output.oracle = _oracle_check(
            brute == report.in_closure, f"brute-force closure membership: {brute}"
        )
    if not report.holds:
        raise VerdictFailure(output)
    return output


def _inside(facets: List[Hyperplane], semigroup: AffineSemigroup, level: Fraction, point: Sequence[int]) -> bool:
    return satisfies_facets(facets, level, valuation_vector(semigroup, point))


def _sandwich_oracle(left: MonomialIdeal, right: MonomialIdeal, report: SandwichReport, cap: int) -> OracleCheck:
    """Right inclusion re-decided on Fourier-Motzkin facets; generators of the closure checked against w*Omega."""
    w, tau = report.w, report.tau
    left_package, right_package = rees_package_monomial(left), rees_package_monomial(right)
    left_facets = facets_fourier_motzkin(left_package.polyhedron)
    right_facets = facets_fourier_motzkin(right_package.polyhedron)
    joined = join_packages(left_package, right_package)
    omega_facets = facets_fourier_motzkin(joined.omega)
    generators = rational_power_generators(left.tensor_sum(right), w, cap)
    in_omega = all(
        satisfies_facets(omega_facets, w, _joined_values(left, right, g)) for g in generators
    )
    right_holds = all(
        _inside(left_facets, left.semigroup, tau, g[:left.rank])
        or _inside(right_facets, right.semigroup, w - tau, g[left.rank:])
        for g in generators
    )
    detail = (
        f"Fourier-Motzkin: {len(generators)} generators inside w*Omega: {in_omega}; "
        f"right inclusion: {right_holds}"
    )
    return _oracle_check(in_omega and right_holds == report.right_holds, detail)


def _sandwich(left: MonomialIdeal, right: MonomialIdeal, args: argparse.Namespace, cap: int) -> SandwichOutput:
    tau = args.tau if args.tau is not None else args.w / 2
    report = asymptotic_sandwich_check(left, right, args.w, tau, cap, search=args.search)
    output = SandwichOutput.from_report(report)
    output.weaker_form_holds = weaker_form_check(left, right, args.w, cap).holds
    if args.oracle:
        output.oracle = _sandwich_oracle(left, right, report, cap)
    return output


def cmd_sandwich(args: argparse.Namespace) -> BaseModel:
    cap = resolve_cap(args.cap)
    if args.random is not None:
        failures = []
        for index, (left, right) in enumerate(monomial_pairs(args.seed, args.random)):
            output = _sandwich(left, right, args, cap)
            if not (output.left_holds and output.right_holds and output.weaker_form_holds):
                failures.append({"index": index, **_pair_summary(left, right)})
        batch = BatchOutput.from_counts(args.seed, args.random, failures)
        if args.oracle:
            batch.oracle = OracleCheck(agrees=True, detail=f"{args.random} pairs cross-checked")
        if failures:
            raise VerdictFailure(batch)
        return batch

    left, right = _parse_pair(_load_json(args.input))
    _require_monomial(left, right)
    output = _sandwich(left, right, args, cap)
    if not (output.left_holds and output.right_holds and output.weaker_form_holds):
        raise VerdictFailure(output)
    return output


def cmd_resurgence(args: argparse.Namespace) -> BaseModel:
    value = det_asymptotic_resurgence(args.m, args.t)
    ideal = DiagramIdeal(MatrixFamily.generic(args.m, args.m), (Diagram((args.t,)),))
    package = rees_package_diagrams(ideal)
    output = ResurgenceOutput(
        m=args.m,
        t=args.t,
        resurgence=format_rational(value),
        rees_valuations=package.rees_valuations(),
    )
    if args.oracle:
        fm = facets_fourier_motzkin(package.polyhedron)
        output.oracle = _oracle_check(
            set(fm) == set(package.facets),
            f"Fourier-Motzkin facets: {[f.equation(package.labels) for f in fm]}",
        )
    return output


def _single_facet_polyhedron(hyperplane: Hyperplane) -> PositivePolyhedron:
    """{x >= 0 : <h, x> >= c}, spanned by the intercepts c/h_i on the axes with h_i > 0."""
    generators = tuple(
        tuple(Fraction(hyperplane.offset, h) if j == i else Fraction(0) for j in range(hyperplane.dim))
        for i, h in enumerate(hyperplane.normal)
        if h > 0
    )
    return PositivePolyhedron(hyperplane.dim, generators)


def cmd_star(args: argparse.Namespace) -> BaseModel:
    data = StarInput.model_validate(_load_json(args.input))
    left, right = data.left.to_hyperplane(), data.right.to_hyperplane()
    left_labels, right_labels = star_labels(left.dim, right.dim)
    product = star(left, right)
    output = StarOutput(
        left=HyperplaneOutput.from_hyperplane(left, left_labels),
        right=HyperplaneOutput.from_hyperplane(right, right_labels),
        product=HyperplaneOutput.from_hyperplane(product, left_labels + right_labels),
    )
    if args.oracle:
        joined = conv_join(_single_facet_polyhedron(left), _single_facet_polyhedron(right))
        fm = facets_fourier_motzkin(joined)
        output.oracle = _oracle_check(
            fm == [product],
            f"Fourier-Motzkin facets of the join: {[f.equation(left_labels + right_labels) for f in fm]}",
        )
    return output


COMMANDS = {
    "package": cmd_package,
    "ratpow": cmd_ratpow,
    "join": cmd_join,
    "sum-check": cmd_sum_check,
    "counterexample": cmd_counterexample,
    "sandwich": cmd_sandwich,
    "resurgence": cmd_resurgence,
    "star": cmd_star,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for CLI."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        resolve_cap(args.cap)
        output = COMMANDS[args.command](args)
        print(render(output, args.format))
        return 0

    except VerdictFailure as e:
        print(render(e.args[0], args.format))
        return 1
    except PydanticValidationError as e:
        print(f"VALIDATION ERROR: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        print(f"INPUT ERROR: {e}", file=sys.stderr)
        return 2
    except EnumerationCapError as e:
        print(f"CAP EXCEEDED: {e}", file=sys.stderr)
        return 3
    except (CalculationError, OracleMismatchError) as e:
        print(f"CALCULATION ERROR: {e}", file=sys.stderr)
        return 1
    except ReesKitError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.exception("unexpected failure")
        print(f"UNEXPECTED ERROR: {e}", file=sys.stderr)
        return 99


if __name__ == "__main__":
    sys.exit(main())
