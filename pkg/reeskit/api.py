"""
FastAPI REST API for reeskit.
"""

from typing import List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError

from . import __version__
from .diagrams import (
    Diagram,
    DiagramIdeal,
    MatrixFamily,
    det_asymptotic_resurgence,
    rational_power_shape_membership,
    rees_package_diagrams,
    symbolic_intersection_exponents,
)
from .exceptions import CalculationError, EnumerationCapError, ReesKitError, ValidationError
from .geometry import format_rational, parse_rational, stabilized_exponent, star, star_labels
from .models import (
    CounterexampleOutput,
    HyperplaneOutput,
    IdealInput,
    JoinOutput,
    PackageOutput,
    PairInput,
    RationalPowerOutput,
    ResurgenceOutput,
    SandwichOutput,
    StarInput,
    StarOutput,
    SummationOutput,
)
from .semigroup import (
    MonomialIdeal,
    ReesPackage,
    denominator_bound,
    rational_power_generators,
    rational_power_membership,
    rees_package_monomial,
)
from .summation import (
    asymptotic_sandwich_check,
    check_summation_monomial,
    check_summation_values,
    join_packages,
    same_ring_counterexample,
    weaker_form_check,
)

app = FastAPI(
    title="reeskit API",
    description="Rees packages, rational powers of ideals and the summation formula, in exact arithmetic.",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


class RationalPowerRequest(BaseModel):
    """Ideal plus exponent; a point asks for membership, otherwise generators are listed."""
    ideal: IdealInput
    w: str = Field(..., description="Exponent as 'p/q'")
    point: Optional[List[int]] = Field(
        default=None,
        description="Exponent vector (monomial) or diagram parts (diagram ideal)"
    )


class PairRequest(PairInput):
    """Pair of ideals with an exponent and, for the sandwich, a split point."""
    w: str = Field(..., description="Exponent as 'p/q'")
    tau: Optional[str] = Field(default=None, description="Split point, default w/2")
    search: bool = False


def _package(ideal) -> ReesPackage:
    if isinstance(ideal, MonomialIdeal):
        return rees_package_monomial(ideal)
    return rees_package_diagrams(ideal)


def _run(compute):
    """Map domain errors onto HTTP status codes."""
    try:
        return compute()
    except (ValidationError, PydanticValidationError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    except EnumerationCapError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except CalculationError as e:
        raise HTTPException(status_code=500, detail=f"Calculation error: {e}")
    except ReesKitError as e:
        raise HTTPException(status_code=500, detail=str(e))


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "engine": "reeskit", "version": __version__}


@app.post("/package", response_model=PackageOutput, response_model_exclude_none=True)
def package(input_data: IdealInput) -> PackageOutput:
    """Rees package of a monomial or diagram ideal."""
    return _run(lambda: PackageOutput.from_package(_package(input_data.to_ideal())))


@app.post("/ratpow", response_model=RationalPowerOutput, response_model_exclude_none=True)
def ratpow(request: RationalPowerRequest) -> RationalPowerOutput:
    """Membership in, or generators of, the closure of a rational power."""

    def compute() -> RationalPowerOutput:
        ideal = request.ideal.to_ideal()
        w = parse_rational(request.w)
        if w < 0:
            raise ValidationError(f"Exponent w must be nonnegative: {w}")
        pkg = _package(ideal)
        e = denominator_bound(pkg)
        output = RationalPowerOutput(
            w=format_rational(w),
            stabilized_w=format_rational(stabilized_exponent(w, e)),
            denominator_bound=e,
        )
        if request.point is not None:
            output.point = request.point
            if isinstance(ideal, MonomialIdeal):
                output.member = rational_power_membership(ideal, w, request.point)
            else:
                output.member = rational_power_shape_membership(ideal, w, Diagram(tuple(request.point)))
        elif isinstance(ideal, MonomialIdeal):
            output.generators = [list(g) for g in rational_power_generators(ideal, w)]
        else:
            output.attach_symbolic(symbolic_intersection_exponents(ideal, w))
        return output

    return _run(compute)


@app.post("/join", response_model=JoinOutput, response_model_exclude_none=True)
def join(input_data: PairInput) -> JoinOutput:
    """Joined package of IT + JT with its paired Rees valuations."""
    return _run(lambda: JoinOutput.from_joined(join_packages(
        _package(input_data.left.to_ideal()), _package(input_data.right.to_ideal())
    )))


@app.post("/sum-check", response_model=SummationOutput, response_model_exclude_none=True)
def sum_check(request: PairRequest) -> SummationOutput:
    """Both sides of the summation formula and their verdict."""

    def compute() -> SummationOutput:
        left, right = request.left.to_ideal(), request.right.to_ideal()
        if isinstance(left, MonomialIdeal) and isinstance(right, MonomialIdeal):
            report = check_summation_monomial(left, right, request.w)
        else:
            report = check_summation_values(join_packages(_package(left), _package(right)), request.w)
        return SummationOutput.from_report(report)

    return _run(compute)


@app.post("/counterexample", response_model=CounterexampleOutput, response_model_exclude_none=True)
def counterexample(n: int = Query(1, ge=1, le=50)) -> CounterexampleOutput:
    """The same-ring witness x^(4n+2) y^(4n+2)."""
    return _run(lambda: CounterexampleOutput.from_report(same_ring_counterexample(n)))


@app.post("/sandwich", response_model=SandwichOutput, response_model_exclude_none=True)
def sandwich(request: PairRequest) -> SandwichOutput:
    """Both inclusions of the asymptotic sandwich, optionally with the empirical w0."""

    def compute() -> SandwichOutput:
        left, right = request.left.to_ideal(), request.right.to_ideal()
        if not (isinstance(left, MonomialIdeal) and isinstance(right, MonomialIdeal)):
            raise ValidationError("The sandwich check needs monomial ideals on both sides")
        w = parse_rational(request.w)
        tau = parse_rational(request.tau) if request.tau is not None else w / 2
        report = asymptotic_sandwich_check(left, right, w, tau, search=request.search)
        output = SandwichOutput.from_report(report)
        output.weaker_form_holds = weaker_form_check(left, right, w).holds
        return output

    return _run(compute)


@app.post("/resurgence", response_model=ResurgenceOutput, response_model_exclude_none=True)
def resurgence(m: int = Query(..., ge=1), t: int = Query(..., ge=1)) -> ResurgenceOutput:
    """Asymptotic resurgence of I_t for a generic m x n matrix."""

    def compute() -> ResurgenceOutput:
        value = det_asymptotic_resurgence(m, t)
        ideal = DiagramIdeal(MatrixFamily.generic(m, m), (Diagram((t,)),))
        return ResurgenceOutput(
            m=m,
            t=t,
            resurgence=format_rational(value),
            rees_valuations=rees_package_diagrams(ideal).rees_valuations(),
        )

    return _run(compute)


@app.post("/star", response_model=StarOutput, response_model_exclude_none=True)
def star_product(input_data: StarInput) -> StarOutput:
    """Star product of two non-coordinate hyperplanes."""

    def compute() -> StarOutput:
        left, right = input_data.left.to_hyperplane(), input_data.right.to_hyperplane()
        left_labels, right_labels = star_labels(left.dim, right.dim)
        return StarOutput(
            left=HyperplaneOutput.from_hyperplane(left, left_labels),
            right=HyperplaneOutput.from_hyperplane(right, right_labels),
            product=HyperplaneOutput.from_hyperplane(star(left, right), left_labels + right_labels),
        )

    return _run(compute)


@app.get("/")
async def root():
    """Root endpoint with API info."""
    return {
        "name": "reeskit API",
        "version": __version__,
        "endpoints": {
            "POST /package": "Rees package of an ideal",
            "POST /ratpow": "Rational power membership or generators",
            "POST /join": "Joined package of a pair",
            "POST /sum-check": "Summation formula check",
            "POST /counterexample": "Same-ring witness",
            "POST /sandwich": "Asymptotic sandwich check",
            "POST /resurgence": "Asymptotic resurgence of I_t",
            "POST /star": "Star product of hyperplanes",
            "GET /health": "Health check",
        },
        "documentation": "/docs",
    }
