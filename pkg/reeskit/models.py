"""
Pydantic models for strict input/output contracts.

Rationals travel as strings "p/q" (integral values as "p"); integer vectors
as lists of ints.
"""

from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .constants import CONJECTURE_LABEL, FAMILY_KINDS, INCONSISTENT_LABEL
from .diagrams import Diagram, DiagramIdeal, MatrixFamily, SymbolicExponents
from .geometry import Hyperplane, PositivePolyhedron, format_rational
from .semigroup import (
    AffineSemigroup,
    MonomialIdeal,
    ReesPackage,
    cone_facet_valuations,
    denominator_bound,
    lattice_normals,
)
from .summation import (
    CounterexampleReport,
    JoinedPackage,
    SandwichReport,
    SummationReport,
)


# ---------------------------------------------------------------------------
# Inputs
# ---------------------------------------------------------------------------

class SemigroupInput(BaseModel):
    """Affine semigroup given by its generators."""

    rank: int = Field(..., ge=1, description="Rank s of the ambient lattice Z^s")
    generators: List[List[int]] = Field(
        ...,
        min_length=1,
        description="Nonzero generators of S, each of length rank"
    )


class IdealExponentsInput(BaseModel):
    exponents: List[List[int]] = Field(
        ...,
        min_length=1,
        description="Exponent vectors of the generating monomials"
    )


class MonomialInput(BaseModel):
    """Monomial ideal of k[S]; "orthant" with a rank stands for a polynomial ring."""

    semigroup: Union[Literal["orthant"], SemigroupInput]
    rank: Optional[int] = Field(
        default=None,
        ge=1,
        description="Number of variables when semigroup is 'orthant'"
    )
    ideal: IdealExponentsInput

    @model_validator(mode="after")
    def validate_rank(self) -> "MonomialInput":
        """The orthant shortcut needs a rank."""
        if self.semigroup == "orthant" and self.rank is None:
            raise ValueError("semigroup 'orthant' requires 'rank'")
        return self

    def to_ideal(self) -> MonomialIdeal:
        if self.semigroup == "orthant":
            semigroup = AffineSemigroup.orthant(self.rank)
        else:
            semigroup = AffineSemigroup(
                self.semigroup.rank, tuple(tuple(g) for g in self.semigroup.generators)
            )
        return MonomialIdeal(semigroup, tuple(tuple(a) for a in self.ideal.exponents))


class FamilyInput(BaseModel):
    kind: Literal["generic", "symmetric", "pfaffian", "hankel"] = Field(
        ..., description=f"Matrix family, one of {FAMILY_KINDS}"
    )
    n: int = Field(..., ge=1)
    m: Optional[int] = Field(default=None, ge=1, description="Rows of a generic matrix")

    def to_family(self) -> MatrixFamily:
        return MatrixFamily(self.kind, self.n, self.m)


class DiagramInput(BaseModel):
    """Sum of products of determinantal or Pfaffian ideals indexed by diagrams."""

    model_config = ConfigDict(populate_by_name=True)

    family: FamilyInput
    lambda_: List[List[int]] = Field(..., alias="lambda", min_length=1)

    @field_validator("lambda_")
    @classmethod
    def validate_parts(cls, v: List[List[int]]) -> List[List[int]]:
        """Diagrams are weakly decreasing tuples of positive integers."""
        for parts in v:
            if any(s < 1 for s in parts) or any(a < b for a, b in zip(parts, parts[1:])):
                raise ValueError(f"Invalid diagram {parts}: parts must be positive and weakly decreasing")
        return v

    def to_ideal(self) -> DiagramIdeal:
        return DiagramIdeal(self.family.to_family(), tuple(Diagram(tuple(d)) for d in self.lambda_))


IdealInput = Union[MonomialInput, DiagramInput]


class PairInput(BaseModel):
    """Two ideals living in separate tensor factors."""

    left: IdealInput
    right: IdealInput


class HyperplaneInput(BaseModel):
    normal: List[int] = Field(..., min_length=1)
    offset: int = Field(..., ge=1)

    def to_hyperplane(self) -> Hyperplane:
        return Hyperplane(tuple(self.normal), self.offset)


class StarInput(BaseModel):
    left: HyperplaneInput
    right: HyperplaneInput


# ---------------------------------------------------------------------------
# Outputs
# ---------------------------------------------------------------------------

class OracleCheck(BaseModel):
    """Outcome of a brute-force cross-check."""

    agrees: bool
    detail: str


class HyperplaneOutput(BaseModel):
    normal: List[int]
    offset: int
    equation: str

    @classmethod
    def from_hyperplane(cls, hyperplane: Hyperplane, labels=None) -> "HyperplaneOutput":
        return cls(
            normal=list(hyperplane.normal),
            offset=hyperplane.offset,
            equation=hyperplane.equation(labels),
        )


class PolyhedronOutput(BaseModel):
    dim: int
    generators: List[List[str]]

    @classmethod
    def from_polyhedron(cls, polyhedron: PositivePolyhedron) -> "PolyhedronOutput":
        return cls(
            dim=polyhedron.dim,
            generators=[[format_rational(x) for x in g] for g in polyhedron.generators],
        )


class PackageOutput(BaseModel):
    """Rees package: value map, polyhedron, Rees valuations and denominator bound."""

    kind: Literal["monomial", "diagram"]
    value_map: List[str]
    polyhedron: PolyhedronOutput
    facets: List[HyperplaneOutput]
    rees_valuations: List[str]
    denominator_bound: int
    cone_valuations: Optional[List[List[int]]] = None
    lattice_normals: Optional[List[List[int]]] = None
    hankel_equality: Optional[bool] = None
    oracle: Optional[OracleCheck] = None

    @classmethod
    def from_package(cls, package: ReesPackage) -> "PackageOutput":
        source = package.source
        output = cls(
            kind="monomial" if isinstance(source, MonomialIdeal) else "diagram",
            value_map=list(package.value_map),
            polyhedron=PolyhedronOutput.from_polyhedron(package.polyhedron),
            facets=[HyperplaneOutput.from_hyperplane(f, package.labels) for f in package.facets],
            rees_valuations=package.rees_valuations(),
            denominator_bound=denominator_bound(package),
        )
        if isinstance(source, MonomialIdeal):
            output.cone_valuations = [
                list(v.normal) for v in cone_facet_valuations(source.semigroup)
            ]
            output.lattice_normals = [list(n) for n in lattice_normals(package)]
        return output


class RationalPowerOutput(BaseModel):
    """Membership or generators of the closure of a rational power."""

    w: str
    stabilized_w: str
    denominator_bound: int
    point: Optional[List[int]] = None
    member: Optional[bool] = None
    generators: Optional[List[List[int]]] = None
    symbolic_exponents: Optional[List[List[int]]] = None
    symbolic_terms: Optional[List[str]] = None
    oracle: Optional[OracleCheck] = None

    def attach_symbolic(self, symbolic: SymbolicExponents) -> None:
        self.symbolic_exponents = [list(a) for a in symbolic.exponents]
        self.symbolic_terms = symbolic.describe()


class PairedFacetOutput(HyperplaneOutput):
    provenance: List[int]


class JoinOutput(BaseModel):
    """Joined package of IT + JT."""

    left: PackageOutput
    right: PackageOutput
    labels: List[str]
    omega: PolyhedronOutput
    paired_facets: List[PairedFacetOutput]
    valuations: List[str]
    count: int
    counting_law: bool
    oracle: Optional[OracleCheck] = None

    @classmethod
    def from_joined(cls, joined: JoinedPackage) -> "JoinOutput":
        paired = [
            PairedFacetOutput(
                normal=list(p.hyperplane.normal),
                offset=p.hyperplane.offset,
                equation=p.hyperplane.equation(joined.labels),
                provenance=list(p.provenance),
            )
            for p in joined.paired_facets
        ]
        return cls(
            left=PackageOutput.from_package(joined.left),
            right=PackageOutput.from_package(joined.right),
            labels=list(joined.labels),
            omega=PolyhedronOutput.from_polyhedron(joined.omega),
            paired_facets=paired,
            valuations=joined.valuations(),
            count=len(paired),
            counting_law=len(paired) == len(joined.left.facets) * len(joined.right.facets),
        )


class SummationOutput(BaseModel):
    verdict: str
    label: str
    w: str
    alpha_terms: List[str]
    lhs_generators: List[List[int]]
    rhs_generators: List[List[int]]
    witness: Optional[List[int]] = None
    oracle: Optional[OracleCheck] = None

    @classmethod
    def from_report(cls, report: SummationReport) -> "SummationOutput":
        return cls(
            verdict=report.verdict,
            label=report.label,
            w=format_rational(report.w),
            alpha_terms=[format_rational(a) for a in report.alpha_terms],
            lhs_generators=[list(g) for g in report.lhs_generators],
            rhs_generators=[list(g) for g in report.rhs_generators],
            witness=list(report.witness) if report.witness is not None else None,
        )


class CounterexampleOutput(BaseModel):
    n: int
    w: int
    point: List[int]
    in_closure: bool
    in_sum: bool
    oracle: Optional[OracleCheck] = None

    @classmethod
    def from_report(cls, report: CounterexampleReport) -> "CounterexampleOutput":
        return cls(
            n=report.n,
            w=report.w,
            point=list(report.point),
            in_closure=report.in_closure,
            in_sum=report.in_sum,
        )


class SandwichOutput(BaseModel):
    w: str
    tau: str
    left_holds: bool
    right_holds: bool
    label: str
    left_witness: Optional[List[int]] = None
    right_witness: Optional[List[int]] = None
    w0: Optional[str] = None
    weaker_form_holds: Optional[bool] = None
    oracle: Optional[OracleCheck] = None

    @classmethod
    def from_report(cls, report: SandwichReport) -> "SandwichOutput":
        return cls(
            w=format_rational(report.w),
            tau=format_rational(report.tau),
            left_holds=report.left_holds,
            right_holds=report.right_holds,
            label=report.label,
            left_witness=list(report.left_witness) if report.left_witness else None,
            right_witness=list(report.right_witness) if report.right_witness else None,
            w0=format_rational(report.w0) if report.w0 is not None else None,
        )


class BatchOutput(BaseModel):
    """Summary of a seeded run over random monomial pairs."""

    seed: int
    count: int
    passed: int
    failed: int
    label: str
    failures: List[Dict[str, Any]] = Field(default_factory=list)
    oracle: Optional[OracleCheck] = None

    @classmethod
    def from_counts(cls, seed: int, count: int, failures: List[Dict[str, Any]]) -> "BatchOutput":
        return cls(
            seed=seed,
            count=count,
            passed=count - len(failures),
            failed=len(failures),
            label=INCONSISTENT_LABEL if failures else CONJECTURE_LABEL,
            failures=failures,
        )


class ResurgenceOutput(BaseModel):
    m: int
    t: int
    resurgence: str
    rees_valuations: List[str]
    oracle: Optional[OracleCheck] = None


class StarOutput(BaseModel):
    left: HyperplaneOutput
    right: HyperplaneOutput
    product: HyperplaneOutput
    oracle: Optional[OracleCheck] = None
