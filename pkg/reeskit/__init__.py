"""
reeskit: Rees packages in exact arithmetic.
Rational powers of monomial and determinantal ideals, joined packages of
tensor products and the summation formula.
"""

__version__ = "1.0.0"

from .diagrams import Diagram, DiagramIdeal, MatrixFamily, rees_package_diagrams
from .exceptions import (
    CalculationError,
    ConeError,
    EnumerationCapError,
    OracleMismatchError,
    ReesKitError,
    ValidationError,
)
from .geometry import Hyperplane, PositivePolyhedron, facet_enumeration
from .semigroup import AffineSemigroup, MonomialIdeal, ReesPackage, rees_package_monomial
from .summation import check_summation_monomial, join_packages

__all__ = [
    "AffineSemigroup",
    "MonomialIdeal",
    "ReesPackage",
    "rees_package_monomial",
    "Diagram",
    "DiagramIdeal",
    "MatrixFamily",
    "rees_package_diagrams",
    "Hyperplane",
    "PositivePolyhedron",
    "facet_enumeration",
    "join_packages",
    "check_summation_monomial",
    "ReesKitError",
    "ValidationError",
    "CalculationError",
    "ConeError",
    "EnumerationCapError",
    "OracleMismatchError",
]
