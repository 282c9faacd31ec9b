"""Kodaira types of rational elliptic curves and isogeny-degree constraints."""

__version__ = "0.1.0"

from .curve_core import (  # noqa: E402
    INFINITY,
    CoordinateChange,
    DomainError,
    SingularModelError,
    WeierstrassModel,
    apply_change,
    find_isomorphism,
    padic_valuation,
    quadratic_twist,
    squarefree_part,
)
from .isogeny_catalog import CATALOG, catalog_j_for, lookup_ell_by_j  # noqa: E402
from .local_reduction import (  # noqa: E402
    KodairaType,
    LocalReductionData,
    bad_primes,
    kodaira_from_valuations,
    minimal_model_at,
    reduction_class,
    tate_local_data,
)
from .theorems import ComplianceReport, TheoremVerdict, verdict  # noqa: E402

__all__ = [
    "CATALOG",
    "INFINITY",
    "ComplianceReport",
    "CoordinateChange",
    "DomainError",
    "KodairaType",
    "LocalReductionData",
    "SingularModelError",
    "TheoremVerdict",
    "WeierstrassModel",
    "apply_change",
    "bad_primes",
    "catalog_j_for",
    "find_isomorphism",
    "kodaira_from_valuations",
    "lookup_ell_by_j",
    "minimal_model_at",
    "padic_valuation",
    "quadratic_twist",
    "reduction_class",
    "squarefree_part",
    "tate_local_data",
    "verdict",
]
