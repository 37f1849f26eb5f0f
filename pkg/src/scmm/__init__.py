"""Homological invariants and SCM classification of square-free monomial ideals."""

from .betti import (
    BettiTable,
    betti_table,
    has_linear_resolution,
    is_componentwise_linear,
    linear_quotients_order,
    projdim_quotient,
    regularity,
)
from .classify import ClassificationResult, classify_degree2, classify_scm, decompose_L3, strip_gcd
from .duality import InvariantReport, alexander_dual, associated_primes, invariant_report, is_cm, is_scm
from .homology import SimplicialComplex, dual_complex, reduced_homology
from .matroid import enumerate_matroidal, is_matroidal, is_polymatroidal
from .monomial import (
    MonomialIdeal,
    PrimeRef,
    colon,
    ideal_intersection,
    ideal_sum,
    minimalize,
    parse_ideal,
    render_ideal,
    squarefree_veronese,
)

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized duals, Betti tables, homology ranks and reports (for cold timings)."""
    from . import betti, duality, homology

    for fn in (betti._betti_cached, duality._dual_cached, duality._report_cached, homology._homology_cached):
        fn.cache_clear()


__all__ = [
    "clear_caches",
    "BettiTable",
    "betti_table",
    "has_linear_resolution",
    "is_componentwise_linear",
    "linear_quotients_order",
    "projdim_quotient",
    "regularity",
    "ClassificationResult",
    "classify_degree2",
    "classify_scm",
    "decompose_L3",
    "strip_gcd",
    "InvariantReport",
    "alexander_dual",
    "associated_primes",
    "invariant_report",
    "is_cm",
    "is_scm",
    "SimplicialComplex",
    "dual_complex",
    "reduced_homology",
    "enumerate_matroidal",
    "is_matroidal",
    "is_polymatroidal",
    "MonomialIdeal",
    "PrimeRef",
    "colon",
    "ideal_intersection",
    "ideal_sum",
    "minimalize",
    "parse_ideal",
    "render_ideal",
    "squarefree_veronese",
]
