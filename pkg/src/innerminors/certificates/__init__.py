"""Certificate machinery: generators, orders, combinatorial checks,
coprime-initial certificates, and the certification pipeline."""

from .chi import ChiWitness, chi_check, min_pair, pair_set, sn_partition, swap_at
from .ideals import (
    InnerBinomial,
    binomial_of_interval,
    discussion_order,
    ideal_of_cells,
    inner_binomials,
    inner_binomials_of_cells,
    order6,
    order_for,
    polyomino_ideal,
)
from .knutson import (
    DetFactorReport,
    ExtractionReport,
    InitialProductReport,
    KnutsonPolynomial,
    KnutsonReport,
    check_initial_product,
    check_lemma_detfk,
    extraction_pipeline,
    knutson_certify,
    knutson_polynomial,
)
from .konig import (
    STRATEGIES,
    KonigCertificate,
    KonigVerification,
    konig_search,
    monomial_weight,
    solve_strict,
    verify_konig,
)

__all__ = [
    "ChiWitness",
    "DetFactorReport",
    "ExtractionReport",
    "InitialProductReport",
    "InnerBinomial",
    "KnutsonPolynomial",
    "KnutsonReport",
    "KonigCertificate",
    "KonigVerification",
    "STRATEGIES",
    "binomial_of_interval",
    "check_initial_product",
    "check_lemma_detfk",
    "chi_check",
    "discussion_order",
    "extraction_pipeline",
    "ideal_of_cells",
    "inner_binomials",
    "inner_binomials_of_cells",
    "knutson_certify",
    "knutson_polynomial",
    "konig_search",
    "min_pair",
    "monomial_weight",
    "order6",
    "order_for",
    "pair_set",
    "polyomino_ideal",
    "sn_partition",
    "solve_strict",
    "swap_at",
    "verify_konig",
]
