"""Sparse hypergraph construction and verification toolkit.

Randomized constructions of r-uniform hypergraphs in which every e distinct
edges span many vertices, exact verifiers for span-freeness, Berge girth,
and distinct-representative conditions, and three applications built on the
same machinery: parent-identifying set systems, uniform combinatorial batch
codes, and optimal locally recoverable codes.
"""

from .batch import check_cbc, check_sdr_all, construct_cbc, containment_margins, find_sdr
from .builder import (
    AlterationTrace,
    AuxGraph,
    ConstructionParams,
    ConstructionResult,
    alter,
    build_aux,
    construct,
    independent_set,
    plan,
    sample,
)
from .errors import (
    BadIndex,
    BadRange,
    BadShape,
    BudgetExceeded,
    CertificationFailed,
    Degenerate,
    DegenerateP,
    DuplicateEdge,
    DuplicateElement,
    GcdCondition,
    InsufficientYield,
    NonUniform,
    NotACode,
    NotLinear,
    OutOfRange,
    ParseError,
    RetriesExhausted,
    SparseHgError,
    TargetOrdering,
    TooLarge,
    UniformityMismatch,
)
from .freeness import (
    BergeCycle,
    ConstraintProfile,
    FreenessConstraint,
    Verdict,
    berge_girth,
    berge_profile,
    check_free,
    check_profile,
    deficit_profile,
    extract_berge_cycle,
    ladder_profile,
    span_bounded_systems,
    span_deficits,
    validate_berge_cycle,
)
from .hypergraph import Hypergraph, canonicalize, parse_hg, serialize_hg, union_span
from .ipps import check_ipps, construct_ipps, link_e, minimal_covers
from .lrc import (
    EquivalenceReport,
    FqMatrix,
    LrcSpec,
    PrimeField,
    block_hypergraph,
    check_equivalence,
    check_optimal,
    code_dimension,
    construct_lrc,
    fq_matrix,
    freeness_profile,
    min_distance,
    parity_check,
    parse_fqm,
    serialize_fqm,
    singleton_bound,
    vandermonde,
)

__version__ = "0.1.0"

__all__ = [
    "AlterationTrace",
    "AuxGraph",
    "BadIndex",
    "BadRange",
    "BadShape",
    "BergeCycle",
    "BudgetExceeded",
    "CertificationFailed",
    "ConstraintProfile",
    "ConstructionParams",
    "ConstructionResult",
    "Degenerate",
    "DegenerateP",
    "DuplicateEdge",
    "DuplicateElement",
    "EquivalenceReport",
    "FqMatrix",
    "FreenessConstraint",
    "GcdCondition",
    "Hypergraph",
    "InsufficientYield",
    "LrcSpec",
    "NonUniform",
    "NotACode",
    "NotLinear",
    "OutOfRange",
    "ParseError",
    "PrimeField",
    "RetriesExhausted",
    "SparseHgError",
    "TargetOrdering",
    "TooLarge",
    "UniformityMismatch",
    "Verdict",
    "alter",
    "berge_girth",
    "berge_profile",
    "block_hypergraph",
    "build_aux",
    "canonicalize",
    "check_cbc",
    "check_equivalence",
    "check_free",
    "check_ipps",
    "check_optimal",
    "check_profile",
    "check_sdr_all",
    "code_dimension",
    "construct",
    "construct_cbc",
    "construct_ipps",
    "construct_lrc",
    "containment_margins",
    "deficit_profile",
    "extract_berge_cycle",
    "find_sdr",
    "fq_matrix",
    "freeness_profile",
    "independent_set",
    "ladder_profile",
    "link_e",
    "min_distance",
    "minimal_covers",
    "parity_check",
    "parse_fqm",
    "parse_hg",
    "plan",
    "sample",
    "serialize_fqm",
    "serialize_hg",
    "singleton_bound",
    "span_bounded_systems",
    "span_deficits",
    "union_span",
    "validate_berge_cycle",
    "vandermonde",
]
