"""Exact arithmetic laboratory for tridiagonal pairs of q-mixed and
q-geometric type, the criterion deciding when a q-mixed pair carries an
irreducible module for the q-tetrahedron algebra, and the word normal form
for the cubic q-Serre algebra."""

from .boxtimes import (
    GENERATOR_NAMES,
    BoxtimesAction,
    construct_action,
    identify_generators,
    verify_boxtimes,
)
from .criterion import (
    CriterionResult,
    DecisionRecord,
    build_P,
    decide,
    evaluate_criterion,
    pv_formula_check,
)
from .errors import (
    DomainError,
    ExactError,
    FieldMismatch,
    GenerationError,
    ParseError,
    StructuralError,
)
from .generate import (
    GenSpec,
    derive_qmixed,
    diameter_cap,
    generate_pair,
    generate_qgeometric,
)
from .linalg import (
    Decomposition,
    MatrixE,
    Subspace,
    algebra_closure_dim,
    eigenspace,
    inverse,
    kernel,
    minimal_polynomial,
)
from .operators import (
    OperatorSuite,
    RelationReport,
    build_suite,
    relation_report,
)
from .pairio import load_pair, pair_from_dict, pair_to_dict, save_pair
from .pipeline import (
    EXIT_ERROR,
    EXIT_INVALID_PAIR,
    EXIT_NO_MODULE,
    EXIT_OK,
    run_pipeline,
)
from .scalars import (
    FieldSpec,
    QPoly,
    Scalar,
    parse_scalar,
    q_binomial,
    q_factorial,
    q_int,
)
from .splitting import (
    SplitData,
    bijection_check,
    compute_split,
    ei_on_w_series,
    eigen_projectors,
    zeta_sequence,
)
from .tdpair import (
    AxiomReport,
    PairClass,
    TDProfile,
    TriPair,
    classify,
    derive_profile,
    standard_orderings,
    theta_geometric,
    theta_star_geometric,
    theta_star_mixed,
    verify_axioms,
)
from .words import (
    AlgebraElement,
    AqAlpha,
    all_words,
    enumerate_irreducible,
    format_element,
    graded_split,
    is_reducible,
    parse_element,
    reduce_element,
    rho_verify,
    signature_of,
    xy_length,
)

__all__ = [
    "DomainError",
    "ExactError",
    "FieldMismatch",
    "GenerationError",
    "ParseError",
    "StructuralError",
    "FieldSpec",
    "QPoly",
    "Scalar",
    "parse_scalar",
    "q_binomial",
    "q_factorial",
    "q_int",
    "Decomposition",
    "MatrixE",
    "Subspace",
    "algebra_closure_dim",
    "eigenspace",
    "inverse",
    "kernel",
    "minimal_polynomial",
    "AxiomReport",
    "PairClass",
    "TDProfile",
    "TriPair",
    "classify",
    "derive_profile",
    "standard_orderings",
    "theta_geometric",
    "theta_star_geometric",
    "theta_star_mixed",
    "verify_axioms",
    "SplitData",
    "bijection_check",
    "compute_split",
    "ei_on_w_series",
    "eigen_projectors",
    "zeta_sequence",
    "OperatorSuite",
    "RelationReport",
    "build_suite",
    "relation_report",
    "CriterionResult",
    "DecisionRecord",
    "build_P",
    "decide",
    "evaluate_criterion",
    "pv_formula_check",
    "GENERATOR_NAMES",
    "BoxtimesAction",
    "construct_action",
    "identify_generators",
    "verify_boxtimes",
    "AlgebraElement",
    "AqAlpha",
    "all_words",
    "enumerate_irreducible",
    "format_element",
    "graded_split",
    "is_reducible",
    "parse_element",
    "reduce_element",
    "rho_verify",
    "signature_of",
    "xy_length",
    "GenSpec",
    "derive_qmixed",
    "diameter_cap",
    "generate_pair",
    "generate_qgeometric",
    "load_pair",
    "pair_from_dict",
    "pair_to_dict",
    "save_pair",
    "EXIT_ERROR",
    "EXIT_INVALID_PAIR",
    "EXIT_NO_MODULE",
    "EXIT_OK",
    "run_pipeline",
]
