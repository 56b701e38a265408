"""Characteristic polynomials of q-linearized maps over finite fields.

``fast_charpoly(L, l)`` computes the characteristic polynomial of
``alpha -> L(alpha)`` on F_{q^(m*l)} from a linear recurrence in ``l``;
``charpoly_direct`` is the dense O(n^3) reference.
"""

from .errors import (
    DegreeMismatch,
    DegreeTooLarge,
    DivisionByZero,
    DuplicateAbscissa,
    Falsification,
    FieldMismatch,
    FieldTooSmall,
    InsufficientSeeds,
    InsufficientTerms,
    InvalidInstance,
    LinCharpolyError,
    NoRelation,
    NotInTower,
    NotIrreducible,
    NotMonic,
    NotPrime,
    ParseError,
    TooFewPoints,
    ZeroTower,
)
from .fastalg import (
    EvalLayout,
    PipelinePlan,
    bootstrap,
    eps_ell,
    eval_layout,
    fast_charpoly,
    lrs_of_eps_values,
    make_plan,
    norm_coefficient,
)
from .ff import (
    FieldCtx,
    FieldElement,
    embed,
    enumerate_elements,
    extend_field,
    find_irreducible,
    frobenius,
    make_field,
    make_prime_field,
    norm,
    parse_element,
)
from .linmap import DenseMatrix, LinearizedPoly, apply, charpoly_dense, charpoly_direct, matrix_of
from .polyring import (
    Poly,
    is_irreducible,
    poly_add,
    poly_divrem,
    poly_eval,
    poly_interpolate,
    poly_mul,
    poly_sub,
)
from .recurrence import (
    CompanionState,
    LinearRecurrence,
    companion,
    fit_recurrence,
    term_at_point,
    verify_recurrence,
)

__version__ = "0.1.0"

__all__ = [
    "CompanionState",
    "DegreeMismatch",
    "DegreeTooLarge",
    "DenseMatrix",
    "DivisionByZero",
    "DuplicateAbscissa",
    "EvalLayout",
    "Falsification",
    "FieldCtx",
    "FieldElement",
    "FieldMismatch",
    "FieldTooSmall",
    "InsufficientSeeds",
    "InsufficientTerms",
    "InvalidInstance",
    "LinCharpolyError",
    "LinearRecurrence",
    "LinearizedPoly",
    "NoRelation",
    "NotInTower",
    "NotIrreducible",
    "NotMonic",
    "NotPrime",
    "ParseError",
    "PipelinePlan",
    "Poly",
    "TooFewPoints",
    "ZeroTower",
    "apply",
    "bootstrap",
    "charpoly_dense",
    "charpoly_direct",
    "companion",
    "embed",
    "enumerate_elements",
    "eps_ell",
    "eval_layout",
    "extend_field",
    "fast_charpoly",
    "find_irreducible",
    "fit_recurrence",
    "frobenius",
    "is_irreducible",
    "lrs_of_eps_values",
    "make_field",
    "make_plan",
    "make_prime_field",
    "matrix_of",
    "norm",
    "norm_coefficient",
    "parse_element",
    "poly_add",
    "poly_divrem",
    "poly_eval",
    "poly_interpolate",
    "poly_mul",
    "poly_sub",
    "term_at_point",
    "verify_recurrence",
]
