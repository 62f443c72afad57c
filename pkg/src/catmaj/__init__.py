"""Catalytic majorization: decide x trumped by y, and build catalysts that prove it."""

from .decider import RWindow, Verdict, VerdictKind, decide, sample_curve, window_bounds
from .errors import (
    BothEmptyAfterReduction,
    BudgetExceeded,
    CatmajError,
    DimensionMismatch,
    EmptyVector,
    EndpointViolation,
    IndeterminateAtZero,
    InvalidInput,
    InvalidParams,
    NegativeComponent,
    NotApplicable,
)
from .forge import (
    CatalystCertificate,
    SearchBudget,
    alpha,
    beta,
    brute_force_search,
    certify,
    desingularize,
)
from .majorization import MajorizationReport, catalyzed_majorizes, majorizes, majorizes_orderfree
from .renyi import F_appendix, extras, f_r, g_curve
from .vectors import ProbVec, canonicalize, parse_vector, reduce_pair, tensor

__version__ = "0.1.0"

__all__ = [
    "BothEmptyAfterReduction",
    "BudgetExceeded",
    "CatalystCertificate",
    "CatmajError",
    "DimensionMismatch",
    "EmptyVector",
    "EndpointViolation",
    "F_appendix",
    "IndeterminateAtZero",
    "InvalidInput",
    "InvalidParams",
    "MajorizationReport",
    "NegativeComponent",
    "NotApplicable",
    "ProbVec",
    "RWindow",
    "SearchBudget",
    "Verdict",
    "VerdictKind",
    "alpha",
    "beta",
    "brute_force_search",
    "canonicalize",
    "catalyzed_majorizes",
    "certify",
    "decide",
    "desingularize",
    "extras",
    "f_r",
    "g_curve",
    "majorizes",
    "majorizes_orderfree",
    "parse_vector",
    "reduce_pair",
    "sample_curve",
    "tensor",
    "window_bounds",
]
