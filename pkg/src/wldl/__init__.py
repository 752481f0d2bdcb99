"""Weighted linear dynamic logic over semirings.

Exact evaluation on finite words and lassos, translations between weighted
LDL formulas and generalized weighted rational expressions, compilation to
weighted (Büchi) automata and equivalence over the rationals.
"""

from .errors import (
    ImproperIteration,
    NotAField,
    NotIdempotent,
    SemanticError,
    StateBudgetExceeded,
    UnsupportedOmegaSemiring,
    UsageError,
    WldlError,
    WldlSyntaxError,
)
from .parser import parse
from .printer import to_text
from .semantics import (
    check_proper,
    eval_gre,
    eval_wldl,
    eval_wltl,
    improper_subterm,
    sat_ldl,
    sat_ltl,
)
from .semiring import (
    BOOLEAN,
    INT,
    MAXPLUS,
    MINPLUS,
    NAT,
    RAT,
    SEMIRINGS,
    VITERBI,
    get_semiring,
)
from .translate import (
    gre_to_wldl,
    greo_to_wldlo,
    ldl_to_nfa,
    wldl_equiv,
    wldl_to_gre,
    wldl_to_wfa,
    wldlo_to_greo,
)

__all__ = [
    "BOOLEAN",
    "INT",
    "ImproperIteration",
    "MAXPLUS",
    "MINPLUS",
    "NAT",
    "NotAField",
    "NotIdempotent",
    "RAT",
    "SEMIRINGS",
    "SemanticError",
    "StateBudgetExceeded",
    "UnsupportedOmegaSemiring",
    "UsageError",
    "VITERBI",
    "WldlError",
    "WldlSyntaxError",
    "check_proper",
    "eval_gre",
    "eval_wldl",
    "eval_wltl",
    "get_semiring",
    "gre_to_wldl",
    "greo_to_wldlo",
    "improper_subterm",
    "ldl_to_nfa",
    "parse",
    "sat_ldl",
    "sat_ltl",
    "to_text",
    "wldl_equiv",
    "wldl_to_gre",
    "wldl_to_wfa",
    "wldlo_to_greo",
]
