"""Finite automata: unweighted NFA/DFA, weighted automata, state elimination
and equivalence over the rationals."""

from .elimination import dfa_to_zero_one_re, nfa_to_re
from .equivalence import EquivalenceResult, wfa_equiv_field
from .io import dump_wfa, load_wfa, wfa_from_json, wfa_to_json
from .nfa import (
    DEFAULT_MAX_STATES,
    Dfa,
    Nfa,
    dfa_complement,
    min_dfa,
    nfa_determinize,
    nfa_product,
    nfa_union,
)
from .wfa import (
    Wfa,
    gre_to_wfa,
    wfa_cauchy,
    wfa_eval,
    wfa_eval_all,
    wfa_hadamard,
    wfa_plus,
    wfa_sum,
)

__all__ = [
    "DEFAULT_MAX_STATES",
    "Dfa",
    "EquivalenceResult",
    "Nfa",
    "Wfa",
    "dfa_complement",
    "dfa_to_zero_one_re",
    "dump_wfa",
    "gre_to_wfa",
    "load_wfa",
    "min_dfa",
    "nfa_determinize",
    "nfa_product",
    "nfa_to_re",
    "nfa_union",
    "wfa_cauchy",
    "wfa_equiv_field",
    "wfa_eval",
    "wfa_eval_all",
    "wfa_from_json",
    "wfa_hadamard",
    "wfa_plus",
    "wfa_sum",
    "wfa_to_json",
]
