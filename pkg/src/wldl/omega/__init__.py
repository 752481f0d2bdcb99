"""Infinite words: lassos, Büchi automata and weighted omega-evaluation."""

from .classical import LassoChecker
from .buchi import (
    LdloCompiler,
    Nba,
    accepted_nodes,
    ldlo_to_nba,
    nba_accepts,
    nba_complement,
    nba_intersect,
    nba_omega,
    nba_prefix,
    nba_union,
    sat_ldlo,
)
from .lasso import Lasso, lassos, primitive_root
from .oracle import oracle_eval_greo, oracle_eval_wldlo, oracle_sat_ldlo
from .weighted import (
    OmegaEvaluator,
    Wba,
    eval_greo,
    eval_wldlo,
    wba_eval,
    wldlo_to_wba,
)

__all__ = [
    "Lasso",
    "LassoChecker",
    "LdloCompiler",
    "Nba",
    "OmegaEvaluator",
    "Wba",
    "accepted_nodes",
    "eval_greo",
    "eval_wldlo",
    "lassos",
    "ldlo_to_nba",
    "nba_accepts",
    "nba_complement",
    "nba_intersect",
    "nba_omega",
    "nba_prefix",
    "nba_union",
    "oracle_eval_greo",
    "oracle_eval_wldlo",
    "oracle_sat_ldlo",
    "primitive_root",
    "sat_ldlo",
    "wba_eval",
    "wldlo_to_wba",
]
