"""Syntactic fragments of weighted LTL: step formulas and rLTL."""

from __future__ import annotations

from . import ast as A


def is_ltl_step(f: A.Weighted) -> bool:
    """A sum of ``k (x) [psi]`` terms.

    A bare constant counts as ``k (x) [true]`` and a bare classical formula
    as ``1 (x) [psi]``.
    """
    if isinstance(f, A.OPlus):
        return is_ltl_step(f.left) and is_ltl_step(f.right)
    return _is_step_term(f)


def _is_step_term(f: A.Weighted) -> bool:
    if isinstance(f, (A.Const, A.Classical)):
        return True
    if isinstance(f, A.OTimes):
        return isinstance(f.left, A.Const) and isinstance(f.right, A.Classical)
    return False


def rltl_violation(f: A.Weighted) -> A.Weighted | None:
    """The first ``G*`` or ``U`` left operand (pre-order) that is not a step formula."""
    for node in A.walk(f):
        if isinstance(node, A.BoxTimes) and not is_ltl_step(node.arg):
            return node.arg
        if isinstance(node, A.WUntil) and not is_ltl_step(node.left):
            return node.left
    return None


def is_rltl(f: A.Weighted) -> bool:
    return rltl_violation(f) is None
