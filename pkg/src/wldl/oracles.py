"""Naive reference evaluators.

These follow the inductive definitions literally: no memoization, iteration
unrolled into explicit ``rho^n`` terms, every split enumerated.  They are
exponential and meant for words of length at most about six.  The tests
use them to pin the fast evaluators in :mod:`wldl.semantics`.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations_with_replacement
from typing import Any

from . import ast as A
from .errors import ImproperIteration, ImproperPlus
from .semiring import Semiring


def _splits(x: str, n: int):
    """All ways to cut ``x`` into ``n`` possibly empty consecutive pieces."""
    for cuts in combinations_with_replacement(range(len(x) + 1), n - 1):
        bounds = (0, *cuts, len(x))
        yield [x[bounds[i]:bounds[i + 1]] for i in range(n)]


def oracle_sat_ldl(f: A.Ldl, x: str) -> bool:
    if isinstance(f, A.LTrue):
        return True
    if isinstance(f, A.LAtom):
        return len(x) > 0 and x[0] == f.letter
    if isinstance(f, A.LNot):
        return not oracle_sat_ldl(f.arg, x)
    if isinstance(f, A.LAnd):
        return oracle_sat_ldl(f.left, x) and oracle_sat_ldl(f.right, x)
    if isinstance(f, A.LDiamond):
        return _ldl_diamond(f.path, f.body, x)
    raise TypeError(f)


def _ldl_diamond(p: A.LPath, body: A.Ldl, x: str) -> bool:
    if isinstance(p, A.LStep):
        return len(x) > 0 and A.prop_holds(p.prop, x[0]) and oracle_sat_ldl(body, x[1:])
    if isinstance(p, A.LTest):
        return oracle_sat_ldl(p.formula, x) and oracle_sat_ldl(body, x)
    if isinstance(p, A.LChoice):
        return _ldl_diamond(p.left, body, x) or _ldl_diamond(p.right, body, x)
    if isinstance(p, A.LSeq):
        return any(
            _ldl_diamond(p.left, A.LTrue(), u) and _ldl_diamond(p.right, body, v)
            for u, v in _splits(x, 2)
        )
    if isinstance(p, A.LPlus):
        return any(
            _ldl_diamond(reduce(A.LSeq, [p.body] * n), body, x)
            for n in range(1, len(x) + 1)
        )
    raise TypeError(p)


def oracle_eval_wldl(f: A.Weighted, x: str, S: Semiring) -> Any:
    if isinstance(f, A.Const):
        return f.value
    if isinstance(f, A.Classical):
        return S.one if oracle_sat_ldl(f.formula, x) else S.zero
    if isinstance(f, A.OPlus):
        return S.add(oracle_eval_wldl(f.left, x, S), oracle_eval_wldl(f.right, x, S))
    if isinstance(f, A.OTimes):
        return S.mul(oracle_eval_wldl(f.left, x, S), oracle_eval_wldl(f.right, x, S))
    if isinstance(f, A.WDiamond):
        return _w_diamond(f.path, f.body, x, S)
    raise TypeError(f)


def _w_diamond(p: A.WPath, body: A.Weighted, x: str, S: Semiring) -> Any:
    if isinstance(p, A.WStep):
        if len(x) > 0 and A.prop_holds(p.prop, x[0]):
            return oracle_eval_wldl(body, x[1:], S)
        return S.zero
    if isinstance(p, A.WTest):
        return S.mul(oracle_eval_wldl(p.formula, x, S), oracle_eval_wldl(body, x, S))
    if isinstance(p, A.WChoice):
        return S.add(_w_diamond(p.left, body, x, S), _w_diamond(p.right, body, x, S))
    if isinstance(p, A.WSeq):
        return S.sum(
            S.mul(_w_diamond(p.left, A.W_TRUE, u, S), _w_diamond(p.right, body, v, S))
            for u, v in _splits(x, 2)
        )
    if isinstance(p, A.WIter):
        if not S.is_zero(_w_diamond(p.body, A.W_TRUE, "", S)):
            raise ImproperIteration(p.body)
        return S.sum(
            _w_diamond(reduce(A.WSeq, [p.body] * n), body, x, S)
            for n in range(1, len(x) + 2)
        )
    raise TypeError(p)


def oracle_eval_gre(e: A.Expr, x: str, S: Semiring) -> Any:
    if isinstance(e, A.Sym):
        return e.weight if x == (e.letter or "") else S.zero
    if isinstance(e, A.Sum):
        return S.add(oracle_eval_gre(e.left, x, S), oracle_eval_gre(e.right, x, S))
    if isinstance(e, A.Hadamard):
        return S.mul(oracle_eval_gre(e.left, x, S), oracle_eval_gre(e.right, x, S))
    if isinstance(e, A.Cauchy):
        return S.sum(
            S.mul(oracle_eval_gre(e.left, u, S), oracle_eval_gre(e.right, v, S))
            for u, v in _splits(x, 2)
        )
    if isinstance(e, A.Plus):
        if not S.is_zero(oracle_eval_gre(e.body, "", S)):
            raise ImproperPlus(e.body)
        return S.sum(
            S.prod(oracle_eval_gre(e.body, piece, S) for piece in pieces)
            for n in range(1, len(x) + 1)
            for pieces in _splits(x, n)
        )
    raise TypeError(e)


def oracle_sat_ltl(f: A.Ltl, x: str) -> bool:
    n = len(x)
    if isinstance(f, A.TTrue):
        return True
    if isinstance(f, A.TAtom):
        return n > 0 and x[0] == f.letter
    if isinstance(f, A.TNot):
        return not oracle_sat_ltl(f.arg, x)
    if isinstance(f, A.TOr):
        return oracle_sat_ltl(f.left, x) or oracle_sat_ltl(f.right, x)
    if isinstance(f, A.TNext):
        return oracle_sat_ltl(f.arg, x[1:])
    if isinstance(f, A.TUntil):
        return any(
            oracle_sat_ltl(f.right, x[i:]) and all(oracle_sat_ltl(f.left, x[j:]) for j in range(i))
            for i in range(n)
        )
    raise TypeError(f)


def oracle_eval_wltl(f: A.Weighted, x: str, S: Semiring) -> Any:
    n = len(x)
    if isinstance(f, A.Const):
        return f.value
    if isinstance(f, A.Classical):
        return S.one if oracle_sat_ltl(f.formula, x) else S.zero
    if isinstance(f, A.OPlus):
        return S.add(oracle_eval_wltl(f.left, x, S), oracle_eval_wltl(f.right, x, S))
    if isinstance(f, A.OTimes):
        return S.mul(oracle_eval_wltl(f.left, x, S), oracle_eval_wltl(f.right, x, S))
    if isinstance(f, A.WNext):
        return oracle_eval_wltl(f.arg, x[min(1, n):], S)
    if isinstance(f, A.BoxTimes):
        return S.prod(oracle_eval_wltl(f.arg, x[i:], S) for i in range(n))
    if isinstance(f, A.WUntil):
        return S.sum(
            S.mul(
                S.prod(oracle_eval_wltl(f.left, x[j:], S) for j in range(i)),
                oracle_eval_wltl(f.right, x[i:], S),
            )
            for i in range(n)
        )
    raise TypeError(f)
