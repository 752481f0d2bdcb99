"""State elimination from automata to rational expressions.

For a deterministic automaton each accepted word has exactly one path, and
elimination maps paths to parse trees one to one: a loop at an eliminated
state becomes ``1 eps + L^+`` whose two summands are disjoint because loops
read at least one letter.  The 0/1 expression therefore evaluates to the
characteristic series of the language in every semiring, idempotent or not.
"""

from __future__ import annotations

from typing import Any, Sequence

from .. import ast as A
from ..semiring import Semiring
from .nfa import Dfa, Nfa, dfa_to_nfa

_START, _END = -1, -2


def _is_unit(e: A.Expr, S: Semiring) -> bool:
    return isinstance(e, A.Sym) and e.letter is None and e.weight == S.one


def _cat(x: A.Expr, y: A.Expr, S: Semiring) -> A.Expr:
    if _is_unit(x, S):
        return y
    if _is_unit(y, S):
        return x
    if isinstance(x, A.Sym) and isinstance(y, A.Sym) and x.letter is None and y.letter is None:
        return A.Sym(S.mul(x.weight, y.weight), None)
    return A.Cauchy(x, y)


def eliminate(
    states: int,
    initial: dict[int, A.Expr],
    final: dict[int, A.Expr],
    edges: dict[tuple[int, int], A.Expr],
    S: Semiring,
) -> A.Expr:
    """Expression for the sum over all initial-to-final paths.

    States are removed in ascending order of in-degree times out-degree,
    recomputed after each removal, ties broken by state index.
    """
    out: dict[int, dict[int, A.Expr]] = {}
    inc: dict[int, dict[int, A.Expr]] = {}

    def put(p: int, q: int, e: A.Expr) -> None:
        old = out.setdefault(p, {}).get(q)
        e = e if old is None else A.Sum(old, e)
        out[p][q] = e
        inc.setdefault(q, {})[p] = e

    for q, e in initial.items():
        put(_START, q, e)
    for q, e in final.items():
        put(q, _END, e)
    for (p, q), e in edges.items():
        put(p, q, e)

    remaining = set(range(states))
    while remaining:
        def cost(q: int) -> tuple[int, int]:
            i = sum(1 for p in inc.get(q, {}) if p != q)
            o = sum(1 for r in out.get(q, {}) if r != q)
            return (i * o, q)

        q = min(remaining, key=cost)
        remaining.remove(q)
        succ = out.pop(q, {})
        pred = inc.pop(q, {})
        loop = succ.pop(q, None)
        pred.pop(q, None)
        for p in pred:
            out[p].pop(q, None)
        for r in succ:
            inc[r].pop(q, None)
        for p, ep in pred.items():
            left = ep if loop is None else _cat(ep, A.Sum(A.Sym(S.one, None), A.Plus(loop)), S)
            for r, er in succ.items():
                put(p, r, _cat(left, er, S))
    result = out.get(_START, {}).get(_END)
    return A.Sym(S.zero, None) if result is None else result


def _letter_sum(letters: Sequence[str], S: Semiring) -> A.Expr:
    e: A.Expr | None = None
    for a in letters:
        s = A.Sym(S.one, a)
        e = s if e is None else A.Sum(e, s)
    assert e is not None
    return e


def nfa_to_re(m: Nfa, S: Semiring) -> A.Expr:
    """0/1 expression whose value on w counts accepting runs of ``m`` on w."""
    grouped: dict[tuple[int, int], list[str]] = {}
    for p, a, q in m.edges():
        grouped.setdefault((p, q), []).append(a)
    edges = {
        pq: _letter_sum(sorted(letters, key=m.alphabet.index), S)
        for pq, letters in grouped.items()
    }
    unit = A.Sym(S.one, None)
    return eliminate(
        m.states,
        {q: unit for q in sorted(m.initial)},
        {q: unit for q in sorted(m.accepting)},
        edges,
        S,
    )


def dfa_to_zero_one_re(d: Dfa, S: Semiring) -> A.Expr:
    """Hadamard-free 0/1 expression for the characteristic series of L(d)."""
    return nfa_to_re(dfa_to_nfa(d), S)
