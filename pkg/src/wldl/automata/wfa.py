"""Weighted finite automata over a semiring.

A :class:`Wfa` is a linear representation ``(alpha, {M_a}, gamma)`` with
``||A||(w) = alpha . M_{w(0)} ... M_{w(n-1)} . gamma``.  Matrices are stored
sparsely as per-state successor lists.  Every closure construction is
epsilon-free and ends with :func:`wfa_trim`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from .. import ast as A
from ..errors import ImproperPlus, NonCommutativeHadamard, UsageError
from ..semiring import Semiring
from .nfa import Dfa, Nfa

Row = tuple[tuple[int, Any], ...]


@dataclass(frozen=True, eq=False)
class Wfa:
    semiring: Semiring
    alphabet: tuple[str, ...]
    states: int
    initial: tuple[Any, ...]
    final: tuple[Any, ...]
    trans: Mapping[str, tuple[Row, ...]]

    def step(self, vec: Sequence[Any], a: str) -> list[Any]:
        S = self.semiring
        out = [S.zero] * self.states
        rows = self.trans[a]
        for p, vp in enumerate(vec):
            if S.is_zero(vp):
                continue
            for q, w in rows[p]:
                out[q] = S.add(out[q], S.mul(vp, w))
        return out

    def weight_out(self, vec: Sequence[Any]) -> Any:
        S = self.semiring
        return S.sum(S.mul(v, g) for v, g in zip(vec, self.final) if not S.is_zero(v))

    def __call__(self, word: str) -> Any:
        return wfa_eval(self, word)

    def transitions(self):
        for a, rows in self.trans.items():
            for p, row in enumerate(rows):
                for q, w in row:
                    yield p, a, q, w

    def size(self) -> int:
        return self.states


def wfa_eval(m: Wfa, word: str) -> Any:
    for a in word:
        if a not in m.trans:
            raise UsageError(f"letter {a!r} is not in the automaton's alphabet")
    vec = list(m.initial)
    for a in word:
        vec = m.step(vec, a)
    return m.weight_out(vec)


def wfa_eval_all(m: Wfa, words: Iterable[str]) -> dict[str, Any]:
    """Evaluate on many words, sharing work across common prefixes."""
    cache: dict[str, list[Any]] = {"": list(m.initial)}

    def vec(w: str) -> list[Any]:
        hit = cache.get(w)
        if hit is None:
            hit = cache[w] = m.step(vec(w[:-1]), w[-1])
        return hit

    return {w: m.weight_out(vec(w)) for w in words}


class WfaBuilder:
    def __init__(self, semiring: Semiring, alphabet: Sequence[str]):
        self.S = semiring
        self.alphabet = tuple(alphabet)
        self.initial: list[Any] = []
        self.final: list[Any] = []
        self.rows: dict[str, list[dict[int, Any]]] = {a: [] for a in self.alphabet}

    def new(self, initial=None, final=None) -> int:
        S = self.S
        self.initial.append(S.zero if initial is None else initial)
        self.final.append(S.zero if final is None else final)
        for a in self.alphabet:
            self.rows[a].append({})
        return len(self.initial) - 1

    def add(self, p: int, a: str, q: int, w: Any) -> None:
        S = self.S
        if S.is_zero(w):
            return
        row = self.rows[a][p]
        row[q] = S.add(row[q], w) if q in row else w

    def copy(self, m: Wfa) -> int:
        off = len(self.initial)
        for _ in range(m.states):
            self.new()
        for p, a, q, w in m.transitions():
            self.add(p + off, a, q + off, w)
        return off

    def build(self, trim: bool = True) -> Wfa:
        S = self.S
        trans = {
            a: tuple(
                tuple((q, w) for q, w in sorted(row.items()) if not S.is_zero(w))
                for row in rows
            )
            for a, rows in self.rows.items()
        }
        m = Wfa(S, self.alphabet, len(self.initial), tuple(self.initial), tuple(self.final), trans)
        return wfa_trim(m) if trim else m


def wfa_trim(m: Wfa) -> Wfa:
    S = m.semiring
    succ: list[set[int]] = [set() for _ in range(m.states)]
    pred: list[set[int]] = [set() for _ in range(m.states)]
    for p, _, q, _ in m.transitions():
        succ[p].add(q)
        pred[q].add(p)
    fwd = _reach([q for q in range(m.states) if not S.is_zero(m.initial[q])], succ)
    bwd = _reach([q for q in range(m.states) if not S.is_zero(m.final[q])], pred)
    keep = sorted(fwd & bwd)
    if len(keep) == m.states:
        return m
    index = {q: i for i, q in enumerate(keep)}
    trans = {
        a: tuple(tuple((index[q], w) for q, w in rows[p] if q in index) for p in keep)
        for a, rows in m.trans.items()
    }
    return Wfa(
        S,
        m.alphabet,
        len(keep),
        tuple(m.initial[q] for q in keep),
        tuple(m.final[q] for q in keep),
        trans,
    )


def _reach(start: list[int], nxt: list[set[int]]) -> set[int]:
    seen = set(start)
    todo = list(start)
    while todo:
        q = todo.pop()
        for r in nxt[q]:
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def _check_compatible(m1: Wfa, m2: Wfa) -> None:
    if m1.semiring is not m2.semiring:
        raise UsageError("automata over different semirings")
    if m1.alphabet != m2.alphabet:
        raise UsageError("automata over different alphabets")


# -- elementary automata ---------------------------------------------------------


def wfa_zero(S: Semiring, alphabet: Sequence[str]) -> Wfa:
    return WfaBuilder(S, alphabet).build()


def wfa_constant(S: Semiring, alphabet: Sequence[str], k: Any) -> Wfa:
    """The series with value ``k`` on every word."""
    b = WfaBuilder(S, alphabet)
    q = b.new(S.one, k)
    for a in alphabet:
        b.add(q, a, q, S.one)
    return b.build()


def wfa_epsilon(S: Semiring, alphabet: Sequence[str], k: Any) -> Wfa:
    """``k eps``"""
    b = WfaBuilder(S, alphabet)
    b.new(S.one, k)
    return b.build()


def wfa_letter(S: Semiring, alphabet: Sequence[str], letters: Mapping[str, Any]) -> Wfa:
    """One-letter words: ``a`` gets ``letters[a]``, everything else zero."""
    b = WfaBuilder(S, alphabet)
    p = b.new(S.one, None)
    q = b.new(None, S.one)
    for a, w in letters.items():
        b.add(p, a, q, w)
    return b.build()


def wfa_from_nfa(S: Semiring, m: Nfa) -> Wfa:
    """0/1 weights.  The behavior counts accepting runs, so it is the
    characteristic series only for unambiguous automata or idempotent S."""
    b = WfaBuilder(S, m.alphabet)
    for q in range(m.states):
        b.new(S.one if q in m.initial else None, S.one if q in m.accepting else None)
    for p, a, q in m.edges():
        b.add(p, a, q, S.one)
    return b.build()


def wfa_from_dfa(S: Semiring, d: Dfa) -> Wfa:
    b = WfaBuilder(S, d.alphabet)
    for q in range(d.states):
        b.new(S.one if q == d.initial else None, S.one if q in d.accepting else None)
    for p, row in enumerate(d.delta):
        for a, q in zip(d.alphabet, row):
            b.add(p, a, q, S.one)
    return b.build()


# -- closure constructions ----------------------------------------------------------


def wfa_sum(m1: Wfa, m2: Wfa) -> Wfa:
    _check_compatible(m1, m2)
    b = WfaBuilder(m1.semiring, m1.alphabet)
    for m in (m1, m2):
        off = b.copy(m)
        for q in range(m.states):
            b.initial[q + off] = m.initial[q]
            b.final[q + off] = m.final[q]
    return b.build()


def wfa_hadamard(m1: Wfa, m2: Wfa) -> Wfa:
    _check_compatible(m1, m2)
    S = m1.semiring
    if not S.commutative:
        raise NonCommutativeHadamard(f"Hadamard product needs a commutative semiring, not {S.name}")
    b = WfaBuilder(S, m1.alphabet)
    index: dict[tuple[int, int], int] = {}
    todo = []

    def state(p: int, q: int) -> int:
        if (p, q) not in index:
            index[(p, q)] = b.new(None, S.mul(m1.final[p], m2.final[q]))
            todo.append((p, q))
        return index[(p, q)]

    for p in range(m1.states):
        if S.is_zero(m1.initial[p]):
            continue
        for q in range(m2.states):
            if not S.is_zero(m2.initial[q]):
                b.initial[state(p, q)] = S.mul(m1.initial[p], m2.initial[q])
    while todo:
        p, q = todo.pop()
        s = index[(p, q)]
        for a in m1.alphabet:
            row2 = m2.trans[a][q]
            if not row2:
                continue
            for p2, w1 in m1.trans[a][p]:
                for q2, w2 in row2:
                    b.add(s, a, state(p2, q2), S.mul(w1, w2))
    return b.build()


def wfa_cauchy(m1: Wfa, m2: Wfa) -> Wfa:
    """``||m1|| . ||m2||``.

    The second automaton is entered either at the start (contributing
    ``||m1||(eps)``) or on the last letter read by the first one.
    """
    _check_compatible(m1, m2)
    S = m1.semiring
    b = WfaBuilder(S, m1.alphabet)
    o1 = b.copy(m1)
    o2 = b.copy(m2)
    eps1 = S.sum(S.mul(i, f) for i, f in zip(m1.initial, m1.final))
    for p in range(m1.states):
        b.initial[p + o1] = m1.initial[p]
    for q in range(m2.states):
        b.initial[q + o2] = S.mul(eps1, m2.initial[q])
        b.final[q + o2] = m2.final[q]
    for a in m1.alphabet:
        for p in range(m1.states):
            exit_weight = S.sum(S.mul(w, m1.final[r]) for r, w in m1.trans[a][p])
            if S.is_zero(exit_weight):
                continue
            for q in range(m2.states):
                if not S.is_zero(m2.initial[q]):
                    b.add(p + o1, a, q + o2, S.mul(exit_weight, m2.initial[q]))
    return b.build()


def wfa_plus(m: Wfa) -> Wfa:
    """``||m||^+``; requires ``||m||(eps) = 0``."""
    S = m.semiring
    if not S.is_zero(wfa_eval(m, "")):
        raise ImproperPlus(m, "automaton with nonzero empty-word weight")
    b = WfaBuilder(S, m.alphabet)
    b.copy(m)
    b.initial[:] = list(m.initial)
    b.final[:] = list(m.final)
    for a in m.alphabet:
        for p in range(m.states):
            back = S.sum(S.mul(w, m.final[r]) for r, w in m.trans[a][p])
            if S.is_zero(back):
                continue
            for q in range(m.states):
                if not S.is_zero(m.initial[q]):
                    b.add(p, a, q, S.mul(back, m.initial[q]))
    return b.build()


# -- expressions to automata --------------------------------------------------------


def gre_to_wfa(e: A.Expr, S: Semiring, alphabet: Sequence[str]) -> Wfa:
    """An automaton with the same behavior as the (generalized) rational expression."""
    memo: dict[int, Wfa] = {}
    keep = []

    def go(n: A.Expr) -> Wfa:
        hit = memo.get(id(n))
        if hit is not None:
            return hit
        if isinstance(n, A.Sym):
            if n.letter is None:
                r = wfa_epsilon(S, alphabet, n.weight)
            else:
                if n.letter not in alphabet:
                    raise UsageError(f"letter {n.letter!r} is not in the alphabet")
                r = wfa_letter(S, alphabet, {n.letter: n.weight})
        elif isinstance(n, A.Sum):
            r = wfa_sum(go(n.left), go(n.right))
        elif isinstance(n, A.Cauchy):
            r = wfa_cauchy(go(n.left), go(n.right))
        elif isinstance(n, A.Hadamard):
            r = wfa_hadamard(go(n.left), go(n.right))
        elif isinstance(n, A.Plus):
            body = go(n.body)
            if not S.is_zero(wfa_eval(body, "")):
                from ..printer import to_text

                raise ImproperPlus(n.body, to_text(n.body))
            r = wfa_plus(body)
        else:
            raise TypeError(f"not a finite-word expression: {n!r}")
        memo[id(n)] = r
        keep.append(n)
        return r

    return go(e)
