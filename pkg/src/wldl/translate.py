"""Translations between formulas, expressions and automata.

Finite words:

* :func:`gre_to_wldl` -- expression to formula, linear size;
* :func:`wldl_to_gre` -- formula to expression, classical subformulas going
  through a minimal DFA and state elimination;
* :func:`ldl_to_nfa` -- classical LDL to an NFA;
* :func:`wldl_to_wfa` -- formula to weighted automaton;
* :func:`wldl_equiv` -- equivalence over the rationals.

Infinite words: :func:`greo_to_wldlo` and :func:`wldlo_to_greo`.
"""

from __future__ import annotations

from typing import Any, Sequence

from . import ast as A
from .automata import nfa as N
from .automata.elimination import dfa_to_zero_one_re, nfa_to_re
from .automata.equivalence import EquivalenceResult, wfa_equiv_field
from .automata.wfa import (
    Wfa,
    wfa_cauchy,
    wfa_constant,
    wfa_eval,
    wfa_from_dfa,
    wfa_from_nfa,
    wfa_hadamard,
    wfa_letter,
    wfa_plus,
    wfa_sum,
)
from .errors import ImproperIteration, UnsupportedOmegaSemiring, UsageError
from .semantics import WldlEvaluator
from .semiring import RAT, Semiring

_TRUE = A.LTrue()


def _alphabet(alphabet: Sequence[str]) -> tuple[str, ...]:
    alph = tuple(sorted(set(alphabet)))
    if not alph:
        raise UsageError("the alphabet must be nonempty")
    return alph


def _text(node: A.Node) -> str:
    from .printer import to_text

    return to_text(node)


# -- classical LDL to NFA ------------------------------------------------------


class LdlCompiler:
    """Inductive construction of NFAs for classical LDL formulas.

    Negation is pushed through conjunction, steps, tests and choice, where
    the dual is again a small automaton; anywhere else it is realized by
    determinizing, complementing and minimizing.
    """

    def __init__(self, alphabet: Sequence[str], max_states: int = N.DEFAULT_MAX_STATES):
        self.alphabet = _alphabet(alphabet)
        self.max_states = max_states
        self._pos: dict[int, N.Nfa] = {}
        self._neg: dict[int, N.Nfa] = {}
        self._dia: dict[tuple[int, int], N.Nfa] = {}
        self._ndia: dict[tuple[int, int], N.Nfa] = {}
        self._keep: dict[int, A.Node] = {}
        self.all = N.universal(self.alphabet)

    def _remember(self, *nodes: A.Node) -> None:
        for n in nodes:
            self._keep[id(n)] = n

    def formula(self, f: A.Ldl) -> N.Nfa:
        hit = self._pos.get(id(f))
        if hit is None:
            hit = self._pos[id(f)] = self._formula(f)
            self._remember(f)
        return hit

    def _formula(self, f: A.Ldl) -> N.Nfa:
        if isinstance(f, A.LTrue):
            return self.all
        if isinstance(f, A.LAtom):
            return N.letter_then([f.letter], self.all)
        if isinstance(f, A.LNot):
            return self.negated(f.arg)
        if isinstance(f, A.LAnd):
            return N.intersect(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.LDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not a finite-word LDL formula: {f!r}")

    def negated(self, f: A.Ldl) -> N.Nfa:
        hit = self._neg.get(id(f))
        if hit is None:
            hit = self._neg[id(f)] = self._negated(f)
            self._remember(f)
        return hit

    def _negated(self, f: A.Ldl) -> N.Nfa:
        alph = self.alphabet
        if isinstance(f, A.LTrue):
            return N.empty(alph)
        if isinstance(f, A.LAtom):
            others = [a for a in alph if a != f.letter]
            return N.union(N.epsilon(alph), N.letter_then(others, self.all))
        if isinstance(f, A.LNot):
            return self.formula(f.arg)
        if isinstance(f, A.LAnd):
            return N.union(self.negated(f.left), self.negated(f.right))
        if isinstance(f, A.LDiamond):
            return self.negated_diamond(f.path, f.body)
        raise TypeError(f"not a finite-word LDL formula: {f!r}")

    def complement(self, m: N.Nfa) -> N.Nfa:
        return N.nfa_complement(m, self.max_states)

    def diamond(self, p: A.LPath, body: A.Ldl) -> N.Nfa:
        key = (id(p), id(body))
        hit = self._dia.get(key)
        if hit is None:
            hit = self._dia[key] = self._diamond(p, body)
            self._remember(p, body)
        return hit

    def _diamond(self, p: A.LPath, body: A.Ldl) -> N.Nfa:
        if isinstance(p, A.LStep):
            return N.letter_then(A.prop_letters(p.prop, self.alphabet), self.formula(body))
        if isinstance(p, A.LTest):
            return N.intersect(self.formula(p.formula), self.formula(body))
        if isinstance(p, A.LChoice):
            return N.union(self.diamond(p.left, body), self.diamond(p.right, body))
        if isinstance(p, A.LSeq):
            return N.concat(self.diamond(p.left, _TRUE), self.diamond(p.right, body))
        if isinstance(p, A.LPlus):
            return self._plus(p.body, body)
        raise TypeError(f"not a finite-word path: {p!r}")

    def _plus(self, p: A.LPath, body: A.Ldl) -> N.Nfa:
        # With T = L(<p>true) and P = L(<p>body), <p^+>body holds on w iff
        # w = u_1 ... u_{n-1} v with u_i in T, v in P and 1 <= n <= |w|.
        # Empty u_i can be dropped, so with T' = T - {eps}, P' = P - {eps}:
        #   T'* P'  union  (if eps in P)  T'* (T' cap A^{>=2}) T'*
        # (the second part needs n - 1 nonempty chunks of total length >= n).
        alph = self.alphabet
        t = self.diamond(p, _TRUE)
        pv = self.diamond(p, body)
        t1 = N.intersect(t, N.nonempty(alph))
        p1 = N.intersect(pv, N.nonempty(alph))
        t_star = N.star(t1)
        result = N.concat(t_star, p1)
        if pv.accepts_empty:
            long_chunk = N.intersect(t1, N.min_length(alph, 2))
            result = N.union(result, N.concat(N.concat(t_star, long_chunk), t_star))
        return result

    def negated_diamond(self, p: A.LPath, body: A.Ldl) -> N.Nfa:
        key = (id(p), id(body))
        hit = self._ndia.get(key)
        if hit is None:
            hit = self._ndia[key] = self._negated_diamond(p, body)
            self._remember(p, body)
        return hit

    def _negated_diamond(self, p: A.LPath, body: A.Ldl) -> N.Nfa:
        alph = self.alphabet
        if isinstance(p, A.LStep):
            letters = A.prop_letters(p.prop, alph)
            others = [a for a in alph if a not in letters]
            return N.union(
                N.union(N.epsilon(alph), N.letter_then(others, self.all)),
                N.letter_then(letters, self.negated(body)),
            )
        if isinstance(p, A.LTest):
            return N.union(self.negated(p.formula), self.negated(body))
        if isinstance(p, A.LChoice):
            return N.intersect(
                self.negated_diamond(p.left, body), self.negated_diamond(p.right, body)
            )
        return self.complement(self.diamond(p, body))


def ldl_to_nfa(
    f: A.Ldl, alphabet: Sequence[str], max_states: int = N.DEFAULT_MAX_STATES
) -> N.Nfa:
    """An NFA accepting exactly the finite words that satisfy ``f``."""
    return LdlCompiler(alphabet, max_states).formula(f)


# -- weighted LDL to weighted automata ------------------------------------------------


class WfaCompiler:
    def __init__(
        self,
        semiring: Semiring,
        alphabet: Sequence[str],
        max_states: int = N.DEFAULT_MAX_STATES,
    ):
        self.S = semiring
        self.alphabet = _alphabet(alphabet)
        self.max_states = max_states
        self.ldl = LdlCompiler(self.alphabet, max_states)
        self._val: dict[int, Wfa] = {}
        self._dia: dict[tuple[int, int], Wfa] = {}
        self._keep: dict[int, A.Node] = {}

    def classical(self, f: A.Ldl) -> Wfa:
        m = self.ldl.formula(f)
        if self.S.idempotent:
            return wfa_from_nfa(self.S, m)
        return wfa_from_dfa(self.S, N.min_dfa(m, self.max_states))

    def formula(self, f: A.Weighted) -> Wfa:
        hit = self._val.get(id(f))
        if hit is None:
            hit = self._val[id(f)] = self._formula(f)
            self._keep[id(f)] = f
        return hit

    def _formula(self, f: A.Weighted) -> Wfa:
        S = self.S
        if isinstance(f, A.Const):
            return wfa_constant(S, self.alphabet, f.value)
        if isinstance(f, A.Classical):
            return self.classical(f.formula)
        if isinstance(f, A.OPlus):
            return wfa_sum(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.OTimes):
            return wfa_hadamard(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.WDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not a finite-word weighted formula: {f!r}")

    def diamond(self, p: A.WPath, body: A.Weighted) -> Wfa:
        key = (id(p), id(body))
        hit = self._dia.get(key)
        if hit is None:
            hit = self._dia[key] = self._diamond(p, body)
            self._keep[id(p)] = p
            self._keep[id(body)] = body
        return hit

    def _diamond(self, p: A.WPath, body: A.Weighted) -> Wfa:
        S = self.S
        if isinstance(p, A.WStep):
            letters = A.prop_letters(p.prop, self.alphabet)
            step = wfa_letter(S, self.alphabet, {a: S.one for a in letters})
            return wfa_cauchy(step, self.formula(body))
        if isinstance(p, A.WTest):
            return wfa_hadamard(self.formula(p.formula), self.formula(body))
        if isinstance(p, A.WChoice):
            return wfa_sum(self.diamond(p.left, body), self.diamond(p.right, body))
        if isinstance(p, A.WSeq):
            return wfa_cauchy(self.diamond(p.left, A.W_TRUE), self.diamond(p.right, body))
        if isinstance(p, A.WIter):
            t = self.diamond(p.body, A.W_TRUE)
            if not S.is_zero(wfa_eval(t, "")):
                raise ImproperIteration(p.body, _text(p.body))
            last = self.diamond(p.body, body)
            return wfa_sum(wfa_cauchy(wfa_plus(t), last), last)
        raise TypeError(f"not a finite-word weighted path: {p!r}")


def wldl_to_wfa(
    f: A.Weighted,
    semiring: Semiring,
    alphabet: Sequence[str],
    max_states: int = N.DEFAULT_MAX_STATES,
) -> Wfa:
    WldlEvaluator(semiring).check(f)
    return WfaCompiler(semiring, alphabet, max_states).formula(f)


def wldl_equiv(
    f1: A.Weighted,
    f2: A.Weighted,
    alphabet: Sequence[str],
    semiring: Semiring = RAT,
    max_states: int = N.DEFAULT_MAX_STATES,
) -> EquivalenceResult:
    """Decide ``||f1|| = ||f2||`` over the rationals; a shortest witness on failure."""
    for f in (f1, f2):
        WldlEvaluator(semiring).check(f)
    c = WfaCompiler(semiring, alphabet, max_states)
    return wfa_equiv_field(c.formula(f1), c.formula(f2))


# -- expressions to formulas ------------------------------------------------------------


def gre_to_wldl(e: A.Expr, alphabet: Sequence[str]) -> A.Weighted:
    alph = _alphabet(alphabet)
    last = A.Classical(A.expand_last(alph))
    no_letter = A.Classical(A.no_letter(alph))
    memo: dict[int, A.Weighted] = {}
    keep = []

    def go(n: A.Expr) -> A.Weighted:
        hit = memo.get(id(n))
        if hit is not None:
            return hit
        if isinstance(n, A.Sym):
            if n.letter is None:
                r = A.OTimes(A.Const(n.weight), no_letter)
            else:
                test = A.OTimes(A.Const(n.weight), A.Classical(A.LAtom(n.letter)))
                r = A.WDiamond(A.WTest(test), last)
        elif isinstance(n, A.Sum):
            r = A.OPlus(go(n.left), go(n.right))
        elif isinstance(n, A.Cauchy):
            r = A.WDiamond(A.WSeq(A.WTest(go(n.left)), A.WTest(go(n.right))), A.W_TRUE)
        elif isinstance(n, A.Plus):
            r = A.WDiamond(A.WIter(A.WTest(go(n.body))), A.W_TRUE)
        elif isinstance(n, A.Hadamard):
            r = A.WDiamond(A.WTest(go(n.left)), go(n.right))
        else:
            raise TypeError(f"not a finite-word expression: {n!r}")
        memo[id(n)] = r
        keep.append(n)
        return r

    return go(e)


# -- formulas to expressions ----------------------------------------------------------


def _letter_sum(S: Semiring, letters: Sequence[str]) -> A.Expr | None:
    e = None
    for a in letters:
        s = A.Sym(S.one, a)
        e = s if e is None else A.Sum(e, s)
    return e


def _sum_all(terms: list[A.Expr], S: Semiring) -> A.Expr:
    if not terms:
        return A.Sym(S.zero, None)
    e = terms[0]
    for t in terms[1:]:
        e = A.Sum(e, t)
    return e


class GreCompiler:
    def __init__(
        self,
        semiring: Semiring,
        alphabet: Sequence[str],
        max_states: int = N.DEFAULT_MAX_STATES,
    ):
        self.S = semiring
        self.alphabet = _alphabet(alphabet)
        self.max_states = max_states
        self.ldl = LdlCompiler(self.alphabet, max_states)
        self.one_a = _letter_sum(semiring, self.alphabet)
        self.any_nonempty = A.Plus(self.one_a)
        self.checker = WldlEvaluator(semiring)
        self._val: dict[int, A.Expr] = {}
        self._dia: dict[tuple[int, int], A.Expr] = {}
        self._classical: dict[A.Ldl, A.Expr] = {}
        self._keep: dict[int, A.Node] = {}

    def classical(self, f: A.Ldl) -> A.Expr:
        hit = self._classical.get(f)
        if hit is None:
            d = N.min_dfa(self.ldl.formula(f), self.max_states)
            hit = self._classical[f] = dfa_to_zero_one_re(d, self.S)
        return hit

    def prop(self, p: A.Prop) -> A.Expr:
        S = self.S
        terms: list[A.Expr] = [
            A.Sum(A.Sym(S.one, a), A.Cauchy(A.Sym(S.one, a), self.any_nonempty))
            for a in sorted(A.prop_letters(p, self.alphabet))
        ]
        if A.prop_holds(p, None):
            terms.append(A.Sym(S.one, None))
        return _sum_all(terms, S)

    def formula(self, f: A.Weighted) -> A.Expr:
        hit = self._val.get(id(f))
        if hit is None:
            hit = self._val[id(f)] = self._formula(f)
            self._keep[id(f)] = f
        return hit

    def _formula(self, f: A.Weighted) -> A.Expr:
        S = self.S
        if isinstance(f, A.Const):
            k = A.Sym(f.value, None)
            return A.Sum(k, A.Cauchy(k, self.any_nonempty))
        if isinstance(f, A.Classical):
            return self.classical(f.formula)
        if isinstance(f, A.OPlus):
            return A.Sum(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.OTimes):
            return A.Hadamard(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.WDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not a finite-word weighted formula: {f!r}")

    def diamond(self, p: A.WPath, body: A.Weighted) -> A.Expr:
        key = (id(p), id(body))
        hit = self._dia.get(key)
        if hit is None:
            hit = self._dia[key] = self._diamond(p, body)
            self._keep[id(p)] = p
            self._keep[id(body)] = body
        return hit

    def _diamond(self, p: A.WPath, body: A.Weighted) -> A.Expr:
        S = self.S
        if isinstance(p, A.WStep):
            return A.Hadamard(self.prop(p.prop), A.Cauchy(self.one_a, self.formula(body)))
        if isinstance(p, A.WTest):
            return A.Hadamard(self.formula(p.formula), self.formula(body))
        if isinstance(p, A.WChoice):
            return A.Sum(self.diamond(p.left, body), self.diamond(p.right, body))
        if isinstance(p, A.WSeq):
            return A.Cauchy(self.diamond(p.left, A.W_TRUE), self.diamond(p.right, body))
        if isinstance(p, A.WIter):
            if not S.is_zero(self.checker.diamond(p.body, A.W_TRUE, "")):
                raise ImproperIteration(p.body, _text(p.body))
            e1 = self.diamond(p.body, A.W_TRUE)
            e2 = self.diamond(p.body, body)
            return A.Sum(A.Cauchy(A.Plus(e1), e2), e2)
        raise TypeError(f"not a finite-word weighted path: {p!r}")


def wldl_to_gre(
    f: A.Weighted,
    semiring: Semiring,
    alphabet: Sequence[str],
    max_states: int = N.DEFAULT_MAX_STATES,
) -> A.Expr:
    c = GreCompiler(semiring, alphabet, max_states)
    c.checker.check(f)
    return c.formula(f)


# -- infinite words --------------------------------------------------------------------


def greo_to_wldlo(e: A.Expr, alphabet: Sequence[str]) -> A.Weighted:
    """omega expression to weighted LDL over infinite words (linear size)."""
    alph = _alphabet(alphabet)

    def go(n: A.Expr) -> A.Weighted:
        if isinstance(n, A.Sum):
            return A.OPlus(go(n.left), go(n.right))
        if isinstance(n, A.Hadamard):
            return A.WDiamond(A.WTest(go(n.left)), go(n.right))
        if isinstance(n, A.Cauchy):
            first = gre_to_wldl(n.left, alph)
            return A.WDiamond(A.WSeq(A.WTest(first), A.WTest(go(n.right))), A.W_TRUE)
        if isinstance(n, A.Omega):
            body = gre_to_wldl(n.body, alph)
            return A.WDiamond(A.WOmega(A.WTest(body)), A.W_TRUE)
        raise TypeError(f"not an omega expression: {n!r}")

    return go(e)


class GreOmegaCompiler:
    def __init__(
        self,
        semiring: Semiring,
        alphabet: Sequence[str],
        max_states: int = N.DEFAULT_MAX_STATES,
    ):
        self.S = semiring
        self.alphabet = _alphabet(alphabet)
        self.max_states = max_states
        self.finite = GreCompiler(semiring, self.alphabet, max_states)
        self.one_a = self.finite.one_a
        self.zero = A.Cauchy(A.Sym(semiring.zero, None), A.Omega(self.one_a))

    def classical(self, f: A.Ldl) -> A.Expr:
        if not self.S.idempotent:
            raise UnsupportedOmegaSemiring(
                "classical subformulas of omega formulas translate to expressions "
                f"only over idempotent semirings, not {self.S.name}"
            )
        from .omega.buchi import ldlo_to_nba

        nba = ldlo_to_nba(f, self.alphabet, self.max_states)
        return nba_to_omega_re(nba, self.S)

    def formula(self, f: A.Weighted) -> A.Expr:
        S = self.S
        if isinstance(f, A.Const):
            return A.Cauchy(A.Sym(f.value, None), A.Omega(self.one_a))
        if isinstance(f, A.Classical):
            return self.classical(f.formula)
        if isinstance(f, A.OPlus):
            return A.Sum(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.OTimes):
            return A.Hadamard(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.WDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not an omega weighted formula: {f!r}")

    def diamond(self, p: A.WPath, body: A.Weighted) -> A.Expr:
        S = self.S
        if isinstance(p, A.WStep):
            letters = sorted(A.prop_letters(p.prop, self.alphabet))
            first = _letter_sum(S, letters)
            if first is None:
                return self.zero
            return A.Hadamard(
                A.Cauchy(first, A.Omega(self.one_a)),
                A.Cauchy(self.one_a, self.formula(body)),
            )
        if isinstance(p, A.WTest):
            return A.Hadamard(self.formula(p.formula), self.formula(body))
        if isinstance(p, A.WChoice):
            return A.Sum(self.diamond(p.left, body), self.diamond(p.right, body))
        if isinstance(p, A.WSeq):
            return A.Cauchy(self.finite.diamond(p.left, A.W_TRUE), self.diamond(p.right, body))
        if isinstance(p, A.WOmega):
            if not S.is_zero(self.finite.checker.diamond(p.body, A.W_TRUE, "")):
                raise ImproperIteration(p.body, _text(p.body))
            if not A.is_w_true(body):
                return self.zero
            return A.Omega(self.finite.diamond(p.body, A.W_TRUE))
        raise TypeError(f"not an omega weighted path: {p!r}")


def wldlo_to_greo(
    f: A.Weighted,
    semiring: Semiring,
    alphabet: Sequence[str],
    max_states: int = N.DEFAULT_MAX_STATES,
) -> A.Expr:
    c = GreOmegaCompiler(semiring, alphabet, max_states)
    c.finite.checker.check(f)
    return c.formula(f)


def nba_to_omega_re(nba: Any, S: Semiring) -> A.Expr:
    """Sum over initial q and accepting f of ``E(q -> f) . E(f -> f, nonempty)^w``.

    The expression may count a word once per accepting run; that is harmless
    only over idempotent semirings, which is where it is used.
    """
    one_a = _letter_sum(S, nba.alphabet)
    terms = []
    for f in sorted(nba.accepting):
        loop = _nonempty_loop(nba, f)
        if loop.states == 0:
            continue
        g = nfa_to_re(loop, S)
        for q0 in sorted(nba.initial):
            reach = N.trim(N.Nfa(nba.alphabet, nba.states, frozenset([q0]), frozenset([f]), nba.delta))
            if reach.states == 0:
                continue
            terms.append(A.Cauchy(nfa_to_re(reach, S), A.Omega(g)))
    if not terms:
        return A.Cauchy(A.Sym(S.zero, None), A.Omega(one_a))
    return _sum_all(terms, S)


def _nonempty_loop(nba: Any, f: int) -> N.Nfa:
    """Nonempty words leading from ``f`` back to ``f``."""
    fresh = nba.states
    delta = list(nba.delta) + [nba.delta[f]]
    return N.trim(
        N.Nfa(nba.alphabet, nba.states + 1, frozenset([fresh]), frozenset([f]), tuple(delta))
    )
