"""Büchi automata, classical LDL over infinite words, and lasso acceptance."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .. import ast as A
from ..automata import nfa as N
from ..errors import StateBudgetExceeded, UsageError
from .lasso import Lasso

_TRUE = A.LTrue()


@dataclass(frozen=True, eq=False)
class Nba:
    alphabet: tuple[str, ...]
    states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    delta: tuple[Mapping[str, frozenset[int]], ...]

    def succ(self, q: int, a: str) -> frozenset[int]:
        return self.delta[q].get(a, frozenset())

    def edges(self):
        for q, row in enumerate(self.delta):
            for a, targets in row.items():
                for r in targets:
                    yield q, a, r

    def accepts(self, word: Lasso) -> bool:
        return 0 in accepted_nodes(self, word)


class _Builder(N._Builder):
    def build(self) -> Nba:
        m = Nba(
            self.alphabet,
            len(self.delta),
            frozenset(self.initial),
            frozenset(self.accepting),
            tuple({a: frozenset(t) for a, t in row.items() if t} for row in self.delta),
        )
        return nba_trim(m)


def _graph(m) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(m.states))
    g.add_edges_from((p, q) for p, _, q in m.edges())
    return g


def can_reach(g: nx.DiGraph, targets: Iterable) -> set:
    """Nodes of ``g`` with a path (possibly empty) to some target."""
    seen = set(targets)
    stack = list(seen)
    while stack:
        for u in g.predecessors(stack.pop()):
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return seen


def _on_cycle(g: nx.DiGraph, candidates: Iterable) -> set:
    """Candidates that lie on some cycle of ``g``."""
    cand = set(candidates)
    found = set()
    for comp in nx.strongly_connected_components(g):
        hit = comp & cand
        if not hit:
            continue
        if len(comp) > 1:
            found |= hit
        else:
            (v,) = tuple(comp)
            if g.has_edge(v, v):
                found.add(v)
    return found


def nba_trim(m: Nba) -> Nba:
    """Keep states that are reachable and can reach an accepting cycle."""
    g = _graph(m)
    good = _on_cycle(g, m.accepting)
    live = can_reach(g, good)
    reach = set(m.initial)
    for q in m.initial:
        reach |= nx.descendants(g, q)
    keep = sorted(live & reach)
    if len(keep) == m.states:
        return m
    index = {q: i for i, q in enumerate(keep)}
    delta = []
    for q in keep:
        row = {}
        for a, t in m.delta[q].items():
            t2 = frozenset(index[r] for r in t if r in index)
            if t2:
                row[a] = t2
        delta.append(row)
    return Nba(
        m.alphabet,
        len(keep),
        frozenset(index[q] for q in m.initial if q in index),
        frozenset(index[q] for q in m.accepting if q in index),
        tuple(delta),
    )


# -- lasso acceptance ---------------------------------------------------------------


def accepted_nodes(m: Nba, word: Lasso) -> frozenset[int]:
    """Nodes of ``word`` whose suffix is accepted by ``m``.

    A suffix is accepted iff, in the product of ``m`` with the lasso, some
    initial pair reaches an accepting pair lying on a cycle.
    """
    g = nx.DiGraph()
    for q in range(m.states):
        for i in range(word.nodes):
            g.add_node((q, i))
            j = word.next(i)
            for r in m.succ(q, word.letter(i)):
                g.add_edge((q, i), (r, j))
    good = _on_cycle(g, ((f, i) for f in m.accepting for i in range(word.nodes)))
    live = can_reach(g, good)
    return frozenset(i for (q, i) in live if q in m.initial)


def nba_accepts(m: Nba, word: Lasso) -> bool:
    return m.accepts(word)


# -- constructions --------------------------------------------------------------------


def nba_empty(alphabet: Sequence[str]) -> Nba:
    return Nba(tuple(alphabet), 0, frozenset(), frozenset(), ())


def nba_universal(alphabet: Sequence[str]) -> Nba:
    b = _Builder(alphabet)
    q = b.new(initial=True, accepting=True)
    for a in alphabet:
        b.add(q, a, q)
    return b.build()


def nba_letter_then(letters: Iterable[str], cont: Nba) -> Nba:
    b = _Builder(cont.alphabet)
    off = b.copy(cont)
    b.accepting |= {q + off for q in cont.accepting}
    s = b.new(initial=True)
    for a in letters:
        for q in cont.initial:
            b.add(s, a, q + off)
    return b.build()


def nba_union(m1: Nba, m2: Nba) -> Nba:
    b = _Builder(m1.alphabet)
    for m in (m1, m2):
        off = b.copy(m)
        b.initial |= {q + off for q in m.initial}
        b.accepting |= {q + off for q in m.accepting}
    return b.build()


def nba_intersect(m1: Nba, m2: Nba) -> Nba:
    """Product with a flag that alternates between the two acceptance sets."""
    b = _Builder(m1.alphabet)
    index: dict[tuple[int, int, int], int] = {}
    todo = deque()

    def state(p: int, q: int, flag: int) -> int:
        key = (p, q, flag)
        if key not in index:
            index[key] = b.new(accepting=(flag == 1 and q in m2.accepting))
            todo.append(key)
        return index[key]

    for p in m1.initial:
        for q in m2.initial:
            b.initial.add(state(p, q, 0))
    while todo:
        p, q, flag = todo.popleft()
        s = index[(p, q, flag)]
        if flag == 0 and p in m1.accepting:
            nflag = 1
        elif flag == 1 and q in m2.accepting:
            nflag = 0
        else:
            nflag = flag
        for a, t1 in m1.delta[p].items():
            for p2 in t1:
                for q2 in m2.succ(q, a):
                    b.add(s, a, state(p2, q2, nflag))
    return b.build()


def nba_prefix(m1: N.Nfa, m2: Nba) -> Nba:
    """``L(m1) . L(m2)`` for a finite-word language ``L(m1)``."""
    b = _Builder(m1.alphabet)
    o1 = b.copy(m1)
    o2 = b.copy(m2)
    b.initial |= {q + o1 for q in m1.initial}
    if m1.accepts_empty:
        b.initial |= {q + o2 for q in m2.initial}
    b.accepting |= {q + o2 for q in m2.accepting}
    for p, a, q in m1.edges():
        if q in m1.accepting:
            for r in m2.initial:
                b.add(p + o1, a, r + o2)
    return b.build()


def nba_omega(m: N.Nfa) -> Nba:
    """``(L(m) - {eps})^w``: infinitely many nonempty chunks from ``L(m)``.

    A fresh state ``s`` starts every chunk and is the only accepting state; a
    letter that completes a chunk may jump back to ``s``.
    """
    b = _Builder(m.alphabet)
    off = b.copy(m)
    s = b.new(initial=True, accepting=True)
    for p, a, q in m.edges():
        targets = [q + off]
        if q in m.accepting:
            targets.append(s)
        sources = [p + off] + ([s] if p in m.initial else [])
        for src in sources:
            for t in targets:
                b.add(src, a, t)
    return b.build()


def nba_complement(m: Nba, max_states: int = N.DEFAULT_MAX_STATES) -> Nba:
    """Rank-based complementation (level rankings with an obligation set).

    A state is a partial ranking ``f`` of the current run-DAG level, with odd
    ranks forbidden on accepting states, plus the set ``O`` of even-ranked
    states that still owe a visit to an odd rank.  Ranks never increase along
    edges; the automaton accepts when ``O`` empties infinitely often.
    """
    m = nba_quotient(nba_trim(m))
    alph = m.alphabet
    if m.states == 0:
        return nba_universal(alph)
    top = 2 * _width(m, max_states)
    b = _Builder(alph)
    index: dict[tuple, int] = {}
    todo = deque()

    def state(f: tuple[tuple[int, int], ...], obl: frozenset[int]) -> int:
        key = (f, obl)
        if key not in index:
            if len(index) >= max_states:
                raise StateBudgetExceeded(max_states)
            index[key] = b.new(accepting=not obl)
            todo.append(key)
        return index[key]

    f0 = tuple((q, top) for q in sorted(m.initial))
    b.initial.add(state(f0, frozenset()))
    while todo:
        f, obl = todo.popleft()
        s = index[(f, obl)]
        rank = dict(f)
        for a in alph:
            bound: dict[int, int] = {}
            for q, r in rank.items():
                for q2 in m.succ(q, a):
                    bound[q2] = min(bound.get(q2, r), r)
            targets = sorted(bound)
            choices = [
                [r for r in range(bound[q] + 1) if not (q in m.accepting and r % 2)]
                for q in targets
            ]
            count = 1
            for c in choices:
                count *= len(c)
            if count > max_states:
                raise StateBudgetExceeded(max_states)
            moved = set()
            for q in (obl if obl else rank):
                moved |= m.succ(q, a)
            for ranks in product(*choices):
                f2 = tuple(zip(targets, ranks))
                obl2 = frozenset(q for q, r in f2 if r % 2 == 0 and q in moved)
                b.add(s, a, state(f2, obl2))
    return b.build()


def nba_quotient(m: Nba) -> Nba:
    """Merge bisimilar states (same acceptance, same successor classes)."""
    block = [int(q in m.accepting) for q in range(m.states)]
    count = len(set(block))
    while True:
        sigs: dict[tuple, int] = {}
        new = []
        for q in range(m.states):
            sig = (
                block[q],
                tuple(
                    (a, frozenset(block[r] for r in m.succ(q, a))) for a in m.alphabet
                ),
            )
            new.append(sigs.setdefault(sig, len(sigs)))
        block = new
        if len(sigs) == count:
            break
        count = len(sigs)
    if count == m.states:
        return m
    b = _Builder(m.alphabet)
    for _ in range(count):
        b.new()
    for q in range(m.states):
        if q in m.initial:
            b.initial.add(block[q])
        if q in m.accepting:
            b.accepting.add(block[q])
    for p, a, q in m.edges():
        b.add(block[p], a, block[q])
    return b.build()


def _width(m: Nba, max_states: int) -> int:
    """Largest set of states reachable simultaneously (the run-DAG width)."""
    start = frozenset(m.initial)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for a in m.alphabet:
            nxt = frozenset(r for q in cur for r in m.succ(q, a))
            if nxt not in seen:
                if len(seen) >= max_states:
                    raise StateBudgetExceeded(max_states)
                seen.add(nxt)
                todo.append(nxt)
    return max(len(x) for x in seen)


# -- classical LDL over infinite words -------------------------------------------------


class LdloCompiler:
    """Büchi automata for LDL formulas over infinite words.

    Finite-word path parts are compiled by :class:`wldl.translate.LdlCompiler`.
    Negation is pushed through conjunction, steps, tests, choice and
    omega-diamonds with a non-``true`` body; elsewhere it complements.
    """

    def __init__(self, alphabet: Sequence[str], max_states: int = N.DEFAULT_MAX_STATES):
        from ..translate import LdlCompiler

        self.finite = LdlCompiler(alphabet, max_states)
        self.alphabet = self.finite.alphabet
        self.max_states = max_states
        self.all = nba_universal(self.alphabet)
        self._pos: dict[int, Nba] = {}
        self._neg: dict[int, Nba] = {}
        self._keep: dict[int, A.Node] = {}

    def formula(self, f: A.Ldl) -> Nba:
        hit = self._pos.get(id(f))
        if hit is None:
            hit = self._pos[id(f)] = self._formula(f)
            self._keep[id(f)] = f
        return hit

    def _formula(self, f: A.Ldl) -> Nba:
        if isinstance(f, A.LTrue):
            return self.all
        if isinstance(f, A.LAtom):
            return nba_letter_then([f.letter], self.all)
        if isinstance(f, A.LNot):
            return self.negated(f.arg)
        if isinstance(f, A.LAnd):
            return nba_intersect(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.LDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not an LDL formula: {f!r}")

    def diamond(self, p: A.LPath, body: A.Ldl) -> Nba:
        if isinstance(p, A.LStep):
            return nba_letter_then(A.prop_letters(p.prop, self.alphabet), self.formula(body))
        if isinstance(p, A.LTest):
            return nba_intersect(self.formula(p.formula), self.formula(body))
        if isinstance(p, A.LChoice):
            return nba_union(self.diamond(p.left, body), self.diamond(p.right, body))
        if isinstance(p, A.LSeq):
            return nba_prefix(self.finite.diamond(p.left, _TRUE), self.diamond(p.right, body))
        if isinstance(p, A.LOmega):
            if not isinstance(body, A.LTrue):
                return nba_empty(self.alphabet)
            return nba_omega(self.finite.diamond(p.body, _TRUE))
        raise TypeError(f"not an omega path: {p!r}")

    def negated(self, f: A.Ldl) -> Nba:
        hit = self._neg.get(id(f))
        if hit is None:
            hit = self._neg[id(f)] = self._negated(f)
            self._keep[id(f)] = f
        return hit

    def _negated(self, f: A.Ldl) -> Nba:
        alph = self.alphabet
        if isinstance(f, A.LTrue):
            return nba_empty(alph)
        if isinstance(f, A.LAtom):
            return nba_letter_then([a for a in alph if a != f.letter], self.all)
        if isinstance(f, A.LNot):
            return self.formula(f.arg)
        if isinstance(f, A.LAnd):
            return nba_union(self.negated(f.left), self.negated(f.right))
        if isinstance(f, A.LDiamond):
            return self.negated_diamond(f.path, f.body)
        raise TypeError(f"not an LDL formula: {f!r}")

    def negated_diamond(self, p: A.LPath, body: A.Ldl) -> Nba:
        alph = self.alphabet
        if isinstance(p, A.LStep):
            letters = A.prop_letters(p.prop, alph)
            return nba_union(
                nba_letter_then([a for a in alph if a not in letters], self.all),
                nba_letter_then(letters, self.negated(body)),
            )
        if isinstance(p, A.LTest):
            return nba_union(self.negated(p.formula), self.negated(body))
        if isinstance(p, A.LChoice):
            return nba_intersect(
                self.negated_diamond(p.left, body), self.negated_diamond(p.right, body)
            )
        if isinstance(p, A.LOmega) and not isinstance(body, A.LTrue):
            return self.all
        return nba_complement(self.diamond(p, body), self.max_states)


def ldlo_to_nba(
    f: A.Ldl, alphabet: Sequence[str], max_states: int = N.DEFAULT_MAX_STATES
) -> Nba:
    """A Büchi automaton accepting exactly the infinite words satisfying ``f``."""
    if not alphabet:
        raise UsageError("the alphabet must be nonempty")
    return LdloCompiler(alphabet, max_states).formula(f)


def sat_ldlo(
    f: A.Ldl,
    word: Lasso,
    alphabet: Sequence[str] | None = None,
    max_states: int = N.DEFAULT_MAX_STATES,
) -> bool:
    return ldlo_to_nba(f, alphabet_for(f, word, alphabet), max_states).accepts(word)


def alphabet_for(node: A.Node | None, word: Lasso, alphabet: Sequence[str] | None = None):
    """The given alphabet extended by the letters of ``word`` and ``node``."""
    letters = set(alphabet or ()) | set(word.stem) | set(word.loop)
    if node is not None:
        for n in A.walk(node):
            if isinstance(n, (A.LAtom, A.PAtom)):
                letters.add(n.letter)
            elif isinstance(n, A.Sym) and n.letter is not None:
                letters.add(n.letter)
    return tuple(sorted(letters))
