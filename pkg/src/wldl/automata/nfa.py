"""Unweighted finite automata on finite words.

All constructions are epsilon-free.  Results are trimmed so state counts stay
small enough for the later products.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..errors import StateBudgetExceeded

DEFAULT_MAX_STATES = 2**16


@dataclass(frozen=True, eq=False)
class Nfa:
    alphabet: tuple[str, ...]
    states: int
    initial: frozenset[int]
    accepting: frozenset[int]
    delta: tuple[Mapping[str, frozenset[int]], ...]

    def succ(self, q: int, a: str) -> frozenset[int]:
        return self.delta[q].get(a, frozenset())

    def step(self, qs: Iterable[int], a: str) -> frozenset[int]:
        out: set[int] = set()
        for q in qs:
            out |= self.succ(q, a)
        return frozenset(out)

    def accepts(self, word: str) -> bool:
        cur = self.initial
        for a in word:
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & self.accepting)

    @property
    def accepts_empty(self) -> bool:
        return bool(self.initial & self.accepting)

    def edges(self):
        for q, row in enumerate(self.delta):
            for a, targets in row.items():
                for r in targets:
                    yield q, a, r


@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete deterministic automaton; ``delta[q][i]`` follows ``alphabet[i]``."""

    alphabet: tuple[str, ...]
    states: int
    initial: int
    accepting: frozenset[int]
    delta: tuple[tuple[int, ...], ...]

    def run(self, word: str) -> int:
        index = {a: i for i, a in enumerate(self.alphabet)}
        q = self.initial
        for a in word:
            q = self.delta[q][index[a]]
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.accepting


class _Builder:
    def __init__(self, alphabet: Sequence[str]):
        self.alphabet = tuple(alphabet)
        self.delta: list[dict[str, set[int]]] = []
        self.initial: set[int] = set()
        self.accepting: set[int] = set()

    def new(self, initial: bool = False, accepting: bool = False) -> int:
        self.delta.append({})
        q = len(self.delta) - 1
        if initial:
            self.initial.add(q)
        if accepting:
            self.accepting.add(q)
        return q

    def add(self, p: int, a: str, q: int) -> None:
        self.delta[p].setdefault(a, set()).add(q)

    def copy(self, m: Nfa) -> int:
        """Copy ``m``'s states and transitions; returns the offset."""
        off = len(self.delta)
        for row in m.delta:
            self.delta.append({a: {q + off for q in t} for a, t in row.items()})
        return off

    def build(self) -> Nfa:
        return trim(
            Nfa(
                self.alphabet,
                len(self.delta),
                frozenset(self.initial),
                frozenset(self.accepting),
                tuple({a: frozenset(t) for a, t in row.items() if t} for row in self.delta),
            )
        )


def trim(m: Nfa) -> Nfa:
    """Drop states that are unreachable or cannot reach acceptance."""
    fwd = _closure(m.initial, lambda q: (r for t in m.delta[q].values() for r in t))
    back: dict[int, set[int]] = {}
    for p, _, q in m.edges():
        back.setdefault(q, set()).add(p)
    bwd = _closure(m.accepting, lambda q: back.get(q, ()))
    keep = sorted(fwd & bwd)
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
    return Nfa(
        m.alphabet,
        len(keep),
        frozenset(index[q] for q in m.initial if q in index),
        frozenset(index[q] for q in m.accepting if q in index),
        tuple(delta),
    )


def _closure(start: Iterable[int], nxt) -> set[int]:
    seen = set(start)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for r in nxt(q):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


# -- basic languages ----------------------------------------------------------


def empty(alphabet: Sequence[str]) -> Nfa:
    return Nfa(tuple(alphabet), 0, frozenset(), frozenset(), ())


def universal(alphabet: Sequence[str]) -> Nfa:
    """A*"""
    b = _Builder(alphabet)
    q = b.new(initial=True, accepting=True)
    for a in alphabet:
        b.add(q, a, q)
    return b.build()


def epsilon(alphabet: Sequence[str]) -> Nfa:
    b = _Builder(alphabet)
    b.new(initial=True, accepting=True)
    return b.build()


def nonempty(alphabet: Sequence[str]) -> Nfa:
    """A+"""
    return min_length(alphabet, 1)


def min_length(alphabet: Sequence[str], k: int) -> Nfa:
    """Words of length at least ``k``."""
    b = _Builder(alphabet)
    qs = [b.new(initial=(i == 0), accepting=(i == k)) for i in range(k + 1)]
    for i in range(k):
        for a in alphabet:
            b.add(qs[i], a, qs[i + 1])
    for a in alphabet:
        b.add(qs[k], a, qs[k])
    return b.build()


def letter_then(letters: Iterable[str], cont: Nfa) -> Nfa:
    """``{a v : a in letters, v in L(cont)}``"""
    b = _Builder(cont.alphabet)
    off = b.copy(cont)
    b.accepting |= {q + off for q in cont.accepting}
    s = b.new(initial=True)
    for a in letters:
        for q in cont.initial:
            b.add(s, a, q + off)
    return b.build()


# -- boolean and rational operations ------------------------------------------------


def union(m1: Nfa, m2: Nfa) -> Nfa:
    b = _Builder(m1.alphabet)
    for m in (m1, m2):
        off = b.copy(m)
        b.initial |= {q + off for q in m.initial}
        b.accepting |= {q + off for q in m.accepting}
    return b.build()


def intersect(m1: Nfa, m2: Nfa) -> Nfa:
    b = _Builder(m1.alphabet)
    index: dict[tuple[int, int], int] = {}
    todo = deque()

    def state(p: int, q: int) -> int:
        key = (p, q)
        if key not in index:
            index[key] = b.new(accepting=(p in m1.accepting and q in m2.accepting))
            todo.append(key)
        return index[key]

    for p in m1.initial:
        for q in m2.initial:
            b.initial.add(state(p, q))
    while todo:
        p, q = todo.popleft()
        s = index[(p, q)]
        for a, t1 in m1.delta[p].items():
            for p2 in t1:
                for q2 in m2.succ(q, a):
                    b.add(s, a, state(p2, q2))
    return b.build()


def concat(m1: Nfa, m2: Nfa) -> Nfa:
    b = _Builder(m1.alphabet)
    o1 = b.copy(m1)
    o2 = b.copy(m2)
    b.initial |= {q + o1 for q in m1.initial}
    if m1.accepts_empty:
        b.initial |= {q + o2 for q in m2.initial}
    b.accepting |= {q + o2 for q in m2.accepting}
    if m2.accepts_empty:
        b.accepting |= {q + o1 for q in m1.accepting}
    for p, a, q in m1.edges():
        if q in m1.accepting:
            for r in m2.initial:
                b.add(p + o1, a, r + o2)
    return b.build()


def plus(m: Nfa) -> Nfa:
    """L(m)^+ (contains the empty word exactly when L(m) does)."""
    b = _Builder(m.alphabet)
    off = b.copy(m)
    b.initial |= {q + off for q in m.initial}
    b.accepting |= {q + off for q in m.accepting}
    for p, a, q in m.edges():
        if q in m.accepting:
            for r in m.initial:
                b.add(p + off, a, r + off)
    return b.build()


def star(m: Nfa) -> Nfa:
    return union(epsilon(m.alphabet), plus(m))


# -- determinization ---------------------------------------------------------------


def determinize(m: Nfa, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
    """Subset construction; the result is complete (it may contain a sink)."""
    start = frozenset(m.initial)
    index = {start: 0}
    order = [start]
    delta: list[tuple[int, ...]] = []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for a in m.alphabet:
            nxt = m.step(cur, a)
            if nxt not in index:
                if len(order) >= max_states:
                    raise StateBudgetExceeded(max_states)
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        delta.append(tuple(row))
        i += 1
    accepting = frozenset(k for k, s in enumerate(order) if s & m.accepting)
    return Dfa(m.alphabet, len(order), 0, accepting, tuple(delta))


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part."""
    reach = sorted(_closure([d.initial], lambda q: d.delta[q]))
    block = {q: int(q in d.accepting) for q in reach}
    while True:
        sigs: dict[tuple, int] = {}
        new = {}
        for q in reach:
            sig = (block[q], *(block[r] for r in d.delta[q]))
            new[q] = sigs.setdefault(sig, len(sigs))
        if len(sigs) == len(set(block.values())):
            block = new
            break
        block = new
    # renumber so the initial state is 0 and numbering follows BFS order
    order: dict[int, int] = {}
    todo = deque([block[d.initial]])
    rep = {}
    for q in reach:
        rep.setdefault(block[q], q)
    order[block[d.initial]] = 0
    while todo:
        b = todo.popleft()
        for r in d.delta[rep[b]]:
            if block[r] not in order:
                order[block[r]] = len(order)
                todo.append(block[r])
    n = len(order)
    delta = [None] * n
    accepting = set()
    for b, i in order.items():
        q = rep[b]
        delta[i] = tuple(order[block[r]] for r in d.delta[q])
        if q in d.accepting:
            accepting.add(i)
    return Dfa(d.alphabet, n, 0, frozenset(accepting), tuple(delta))


def complement(d: Dfa) -> Dfa:
    return Dfa(
        d.alphabet,
        d.states,
        d.initial,
        frozenset(range(d.states)) - d.accepting,
        d.delta,
    )


def dfa_to_nfa(d: Dfa) -> Nfa:
    b = _Builder(d.alphabet)
    for q in range(d.states):
        b.new(initial=(q == d.initial), accepting=(q in d.accepting))
    for q, row in enumerate(d.delta):
        for a, r in zip(d.alphabet, row):
            b.add(q, a, r)
    return b.build()


def min_dfa(m: Nfa, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
    return minimize(determinize(m, max_states))


def nfa_complement(m: Nfa, max_states: int = DEFAULT_MAX_STATES) -> Nfa:
    return dfa_to_nfa(minimize(complement(min_dfa(m, max_states))))


def nfa_product(m1: Nfa, m2: Nfa) -> Nfa:
    return intersect(m1, m2)


def nfa_union(m1: Nfa, m2: Nfa) -> Nfa:
    return union(m1, m2)


def nfa_determinize(m: Nfa, max_states: int = DEFAULT_MAX_STATES) -> Dfa:
    return determinize(m, max_states)


def dfa_complement(d: Dfa) -> Dfa:
    return complement(d)
