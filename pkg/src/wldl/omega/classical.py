"""Exact satisfaction of LDL over infinite words, node by node on a lasso.

This avoids Büchi complementation: negation is just Boolean negation of the
per-node truth vector.  Finite-word path parts are compiled to NFAs and run
on the lasso; an omega-diamond holds at a node iff the graph of "one chunk
leads from node i to node j" has an infinite path from it.
"""

from __future__ import annotations

from typing import Sequence

import networkx as nx

from .. import ast as A
from ..automata import nfa as N
from .buchi import can_reach
from .lasso import Lasso

_TRUE = A.LTrue()


def chunk_ends(m: N.Nfa, word: Lasso, start: int, nonempty: bool = False) -> set[int]:
    """Nodes ``j`` such that some chunk from ``start`` to ``j`` is accepted by ``m``."""
    ends = set()
    if not nonempty and m.accepts_empty:
        ends.add(start)
    seen = set()
    todo = []
    for q in m.initial:
        for r in m.succ(q, word.letter(start)):
            todo.append((r, word.next(start)))
    while todo:
        q, j = todo.pop()
        if (q, j) in seen:
            continue
        seen.add((q, j))
        if q in m.accepting:
            ends.add(j)
        for r in m.succ(q, word.letter(j)):
            todo.append((r, word.next(j)))
    return ends


class LassoChecker:
    def __init__(
        self,
        alphabet: Sequence[str],
        word: Lasso,
        max_states: int = N.DEFAULT_MAX_STATES,
    ):
        from ..translate import LdlCompiler

        self.word = word
        self.finite = LdlCompiler(alphabet, max_states)
        self._val: dict[int, tuple[bool, ...]] = {}
        self._dia: dict[tuple[int, int], tuple[bool, ...]] = {}
        self._keep: dict[int, A.Node] = {}

    def formula(self, f: A.Ldl) -> tuple[bool, ...]:
        hit = self._val.get(id(f))
        if hit is None:
            hit = self._val[id(f)] = self._formula(f)
            self._keep[id(f)] = f
        return hit

    def _formula(self, f: A.Ldl) -> tuple[bool, ...]:
        word = self.word
        n = word.nodes
        if isinstance(f, A.LTrue):
            return (True,) * n
        if isinstance(f, A.LAtom):
            return tuple(word.letter(i) == f.letter for i in range(n))
        if isinstance(f, A.LNot):
            return tuple(not x for x in self.formula(f.arg))
        if isinstance(f, A.LAnd):
            return tuple(x and y for x, y in zip(self.formula(f.left), self.formula(f.right)))
        if isinstance(f, A.LDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not an LDL formula: {f!r}")

    def diamond(self, p: A.LPath, body: A.Ldl) -> tuple[bool, ...]:
        key = (id(p), id(body))
        hit = self._dia.get(key)
        if hit is None:
            hit = self._dia[key] = self._diamond(p, body)
            self._keep[id(p)] = p
            self._keep[id(body)] = body
        return hit

    def _diamond(self, p: A.LPath, body: A.Ldl) -> tuple[bool, ...]:
        word = self.word
        n = word.nodes
        if isinstance(p, A.LStep):
            rest = self.formula(body)
            return tuple(
                A.prop_holds(p.prop, word.letter(i)) and rest[word.next(i)] for i in range(n)
            )
        if isinstance(p, A.LTest):
            return tuple(x and y for x, y in zip(self.formula(p.formula), self.formula(body)))
        if isinstance(p, A.LChoice):
            return tuple(
                x or y for x, y in zip(self.diamond(p.left, body), self.diamond(p.right, body))
            )
        if isinstance(p, A.LSeq):
            m = self.finite.diamond(p.left, _TRUE)
            rest = self.diamond(p.right, body)
            return tuple(any(rest[j] for j in chunk_ends(m, word, i)) for i in range(n))
        if isinstance(p, A.LOmega):
            if not isinstance(body, A.LTrue):
                return (False,) * n
            m = self.finite.diamond(p.body, _TRUE)
            g = nx.DiGraph()
            g.add_nodes_from(range(n))
            for i in range(n):
                g.add_edges_from((i, j) for j in chunk_ends(m, word, i, nonempty=True))
            cyclic = set()
            for comp in nx.strongly_connected_components(g):
                if len(comp) > 1 or any(g.has_edge(v, v) for v in comp):
                    cyclic |= comp
            live = can_reach(g, cyclic)
            return tuple(i in live for i in range(n))
        raise TypeError(f"not an omega path: {p!r}")
