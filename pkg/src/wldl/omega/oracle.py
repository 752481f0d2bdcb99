"""Direct bounded-unfolding evaluation on lasso words, used by tests.

Only the finite-word evaluators are reused.  A Cauchy split may cut the
word anywhere within the first ``bound`` letters from the current node; an
omega-iteration becomes a graph on lasso nodes whose edges are chunks of
length at most ``bound``.  With ``bound = |u| + 8|v|`` this is exact as long
as the finite-word parts are decided by automata with at most 8 states.
"""

from __future__ import annotations

from typing import Any, Callable

import networkx as nx

from .. import ast as A
from ..semantics import GreEvaluator, LdlChecker, WldlEvaluator
from ..semiring import INF, Semiring
from .lasso import Lasso
from .weighted import _cadd, _cmul, from_cost, require_lasso_support, to_cost

_TRUE = A.LTrue()


def default_bound(word: Lasso) -> int:
    return len(word.stem) + 8 * len(word.loop)


def _omega_graph(word: Lasso, bound: int, chunk_cost: Callable[[str], Any]) -> list[Any]:
    """Least cost of an infinite chunking from every node (INF if none)."""
    g = nx.DiGraph()
    for i in range(word.nodes):
        for k in range(1, bound + 1):
            c = chunk_cost(word.chunk(i, k))
            if c is INF:
                continue
            j = word.advance(i, k)
            if g.has_edge(i, j):
                g[i][j]["weight"] = min(g[i][j]["weight"], c)
            else:
                g.add_edge(i, j, weight=c)
    zero = nx.DiGraph()
    zero.add_edges_from((u, v) for u, v, d in g.edges(data=True) if d["weight"] == 0)
    good = set()
    for comp in nx.strongly_connected_components(zero):
        if len(comp) > 1 or any(zero.has_edge(v, v) for v in comp):
            good |= comp
    if not good:
        return [INF] * word.nodes
    rev = g.reverse(copy=True)
    rev.add_node("sink")
    for v in good:
        rev.add_edge("sink", v, weight=0)
    dist = nx.single_source_dijkstra_path_length(rev, "sink")
    return [dist.get(i, INF) for i in range(word.nodes)]


def oracle_sat_ldlo(f: A.Ldl, word: Lasso, bound: int | None = None) -> bool:
    bound = default_bound(word) if bound is None else bound
    finite = LdlChecker()
    memo: dict[tuple[int, int], bool] = {}
    dmemo: dict[tuple[int, int, int], bool] = {}
    omemo: dict[int, list] = {}
    keep = []

    def sat(g: A.Ldl, i: int) -> bool:
        key = (id(g), i)
        if key not in memo:
            keep.append(g)
            memo[key] = _sat(g, i)
        return memo[key]

    def _sat(g: A.Ldl, i: int) -> bool:
        if isinstance(g, A.LTrue):
            return True
        if isinstance(g, A.LAtom):
            return word.letter(i) == g.letter
        if isinstance(g, A.LNot):
            return not sat(g.arg, i)
        if isinstance(g, A.LAnd):
            return sat(g.left, i) and sat(g.right, i)
        if isinstance(g, A.LDiamond):
            return dia(g.path, g.body, i)
        raise TypeError(g)

    def dia(p: A.LPath, body: A.Ldl, i: int) -> bool:
        key = (id(p), id(body), i)
        if key not in dmemo:
            keep.extend((p, body))
            dmemo[key] = _dia(p, body, i)
        return dmemo[key]

    def _dia(p: A.LPath, body: A.Ldl, i: int) -> bool:
        if isinstance(p, A.LStep):
            return A.prop_holds(p.prop, word.letter(i)) and sat(body, word.next(i))
        if isinstance(p, A.LTest):
            return sat(p.formula, i) and sat(body, i)
        if isinstance(p, A.LChoice):
            return dia(p.left, body, i) or dia(p.right, body, i)
        if isinstance(p, A.LSeq):
            return any(
                finite.diamond(p.left, _TRUE, word.chunk(i, k))
                and dia(p.right, body, word.advance(i, k))
                for k in range(bound + 1)
            )
        if isinstance(p, A.LOmega):
            if not isinstance(body, A.LTrue):
                return False
            if id(p) not in omemo:
                keep.append(p)
                omemo[id(p)] = _omega_graph(
                    word, bound, lambda x: 0 if finite.diamond(p.body, _TRUE, x) else INF
                )
            return omemo[id(p)][i] == 0
        raise TypeError(p)

    return sat(f, 0)


class _WeightedOracle:
    def __init__(self, semiring: Semiring, word: Lasso, bound: int):
        require_lasso_support(semiring)
        self.S = semiring
        self.word = word
        self.bound = bound
        self.finite = WldlEvaluator(semiring)
        self.gre = GreEvaluator(semiring)
        self._keep = []
        self._memo: dict[tuple, Any] = {}

    def _cost(self, v) -> Any:
        return to_cost(self.S, v)

    def _cached(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def value(self, f: A.Weighted, i: int):
        self._keep.append(f)
        return self._cached(("v", id(f), i), lambda: self._value(f, i))

    def _value(self, f: A.Weighted, i: int):
        word = self.word
        if isinstance(f, A.Const):
            return self._cost(f.value)
        if isinstance(f, A.Classical):
            return 0 if oracle_sat_ldlo(f.formula, word.suffix(i), self.bound) else INF
        if isinstance(f, A.OPlus):
            return _cadd(self.value(f.left, i), self.value(f.right, i))
        if isinstance(f, A.OTimes):
            return _cmul(self.value(f.left, i), self.value(f.right, i))
        if isinstance(f, A.WDiamond):
            return self.dia(f.path, f.body, i)
        raise TypeError(f)

    def dia(self, p: A.WPath, body: A.Weighted, i: int):
        self._keep.extend((p, body))
        return self._cached(("d", id(p), id(body), i), lambda: self._dia(p, body, i))

    def _dia(self, p: A.WPath, body: A.Weighted, i: int):
        word = self.word
        if isinstance(p, A.WStep):
            if not A.prop_holds(p.prop, word.letter(i)):
                return INF
            return self.value(body, word.next(i))
        if isinstance(p, A.WTest):
            return _cmul(self.value(p.formula, i), self.value(body, i))
        if isinstance(p, A.WChoice):
            return _cadd(self.dia(p.left, body, i), self.dia(p.right, body, i))
        if isinstance(p, A.WSeq):
            best = INF
            for k in range(self.bound + 1):
                c = self._cost(self.finite.diamond(p.left, A.W_TRUE, word.chunk(i, k)))
                if c is not INF:
                    best = _cadd(best, _cmul(c, self.dia(p.right, body, word.advance(i, k))))
            return best
        if isinstance(p, A.WOmega):
            if not A.is_w_true(body):
                return INF
            costs = self._cached(
                ("o", id(p)),
                lambda: _omega_graph(
                    word,
                    self.bound,
                    lambda x: self._cost(self.finite.diamond(p.body, A.W_TRUE, x)),
                ),
            )
            return costs[i]
        raise TypeError(p)

    def expr(self, e: A.Expr, i: int):
        self._keep.append(e)
        return self._cached(("e", id(e), i), lambda: self._expr(e, i))

    def _expr(self, e: A.Expr, i: int):
        word = self.word
        if isinstance(e, A.Sum):
            return _cadd(self.expr(e.left, i), self.expr(e.right, i))
        if isinstance(e, A.Hadamard):
            return _cmul(self.expr(e.left, i), self.expr(e.right, i))
        if isinstance(e, A.Cauchy):
            best = INF
            for k in range(self.bound + 1):
                c = self._cost(self.gre.val(e.left, word.chunk(i, k)))
                if c is not INF:
                    best = _cadd(best, _cmul(c, self.expr(e.right, word.advance(i, k))))
            return best
        if isinstance(e, A.Omega):
            costs = self._cached(
                ("o", id(e)),
                lambda: _omega_graph(
                    word, self.bound, lambda x: self._cost(self.gre.val(e.body, x))
                ),
            )
            return costs[i]
        raise TypeError(e)


def oracle_eval_wldlo(
    f: A.Weighted, word: Lasso, semiring: Semiring, bound: int | None = None
) -> Any:
    o = _WeightedOracle(semiring, word, default_bound(word) if bound is None else bound)
    return from_cost(semiring, o.value(f, 0))


def oracle_eval_greo(
    e: A.Expr, word: Lasso, semiring: Semiring, bound: int | None = None
) -> Any:
    o = _WeightedOracle(semiring, word, default_bound(word) if bound is None else bound)
    return from_cost(semiring, o.expr(e, 0))

