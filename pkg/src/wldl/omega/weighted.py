"""Weighted LDL and omega-expressions on lasso words.

Values are computed for the Boolean and min-plus semirings, the two whose
infinite sums and products are effective here: a sum over runs is a minimum
and an infinite product of naturals is finite iff all but finitely many
factors are 0.  Boolean values are handled as min-plus costs (true = 0,
false = inf).

Two independent routes are provided:

* :class:`OmegaEvaluator` works node by node on the lasso (classical
  subformulas through :class:`~wldl.omega.classical.LassoChecker`).  Cauchy products
  and omega-iterations compile only their finite-word parts to weighted
  automata and solve shortest-path problems on the product with the lasso.
* :func:`wldlo_to_wba` builds a weighted Büchi automaton for the whole
  formula; :func:`wba_eval` evaluates it on a lasso.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence

import networkx as nx

from .. import ast as A
from ..automata import nfa as N
from ..automata.wfa import Row, Wfa, WfaBuilder, gre_to_wfa, wfa_eval
from ..errors import (
    ImproperIteration,
    NonCommutativeHadamard,
    NotIdempotent,
    UnsupportedOmegaSemiring,
    UsageError,
)
from ..semiring import INF, Semiring
from .buchi import LdloCompiler, Nba, alphabet_for, can_reach
from .classical import LassoChecker
from .lasso import Lasso


def require_lasso_support(S: Semiring) -> None:
    if not S.lasso_omega_supported:
        raise UnsupportedOmegaSemiring(
            f"omega-word values are computed only over boolean and minplus, not {S.name}"
        )


def to_cost(S: Semiring, value: Any):
    if S.name == "boolean":
        return 0 if value else INF
    return value


def from_cost(S: Semiring, cost) -> Any:
    if S.name == "boolean":
        return cost is not INF
    return cost


def _cadd(a, b):
    if a is INF:
        return b
    if b is INF:
        return a
    return min(a, b)


def _cmul(a, b):
    if a is INF or b is INF:
        return INF
    return a + b


def _text(node: A.Node) -> str:
    from ..printer import to_text

    return to_text(node)


def _min_cost_to(edges: Iterable[tuple[Hashable, Hashable, int]], exits: Mapping[Hashable, int]):
    """For every node, the least ``path cost + exit cost`` over paths to an exit."""
    sink = ("__sink__",)
    g = nx.DiGraph()
    for u, v, w in edges:
        if w is INF:
            continue
        if g.has_edge(v, u):
            g[v][u]["weight"] = min(g[v][u]["weight"], w)
        else:
            g.add_edge(v, u, weight=w)
    for v, c in exits.items():
        if c is INF:
            continue
        if g.has_edge(sink, v):
            g[sink][v]["weight"] = min(g[sink][v]["weight"], c)
        else:
            g.add_edge(sink, v, weight=c)
    if sink not in g:
        return {}
    return nx.single_source_dijkstra_path_length(g, sink)


def _zero_cycle_nodes(edges: Sequence[tuple[Hashable, Hashable, int]], candidates) -> set:
    """Candidates lying on a cycle all of whose edges cost 0."""
    g = nx.DiGraph()
    g.add_edges_from((u, v) for u, v, w in edges if w == 0)
    cand = {c for c in candidates if c in g}
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


@dataclass(frozen=True)
class _CostWfa:
    states: int
    initial: tuple
    final: tuple
    trans: Mapping[str, tuple[tuple[tuple[int, Any], ...], ...]]

    @classmethod
    def of(cls, m: Wfa) -> "_CostWfa":
        S = m.semiring
        return cls(
            m.states,
            tuple(to_cost(S, x) for x in m.initial),
            tuple(to_cost(S, x) for x in m.final),
            {
                a: tuple(tuple((q, to_cost(S, w)) for q, w in row) for row in rows)
                for a, rows in m.trans.items()
            },
        )


def _prefix_costs(t: _CostWfa, word: Lasso, after: Sequence) -> tuple:
    """``min over u of ||t||(u) + after[node reached after u]`` for every start node."""
    edges = []
    exits = {}
    for j in range(word.nodes):
        nj = word.next(j)
        rows = t.trans[word.letter(j)]
        for p in range(t.states):
            for q, w in rows[p]:
                edges.append(((p, j), (q, nj), w))
            exits[(p, j)] = _cmul(t.final[p], after[j])
    dist = _min_cost_to(edges, exits)
    out = []
    for i in range(word.nodes):
        best = INF
        for q in range(t.states):
            d = dist.get((q, i), INF)
            best = _cadd(best, _cmul(t.initial[q], d))
        out.append(best)
    return tuple(out)


def _omega_costs(t: _CostWfa, word: Lasso) -> tuple:
    """``min over w = w_0 w_1 ... of sum_i ||t||(w_i)`` for every start node.

    A fresh state ``s`` begins each chunk; an infinite sum is finite iff the
    run ends in a zero-cost cycle through ``s``.
    """
    s = "s"
    edges = []
    for j in range(word.nodes):
        nj = word.next(j)
        rows = t.trans[word.letter(j)]
        for p in range(t.states):
            for q, w in rows[p]:
                sources = [((p, j), w)]
                if t.initial[p] is not INF:
                    sources.append(((s, j), _cmul(t.initial[p], w)))
                for src, c in sources:
                    edges.append((src, (q, nj), c))
                    if t.final[q] is not INF:
                        edges.append((src, (s, nj), _cmul(c, t.final[q])))
    good = _zero_cycle_nodes(edges, [(s, j) for j in range(word.nodes)])
    dist = _min_cost_to(edges, {g: 0 for g in good})
    return tuple(dist.get((s, i), INF) for i in range(word.nodes))


class OmegaEvaluator:
    """Values of omega-formulas and omega-expressions at every node of a lasso."""

    def __init__(
        self,
        semiring: Semiring,
        alphabet: Sequence[str],
        word: Lasso,
        max_states: int = N.DEFAULT_MAX_STATES,
    ):
        from ..translate import WfaCompiler

        require_lasso_support(semiring)
        self.S = semiring
        self.word = word
        self.alphabet = tuple(sorted(set(alphabet)))
        self.max_states = max_states
        self.finite = WfaCompiler(semiring, self.alphabet, max_states)
        self.classical = LassoChecker(self.alphabet, word, max_states)
        self._val: dict[int, tuple] = {}
        self._dia: dict[tuple[int, int], tuple] = {}
        self._keep: dict[int, A.Node] = {}

    def _const(self, value) -> tuple:
        return (to_cost(self.S, value),) * self.word.nodes

    # formulas

    def formula(self, f: A.Weighted) -> tuple:
        hit = self._val.get(id(f))
        if hit is None:
            hit = self._val[id(f)] = self._formula(f)
            self._keep[id(f)] = f
        return hit

    def _formula(self, f: A.Weighted) -> tuple:
        if isinstance(f, A.Const):
            return self._const(f.value)
        if isinstance(f, A.Classical):
            return tuple(0 if x else INF for x in self.classical.formula(f.formula))
        if isinstance(f, A.OPlus):
            return tuple(map(_cadd, self.formula(f.left), self.formula(f.right)))
        if isinstance(f, A.OTimes):
            return tuple(map(_cmul, self.formula(f.left), self.formula(f.right)))
        if isinstance(f, A.WDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not an omega weighted formula: {f!r}")

    def diamond(self, p: A.WPath, body: A.Weighted) -> tuple:
        key = (id(p), id(body))
        hit = self._dia.get(key)
        if hit is None:
            hit = self._dia[key] = self._diamond(p, body)
            self._keep[id(p)] = p
            self._keep[id(body)] = body
        return hit

    def _diamond(self, p: A.WPath, body: A.Weighted) -> tuple:
        word = self.word
        if isinstance(p, A.WStep):
            rest = self.formula(body)
            return tuple(
                rest[word.next(i)] if A.prop_holds(p.prop, word.letter(i)) else INF
                for i in range(word.nodes)
            )
        if isinstance(p, A.WTest):
            return tuple(map(_cmul, self.formula(p.formula), self.formula(body)))
        if isinstance(p, A.WChoice):
            return tuple(map(_cadd, self.diamond(p.left, body), self.diamond(p.right, body)))
        if isinstance(p, A.WSeq):
            t = _CostWfa.of(self.finite.diamond(p.left, A.W_TRUE))
            return _prefix_costs(t, word, self.diamond(p.right, body))
        if isinstance(p, A.WOmega):
            m = self.finite.diamond(p.body, A.W_TRUE)
            if not self.S.is_zero(wfa_eval(m, "")):
                raise ImproperIteration(p.body, _text(p.body))
            if not A.is_w_true(body):
                return (INF,) * word.nodes
            return _omega_costs(_CostWfa.of(m), word)
        raise TypeError(f"not an omega weighted path: {p!r}")

    # expressions

    def expr(self, e: A.Expr) -> tuple:
        hit = self._val.get(id(e))
        if hit is None:
            hit = self._val[id(e)] = self._expr(e)
            self._keep[id(e)] = e
        return hit

    def _expr(self, e: A.Expr) -> tuple:
        if isinstance(e, A.Sum):
            return tuple(map(_cadd, self.expr(e.left), self.expr(e.right)))
        if isinstance(e, A.Hadamard):
            return tuple(map(_cmul, self.expr(e.left), self.expr(e.right)))
        if isinstance(e, A.Cauchy):
            t = _CostWfa.of(gre_to_wfa(e.left, self.S, self.alphabet))
            return _prefix_costs(t, self.word, self.expr(e.right))
        if isinstance(e, A.Omega):
            m = gre_to_wfa(e.body, self.S, self.alphabet)
            if not self.S.is_zero(wfa_eval(m, "")):
                raise ImproperIteration(e.body, _text(e.body))
            return _omega_costs(_CostWfa.of(m), self.word)
        raise TypeError(f"not an omega expression: {e!r}")


def eval_wldlo(
    f: A.Weighted,
    word: Lasso,
    semiring: Semiring,
    alphabet: Sequence[str] | None = None,
    max_states: int = N.DEFAULT_MAX_STATES,
) -> Any:
    """``||f||_w(u v^w)`` over boolean or minplus."""
    require_lasso_support(semiring)
    ev = OmegaEvaluator(semiring, alphabet_for(f, word, alphabet), word, max_states)
    return from_cost(semiring, ev.formula(f)[0])


def eval_greo(
    e: A.Expr,
    word: Lasso,
    semiring: Semiring,
    alphabet: Sequence[str] | None = None,
    max_states: int = N.DEFAULT_MAX_STATES,
) -> Any:
    require_lasso_support(semiring)
    ev = OmegaEvaluator(semiring, alphabet_for(e, word, alphabet), word, max_states)
    return from_cost(semiring, ev.expr(e)[0])


# -- weighted Büchi automata ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Wba:
    """Weighted Büchi automaton: a run's weight is the product of its initial
    and transition weights, and it must visit ``accepting`` infinitely often."""

    semiring: Semiring
    alphabet: tuple[str, ...]
    states: int
    initial: tuple[Any, ...]
    trans: Mapping[str, tuple[Row, ...]]
    accepting: frozenset[int]

    def transitions(self):
        for a, rows in self.trans.items():
            for p, row in enumerate(rows):
                for q, w in row:
                    yield p, a, q, w

    def __call__(self, word: Lasso) -> Any:
        return wba_eval(self, word)


class WbaBuilder(WfaBuilder):
    def __init__(self, semiring: Semiring, alphabet: Sequence[str]):
        super().__init__(semiring, alphabet)
        self.accepting: set[int] = set()

    def copy_wba(self, m: Wba) -> int:
        off = len(self.initial)
        for _ in range(m.states):
            self.new()
        for p, a, q, w in m.transitions():
            self.add(p + off, a, q + off, w)
        self.accepting |= {q + off for q in m.accepting}
        return off

    def build_wba(self) -> Wba:
        m = self.build(trim=False)
        return wba_trim(Wba(m.semiring, m.alphabet, m.states, m.initial, m.trans, frozenset(self.accepting)))


def wba_trim(m: Wba) -> Wba:
    S = m.semiring
    g = nx.DiGraph()
    g.add_nodes_from(range(m.states))
    g.add_edges_from((p, q) for p, _, q, _ in m.transitions())
    good = set()
    for comp in nx.strongly_connected_components(g):
        hit = comp & m.accepting
        if hit and (len(comp) > 1 or any(g.has_edge(v, v) for v in comp)):
            good |= hit
    live = can_reach(g, good)
    reach = {q for q in range(m.states) if not S.is_zero(m.initial[q])}
    for q in list(reach):
        reach |= nx.descendants(g, q)
    keep = sorted(live & reach)
    if len(keep) == m.states:
        return m
    index = {q: i for i, q in enumerate(keep)}
    trans = {
        a: tuple(
            tuple((index[r], w) for r, w in rows[q] if r in index) for q in keep
        )
        for a, rows in m.trans.items()
    }
    return Wba(
        S,
        m.alphabet,
        len(keep),
        tuple(m.initial[q] for q in keep),
        trans,
        frozenset(index[q] for q in m.accepting if q in index),
    )


def wba_eval(m: Wba, word: Lasso) -> Any:
    """Sum (minimum) over accepting runs of the run weight, on a lasso."""
    S = m.semiring
    require_lasso_support(S)
    for a in set(word.stem) | set(word.loop):
        if a not in m.trans:
            raise UsageError(f"letter {a!r} is not in the automaton's alphabet")
    edges = []
    for j in range(word.nodes):
        nj = word.next(j)
        rows = m.trans[word.letter(j)]
        for p in range(m.states):
            for q, w in rows[p]:
                edges.append(((p, j), (q, nj), to_cost(S, w)))
    good = _zero_cycle_nodes(edges, [(f, j) for f in m.accepting for j in range(word.nodes)])
    dist = _min_cost_to(edges, {g: 0 for g in good})
    best = INF
    for q in range(m.states):
        best = _cadd(best, _cmul(to_cost(S, m.initial[q]), dist.get((q, 0), INF)))
    return from_cost(S, best)


def wba_empty(S: Semiring, alphabet: Sequence[str]) -> Wba:
    return Wba(S, tuple(alphabet), 0, (), {a: () for a in alphabet}, frozenset())


def wba_constant(S: Semiring, alphabet: Sequence[str], k: Any) -> Wba:
    b = WbaBuilder(S, alphabet)
    q = b.new(initial=k)
    b.accepting.add(q)
    for a in alphabet:
        b.add(q, a, q, S.one)
    return b.build_wba()


def wba_from_nba(S: Semiring, m: Nba) -> Wba:
    b = WbaBuilder(S, m.alphabet)
    for q in range(m.states):
        b.new(initial=S.one if q in m.initial else None)
    for p, a, q in m.edges():
        b.add(p, a, q, S.one)
    b.accepting |= set(m.accepting)
    return b.build_wba()


def wba_sum(m1: Wba, m2: Wba) -> Wba:
    b = WbaBuilder(m1.semiring, m1.alphabet)
    for m in (m1, m2):
        off = b.copy_wba(m)
        for q in range(m.states):
            b.initial[q + off] = m.initial[q]
    return b.build_wba()


def wba_product(m1: Wba, m2: Wba) -> Wba:
    S = m1.semiring
    if not S.commutative:
        raise NonCommutativeHadamard(f"products need a commutative semiring, not {S.name}")
    b = WbaBuilder(S, m1.alphabet)
    index: dict[tuple[int, int, int], int] = {}
    todo = []

    def state(p: int, q: int, flag: int) -> int:
        key = (p, q, flag)
        if key not in index:
            index[key] = b.new()
            if flag == 1 and q in m2.accepting:
                b.accepting.add(index[key])
            todo.append(key)
        return index[key]

    for p in range(m1.states):
        for q in range(m2.states):
            w = S.mul(m1.initial[p], m2.initial[q])
            if not S.is_zero(w):
                b.initial[state(p, q, 0)] = w
    while todo:
        p, q, flag = todo.pop()
        s = index[(p, q, flag)]
        if flag == 0 and p in m1.accepting:
            nflag = 1
        elif flag == 1 and q in m2.accepting:
            nflag = 0
        else:
            nflag = flag
        for a in m1.alphabet:
            for p2, w1 in m1.trans[a][p]:
                for q2, w2 in m2.trans[a][q]:
                    b.add(s, a, state(p2, q2, nflag), S.mul(w1, w2))
    return b.build_wba()


def wba_letter_then(letters: Iterable[str], m: Wba) -> Wba:
    S = m.semiring
    b = WbaBuilder(S, m.alphabet)
    off = b.copy_wba(m)
    s = b.new(initial=S.one)
    for a in letters:
        for q in range(m.states):
            b.add(s, a, q + off, m.initial[q])
    return b.build_wba()


def wba_prefix(t: Wfa, m: Wba) -> Wba:
    """``||t|| . ||m||``: a finite-word series followed by an omega one."""
    S = m.semiring
    b = WbaBuilder(S, m.alphabet)
    o1 = b.copy(t)
    o2 = b.copy_wba(m)
    eps = wfa_eval(t, "")
    for p in range(t.states):
        b.initial[p + o1] = t.initial[p]
    for q in range(m.states):
        b.initial[q + o2] = S.mul(eps, m.initial[q])
    for a in t.alphabet:
        for p in range(t.states):
            exit_weight = S.sum(S.mul(w, t.final[r]) for r, w in t.trans[a][p])
            if S.is_zero(exit_weight):
                continue
            for q in range(m.states):
                b.add(p + o1, a, q + o2, S.mul(exit_weight, m.initial[q]))
    return b.build_wba()


def wba_omega(t: Wfa) -> Wba:
    """``||t||^w`` for proper ``t``: a fresh accepting state starts each chunk."""
    S = t.semiring
    b = WbaBuilder(S, t.alphabet)
    off = b.copy(t)
    s = b.new(initial=S.one)
    b.accepting.add(s)
    for p, a, q, w in t.transitions():
        sources = [(p + off, w)]
        if not S.is_zero(t.initial[p]):
            sources.append((s, S.mul(t.initial[p], w)))
        for src, c in sources:
            b.add(src, a, q + off, c)
            b.add(src, a, s, S.mul(c, t.final[q]))
    return b.build_wba()


class WbaCompiler:
    def __init__(
        self,
        semiring: Semiring,
        alphabet: Sequence[str],
        max_states: int = N.DEFAULT_MAX_STATES,
    ):
        from ..translate import WfaCompiler

        if not semiring.idempotent:
            raise NotIdempotent(
                f"weighted Büchi compilation needs an idempotent semiring, not {semiring.name}"
            )
        if not semiring.commutative:
            raise NonCommutativeHadamard(f"{semiring.name} is not commutative")
        self.S = semiring
        self.finite = WfaCompiler(semiring, alphabet, max_states)
        self.alphabet = self.finite.alphabet
        self.nba = LdloCompiler(self.alphabet, max_states)

    def formula(self, f: A.Weighted) -> Wba:
        S = self.S
        if isinstance(f, A.Const):
            return wba_constant(S, self.alphabet, f.value)
        if isinstance(f, A.Classical):
            return wba_from_nba(S, self.nba.formula(f.formula))
        if isinstance(f, A.OPlus):
            return wba_sum(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.OTimes):
            return wba_product(self.formula(f.left), self.formula(f.right))
        if isinstance(f, A.WDiamond):
            return self.diamond(f.path, f.body)
        raise TypeError(f"not an omega weighted formula: {f!r}")

    def diamond(self, p: A.WPath, body: A.Weighted) -> Wba:
        S = self.S
        if isinstance(p, A.WStep):
            return wba_letter_then(A.prop_letters(p.prop, self.alphabet), self.formula(body))
        if isinstance(p, A.WTest):
            return wba_product(self.formula(p.formula), self.formula(body))
        if isinstance(p, A.WChoice):
            return wba_sum(self.diamond(p.left, body), self.diamond(p.right, body))
        if isinstance(p, A.WSeq):
            return wba_prefix(self.finite.diamond(p.left, A.W_TRUE), self.diamond(p.right, body))
        if isinstance(p, A.WOmega):
            t = self.finite.diamond(p.body, A.W_TRUE)
            if not S.is_zero(wfa_eval(t, "")):
                raise ImproperIteration(p.body, _text(p.body))
            if not A.is_w_true(body):
                return wba_empty(S, self.alphabet)
            return wba_omega(t)
        raise TypeError(f"not an omega weighted path: {p!r}")


def wldlo_to_wba(
    f: A.Weighted,
    semiring: Semiring,
    alphabet: Sequence[str],
    max_states: int = N.DEFAULT_MAX_STATES,
) -> Wba:
    """A weighted Büchi automaton with the same omega-series (idempotent semirings)."""
    return WbaCompiler(semiring, alphabet, max_states).formula(f)
