import json

import pytest

from wldl import ast as A
from wldl.automata import nfa as N
from wldl.automata.elimination import dfa_to_zero_one_re
from wldl.automata.equivalence import wfa_equiv_field
from wldl.automata.io import dump_wfa, load_wfa, wfa_from_json, wfa_to_json
from wldl.automata.wfa import (
    WfaBuilder,
    gre_to_wfa,
    wfa_cauchy,
    wfa_eval,
    wfa_eval_all,
    wfa_hadamard,
    wfa_plus,
    wfa_sum,
)
from wldl.errors import ImproperPlus, NotAField, StateBudgetExceeded, UsageError
from wldl.generators import sample
from wldl.semantics import GreEvaluator, eval_gre, words
from wldl.semiring import BOOLEAN, MINPLUS, NAT, RAT

from conftest import AB, p


def one_state(S, k, alphabet=("a",)):
    b = WfaBuilder(S, alphabet)
    q = b.new(S.one, S.one)
    b.add(q, "a", q, k)
    return b.build()


def single_letter(S, k, alphabet=("a",)):
    b = WfaBuilder(S, alphabet)
    s, t = b.new(initial=S.one), b.new(final=S.one)
    b.add(s, "a", t, k)
    return b.build()


def test_wfa_eval():
    m = one_state(NAT, 2)
    assert wfa_eval(m, "aaa") == 8
    assert wfa_eval(m, "") == 1
    with pytest.raises(UsageError):
        wfa_eval(m, "b")


def test_closure_examples():
    m2, m3 = single_letter(NAT, 2), single_letter(NAT, 3)
    assert wfa_eval(wfa_sum(m2, m3), "a") == 5
    assert wfa_eval(wfa_hadamard(m2, m3), "a") == 6
    plus = wfa_plus(m2)
    assert wfa_eval(plus, "aa") == 4 and wfa_eval(plus, "") == 0
    assert wfa_eval(wfa_cauchy(m2, m3), "aa") == 6
    with pytest.raises(ImproperPlus):
        wfa_plus(one_state(NAT, 2))


def test_gre_to_wfa_examples():
    e = gre_to_wfa(p("gre", "2 a", "nat"), NAT, AB)
    assert [e(w) for w in ["a", "", "aa"]] == [2, 0, 0]
    e = gre_to_wfa(p("gre", "2 eps", "nat"), NAT, AB)
    assert [e(w) for w in ["", "a", "ab"]] == [2, 0, 0]
    m = gre_to_wfa(p("gre", "2 a . 3 b", "nat"), NAT, AB)
    assert m("ab") == 6 == eval_gre(p("gre", "2 a . 3 b", "nat"), "ab", NAT)


@pytest.mark.parametrize("S", [NAT, RAT, MINPLUS])
def test_gre_to_wfa_random(S):
    W = words(AB, 5)
    for e in sample("gre", 300, 31, S):
        vals = wfa_eval_all(gre_to_wfa(e, S, AB), W)
        ev = GreEvaluator(S)
        assert all(vals[w] == ev.value(e, w) for w in W)


@pytest.mark.parametrize("S", [NAT, RAT, MINPLUS])
def test_closure_identities(S):
    W = words(AB, 5)
    es = sample("gre", 200, 32, S, depth=3)
    for e1, e2 in zip(es[::2], es[1::2]):
        m1, m2 = gre_to_wfa(e1, S, AB), gre_to_wfa(e2, S, AB)
        ev = GreEvaluator(S)
        for m, expr in [
            (wfa_sum(m1, m2), A.Sum(e1, e2)),
            (wfa_hadamard(m1, m2), A.Hadamard(e1, e2)),
            (wfa_cauchy(m1, m2), A.Cauchy(e1, e2)),
        ]:
            vals = wfa_eval_all(m, W)
            assert all(vals[w] == ev.value(expr, w) for w in W)
        if S.is_zero(m1("")):
            vals = wfa_eval_all(wfa_plus(m1), W)
            assert all(vals[w] == ev.value(A.Plus(e1), w) for w in W)


def test_determinize_and_complement():
    a_then_any = N.letter_then(["a"], N.universal(("a",)))
    assert N.min_dfa(a_then_any).states == 2
    d = N.min_dfa(N.letter_then(["a"], N.universal(AB)))
    assert d.states == 3  # the complete DFA keeps its sink
    for w in words(AB, 4):
        assert d.accepts(w) == w.startswith("a")
    star = N.nfa_determinize(N.universal(("a",)))
    comp = N.dfa_complement(star)
    assert not comp.accepts("a") and not comp.accepts("")
    prod = N.nfa_product(N.letter_then(["a"], N.universal(AB)), N.universal(AB))
    assert prod.accepts("ab") and not prod.accepts("ba")


def test_state_budget():
    b = N._Builder(AB)
    # (a|b)* a (a|b)^5 needs 2^6 subset states
    states = [b.new(initial=True)] + [b.new() for _ in range(5)] + [b.new(accepting=True)]
    for x in AB:
        b.add(states[0], x, states[0])
    b.add(states[0], "a", states[1])
    for i in range(1, 6):
        for x in AB:
            b.add(states[i], x, states[i + 1])
    m = b.build()
    with pytest.raises(StateBudgetExceeded):
        N.determinize(m, max_states=10)


def _dfa(f):
    from wldl.translate import ldl_to_nfa

    return N.min_dfa(ldl_to_nfa(f, AB))


def test_zero_one_re_examples():
    only_a = N.min_dfa(N.letter_then(["a"], N.epsilon(AB)))
    e = dfa_to_zero_one_re(only_a, NAT)
    assert [eval_gre(e, w, NAT) for w in ["a", "aa", ""]] == [1, 0, 0]
    a_star = N.min_dfa(N.star(N.letter_then(["a"], N.epsilon(AB))))
    e = dfa_to_zero_one_re(a_star, NAT)
    assert [eval_gre(e, w, NAT) for w in ["", "aaa", "b", "ab"]] == [1, 1, 0, 0]
    assert A.is_hadamard_free(e)
    e = dfa_to_zero_one_re(N.min_dfa(N.empty(AB)), NAT)
    assert all(eval_gre(e, w, NAT) == 0 for w in words(AB, 3))


def test_zero_one_re_random():
    for f in sample("ldl", 80, 33):
        d = _dfa(f)
        e = dfa_to_zero_one_re(d, NAT)
        assert set(A.weights_of(e)) <= {0, 1}
        ev = GreEvaluator(NAT)
        for w in words(AB, 6):
            assert ev.value(e, w) == int(d.accepts(w))


def test_equivalence_examples():
    m2 = single_letter(RAT, RAT.parse("2"))
    m11 = wfa_sum(single_letter(RAT, RAT.one), single_letter(RAT, RAT.one))
    m3 = single_letter(RAT, RAT.parse("3"))
    assert wfa_equiv_field(m2, m2).equivalent
    assert wfa_equiv_field(m2, m11).equivalent
    r = wfa_equiv_field(m2, m3)
    assert not r.equivalent and r.witness == "a"
    with pytest.raises(NotAField):
        wfa_equiv_field(single_letter(NAT, 2), single_letter(NAT, 2))


def test_equivalence_random():
    W = words(AB, 8)
    es = sample("gre", 120, 34, RAT, depth=3)
    for e1, e2 in zip(es[::2], es[1::2]):
        m1, m2 = gre_to_wfa(e1, RAT, AB), gre_to_wfa(e2, RAT, AB)
        r = wfa_equiv_field(m1, m2)
        assert r.basis_size <= m1.states + m2.states
        v1, v2 = wfa_eval_all(m1, W), wfa_eval_all(m2, W)
        if r.equivalent:
            assert v1 == v2
        else:
            assert m1(r.witness) != m2(r.witness)
            shorter = [w for w in W if len(w) < len(r.witness)]
            assert all(v1[w] == v2[w] for w in shorter)
        assert wfa_equiv_field(m1, wfa_sum(m1, gre_to_wfa(A.Sym(0, "a"), RAT, AB))).equivalent


def test_json_round_trip():
    for S in (NAT, RAT, MINPLUS, BOOLEAN):
        for e in sample("gre", 20, 35, S, depth=3):
            m = gre_to_wfa(e, S, AB)
            data = wfa_to_json(m)
            assert set(data) == {"semiring", "alphabet", "states", "initial", "final", "transitions"}
            assert all(isinstance(x, str) for x in data["initial"])
            back = load_wfa(dump_wfa(m))
            W = words(AB, 4)
            assert wfa_eval_all(back, W) == wfa_eval_all(m, W)
            assert wfa_to_json(wfa_from_json(json.loads(json.dumps(data)))) == data
