import pytest

from wldl import ast as A
from wldl.automata.wfa import wfa_eval_all
from wldl.errors import ImproperIteration, StateBudgetExceeded
from wldl.generators import sample
from wldl.omega import Lasso, eval_greo, eval_wldlo, lassos
from wldl.semantics import GreEvaluator, WldlEvaluator, eval_gre, eval_wldl, sat_ldl, words
from wldl.semiring import BOOLEAN, INF, MINPLUS, NAT, RAT
from wldl.translate import (
    gre_to_wldl,
    greo_to_wldlo,
    ldl_to_nfa,
    wldl_equiv,
    wldl_to_gre,
    wldl_to_wfa,
    wldlo_to_greo,
)

from conftest import AB, p

LAST = A.expand_last(AB)


def test_gre_to_wldl_letter_case():
    got = gre_to_wldl(A.Sym(3, "a"), AB)
    assert got == A.WDiamond(A.WTest(A.OTimes(A.Const(3), A.Classical(A.LAtom("a")))), A.Classical(LAST))


def test_gre_to_wldl_cases():
    e1, e2 = A.Sym(2, "a"), A.Sym(3, "b")
    f1, f2 = gre_to_wldl(e1, AB), gre_to_wldl(e2, AB)
    assert gre_to_wldl(A.Sym(2, None), AB) == A.OTimes(A.Const(2), A.Classical(A.no_letter(AB)))
    assert gre_to_wldl(A.Sum(e1, e2), AB) == A.OPlus(f1, f2)
    assert gre_to_wldl(A.Cauchy(e1, e2), AB) == A.WDiamond(A.WSeq(A.WTest(f1), A.WTest(f2)), A.W_TRUE)
    assert gre_to_wldl(A.Plus(e1), AB) == A.WDiamond(A.WIter(A.WTest(f1)), A.W_TRUE)
    assert gre_to_wldl(A.Hadamard(e1, e2), AB) == A.WDiamond(A.WTest(f1), f2)


def test_gre_to_wldl_is_linear():
    ratios = [A.size(gre_to_wldl(e, AB)) / A.size(e) for e in sample("gre", 1000, 41, NAT)]
    # a single letter is the worst case: the Last macro costs a fixed 15 nodes
    assert max(ratios) <= 15


def test_gre_to_wldl_shape_matches_example():
    e = p("gre", "(2 a . 2 a)^+", "nat", ("a",))
    f = gre_to_wldl(e, ("a",))
    assert [eval_wldl(f, "a" * n, NAT) for n in range(5)] == [0, 0, 4, 0, 16]


def test_wldl_to_gre_const():
    e = wldl_to_gre(A.Const(3), NAT, AB)
    one_a = A.Sum(A.Sym(1, "a"), A.Sym(1, "b"))
    assert e == A.Sum(A.Sym(3, None), A.Cauchy(A.Sym(3, None), A.Plus(one_a)))
    assert all(eval_gre(e, w, NAT) == 3 for w in words(AB, 4))


def test_wldl_to_gre_classical_true():
    e = wldl_to_gre(A.W_TRUE, NAT, AB)
    assert all(eval_gre(e, w, NAT) == 1 for w in words(AB, 5))


def test_wldl_to_gre_iteration():
    f = p("wldl", "<((2 (x) [a & last])?)^+> [true]", "nat")
    e = wldl_to_gre(f, NAT, AB)
    assert eval_gre(e, "aa", NAT) == 4 == eval_wldl(f, "aa", NAT)


def test_improper_rejected_by_translations():
    f = p("wldl", "<(2?)^+> [true]", "nat")
    with pytest.raises(ImproperIteration):
        wldl_to_gre(f, NAT, AB)
    with pytest.raises(ImproperIteration):
        wldl_to_wfa(f, NAT, AB)


@pytest.mark.parametrize("S", [NAT, RAT, MINPLUS])
def test_round_trips(S):
    W = words(AB, 4)
    for e in sample("gre", 60, 42, S):
        f = gre_to_wldl(e, AB)
        ge, we = GreEvaluator(S), WldlEvaluator(S)
        assert all(ge.value(e, w) == we.value(f, w) for w in W)
    for f in sample("wldl", 60, 43, S):
        we = WldlEvaluator(S)
        g = wldl_to_gre(f, S, AB)
        ge = GreEvaluator(S)
        vals = wfa_eval_all(wldl_to_wfa(f, S, AB), W)
        for w in W:
            v = we.value(f, w)
            assert ge.value(g, w) == v == vals[w]


def test_ldl_to_nfa_examples():
    m = ldl_to_nfa(A.LAtom("a"), AB)
    assert [m.accepts(w) for w in ["", "a", "ab", "b", "ba"]] == [False, True, True, False, False]
    m = ldl_to_nfa(A.LNot(A.LAtom("a")), AB)
    assert [m.accepts(w) for w in ["", "a", "ab", "b", "ba"]] == [True, False, False, True, True]


def test_ldl_to_nfa_random():
    for f in sample("ldl", 200, 44):
        m = ldl_to_nfa(f, AB)
        assert all(m.accepts(w) == sat_ldl(f, w) for w in words(AB, 6))


def test_ldl_to_nfa_budget():
    f = p("ldl", "!<(a + b)^+ ; a ; (a + b) ; (a + b) ; (a + b) ; (a + b)> true")
    with pytest.raises(StateBudgetExceeded):
        ldl_to_nfa(f, AB, max_states=8)
    m = ldl_to_nfa(f, AB)
    assert all(m.accepts(w) == sat_ldl(f, w) for w in words(AB, 7))


def test_wldl_to_wfa_examples():
    psi = "(<(2 (x) [a])?> last)"
    f = p("wldl", f"<({psi}? . {psi}?)^+> [true] (+) [!a]", "nat", ("a",))
    m = wldl_to_wfa(f, NAT, ("a",))
    assert [m("a" * n) for n in range(5)] == [1, 0, 4, 0, 16]
    m = wldl_to_wfa(A.Const(RAT.parse("3")), RAT, AB)
    assert all(m(w) == 3 for w in words(AB, 5))
    for f in sample("ldl", 50, 45):
        m = wldl_to_wfa(A.Classical(f), BOOLEAN, AB)
        n = ldl_to_nfa(f, AB)
        assert all(m(w) == n.accepts(w) for w in words(AB, 5))


def test_wldl_equiv_examples():
    two, three = A.Const(RAT.parse("2")), A.Const(RAT.parse("3"))
    assert wldl_equiv(two, A.OPlus(two, A.Const(RAT.zero)), AB).equivalent
    r = wldl_equiv(two, three, AB)
    assert not r.equivalent and r.witness == ""


def test_wldl_equiv_reflexive_symmetric():
    fs = sample("wldl", 30, 46, RAT, depth=3)
    for f, g in zip(fs, fs[1:]):
        assert wldl_equiv(f, f, AB).equivalent
        r1, r2 = wldl_equiv(f, g, AB), wldl_equiv(g, f, AB)
        assert r1.equivalent == r2.equivalent
        if not r1.equivalent:
            assert eval_wldl(f, r1.witness, RAT) != eval_wldl(g, r1.witness, RAT)


def test_omega_letter_example():
    # the unit weight of min-plus is 0
    f = greo_to_wldlo(p("gre-omega", "(0 a)^w", "minplus"), AB)
    assert eval_wldlo(f, Lasso("", "a"), MINPLUS) == 0
    assert eval_wldlo(f, Lasso("", "b"), MINPLUS) == INF
    f = greo_to_wldlo(p("gre-omega", "(1 a)^w", "boolean"), AB)
    assert eval_wldlo(f, Lasso("", "a"), BOOLEAN) is True
    assert eval_wldlo(f, Lasso("", "b"), BOOLEAN) is False
    # a positive cost on every chunk diverges
    f = greo_to_wldlo(p("gre-omega", "(1 a)^w", "minplus"), AB)
    assert eval_wldlo(f, Lasso("", "a"), MINPLUS) == INF


def test_omega_sum_is_homomorphic():
    e1, e2 = p("gre-omega", "(1 a)^w", "minplus"), p("gre-omega", "(2 b)^w", "minplus")
    assert greo_to_wldlo(A.Sum(e1, e2), AB) == A.OPlus(greo_to_wldlo(e1, AB), greo_to_wldlo(e2, AB))


@pytest.mark.parametrize("S", [BOOLEAN, MINPLUS])
def test_omega_round_trips(S):
    ws = list(lassos(AB, 3, 3))[::7]
    for e in sample("gre-omega", 50, 47, S):
        back = wldlo_to_greo(greo_to_wldlo(e, AB), S, AB)
        for w in ws:
            assert eval_greo(back, w, S, AB) == eval_greo(e, w, S, AB)
