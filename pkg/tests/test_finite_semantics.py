import random

import pytest

from wldl import ast as A
from wldl.errors import ImproperIteration, ImproperPlus
from wldl.generators import sample
from wldl.oracles import (
    oracle_eval_gre,
    oracle_eval_wldl,
    oracle_eval_wltl,
    oracle_sat_ldl,
)
from wldl.semantics import (
    GreEvaluator,
    WldlEvaluator,
    check_proper,
    eval_gre,
    eval_wldl,
    eval_wltl,
    improper_subterm,
    sat_ldl,
    words,
)
from wldl.semiring import BOOLEAN, MINPLUS, NAT, RAT

from conftest import AB, p


def even_power_formula(k, alphabet=("a",)):
    psi = f"(<({k} (x) [a])?> last)"
    none = " & ".join(f"!{x}" for x in alphabet)
    return p("wldl", f"<({psi}? . {psi}?)^+> [true] (+) [{none}]", "nat", alphabet)


def test_sat_ldl_examples():
    a = p("ldl", "a")
    assert sat_ldl(a, "ab") and not sat_ldl(a, "ba")
    last = p("ldl", "last")
    assert sat_ldl(last, "b") and not sat_ldl(last, "ba")


def test_test_then_step_uses_chunk_semantics():
    f = p("ldl", "<a? ; a> true")
    assert sat_ldl(f, "ab") is False
    assert oracle_sat_ldl(f, "ab") is False
    # the test sees the chunk it is given, so a two-letter chunk is needed
    assert sat_ldl(p("ldl", "<(<a ; b> true)? ; a ; b> true"), "ab") is False
    assert sat_ldl(p("ldl", "<(a)? ; b> true"), "b") is False


def test_ldl_plus_bound():
    f = p("ldl", "<(true?)^+> true")
    assert not sat_ldl(f, "")
    assert sat_ldl(f, "a")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_example_closed_form(k):
    f = even_power_formula(k)
    for n in range(5):
        assert eval_wldl(f, "a" * (2 * n), NAT) == k ** (2 * n)
        assert eval_wldl(f, "a" * (2 * n + 1), NAT) == 0
    g = even_power_formula(k, AB)
    for w in ["ab", "aabaa", "b", "ba"]:
        assert eval_wldl(g, w, NAT) == 0


def test_example_values():
    f = even_power_formula(2)
    assert [eval_wldl(f, w, NAT) for w in ["", "a", "aa", "aaa", "aaaa"]] == [1, 0, 4, 0, 16]


def test_const_and_zero():
    for w in words(AB, 3):
        assert eval_wldl(A.Const(7), w, NAT) == 7
        assert eval_wldl(p("wldl", "0 (x) <(1 (x) [a])?> [true]", "nat"), w, NAT) == 0


def test_test_then_step_weighted():
    assert eval_wldl(p("wldl", "<([true])? . a> [true]", "nat"), "ab", NAT) == 1
    assert oracle_eval_wldl(p("wldl", "<([true])? . a> [true]", "nat"), "ab", NAT) == 1


def test_check_proper():
    assert check_proper(A.WStep(A.PAtom("a")), NAT)
    assert not check_proper(A.WTest(A.Const(2)), NAT)
    assert check_proper(A.WSeq(A.WTest(A.Const(2)), A.WStep(A.PAtom("a"))), NAT)


def test_improper_iteration_rejected():
    f = p("wldl", "<(2?)^+> [true]", "nat")
    with pytest.raises(ImproperIteration) as info:
        eval_wldl(f, "a", NAT)
    assert info.value.body == A.WTest(A.Const(2))
    assert improper_subterm(f, NAT) == A.WTest(A.Const(2))
    # a zero weight makes the body proper
    assert improper_subterm(p("wldl", "<(0?)^+> [true]", "nat"), NAT) is None


def test_gre_examples():
    assert eval_gre(p("gre", "2 a . 3 b", "nat"), "ab", NAT) == 6
    assert eval_gre(p("gre", "(1 a + 1 a)^+", "nat"), "aa", NAT) == 4
    assert eval_gre(p("gre", "(1 a)^+ (o) 2 a", "nat"), "a", NAT) == 2
    assert oracle_eval_gre(p("gre", "(1 a)^+", "nat"), "aaa", NAT) == 1
    with pytest.raises(ImproperPlus):
        eval_gre(p("gre", "(1 eps)^+", "nat"), "a", NAT)


def test_wltl_examples():
    box2 = p("wltl", "G* 2", "nat")
    assert eval_wltl(box2, "ab", NAT) == 4
    assert eval_wltl(box2, "abab", NAT) == 16
    until = p("wltl", "[true] U [b]", "nat")
    assert eval_wltl(until, "abb", NAT) == 2
    boxbox = p("wltl", "G* G* 2", "nat")
    for n in range(7):
        w = "ab" * n
        assert eval_wltl(boxbox, w[:n], NAT) == oracle_eval_wltl(boxbox, w[:n], NAT) == 2 ** (n * (n + 1) // 2)


@pytest.mark.parametrize("S", [NAT, RAT, MINPLUS, BOOLEAN])
def test_wldl_agrees_with_oracle(S):
    W = words(AB, 4)
    for f in sample("wldl", 60, 21, S, depth=3):
        ev = WldlEvaluator(S)
        for w in W:
            assert ev.value(f, w) == oracle_eval_wldl(f, w, S)


@pytest.mark.parametrize("S", [NAT, RAT, MINPLUS])
def test_gre_agrees_with_oracle(S):
    W = words(AB, 4)
    for e in sample("gre", 60, 22, S, depth=3):
        ev = GreEvaluator(S)
        for w in W:
            assert ev.value(e, w) == oracle_eval_gre(e, w, S)


def test_ldl_agrees_with_oracle():
    for f in sample("ldl", 150, 23, depth=4):
        for w in words(AB, 4):
            assert sat_ldl(f, w) == oracle_sat_ldl(f, w)


def test_boolean_reduction():
    for f in sample("ldl", 200, 24):
        c = A.Classical(f)
        for w in words(AB, 5):
            v = eval_wldl(c, w, BOOLEAN)
            assert v is sat_ldl(f, w)
            assert eval_wldl(c, w, NAT) == int(v)


def test_pointwise_clauses():
    rng = random.Random(5)
    fs = sample("wldl", 80, 25, NAT, depth=3)
    for _ in range(100):
        f1, f2 = rng.choice(fs), rng.choice(fs)
        w = "".join(rng.choice(AB) for _ in range(rng.randint(0, 4)))
        v1, v2 = eval_wldl(f1, w, NAT), eval_wldl(f2, w, NAT)
        assert eval_wldl(A.OPlus(f1, f2), w, NAT) == v1 + v2
        assert eval_wldl(A.OTimes(f1, f2), w, NAT) == v1 * v2
        assert eval_wldl(A.WDiamond(A.WTest(f1), f2), w, NAT) == v1 * v2


def test_iteration_truncation_is_sound():
    # rho^n for n > |w| + 1 contributes nothing when rho is proper
    for f in sample("wldl", 40, 26, NAT, depth=3):
        for n in A.walk(f):
            if isinstance(n, A.WIter):
                rho = n.body
                for w in words(AB, 3):
                    path = rho
                    for _ in range(len(w) + 1):
                        path = A.WSeq(rho, path)
                    assert oracle_eval_wldl(A.WDiamond(path, A.W_TRUE), w, NAT) == 0
