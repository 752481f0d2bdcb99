import random

import pytest

from wldl import ast as A
from wldl.errors import NotIdempotent, StateBudgetExceeded, UnsupportedOmegaSemiring
from wldl.generators import sample
from wldl.omega import (
    Lasso,
    LassoChecker,
    eval_greo,
    eval_wldlo,
    lassos,
    ldlo_to_nba,
    nba_complement,
    oracle_eval_greo,
    oracle_eval_wldlo,
    oracle_sat_ldlo,
    primitive_root,
    sat_ldlo,
    wldlo_to_wba,
)
from wldl.omega.weighted import wba_eval
from wldl.semiring import BOOLEAN, INF, MINPLUS, NAT, RAT
from wldl.translate import greo_to_wldlo, wldlo_to_greo

from conftest import AB, p

L = Lasso.parse


def test_lasso_basics():
    w = L("ab:ba")
    assert (w.stem, w.loop) == ("ab", "ba")
    assert str(L(":a")) == ":a"
    assert w.prefix(7) == "abbabab"
    with pytest.raises(ValueError):
        L("ab:")
    assert primitive_root("abab") == "ab"


def test_canonical_examples():
    assert L("ab:abab").canonical() == L(":ab")
    assert L("a:ba").canonical() == L(":ab")
    assert L("ab:abab").same_word(L("a:ba"))
    assert not L(":ab").same_word(L(":ba"))


def test_canonical_random():
    rng = random.Random(51)

    def rand_word(lo, hi):
        return "".join(rng.choice(AB) for _ in range(rng.randint(lo, hi)))

    for _ in range(500):
        stem = rand_word(0, 3)
        loop = rand_word(1, 2)
        u = Lasso(stem, loop)
        # an equal word written differently, or an unrelated one
        if rng.random() < 0.5:
            k = rng.randint(0, 3)
            node = u.advance(0, len(stem) + k)
            v = Lasso(u.prefix(len(stem) + k), u.chunk(node, len(loop)) * rng.randint(1, 2))
        else:
            v = Lasso(rand_word(0, 3), rand_word(1, 2))
        same = u.prefix(64) == v.prefix(64)
        assert (u.canonical() == v.canonical()) == same
        c = u.canonical()
        assert c.prefix(64) == u.prefix(64)
        assert c.loop == primitive_root(c.loop)


def test_sat_ldlo_examples():
    f = p("ldl-omega", "<(a)^w> true")
    assert sat_ldlo(f, L(":a"), AB)
    assert not sat_ldlo(f, L("b:a"), AB)
    assert sat_ldlo(p("ldl-omega", "true"), L("ab:b"), AB)
    assert sat_ldlo(p("ldl-omega", "<a> true"), L("ab:b"), AB)
    # the omega clause with a body other than true is false
    assert not sat_ldlo(p("ldl-omega", "<(a)^w> a"), L(":a"), AB)


def test_nba_examples():
    m = ldlo_to_nba(p("ldl-omega", "<(a)^w> true"), AB)
    assert m.accepts(L(":a")) and not m.accepts(L("a:b"))
    # chunks only need to start with a: a . ab . ab ...
    assert m.accepts(L("a:ab"))
    empty = ldlo_to_nba(p("ldl-omega", "!true"), AB)
    assert not any(empty.accepts(w) for w in lassos(AB, 2, 2))


def test_nba_complement():
    for f in sample("ldl-omega", 30, 52):
        m = ldlo_to_nba(f, AB)
        c = nba_complement(m)
        for w in lassos(AB, 2, 2):
            assert c.accepts(w) != m.accepts(w)


def test_ldlo_agrees_with_oracle():
    ws = list(lassos(AB, 3, 3))
    rng = random.Random(53)
    for f in sample("ldl-omega", 100, 54):
        for w in rng.sample(ws, 6):
            assert sat_ldlo(f, w, AB) == oracle_sat_ldlo(f, w)
            assert LassoChecker(AB, w).formula(f)[0] == sat_ldlo(f, w, AB)


def test_complement_budget():
    f = p("ldl-omega", "!<a ; <(b)^w> true?> true")
    with pytest.raises(StateBudgetExceeded):
        ldlo_to_nba(f, AB, max_states=5)
    m = ldlo_to_nba(f, AB)
    for w in ["a:b", ":ab", "b:a", "ab:b", ":a", "ba:ab"]:
        assert m.accepts(L(w)) == oracle_sat_ldlo(f, L(w))


def test_eval_wldlo_examples():
    f = p("wldl-omega", "<(a)^w> [true]", "minplus")
    assert eval_wldlo(f, L(":a"), MINPLUS) == 0
    assert eval_wldlo(f, L("b:a"), MINPLUS) == INF
    g = p("wldl-omega", "3 (+) <(a)^w> [true]", "minplus")
    assert eval_wldlo(g, L(":a"), MINPLUS) == 0
    assert eval_wldlo(g, L("b:a"), MINPLUS) == 3


def test_unsupported_semiring():
    f = p("wldl-omega", "<(a)^w> [true]", "nat")
    with pytest.raises(UnsupportedOmegaSemiring):
        eval_wldlo(f, L(":a"), NAT)
    with pytest.raises(UnsupportedOmegaSemiring):
        eval_greo(p("gre-omega", "(1 a)^w", "rat"), L(":a"), RAT)
    with pytest.raises(NotIdempotent):
        wldlo_to_wba(f, NAT, AB)


def test_eval_greo_examples():
    assert eval_greo(p("gre-omega", "(1 a)^w", "boolean"), L(":a"), BOOLEAN) is True
    assert eval_greo(p("gre-omega", "(1 a)^w", "boolean"), L("a:b"), BOOLEAN) is False
    assert eval_greo(p("gre-omega", "(2 a)^w", "minplus"), L(":a"), MINPLUS) == INF
    assert eval_greo(p("gre-omega", "1 b . (0 a)^w", "minplus"), L("b:a"), MINPLUS) == 1


def test_classical_matches_sat():
    ws = list(lassos(AB, 3, 3))
    rng = random.Random(55)
    for f in sample("ldl-omega", 100, 56):
        for w in rng.sample(ws, 4):
            assert eval_wldlo(A.Classical(f), w, BOOLEAN, AB) == sat_ldlo(f, w, AB)


@pytest.mark.parametrize("S", [BOOLEAN, MINPLUS])
def test_weighted_agrees_with_oracle_and_wba(S):
    ws = list(lassos(AB, 3, 3))
    rng = random.Random(57)
    for f in sample("wldl-omega", 60, 58, S):
        m = wldlo_to_wba(f, S, AB)
        for w in rng.sample(ws, 3):
            v = eval_wldlo(f, w, S, AB)
            assert v == oracle_eval_wldlo(f, w, S)
            assert v == wba_eval(m, w)


@pytest.mark.parametrize("S", [BOOLEAN, MINPLUS])
def test_greo_agrees_with_oracle(S):
    ws = list(lassos(AB, 3, 3))
    rng = random.Random(59)
    for e in sample("gre-omega", 60, 60, S):
        for w in rng.sample(ws, 3):
            assert eval_greo(e, w, S, AB) == oracle_eval_greo(e, w, S)


@pytest.mark.parametrize("S", [BOOLEAN, MINPLUS])
def test_omega_translations(S):
    ws = list(lassos(AB, 3, 3))
    rng = random.Random(61)
    for e in sample("gre-omega", 50, 62, S):
        f = greo_to_wldlo(e, AB)
        for w in rng.sample(ws, 3):
            assert eval_wldlo(f, w, S, AB) == eval_greo(e, w, S, AB)
    for f in sample("wldl-omega", 50, 63, S):
        e = wldlo_to_greo(f, S, AB)
        for w in rng.sample(ws, 3):
            assert eval_greo(e, w, S, AB) == eval_wldlo(f, w, S, AB)


def even_a_lasso_formula(k, semiring):
    psi1 = "[<((<b?> last)?)^+> true | (!a & !b)]"
    psi2 = f"(<({k} (x) [a])?> last)"
    text = f"<(({psi1}? . {psi2}? . {psi1}? . {psi2}?)^+ (+) [!a & !b]?) . ([<b?> last]?)^w> [true]"
    return p("wldl-omega", text, semiring)


def test_example_support():
    f = even_a_lasso_formula(1, "boolean")
    for w in lassos(AB, 4, 2):
        expected = "a" not in w.loop and w.stem.count("a") % 2 == 0
        assert eval_wldlo(f, w, BOOLEAN, AB) is expected


def test_example_minplus_costs():
    f = even_a_lasso_formula(2, "minplus")
    assert eval_wldlo(f, L("aa:b"), MINPLUS, AB) == 4
    assert eval_wldlo(f, L(":b"), MINPLUS, AB) == 0
    assert eval_wldlo(f, L("abaa:b"), MINPLUS, AB) == INF
    assert eval_wldlo(f, L("ab:ab"), MINPLUS, AB) == INF
