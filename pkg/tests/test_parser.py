import random

import pytest

from wldl import ast as A
from wldl.errors import WeightSyntaxError, WldlSyntaxError
from wldl.fragments import is_ltl_step, is_rltl, rltl_violation
from wldl.generators import sample
from wldl.parser import parse, parse_alphabet, read_formula_text
from wldl.printer import to_text
from wldl.semantics import sat_ldl
from wldl.semiring import MINPLUS, NAT, RAT, get_semiring

from conftest import AB, p

LAST_AB = A.LDiamond(A.LStep(A.PTrue()), A.LAnd(A.LNot(A.LAtom("a")), A.LNot(A.LAtom("b"))))


def test_parse_wldl_example():
    got = p("wldl", "<(2 (x) [a])?> last", "nat")
    want = A.WDiamond(
        A.WTest(A.OTimes(A.Const(2), A.Classical(A.LAtom("a")))),
        A.Classical(LAST_AB),
    )
    assert got == want


def test_parse_gre_plus():
    assert p("gre", "(1 a)^+", "nat", ("a",)) == A.Plus(A.Sym(1, "a"))
    assert p("gre", "2 eps", "nat") == A.Sym(2, None)


def test_improper_iteration_is_syntactically_fine():
    node = p("wldl", "<(2?)^+> [true]", "nat")
    assert node == A.WDiamond(A.WIter(A.WTest(A.Const(2))), A.W_TRUE)


def test_printer_examples():
    assert to_text(A.Plus(A.Sym(1, "a"))) == "(1 a)^+"
    assert to_text(A.Const(2)) == "2"
    assert to_text(A.W_TRUE) == "[true]"


def test_expand_last():
    assert A.expand_last(["a"]) == A.LDiamond(A.LStep(A.PTrue()), A.LNot(A.LAtom("a")))
    assert A.expand_last(["a", "b"]) == LAST_AB
    assert sat_ldl(LAST_AB, "a")
    assert not sat_ldl(LAST_AB, "ab")
    with pytest.raises(ValueError):
        A.expand_last([])


def test_double_negation_normalized():
    assert p("ldl", "!!a") == A.LAtom("a")
    assert p("ldl", "!!!a") == A.LNot(A.LAtom("a"))
    for f in sample("ldl", 200, 4):
        for n in A.walk(f):
            assert not (isinstance(n, A.LNot) and isinstance(n.arg, A.LNot))


def test_precedence():
    # (+) binds loosest, then (x), then diamonds
    f = p("wldl", "1 (+) 2 (x) <a> 3", "nat")
    assert f == A.OPlus(A.Const(1), A.OTimes(A.Const(2), A.WDiamond(A.WStep(A.PAtom("a")), A.Const(3))))
    e = p("gre", "1 a + 2 b . 3 a (o) 1 b", "nat")
    assert isinstance(e, A.Sum)


@pytest.mark.parametrize("kind,text", [
    ("wldl", "<(2?"),
    ("wldl", "<a> "),
    ("gre", "a"),
    ("ldl", "<a> c"),
    ("ldl", "<(a)^w> true"),
    ("wldl", "<(a)^w> [true]"),
    ("gre", "(1 a)^w"),
    ("ldl-omega", "<(a)^w> true ; b"),
])
def test_syntax_errors(kind, text):
    with pytest.raises(WldlSyntaxError):
        p(kind, text, "nat")


def test_error_location():
    with pytest.raises(WldlSyntaxError) as info:
        p("wldl", "[a]\n  (+) ?", "nat")
    assert info.value.line == 2


def test_weight_literal_checked_against_semiring():
    with pytest.raises(WeightSyntaxError):
        p("wldl", "1/2", "nat")
    assert p("wldl", "1/2", "rat") == A.Const(RAT.parse("1/2"))
    assert p("gre", "inf a", "minplus") == A.Sym(MINPLUS.zero, "a")


def test_formula_file_header_and_comments():
    ff = read_formula_text("# comment\nalphabet: a b c\n\n<a> [true]\n# trailing\n")
    assert ff.alphabet == ("a", "b", "c")
    assert ff.text.strip() == "<a> [true]"
    assert parse_alphabet("a b") == ("a", "b")


@pytest.mark.parametrize("kind,semiring", [
    ("prop", None), ("ldl", None), ("ldl-omega", None),
    ("wldl", "nat"), ("wldl", "rat"), ("wldl", "minplus"),
    ("gre", "nat"), ("gre", "rat"), ("gre", "minplus"),
    ("wldl-omega", "minplus"), ("gre-omega", "boolean"), ("gre-omega", "minplus"),
])
def test_print_parse_round_trip(kind, semiring):
    S = get_semiring(semiring) if semiring else None
    for node in sample(kind, 1000, 11, S, AB, depth=6 if kind != "prop" else 4):
        assert parse(kind, to_text(node), AB, S) == node


def _random_wltl(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([A.Const(rng.randint(0, 3)), A.Classical(_random_ltl(rng, 2))])
    op = rng.choice(["+", "x", "X", "U", "G"])
    if op in "XG":
        arg = _random_wltl(rng, depth - 1)
        return A.WNext(arg) if op == "X" else A.BoxTimes(arg)
    left, right = _random_wltl(rng, depth - 1), _random_wltl(rng, depth - 1)
    return {"+": A.OPlus, "x": A.OTimes, "U": A.WUntil}[op](left, right)


def _random_ltl(rng, depth):
    if depth == 0 or rng.random() < 0.4:
        return rng.choice([A.TTrue(), A.TAtom("a"), A.TAtom("b")])
    op = rng.choice(["!", "|", "X", "U"])
    if op == "!":
        return A.tneg(_random_ltl(rng, depth - 1))
    if op == "X":
        return A.TNext(_random_ltl(rng, depth - 1))
    cls = A.TOr if op == "|" else A.TUntil
    return cls(_random_ltl(rng, depth - 1), _random_ltl(rng, depth - 1))


def test_ltl_round_trip():
    rng = random.Random(3)
    for _ in range(1000):
        f = _random_wltl(rng, 5)
        assert parse("wltl", to_text(f), AB, NAT) == f
        g = _random_ltl(rng, 5)
        assert parse("ltl", to_text(g), AB, None) == g


def test_ltl_step():
    assert is_ltl_step(p("wltl", "2 (x) [a] (+) 3 (x) [b]", "nat"))
    assert is_ltl_step(p("wltl", "2", "nat"))
    assert not is_ltl_step(p("wltl", "G* 2", "nat"))


def test_rltl():
    box2 = p("wltl", "G* 2", "nat")
    assert is_rltl(box2)
    boxbox2 = p("wltl", "G* G* 2", "nat")
    assert not is_rltl(boxbox2)
    assert rltl_violation(boxbox2) == box2
    assert not is_rltl(p("wltl", "(G* 2) U [a]", "nat"))
    assert is_rltl(p("wltl", "X (2 (+) [a])", "nat"))
    rng = random.Random(8)
    for _ in range(200):
        f = _random_wltl(rng, 4)
        if not any(isinstance(n, (A.BoxTimes, A.WUntil)) for n in A.walk(f)):
            assert is_rltl(f)
