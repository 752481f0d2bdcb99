"""Acceptance suite.

Each test checks one acceptance criterion at its stated size and tolerance
and prints a single ``PASS``/``FAIL`` line with the measured figures.  Run
``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from wldl import ast as A
from wldl.automata.equivalence import BasisOverflow, wfa_equiv_field
from wldl.automata.wfa import gre_to_wfa, wfa_eval_all
from wldl.errors import StateBudgetExceeded
from wldl.fragments import is_rltl
from wldl.generators import perturb_weight, sample
from wldl.omega import Lasso, eval_greo, eval_wldlo, lassos, ldlo_to_nba
from wldl.oracles import oracle_eval_wltl
from wldl.parser import parse
from wldl.semantics import GreEvaluator, WldlEvaluator, eval_wltl, sat_ldl, words
from wldl.semiring import BOOLEAN, MINPLUS, NAT, RAT, SEMIRINGS
from wldl.translate import (
    WfaCompiler,
    gre_to_wldl,
    greo_to_wldlo,
    ldl_to_nfa,
    wldl_equiv,
    wldl_to_gre,
    wldl_to_wfa,
    wldlo_to_greo,
)

from conftest import ACCEPTANCE_LINES

AB = ("a", "b")
ROUND_TRIP_SEMIRINGS = (NAT, RAT, MINPLUS)
W5 = words(AB, 5)


def report(number, ok, detail):
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def even_power_formula(k=2):
    psi = f"(<({k} (x) [a])?> last)"
    text = f"<({psi}? . {psi}?)^+> [true] (+) [!a & !b]"
    return parse("wldl", text, AB, NAT)


def test_criterion_1_even_power_formula():
    t0 = time.perf_counter()
    f = even_power_formula(2)
    ws = ["", "a", "aa", "aaa", "aaaa", "aabaa"]
    expected = [1, 0, 4, 0, 16, 0]
    direct = [WldlEvaluator(NAT).value(f, w) for w in ws]
    m = wldl_to_wfa(f, NAT, AB)
    via_wfa = [m(w) for w in ws]
    e = wldl_to_gre(f, NAT, AB)
    via_gre = [GreEvaluator(NAT).value(e, w) for w in ws]
    elapsed = time.perf_counter() - t0
    ok = direct == via_wfa == via_gre == expected and elapsed < 1.0
    assert report(1, ok, f"values {direct} / wfa {via_wfa} / gre {via_gre}, {elapsed:.2f}s (< 1s)")


def test_criterion_2_gre_to_wldl():
    t0 = time.perf_counter()
    failures = checked = 0
    for S in ROUND_TRIP_SEMIRINGS:
        for e in sample("gre", 300, 2002, S, AB, depth=4):
            f = gre_to_wldl(e, AB)
            ge, we = GreEvaluator(S), WldlEvaluator(S)
            for w in W5:
                checked += 1
                failures += ge.value(e, w) != we.value(f, w)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60
    assert report(2, ok, f"{failures} failures in {checked} checks (nat, rat, minplus), {elapsed:.1f}s (< 60s)")


def _wldl_corpus(S):
    return sample("wldl", 300, 2003, S, AB, depth=4)


def test_criterion_3_wldl_to_gre():
    t0 = time.perf_counter()
    failures = checked = 0
    for S in ROUND_TRIP_SEMIRINGS:
        for f in _wldl_corpus(S):
            e = wldl_to_gre(f, S, AB)
            ge, we = GreEvaluator(S), WldlEvaluator(S)
            for w in W5:
                checked += 1
                failures += ge.value(e, w) != we.value(f, w)
    elapsed = time.perf_counter() - t0
    assert report(3, failures == 0, f"{failures} failures in {checked} checks, {elapsed:.1f}s")


def test_criterion_4_wldl_to_wfa():
    t0 = time.perf_counter()
    failures = checked = 0
    for S in ROUND_TRIP_SEMIRINGS:
        for f in _wldl_corpus(S):
            vals = wfa_eval_all(wldl_to_wfa(f, S, AB), W5)
            we = WldlEvaluator(S)
            for w in W5:
                checked += 1
                failures += vals[w] != we.value(f, w)
    elapsed = time.perf_counter() - t0
    assert report(4, failures == 0, f"{failures} failures in {checked} checks, {elapsed:.1f}s")


EQUIV_STATS = {"basis_checks": 0, "basis_trips": 0}


def _equiv(f1, f2):
    c = WfaCompiler(RAT, AB)
    m1, m2 = c.formula(f1), c.formula(f2)
    try:
        r = wfa_equiv_field(m1, m2)
    except BasisOverflow:
        EQUIV_STATS["basis_trips"] += 1
        raise
    EQUIV_STATS["basis_checks"] += 1
    if r.basis_size > m1.states + m2.states:
        EQUIV_STATS["basis_trips"] += 1
    return r, m1, m2


def test_criterion_5_equivalence():
    t0 = time.perf_counter()
    W8 = words(AB, 8)
    W5_ = words(AB, 5)
    fs = sample("wldl", 50, 2005, RAT, AB, depth=4)
    round_trip_ok = 0
    false_ok = false_bad = 0
    effective_missed = 0
    true_ok = true_bad = 0
    for f in fs:
        back = gre_to_wldl(wldl_to_gre(f, RAT, AB), AB)
        r, m1, m2 = _equiv(f, back)
        round_trip_ok += r.equivalent and wldl_equiv(f, back, AB).equivalent
        v1 = wfa_eval_all(m1, W8)
        assert v1 == wfa_eval_all(m2, W8) or not r.equivalent

        we = WldlEvaluator(RAT)
        for index in range(min(3, len(A.weights_of(f)))):
            g = perturb_weight(f, index, lambda k: k + 1)
            r, m1, m2 = _equiv(f, g)
            wg = WldlEvaluator(RAT)
            # independent effectiveness check on short words
            effective = any(we.value(f, w) != wg.value(g, w) for w in W5_)
            if r.equivalent:
                effective_missed += effective
                same = wfa_eval_all(m1, W8) == wfa_eval_all(m2, W8)
                same = same and all(we.value(f, w) == wg.value(g, w) for w in words(AB, 6))
                true_ok += same
                true_bad += not same
            else:
                w = r.witness
                differs = we.value(f, w) != wg.value(g, w) and m1(w) != m2(w)
                false_ok += differs
                false_bad += not differs
    elapsed = time.perf_counter() - t0
    ok = (
        round_trip_ok == len(fs)
        and false_bad == 0
        and effective_missed == 0
        and true_bad == 0
        and elapsed < 300
    )
    assert report(
        5, ok,
        f"(a) {round_trip_ok}/{len(fs)} round trips equivalent; "
        f"(b) {false_ok} perturbations refuted with verified witnesses, {false_bad} bad witnesses, "
        f"{effective_missed} effective perturbations missed; "
        f"(c) {true_ok} 'equivalent' answers confirmed on |w| <= 8 "
        f"(perturbations with no effect), {true_bad} contradicted; {elapsed:.1f}s (< 300s)",
    )


def test_criterion_6_boolean_conservativity():
    t0 = time.perf_counter()
    failures = 0
    for psi in sample("ldl", 200, 2006, None, AB):
        m = ldl_to_nfa(psi, AB)
        c = A.Classical(psi)
        nat, boolean = WldlEvaluator(NAT), WldlEvaluator(BOOLEAN)
        for w in W5:
            v = nat.value(c, w)
            truth = sat_ldl(psi, w)
            failures += not (v in (0, 1) and boolean.value(c, w) is truth and bool(v) == truth == m.accepts(w))
    elapsed = time.perf_counter() - t0
    assert report(6, failures == 0, f"{failures} failures over 200 formulas x {len(W5)} words, {elapsed:.1f}s")


def test_criterion_7_box_times_growth():
    box2 = parse("wltl", "G* 2", AB, NAT)
    boxbox2 = parse("wltl", "G* G* 2", AB, NAT)
    single = sum(eval_wltl(box2, w, NAT) != 2 ** len(w) for w in words(AB, 12))
    double = sum(eval_wltl(boxbox2, w, NAT) != oracle_eval_wltl(boxbox2, w, NAT) for w in words(AB, 6))
    fragment = is_rltl(box2) and not is_rltl(boxbox2)
    closed = all(eval_wltl(boxbox2, "a" * n, NAT) == 2 ** (n * (n + 1) // 2) for n in range(7))
    ok = single == 0 and double == 0 and fragment
    assert report(
        7, ok,
        f"G* 2 mismatches {single} (|w| <= 12); G* G* 2 vs oracle mismatches {double} (|w| <= 6), "
        f"value 2^(n(n+1)/2): {closed}; rLTL checks {fragment}",
    )


def test_criterion_8_omega_layer():
    t0 = time.perf_counter()
    ws = list(lassos(AB, 3, 3))
    rng = random.Random(2008)
    checks = failures = 0
    for S in (BOOLEAN, MINPLUS):
        for e in sample("gre-omega", 100, 2081, S, AB):
            f = greo_to_wldlo(e, AB)
            for w in rng.sample(ws, 10):
                checks += 1
                failures += eval_wldlo(f, w, S, AB) != eval_greo(e, w, S, AB)
        for f in sample("wldl-omega", 100, 2082, S, AB):
            e = wldlo_to_greo(f, S, AB)
            for w in rng.sample(ws, 10):
                checks += 1
                failures += eval_greo(e, w, S, AB) != eval_wldlo(f, w, S, AB)
    psi1 = "[<((<b?> last)?)^+> true | (!a & !b)]"
    psi2 = "(<(1 (x) [a])?> last)"
    zeta = parse(
        "wldl-omega",
        f"<(({psi1}? . {psi2}? . {psi1}? . {psi2}?)^+ (+) [!a & !b]?) . ([<b?> last]?)^w> [true]",
        AB, BOOLEAN,
    )
    support = list(lassos(AB, 4, 2))
    wrong = sum(
        eval_wldlo(zeta, w, BOOLEAN, AB) != ("a" not in w.loop and w.stem.count("a") % 2 == 0)
        for w in support
    )
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and wrong == 0
    assert report(
        8, ok,
        f"{failures} failures in {checks} round-trip lasso checks (boolean, minplus); "
        f"example support mismatches {wrong}/{len(support)}; {elapsed:.1f}s",
    )


def test_criterion_9_axioms_and_basis_bound():
    bad = []
    for name, S in SEMIRINGS.items():
        rng = random.Random(name)
        for _ in range(1000):
            a, b, c = S.sample(rng), S.sample(rng), S.sample(rng)
            laws = [
                S.add(a, S.add(b, c)) == S.add(S.add(a, b), c),
                S.mul(a, S.mul(b, c)) == S.mul(S.mul(a, b), c),
                S.add(a, b) == S.add(b, a),
                S.mul(a, S.add(b, c)) == S.add(S.mul(a, b), S.mul(a, c)),
                S.mul(S.add(a, b), c) == S.add(S.mul(a, c), S.mul(b, c)),
                S.add(a, S.zero) == a,
                S.mul(a, S.one) == a == S.mul(S.one, a),
                S.mul(a, S.zero) == S.zero == S.mul(S.zero, a),
            ]
            if S.idempotent:
                laws.append(S.add(a, a) == a)
            if S.field and not S.is_zero(a):
                laws.append(S.mul(a, S.inv(a)) == S.one)
            if not all(laws):
                bad.append((name, a, b, c))
    es = sample("gre", 200, 2009, RAT, AB, depth=4)
    for e1, e2 in zip(es[::2], es[1::2]):
        m1, m2 = gre_to_wfa(e1, RAT, AB), gre_to_wfa(e2, RAT, AB)
        try:
            r = wfa_equiv_field(m1, m2)
            EQUIV_STATS["basis_checks"] += 1
            if r.basis_size > m1.states + m2.states:
                EQUIV_STATS["basis_trips"] += 1
        except BasisOverflow:
            EQUIV_STATS["basis_trips"] += 1
    ok = not bad and EQUIV_STATS["basis_trips"] == 0
    assert report(
        9, ok,
        f"{len(bad)} axiom violations over 1000 triples x {len(SEMIRINGS)} semirings; "
        f"basis bound trips {EQUIV_STATS['basis_trips']} in {EQUIV_STATS['basis_checks']} equivalence runs",
    )


def test_criterion_budget_guard():
    formulas = [
        ("ldl", "!<(a + b)^+ ; a ; (a + b) ; (a + b) ; (a + b)> true", "abaaa"),
        ("ldl-omega", "!<a ; <(b)^w> true?> true", "a:b"),
    ]
    wrong = 0
    outcomes = []
    for kind, text, word in formulas:
        f = parse(kind, text, AB, None)
        if kind == "ldl":
            truth = sat_ldl(f, word)
            for budget in (2, 4, 8, 16, 64, 2**16):
                try:
                    got = ldl_to_nfa(f, AB, max_states=budget).accepts(word)
                    wrong += got != truth
                    outcomes.append("ok")
                except StateBudgetExceeded:
                    outcomes.append("exceeded")
        else:
            from wldl.omega import oracle_sat_ldlo

            truth = oracle_sat_ldlo(f, Lasso.parse(word))
            for budget in (5, 50, 500):
                try:
                    got = ldlo_to_nba(f, AB, max_states=budget).accepts(Lasso.parse(word))
                    wrong += got != truth
                    outcomes.append("ok")
                except StateBudgetExceeded:
                    outcomes.append("exceeded")
    proc = subprocess.run(
        [sys.executable, "-m", "wldl", "compile", "--kind", "ldl", "--alphabet", "a b",
         "--max-states", "4", "-e", formulas[0][1]],
        capture_output=True, text=True,
    )
    ok = wrong == 0 and proc.returncode == 3 and proc.stdout == "" and "exceeded" in outcomes
    assert report(
        "budget", ok,
        f"CLI exit code {proc.returncode} (want 3); {wrong} wrong answers under small budgets; "
        f"outcomes {outcomes}",
    )


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
