"""Command-line interface.

Exit codes: 0 success, 1 syntax or usage error, 2 semantic error (improper
iteration, unsupported semiring, ...), 3 state budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import ast as A
from .automata import nfa as N
from .automata.equivalence import wfa_equiv_field
from .automata.io import load_wfa, wba_to_json, wfa_to_json
from .automata.wfa import gre_to_wfa, wfa_from_nfa
from .errors import (
    SemanticError,
    StateBudgetExceeded,
    UsageError,
    WldlError,
    WldlSyntaxError,
)
from .fragments import rltl_violation
from .parser import KINDS, parse, parse_alphabet, read_formula_text
from .printer import to_text
from .semiring import SEMIRINGS, Semiring, format_value, get_semiring

FORMULA_KINDS = tuple(k for k in KINDS if k != "prop")
WEIGHTED_KINDS = {"wldl", "wldl-omega", "gre", "gre-omega", "wltl"}
TRANSLATIONS = {
    ("gre", "wldl"),
    ("wldl", "gre"),
    ("gre-omega", "wldl-omega"),
    ("wldl-omega", "gre-omega"),
}


class Source:
    """A formula read from ``-f`` or ``-e`` together with its alphabet."""

    def __init__(self, text: str, alphabet: tuple[str, ...] | None):
        self.text = text
        self.alphabet = alphabet


def _read(args: argparse.Namespace, file_attr: str = "file", expr_attr: str = "expr") -> Source:
    path = getattr(args, file_attr, None)
    inline = getattr(args, expr_attr, None)
    if (path is None) == (inline is None):
        raise UsageError("give exactly one of a formula file (-f) or inline text (-e)")
    if inline is not None:
        raw = inline
    elif path == "-":
        raw = sys.stdin.read()
    else:
        try:
            raw = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    ff = read_formula_text(raw)
    return Source(ff.text, ff.alphabet)


def _alphabet(args: argparse.Namespace, *sources: Source, extra: str = "") -> tuple[str, ...] | None:
    """``--alphabet`` wins; otherwise the union of file headers; otherwise None."""
    if getattr(args, "alphabet", None):
        return parse_alphabet(args.alphabet)
    found = set()
    for s in sources:
        if s.alphabet:
            found |= set(s.alphabet)
    return tuple(sorted(found)) if found else None


def _parse(kind: str, src: Source, alphabet, S: Semiring | None) -> A.Node:
    return parse(kind, src.text, alphabet, S if kind in WEIGHTED_KINDS else None)


def _letters(node: A.Node) -> set[str]:
    out = set()
    for n in A.walk(node):
        if isinstance(n, (A.PAtom, A.LAtom, A.TAtom)):
            out.add(n.letter)
        elif isinstance(n, A.Sym) and n.letter is not None:
            out.add(n.letter)
    return out


def _effective_alphabet(alphabet, node: A.Node, word: str = "") -> tuple[str, ...]:
    if alphabet:
        letters = set(alphabet)
        missing = set(word) - letters
        if missing:
            raise UsageError(f"letters {''.join(sorted(missing))!r} are not in the alphabet")
        return tuple(sorted(letters))
    letters = _letters(node) | set(word)
    if not letters:
        raise UsageError("cannot infer the alphabet; pass --alphabet")
    return tuple(sorted(letters))


def _semiring(args: argparse.Namespace) -> Semiring:
    return get_semiring(args.semiring)


def _emit(args: argparse.Namespace, text: str, payload: dict[str, Any]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------------------


def cmd_eval(args: argparse.Namespace) -> int:
    from .semantics import LtlEvaluator, eval_gre, eval_wldl, sat_ldl

    kind = args.kind
    S = _semiring(args)
    src = _read(args)
    alphabet = _alphabet(args, src)
    omega = kind.endswith("-omega")
    if omega:
        if args.word is not None or args.lasso is None:
            raise UsageError(f"{kind} formulas are evaluated on a lasso: use --lasso u:v")
    elif args.lasso is not None or args.word is None:
        raise UsageError(f"{kind} formulas are evaluated on a finite word: use -w WORD")
    node = _parse(kind, src, alphabet, S)

    if omega:
        from .omega import Lasso, eval_greo, eval_wldlo, sat_ldlo

        word = Lasso.parse(args.lasso)
        alph = _effective_alphabet(alphabet, node, word.stem + word.loop)
        if kind == "ldl-omega":
            value: Any = sat_ldlo(node, word, alph, args.max_states)
        elif kind == "wldl-omega":
            value = eval_wldlo(node, word, S, alph, args.max_states)
        else:
            value = eval_greo(node, word, S, alph, args.max_states)
        text = S.format(value) if kind != "ldl-omega" else format_value(value)
    else:
        word = "" if args.word in ("eps", "-") else args.word
        _effective_alphabet(alphabet, node, word)
        if kind == "ldl":
            value = sat_ldl(node, word)
        elif kind == "ltl":
            value = LtlEvaluator(S).sat(node, word)
        elif kind == "wldl":
            value = eval_wldl(node, word, S)
        elif kind == "gre":
            value = eval_gre(node, word, S)
        else:
            value = LtlEvaluator(S).val(node, word)
        text = format_value(value) if kind in ("ldl", "ltl") else S.format(value)
    _emit(args, text, {"value": text})
    return 0


def cmd_translate(args: argparse.Namespace) -> int:
    from .translate import greo_to_wldlo, gre_to_wldl, wldl_to_gre, wldlo_to_greo

    pair = (args.source_kind, args.target_kind)
    if pair not in TRANSLATIONS:
        choices = ", ".join(f"{a}->{b}" for a, b in sorted(TRANSLATIONS))
        raise UsageError(f"unsupported translation {pair[0]}->{pair[1]}; choose from {choices}")
    S = _semiring(args)
    src = _read(args)
    alphabet = _alphabet(args, src)
    node = _parse(args.source_kind, src, alphabet, S)
    alph = _effective_alphabet(alphabet, node)
    if pair == ("gre", "wldl"):
        out = gre_to_wldl(node, alph)
    elif pair == ("wldl", "gre"):
        out = wldl_to_gre(node, S, alph, args.max_states)
    elif pair == ("gre-omega", "wldl-omega"):
        out = greo_to_wldlo(node, alph)
    else:
        out = wldlo_to_greo(node, S, alph, args.max_states)
    text = to_text(out, alph)
    if args.output:
        Path(args.output).write_text(f"alphabet: {' '.join(alph)}\n{text}\n", encoding="utf-8")
    else:
        _emit(args, text, {"output": text, "alphabet": list(alph)})
    return 0


def cmd_compile(args: argparse.Namespace) -> int:
    from .omega import ldlo_to_nba, wldlo_to_wba
    from .translate import ldl_to_nfa, wldl_to_wfa

    S = _semiring(args)
    src = _read(args)
    alphabet = _alphabet(args, src)
    node = _parse(args.kind, src, alphabet, S)
    alph = _effective_alphabet(alphabet, node)
    if args.kind == "wldl":
        data = wfa_to_json(wldl_to_wfa(node, S, alph, args.max_states))
    elif args.kind == "gre":
        data = wfa_to_json(gre_to_wfa(node, S, alph))
    elif args.kind == "ldl":
        data = wfa_to_json(wfa_from_nfa(S, ldl_to_nfa(node, alph, args.max_states)))
    elif args.kind == "wldl-omega":
        data = wba_to_json(wldlo_to_wba(node, S, alph, args.max_states))
    elif args.kind == "ldl-omega":
        from .omega.weighted import wba_from_nba

        data = wba_to_json(wba_from_nba(S, ldlo_to_nba(node, alph, args.max_states)))
    else:
        raise UsageError(f"cannot compile kind {args.kind!r}")
    text = json.dumps(data, indent=2)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def cmd_equiv(args: argparse.Namespace) -> int:
    from .translate import WfaCompiler
    from .semantics import WldlEvaluator

    S = _semiring(args)
    if args.automaton:
        machines = []
        for path in (args.a, args.b):
            try:
                machines.append(load_wfa(Path(path).read_text(encoding="utf-8")))
            except OSError as exc:
                raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        m1, m2 = machines
        if m1.semiring is not S or m2.semiring is not S:
            raise UsageError(f"automata must be over {S.name} (use --semiring)")
        if m1.alphabet != m2.alphabet:
            raise UsageError("automata over different alphabets")
    else:
        s1, s2 = Source(*_load(args.a)), Source(*_load(args.b))
        alphabet = _alphabet(args, s1, s2)
        f1 = _parse(args.kind, s1, alphabet, S)
        f2 = _parse(args.kind, s2, alphabet, S)
        alph = tuple(sorted(set(_effective_alphabet(alphabet, f1)) | set(_effective_alphabet(alphabet, f2))))
        if not S.field:
            from .errors import NotAField

            raise NotAField(f"equivalence is decided over the rational field, not {S.name}")
        if args.kind == "wldl":
            for f in (f1, f2):
                WldlEvaluator(S).check(f)
            c = WfaCompiler(S, alph, args.max_states)
            m1, m2 = c.formula(f1), c.formula(f2)
        else:
            m1, m2 = gre_to_wfa(f1, S, alph), gre_to_wfa(f2, S, alph)
    result = wfa_equiv_field(m1, m2)
    if result.equivalent:
        text = "EQUIVALENT"
    else:
        text = f"NOT EQUIVALENT witness={result.witness or 'eps'}"
    _emit(args, text, {"equivalent": result.equivalent, "witness": result.witness})
    return 0


def _load(path: str) -> tuple[str, tuple[str, ...] | None]:
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    ff = read_formula_text(raw)
    return ff.text, ff.alphabet


def cmd_proper(args: argparse.Namespace) -> int:
    from .semantics import improper_subterm
    from .translate import GreCompiler

    S = _semiring(args)
    src = _read(args)
    alphabet = _alphabet(args, src)
    node = _parse(args.kind, src, alphabet, S)
    bad = improper_subterm(node, S)
    if bad is None and args.kind.endswith("-omega"):
        bad = _improper_omega(node, S)
    if bad is None:
        _emit(args, "PROPER", {"proper": True, "subterm": None})
        return 0
    text = to_text(bad, alphabet)
    _emit(args, f"IMPROPER ({text})", {"proper": False, "subterm": text})
    return 2


def _improper_omega(node: A.Node, S: Semiring) -> A.Node | None:
    """The first omega-iteration body that is not proper."""
    from .semantics import GreEvaluator, WldlEvaluator

    for n in A.walk(node):
        if isinstance(n, A.WOmega):
            if not S.is_zero(WldlEvaluator(S).diamond(n.body, A.W_TRUE, "")):
                return n.body
        elif isinstance(n, A.Omega):
            if not S.is_zero(GreEvaluator(S).val(n.body, "")):
                return n.body
    return None


def cmd_check_rltl(args: argparse.Namespace) -> int:
    S = _semiring(args)
    src = _read(args)
    alphabet = _alphabet(args, src)
    node = parse("wltl", src.text, alphabet, S)
    bad = rltl_violation(node)
    if bad is None:
        _emit(args, "RLTL", {"rltl": True, "subformula": None})
    else:
        text = to_text(bad, alphabet)
        _emit(args, f"NOT-RLTL {text}", {"rltl": False, "subformula": text})
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    from .generators import sample

    S = _semiring(args) if args.kind in WEIGHTED_KINDS else None
    alph = parse_alphabet(args.alphabet) if args.alphabet else ("a", "b")
    items = sample(args.kind, args.count, args.seed, S, alph, args.depth)
    texts = [to_text(x) for x in items]
    if getattr(args, "json", False):
        print(json.dumps({"kind": args.kind, "items": texts}))
    else:
        for t in texts:
            print(t)
    return 0


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wldl",
        description="Weighted linear dynamic logic: evaluation, translations, automata.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(sp: argparse.ArgumentParser, semiring_default: str = "nat") -> None:
        sp.add_argument(
            "--semiring", choices=sorted(SEMIRINGS), default=semiring_default,
            help=f"weight semiring (default {semiring_default})",
        )
        sp.add_argument("--alphabet", help="letters, e.g. 'a b' (default: file header or inferred)")
        sp.add_argument(
            "--max-states", type=int, default=N.DEFAULT_MAX_STATES,
            help="state budget for subset and rank constructions (default %(default)s)",
        )
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    def formula_input(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-f", "--file", help="formula file ('-' for stdin)")
        sp.add_argument("-e", "--expr", help="formula text given inline")

    sp = sub.add_parser("eval", help="evaluate a formula or expression on a word or lasso")
    sp.add_argument("--kind", required=True, choices=FORMULA_KINDS)
    formula_input(sp)
    sp.add_argument("-w", "--word", help="finite word ('eps' for the empty word)")
    sp.add_argument("--lasso", help="ultimately periodic word u:v (empty stem ':v')")
    common(sp)
    sp.set_defaults(run=cmd_eval)

    sp = sub.add_parser("translate", help="translate between formulas and expressions")
    sp.add_argument("--from", dest="source_kind", required=True,
                    choices=["gre", "wldl", "gre-omega", "wldl-omega"])
    sp.add_argument("--to", dest="target_kind", required=True,
                    choices=["gre", "wldl", "gre-omega", "wldl-omega"])
    formula_input(sp)
    sp.add_argument("-o", "--output", help="write the result to this file")
    common(sp)
    sp.set_defaults(run=cmd_translate)

    sp = sub.add_parser("compile", help="compile to a (Büchi) weighted automaton in JSON")
    sp.add_argument("--kind", required=True, choices=["wldl", "gre", "ldl", "wldl-omega", "ldl-omega"])
    formula_input(sp)
    sp.add_argument("-o", "--output", help="write the JSON automaton to this file")
    common(sp)
    sp.set_defaults(run=cmd_compile)

    sp = sub.add_parser("equiv", help="decide equivalence over the rationals")
    sp.add_argument("-a", required=True, help="first formula file (or automaton with --automaton)")
    sp.add_argument("-b", required=True, help="second formula file (or automaton with --automaton)")
    sp.add_argument("--kind", choices=["wldl", "gre"], default="wldl")
    sp.add_argument("--automaton", action="store_true", help="-a and -b are JSON automata")
    common(sp, semiring_default="rat")
    sp.set_defaults(run=cmd_equiv)

    sp = sub.add_parser("proper", help="check that every iteration body is proper")
    sp.add_argument("--kind", choices=["wldl", "gre", "wldl-omega", "gre-omega"], default="wldl")
    formula_input(sp)
    common(sp)
    sp.set_defaults(run=cmd_proper)

    sp = sub.add_parser("check-rltl", help="check membership in the rLTL fragment")
    formula_input(sp)
    common(sp)
    sp.set_defaults(run=cmd_check_rltl)

    sp = sub.add_parser("generate", help="print seeded random formulas")
    sp.add_argument("--kind", required=True,
                    choices=["prop", "ldl", "wldl", "gre", "ldl-omega", "wldl-omega", "gre-omega"])
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--depth", type=int, default=None)
    common(sp)
    sp.set_defaults(run=cmd_generate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except StateBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (WldlSyntaxError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except WldlError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
