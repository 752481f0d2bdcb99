"""Concrete syntax.

One tokenizer serves every formula family.  The grammars are recursive
descent with packrat memoization, because path atoms are ambiguous until the
parser sees whether a ``?`` follows (``(a | b)`` is a step, ``(a)?`` a test).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import wraps
from typing import Any, Callable, Sequence

from . import ast as A
from .errors import WeightSyntaxError, WldlSyntaxError
from .semiring import Semiring

KINDS = (
    "prop",
    "ldl",
    "ldl-omega",
    "wldl",
    "wldl-omega",
    "gre",
    "gre-omega",
    "ltl",
    "wltl",
)

KEYWORDS = {"true", "false", "last", "eps"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op>\(\+\)|\(x\)|\(o\)|\^\+|\^w|G\*|[()\[\]<>?;+.!&|XU])
  | (?P<num>-?inf\b|-?[0-9]+(?:/[0-9]+)?)
  | (?P<ident>[a-z][a-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "op", "num", "kw", "letter", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str, alphabet: Sequence[str] | None = None) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise WldlSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "ws":
            nl = value.count("\n")
            if nl:
                line += nl
                line_start = pos + value.rindex("\n") + 1
        elif kind == "ident":
            if value in KEYWORDS:
                tokens.append(Token("kw", value, line, col))
            elif len(value) == 1:
                if alphabet is not None and value not in alphabet:
                    raise WldlSyntaxError(f"unknown letter {value!r}", line, col)
                tokens.append(Token("letter", value, line, col))
            else:
                raise WldlSyntaxError(f"unknown identifier {value!r}", line, col)
        else:
            tokens.append(Token(kind, value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Fail(Exception):
    pass


def _rule(method: Callable) -> Callable:
    name = method.__name__

    @wraps(method)
    def wrapper(self):
        key = (name, self.pos)
        hit = self._memo.get(key)
        if hit is not None:
            result, end = hit
            if result is _Fail:
                raise _Fail
            self.pos = end
            return result
        start = self.pos
        try:
            result = method(self)
        except _Fail:
            self._memo[key] = (_Fail, start)
            self.pos = start
            raise
        self._memo[key] = (result, self.pos)
        return result

    return wrapper


class Parser:
    def __init__(self, text: str, alphabet: Sequence[str] | None, semiring: Semiring | None):
        self.tokens = tokenize(text, alphabet)
        self.alphabet = alphabet
        self.semiring = semiring
        self.pos = 0
        self._memo: dict[tuple[str, int], tuple[Any, int]] = {}
        self._furthest = -1
        self._expected: set[str] = set()

    # -- token helpers ------------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: str):
        if self.pos > self._furthest:
            self._furthest = self.pos
            self._expected = {expected}
        elif self.pos == self._furthest:
            self._expected.add(expected)
        raise _Fail

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind in ("op", "kw") and tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.fail(repr(text))

    def attempt(self, *alternatives: Callable[[], Any]) -> Any:
        start = self.pos
        for alt in alternatives:
            try:
                return alt()
            except _Fail:
                self.pos = start
        raise _Fail

    def letter(self) -> str:
        tok = self.peek()
        if tok.kind != "letter":
            self.fail("a letter")
        self.pos += 1
        return tok.text

    def weight(self) -> Any:
        tok = self.peek()
        if tok.kind != "num":
            self.fail("a weight")
        if self.semiring is None:
            raise WldlSyntaxError("weights need a semiring", tok.line, tok.column)
        try:
            value = self.semiring.parse(tok.text)
        except WeightSyntaxError as exc:
            raise WeightSyntaxError(exc.message, tok.line, tok.column) from None
        self.pos += 1
        return value

    def last(self) -> A.Ldl:
        tok = self.peek()
        if not self.alphabet:
            raise WldlSyntaxError("'last' needs a declared alphabet", tok.line, tok.column)
        self.expect("last")
        return A.expand_last(self.alphabet)

    def run(self, rule: Callable[[], Any]) -> Any:
        try:
            result = rule()
            if self.peek().kind != "eof":
                self.fail("end of input")
            return result
        except _Fail:
            tok = self.tokens[max(self._furthest, 0)]
            found = tok.text or "end of input"
            expected = " or ".join(sorted(self._expected)) or "something else"
            raise WldlSyntaxError(
                f"expected {expected}, found {found!r}", tok.line, tok.column
            ) from None

    # -- propositional ---------------------------------------------------------

    @_rule
    def prop_or(self) -> A.Prop:
        left = self.prop_and()
        while self.accept("|"):
            left = A.POr(left, self.prop_and())
        return left

    @_rule
    def prop_and(self) -> A.Prop:
        left = self.prop_not()
        while self.accept("&"):
            left = A.PAnd(left, self.prop_not())
        return left

    @_rule
    def prop_not(self) -> A.Prop:
        if self.accept("!"):
            return A.PNot(self.prop_not())
        return self.prop_atom()

    @_rule
    def prop_atom(self) -> A.Prop:
        if self.accept("true"):
            return A.PTrue()
        if self.accept("false"):
            return A.PFalse()
        if self.accept("("):
            p = self.prop_or()
            self.expect(")")
            return p
        return A.PAtom(self.letter())

    # -- classical LDL -----------------------------------------------------

    @_rule
    def ldl_or(self) -> A.Ldl:
        left = self.ldl_and()
        while self.accept("|"):
            left = A.disj(left, self.ldl_and())
        return left

    @_rule
    def ldl_and(self) -> A.Ldl:
        left = self.ldl_unary()
        while self.accept("&"):
            left = A.LAnd(left, self.ldl_unary())
        return left

    @_rule
    def ldl_unary(self) -> A.Ldl:
        if self.accept("!"):
            return A.neg(self.ldl_unary())
        if self.accept("<"):
            path = self.lpath()
            self.expect(">")
            return A.LDiamond(path, self.ldl_unary())
        return self.ldl_atom()

    @_rule
    def ldl_atom(self) -> A.Ldl:
        if self.accept("true"):
            return A.LTrue()
        if self.accept("false"):
            return A.neg(A.LTrue())
        if self.peek().text == "last" and self.peek().kind == "kw":
            return self.last()
        if self.accept("("):
            f = self.ldl_or()
            self.expect(")")
            return f
        return A.LAtom(self.letter())

    @_rule
    def lpath(self) -> A.LPath:
        left = self.lseq()
        while self.accept("+"):
            left = A.LChoice(left, self.lseq())
        return left

    @_rule
    def lseq(self) -> A.LPath:
        left = self.lpost()
        while self.accept(";"):
            left = A.LSeq(left, self.lpost())
        return left

    @_rule
    def lpost(self) -> A.LPath:
        path = self.lpatom()
        while True:
            if self.accept("^+"):
                path = A.LPlus(path)
            elif self.accept("^w"):
                path = A.LOmega(path)
            else:
                return path

    @_rule
    def lpatom(self) -> A.LPath:
        def test():
            f = self.ldl_unary()
            self.expect("?")
            return A.LTest(f)

        def step():
            return A.LStep(self.prop_or())

        def group():
            self.expect("(")
            p = self.lpath()
            self.expect(")")
            return p

        return self.attempt(test, step, group)

    # -- weighted LDL ------------------------------------------------------------

    @_rule
    def w_sum(self) -> A.Weighted:
        left = self.w_prod()
        while self.accept("(+)"):
            left = A.OPlus(left, self.w_prod())
        return left

    @_rule
    def w_prod(self) -> A.Weighted:
        left = self.w_unary()
        while self.accept("(x)"):
            left = A.OTimes(left, self.w_unary())
        return left

    @_rule
    def w_unary(self) -> A.Weighted:
        if self.accept("<"):
            path = self.wpath()
            self.expect(">")
            return A.WDiamond(path, self.w_unary())
        return self.w_atom()

    @_rule
    def w_atom(self) -> A.Weighted:
        tok = self.peek()
        if tok.kind == "num":
            return A.Const(self.weight())
        if self.accept("["):
            f = self.ldl_or()
            self.expect("]")
            return A.Classical(f)
        if tok.kind == "kw" and tok.text == "last":
            return A.Classical(self.last())
        if self.accept("("):
            f = self.w_sum()
            self.expect(")")
            return f
        self.fail("a weighted formula")

    @_rule
    def wpath(self) -> A.WPath:
        left = self.wseq()
        while self.accept("(+)"):
            left = A.WChoice(left, self.wseq())
        return left

    @_rule
    def wseq(self) -> A.WPath:
        left = self.wpost()
        while self.accept("."):
            left = A.WSeq(left, self.wpost())
        return left

    @_rule
    def wpost(self) -> A.WPath:
        path = self.wpatom()
        while True:
            if self.accept("^+"):
                path = A.WIter(path)
            elif self.accept("^w"):
                path = A.WOmega(path)
            else:
                return path

    @_rule
    def wpatom(self) -> A.WPath:
        def test():
            f = self.w_unary()
            self.expect("?")
            return A.WTest(f)

        def step():
            return A.WStep(self.prop_or())

        def group():
            self.expect("(")
            p = self.wpath()
            self.expect(")")
            return p

        return self.attempt(test, step, group)

    # -- rational expressions ------------------------------------------------------

    @_rule
    def g_sum(self) -> A.Expr:
        left = self.g_had()
        while self.accept("+"):
            left = A.Sum(left, self.g_had())
        return left

    @_rule
    def g_had(self) -> A.Expr:
        left = self.g_cat()
        while self.accept("(o)"):
            left = A.Hadamard(left, self.g_cat())
        return left

    @_rule
    def g_cat(self) -> A.Expr:
        left = self.g_post()
        while self.accept("."):
            left = A.Cauchy(left, self.g_post())
        return left

    @_rule
    def g_post(self) -> A.Expr:
        expr = self.g_atom()
        while True:
            if self.accept("^+"):
                expr = A.Plus(expr)
            elif self.accept("^w"):
                expr = A.Omega(expr)
            else:
                return expr

    @_rule
    def g_atom(self) -> A.Expr:
        if self.accept("("):
            e = self.g_sum()
            self.expect(")")
            return e
        k = self.weight()
        if self.accept("eps"):
            return A.Sym(k, None)
        return A.Sym(k, self.letter())

    # -- LTL --------------------------------------------------------------------------

    @_rule
    def t_sum(self) -> A.Weighted:
        left = self.t_prod()
        while self.accept("(+)"):
            left = A.OPlus(left, self.t_prod())
        return left

    @_rule
    def t_prod(self) -> A.Weighted:
        left = self.t_until()
        while self.accept("(x)"):
            left = A.OTimes(left, self.t_until())
        return left

    @_rule
    def t_until(self) -> A.Weighted:
        left = self.t_unary()
        if self.accept("U"):
            return A.WUntil(left, self.t_until())
        return left

    @_rule
    def t_unary(self) -> A.Weighted:
        if self.accept("X"):
            return A.WNext(self.t_unary())
        if self.accept("G*"):
            return A.BoxTimes(self.t_unary())
        tok = self.peek()
        if tok.kind == "num":
            return A.Const(self.weight())
        if self.accept("["):
            f = self.ltl_or()
            self.expect("]")
            return A.Classical(f)
        if self.accept("("):
            f = self.t_sum()
            self.expect(")")
            return f
        self.fail("a weighted LTL formula")

    @_rule
    def ltl_or(self) -> A.Ltl:
        left = self.ltl_and()
        while self.accept("|"):
            left = A.TOr(left, self.ltl_and())
        return left

    @_rule
    def ltl_and(self) -> A.Ltl:
        left = self.ltl_until()
        while self.accept("&"):
            right = self.ltl_until()
            left = A.TNot(A.TOr(A.TNot(left), A.TNot(right)))
        return left

    @_rule
    def ltl_until(self) -> A.Ltl:
        left = self.ltl_unary()
        if self.accept("U"):
            return A.TUntil(left, self.ltl_until())
        return left

    @_rule
    def ltl_unary(self) -> A.Ltl:
        if self.accept("!"):
            return A.TNot(self.ltl_unary())
        if self.accept("X"):
            return A.TNext(self.ltl_unary())
        if self.accept("true"):
            return A.TTrue()
        if self.accept("false"):
            return A.TNot(A.TTrue())
        if self.accept("("):
            f = self.ltl_or()
            self.expect(")")
            return f
        return A.TAtom(self.letter())


_ENTRY = {
    "prop": Parser.prop_or,
    "ldl": Parser.ldl_or,
    "ldl-omega": Parser.ldl_or,
    "wldl": Parser.w_sum,
    "wldl-omega": Parser.w_sum,
    "gre": Parser.g_sum,
    "gre-omega": Parser.g_sum,
    "ltl": Parser.ltl_or,
    "wltl": Parser.t_sum,
}


def parse(
    kind: str,
    text: str,
    alphabet: Sequence[str] | None = None,
    semiring: Semiring | None = None,
) -> A.Node:
    """Parse ``text`` as a formula or expression of the given kind."""
    from .kinds import check_kind

    if kind not in _ENTRY:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    parser = Parser(text, alphabet, semiring)
    node = parser.run(lambda: _ENTRY[kind](parser))
    check_kind(node, kind)
    return node


@dataclass(frozen=True)
class FormulaFile:
    text: str
    alphabet: tuple[str, ...] | None


def read_formula_text(source: str) -> FormulaFile:
    """Split a formula file into body text and optional ``alphabet:`` header.

    Comment and header lines are blanked rather than removed so that error
    positions still refer to the original file.
    """
    alphabet = None
    lines = []
    for raw in source.splitlines():
        stripped = raw.strip()
        if stripped.startswith("#"):
            lines.append("")
        elif stripped.startswith("alphabet:"):
            alphabet = parse_alphabet(stripped[len("alphabet:"):])
            lines.append("")
        else:
            lines.append(raw)
    return FormulaFile("\n".join(lines), alphabet)


def parse_alphabet(text: str) -> tuple[str, ...]:
    """Accepts ``a b c``, ``a,b,c`` or ``abc``."""
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    if len(parts) == 1 and len(parts[0]) > 1:
        parts = list(parts[0])
    for p in parts:
        if not re.fullmatch(r"[a-z]", p):
            raise WldlSyntaxError(f"alphabet letters must be single lowercase letters, got {p!r}")
    if not parts:
        raise WldlSyntaxError("alphabet must be nonempty")
    return tuple(sorted(set(parts)))
