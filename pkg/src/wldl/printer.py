"""Pretty-printer producing the concrete syntax accepted by :mod:`wldl.parser`.

Parentheses are inserted only where precedence requires them, except that
postfix iteration always wraps a compound operand, so ``Plus(Sym(1, "a"))``
prints as ``(1 a)^+`` rather than the equally parseable ``1 a^+``.
"""

from __future__ import annotations

from typing import Sequence

from . import ast as A
from .semiring import format_value


class Printer:
    def __init__(self, alphabet: Sequence[str] | None = None):
        self.last = A.expand_last(alphabet) if alphabet else None

    # -- props --------------------------------------------------------------

    def prop(self, p: A.Prop, level: int = 0) -> str:
        if isinstance(p, A.PTrue):
            return "true"
        if isinstance(p, A.PFalse):
            return "false"
        if isinstance(p, A.PAtom):
            return p.letter
        if isinstance(p, A.PNot):
            return "!" + self.prop(p.arg, 2)
        if isinstance(p, A.PAnd):
            s = f"{self.prop(p.left, 1)} & {self.prop(p.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(p, A.POr):
            s = f"{self.prop(p.left, 0)} | {self.prop(p.right, 1)}"
            return f"({s})" if level > 0 else s
        raise TypeError(p)

    def _step(self, p: A.Prop, under_postfix: bool) -> str:
        s = self.prop(p)
        if under_postfix and not isinstance(p, (A.PAtom, A.PTrue, A.PFalse)):
            return f"({s})"
        return s

    # -- classical LDL ------------------------------------------------------

    def ldl(self, f: A.Ldl, level: int = 0) -> str:
        if self.last is not None and f == self.last:
            return "last"
        if isinstance(f, A.LTrue):
            return "true"
        if isinstance(f, A.LAtom):
            return f.letter
        if isinstance(f, A.LNot):
            inner = f.arg
            if isinstance(inner, A.LTrue):
                return "false"
            if (
                isinstance(inner, A.LAnd)
                and isinstance(inner.left, A.LNot)
                and isinstance(inner.right, A.LNot)
            ):
                s = f"{self.ldl(inner.left.arg, 0)} | {self.ldl(inner.right.arg, 1)}"
                return f"({s})" if level > 0 else s
            return "!" + self.ldl(inner, 2)
        if isinstance(f, A.LAnd):
            s = f"{self.ldl(f.left, 1)} & {self.ldl(f.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(f, A.LDiamond):
            return f"<{self.lpath(f.path)}> {self.ldl(f.body, 2)}"
        raise TypeError(f)

    def lpath(self, p: A.LPath, level: int = 0) -> str:
        if isinstance(p, A.LStep):
            return self._step(p.prop, level > 2)
        if isinstance(p, A.LTest):
            s = self.ldl(p.formula, 2)
            if isinstance(p.formula, A.LDiamond) and s != "last":
                s = f"({s})"
            s += "?"
            return f"({s})" if level > 2 else s
        if isinstance(p, A.LChoice):
            s = f"{self.lpath(p.left, 0)} + {self.lpath(p.right, 1)}"
            return f"({s})" if level > 0 else s
        if isinstance(p, A.LSeq):
            s = f"{self.lpath(p.left, 1)} ; {self.lpath(p.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(p, (A.LPlus, A.LOmega)):
            op = "^+" if isinstance(p, A.LPlus) else "^w"
            body = p.body
            if isinstance(body, (A.LPlus, A.LOmega)):
                return self.lpath(body, 2) + op
            return self.lpath(body, 3) + op
        raise TypeError(p)

    # -- weighted LDL -------------------------------------------------------

    def wldl(self, f: A.Weighted, level: int = 0) -> str:
        if isinstance(f, A.Const):
            return format_value(f.value)
        if isinstance(f, A.Classical):
            if self.last is not None and f.formula == self.last:
                return "last"
            return f"[{self.ldl(f.formula)}]"
        if isinstance(f, A.OPlus):
            s = f"{self.wldl(f.left, 0)} (+) {self.wldl(f.right, 1)}"
            return f"({s})" if level > 0 else s
        if isinstance(f, A.OTimes):
            s = f"{self.wldl(f.left, 1)} (x) {self.wldl(f.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(f, A.WDiamond):
            return f"<{self.wpath(f.path)}> {self.wldl(f.body, 2)}"
        raise TypeError(f)

    def wpath(self, p: A.WPath, level: int = 0) -> str:
        if isinstance(p, A.WStep):
            return self._step(p.prop, level > 2)
        if isinstance(p, A.WTest):
            s = self.wldl(p.formula, 2)
            if isinstance(p.formula, A.WDiamond):
                s = f"({s})"
            s += "?"
            return f"({s})" if level > 2 else s
        if isinstance(p, A.WChoice):
            s = f"{self.wpath(p.left, 0)} (+) {self.wpath(p.right, 1)}"
            return f"({s})" if level > 0 else s
        if isinstance(p, A.WSeq):
            s = f"{self.wpath(p.left, 1)} . {self.wpath(p.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(p, (A.WIter, A.WOmega)):
            op = "^+" if isinstance(p, A.WIter) else "^w"
            body = p.body
            if isinstance(body, (A.WIter, A.WOmega)):
                return self.wpath(body, 2) + op
            return self.wpath(body, 3) + op
        raise TypeError(p)

    # -- expressions -----------------------------------------------------------

    def expr(self, e: A.Expr, level: int = 0) -> str:
        if isinstance(e, A.Sym):
            return f"{format_value(e.weight)} {e.letter or 'eps'}"
        if isinstance(e, A.Sum):
            s = f"{self.expr(e.left, 0)} + {self.expr(e.right, 1)}"
            return f"({s})" if level > 0 else s
        if isinstance(e, A.Hadamard):
            s = f"{self.expr(e.left, 1)} (o) {self.expr(e.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(e, A.Cauchy):
            s = f"{self.expr(e.left, 2)} . {self.expr(e.right, 3)}"
            return f"({s})" if level > 2 else s
        if isinstance(e, (A.Plus, A.Omega)):
            op = "^+" if isinstance(e, A.Plus) else "^w"
            body = e.body
            if isinstance(body, (A.Plus, A.Omega)):
                return self.expr(body, 3) + op
            return f"({self.expr(body)})" + op
        raise TypeError(e)

    # -- LTL ---------------------------------------------------------------------

    def ltl(self, f: A.Ltl, level: int = 0) -> str:
        if isinstance(f, A.TTrue):
            return "true"
        if isinstance(f, A.TAtom):
            return f.letter
        if isinstance(f, A.TNot):
            return "!" + self.ltl(f.arg, 3)
        if isinstance(f, A.TNext):
            return "X " + self.ltl(f.arg, 3)
        if isinstance(f, A.TOr):
            s = f"{self.ltl(f.left, 0)} | {self.ltl(f.right, 1)}"
            return f"({s})" if level > 0 else s
        if isinstance(f, A.TUntil):
            s = f"{self.ltl(f.left, 3)} U {self.ltl(f.right, 2)}"
            return f"({s})" if level > 2 else s
        raise TypeError(f)

    def wltl(self, f: A.Weighted, level: int = 0) -> str:
        if isinstance(f, A.Const):
            return format_value(f.value)
        if isinstance(f, A.Classical):
            return f"[{self.ltl(f.formula)}]"
        if isinstance(f, A.OPlus):
            s = f"{self.wltl(f.left, 0)} (+) {self.wltl(f.right, 1)}"
            return f"({s})" if level > 0 else s
        if isinstance(f, A.OTimes):
            s = f"{self.wltl(f.left, 1)} (x) {self.wltl(f.right, 2)}"
            return f"({s})" if level > 1 else s
        if isinstance(f, A.WUntil):
            s = f"{self.wltl(f.left, 3)} U {self.wltl(f.right, 2)}"
            return f"({s})" if level > 2 else s
        if isinstance(f, A.WNext):
            return "X " + self.wltl(f.arg, 3)
        if isinstance(f, A.BoxTimes):
            return "G* " + self.wltl(f.arg, 3)
        raise TypeError(f)

    # -- dispatch -----------------------------------------------------------------

    def any(self, node: A.Node) -> str:
        if isinstance(node, A.Prop):
            return self.prop(node)
        if isinstance(node, A.Ldl):
            return self.ldl(node)
        if isinstance(node, A.LPath):
            return self.lpath(node)
        if isinstance(node, A.WPath):
            return self.wpath(node)
        if isinstance(node, A.Expr):
            return self.expr(node)
        if isinstance(node, A.Ltl):
            return self.ltl(node)
        if isinstance(node, A.Weighted):
            if _is_wltl(node):
                return self.wltl(node)
            return self.wldl(node)
        raise TypeError(node)


def _is_wltl(node: A.Weighted) -> bool:
    for n in A.walk(node):
        if isinstance(n, (A.WNext, A.WUntil, A.BoxTimes, A.Ltl)):
            return True
        if isinstance(n, (A.WDiamond, A.Ldl)):
            return False
    return False


def to_text(node: A.Node, alphabet: Sequence[str] | None = None) -> str:
    """Render ``node``; with an alphabet, ``Last`` expansions print as ``last``."""
    return Printer(alphabet).any(node)
