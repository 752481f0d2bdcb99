"""Which node may appear where.

Finite-word and infinite-word formulas share node classes, so the parser
produces a tree first and this module rejects trees outside the grammar of
the requested kind.  For the infinite-word kinds the checks follow the shape

    classical:  eta  ::= phi | xi? | eta + eta | theta ; eta | theta^w
    weighted:   pi   ::= phi | zeta? | pi (+) pi | rho . pi | rho^w
    expression: E    ::= E + E | F . E | F^w | E (o) E

where theta, rho and F are finite-word paths and expressions.
"""

from __future__ import annotations

from . import ast as A
from .errors import WldlSyntaxError


def _bad(what: str) -> WldlSyntaxError:
    return WldlSyntaxError(what)


# -- classical LDL ----------------------------------------------------------


def _ldl(f: A.Node, omega: bool) -> None:
    if isinstance(f, (A.LTrue, A.LAtom)):
        return
    if isinstance(f, A.LNot):
        return _ldl(f.arg, omega)
    if isinstance(f, A.LAnd):
        _ldl(f.left, omega)
        return _ldl(f.right, omega)
    if isinstance(f, A.LDiamond):
        (_lpath_omega if omega else _lpath)(f.path)
        return _ldl(f.body, omega)
    raise _bad(f"{type(f).__name__} is not a classical LDL formula")


def _lpath(p: A.Node) -> None:
    if isinstance(p, A.LStep):
        return
    if isinstance(p, A.LTest):
        return _ldl(p.formula, False)
    if isinstance(p, (A.LChoice, A.LSeq)):
        _lpath(p.left)
        return _lpath(p.right)
    if isinstance(p, A.LPlus):
        return _lpath(p.body)
    if isinstance(p, A.LOmega):
        raise _bad("omega iteration '^w' is only allowed in infinite-word formulas")
    raise _bad(f"{type(p).__name__} is not a classical path")


def _lpath_omega(p: A.Node) -> None:
    if isinstance(p, A.LStep):
        return
    if isinstance(p, A.LTest):
        return _ldl(p.formula, True)
    if isinstance(p, A.LChoice):
        _lpath_omega(p.left)
        return _lpath_omega(p.right)
    if isinstance(p, A.LSeq):
        _lpath(p.left)
        return _lpath_omega(p.right)
    if isinstance(p, A.LOmega):
        return _lpath(p.body)
    if isinstance(p, A.LPlus):
        raise _bad("'^+' cannot end an infinite-word path; write theta^+ ; eta")
    raise _bad(f"{type(p).__name__} is not a classical path")


# -- weighted LDL ------------------------------------------------------------


def _wldl(f: A.Node, omega: bool) -> None:
    if isinstance(f, A.Const):
        return
    if isinstance(f, A.Classical):
        return _ldl(f.formula, omega)
    if isinstance(f, (A.OPlus, A.OTimes)):
        _wldl(f.left, omega)
        return _wldl(f.right, omega)
    if isinstance(f, A.WDiamond):
        (_wpath_omega if omega else _wpath)(f.path)
        return _wldl(f.body, omega)
    raise _bad(f"{type(f).__name__} is not a weighted LDL formula")


def _wpath(p: A.Node) -> None:
    if isinstance(p, A.WStep):
        return
    if isinstance(p, A.WTest):
        return _wldl(p.formula, False)
    if isinstance(p, (A.WChoice, A.WSeq)):
        _wpath(p.left)
        return _wpath(p.right)
    if isinstance(p, A.WIter):
        return _wpath(p.body)
    if isinstance(p, A.WOmega):
        raise _bad("omega iteration '^w' is only allowed in infinite-word formulas")
    raise _bad(f"{type(p).__name__} is not a weighted path")


def _wpath_omega(p: A.Node) -> None:
    if isinstance(p, A.WStep):
        return
    if isinstance(p, A.WTest):
        return _wldl(p.formula, True)
    if isinstance(p, A.WChoice):
        _wpath_omega(p.left)
        return _wpath_omega(p.right)
    if isinstance(p, A.WSeq):
        _wpath(p.left)
        return _wpath_omega(p.right)
    if isinstance(p, A.WOmega):
        return _wpath(p.body)
    if isinstance(p, A.WIter):
        raise _bad("'^+' cannot end an infinite-word path; write rho^+ . pi")
    raise _bad(f"{type(p).__name__} is not a weighted path")


# -- expressions ----------------------------------------------------------------


def _gre(e: A.Node) -> None:
    if isinstance(e, A.Sym):
        return
    if isinstance(e, (A.Sum, A.Cauchy, A.Hadamard)):
        _gre(e.left)
        return _gre(e.right)
    if isinstance(e, A.Plus):
        return _gre(e.body)
    if isinstance(e, A.Omega):
        raise _bad("'^w' is only allowed in omega expressions")
    raise _bad(f"{type(e).__name__} is not a rational expression")


def _gre_omega(e: A.Node) -> None:
    if isinstance(e, (A.Sum, A.Hadamard)):
        _gre_omega(e.left)
        return _gre_omega(e.right)
    if isinstance(e, A.Cauchy):
        _gre(e.left)
        return _gre_omega(e.right)
    if isinstance(e, A.Omega):
        return _gre(e.body)
    raise _bad(
        "an omega expression must be a sum, Hadamard product, F . E or F^w "
        f"(got {type(e).__name__})"
    )


# -- LTL ------------------------------------------------------------------------


def _ltl(f: A.Node) -> None:
    if isinstance(f, (A.TTrue, A.TAtom)):
        return
    if isinstance(f, (A.TNot, A.TNext)):
        return _ltl(f.arg)
    if isinstance(f, (A.TOr, A.TUntil)):
        _ltl(f.left)
        return _ltl(f.right)
    raise _bad(f"{type(f).__name__} is not an LTL formula")


def _wltl(f: A.Node) -> None:
    if isinstance(f, A.Const):
        return
    if isinstance(f, A.Classical):
        return _ltl(f.formula)
    if isinstance(f, (A.OPlus, A.OTimes, A.WUntil)):
        _wltl(f.left)
        return _wltl(f.right)
    if isinstance(f, (A.WNext, A.BoxTimes)):
        return _wltl(f.arg)
    raise _bad(f"{type(f).__name__} is not a weighted LTL formula")


def _prop(f: A.Node) -> None:
    if not isinstance(f, A.Prop):
        raise _bad(f"{type(f).__name__} is not a propositional formula")


_CHECKS = {
    "prop": _prop,
    "ldl": lambda f: _ldl(f, False),
    "ldl-omega": lambda f: _ldl(f, True),
    "wldl": lambda f: _wldl(f, False),
    "wldl-omega": lambda f: _wldl(f, True),
    "gre": _gre,
    "gre-omega": _gre_omega,
    "ltl": _ltl,
    "wltl": _wltl,
}


def check_kind(node: A.Node, kind: str) -> None:
    """Raise :class:`WldlSyntaxError` unless ``node`` belongs to ``kind``."""
    _CHECKS[kind](node)


def is_kind(node: A.Node, kind: str) -> bool:
    try:
        check_kind(node, kind)
    except WldlSyntaxError:
        return False
    return True
