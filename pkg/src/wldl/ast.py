"""Abstract syntax trees.

Five families share this module: propositional formulas (``P*``), classical
LDL formulas and paths (``L*``), weighted LDL formulas and paths (``Const``,
``Classical``, ``OPlus``, ``OTimes``, ``W*``), LTL (``T*`` classical, plus the
weighted ``WNext``/``WUntil``/``BoxTimes``) and weighted rational expressions
(``Sym``, ``Sum``, ``Cauchy``, ``Plus``, ``Hadamard``, ``Omega``).

Finite-word and infinite-word variants use the same node classes; which
positions may hold an omega node is checked by :func:`wldl.kinds.check_kind`.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from functools import reduce
from typing import Any, Iterator, Sequence


class Node:
    __slots__ = ()

    def children(self) -> tuple["Node", ...]:
        return tuple(
            getattr(self, f.name)
            for f in fields(self)
            if isinstance(getattr(self, f.name), Node)
        )


# -- propositional formulas over {p_a} ------------------------------------


class Prop(Node):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class PTrue(Prop):
    pass


@dataclass(frozen=True, slots=True)
class PFalse(Prop):
    pass


@dataclass(frozen=True, slots=True)
class PAtom(Prop):
    letter: str


@dataclass(frozen=True, slots=True)
class PNot(Prop):
    arg: Prop


@dataclass(frozen=True, slots=True)
class PAnd(Prop):
    left: Prop
    right: Prop


@dataclass(frozen=True, slots=True)
class POr(Prop):
    left: Prop
    right: Prop


def prop_holds(prop: Prop, letter: str | None) -> bool:
    """Truth of ``prop`` on a word whose first letter is ``letter`` (None for the empty word)."""
    if isinstance(prop, PTrue):
        return True
    if isinstance(prop, PFalse):
        return False
    if isinstance(prop, PAtom):
        return letter == prop.letter
    if isinstance(prop, PNot):
        return not prop_holds(prop.arg, letter)
    if isinstance(prop, PAnd):
        return prop_holds(prop.left, letter) and prop_holds(prop.right, letter)
    if isinstance(prop, POr):
        return prop_holds(prop.left, letter) or prop_holds(prop.right, letter)
    raise TypeError(f"not a propositional formula: {prop!r}")


def prop_letters(prop: Prop, alphabet: Sequence[str]) -> frozenset[str]:
    return frozenset(a for a in alphabet if prop_holds(prop, a))


# -- classical LDL ----------------------------------------------------------


class Ldl(Node):
    __slots__ = ()


class LPath(Node):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class LTrue(Ldl):
    pass


@dataclass(frozen=True, slots=True)
class LAtom(Ldl):
    letter: str


@dataclass(frozen=True, slots=True)
class LNot(Ldl):
    arg: Ldl


@dataclass(frozen=True, slots=True)
class LAnd(Ldl):
    left: Ldl
    right: Ldl


@dataclass(frozen=True, slots=True)
class LDiamond(Ldl):
    path: LPath
    body: Ldl


@dataclass(frozen=True, slots=True)
class LStep(LPath):
    prop: Prop


@dataclass(frozen=True, slots=True)
class LTest(LPath):
    formula: Ldl


@dataclass(frozen=True, slots=True)
class LChoice(LPath):
    left: LPath
    right: LPath


@dataclass(frozen=True, slots=True)
class LSeq(LPath):
    left: LPath
    right: LPath


@dataclass(frozen=True, slots=True)
class LPlus(LPath):
    body: LPath


@dataclass(frozen=True, slots=True)
class LOmega(LPath):
    body: LPath


def neg(formula: Ldl) -> Ldl:
    """Negation with double negations cancelled."""
    if isinstance(formula, LNot):
        return formula.arg
    return LNot(formula)


def conj(formulas: Sequence[Ldl]) -> Ldl:
    if not formulas:
        return LTrue()
    return reduce(LAnd, formulas)


def disj(left: Ldl, right: Ldl) -> Ldl:
    return neg(LAnd(neg(left), neg(right)))


def expand_last(alphabet: Sequence[str]) -> Ldl:
    """``<true> /\\ !p_a``: holds exactly at the last position of a nonempty word."""
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    return LDiamond(LStep(PTrue()), no_letter(alphabet))


def no_letter(alphabet: Sequence[str]) -> Ldl:
    """``/\\ !p_a`` over the alphabet; on finite words this holds only at the empty word."""
    return conj([LNot(LAtom(a)) for a in sorted(alphabet)])


# -- weighted LDL -----------------------------------------------------------


class Weighted(Node):
    __slots__ = ()


class WPath(Node):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Const(Weighted):
    value: Any


@dataclass(frozen=True, slots=True)
class Classical(Weighted):
    formula: Node  # Ldl inside LDL formulas, Ltl inside weighted LTL


@dataclass(frozen=True, slots=True)
class OPlus(Weighted):
    left: Weighted
    right: Weighted


@dataclass(frozen=True, slots=True)
class OTimes(Weighted):
    left: Weighted
    right: Weighted


@dataclass(frozen=True, slots=True)
class WDiamond(Weighted):
    path: WPath
    body: Weighted


@dataclass(frozen=True, slots=True)
class WStep(WPath):
    prop: Prop


@dataclass(frozen=True, slots=True)
class WTest(WPath):
    formula: Weighted


@dataclass(frozen=True, slots=True)
class WChoice(WPath):
    left: WPath
    right: WPath


@dataclass(frozen=True, slots=True)
class WSeq(WPath):
    left: WPath
    right: WPath


@dataclass(frozen=True, slots=True)
class WIter(WPath):
    body: WPath


@dataclass(frozen=True, slots=True)
class WOmega(WPath):
    body: WPath


W_TRUE = Classical(LTrue())


def is_w_true(formula: Weighted) -> bool:
    return isinstance(formula, Classical) and isinstance(formula.formula, LTrue)


# -- LTL ----------------------------------------------------------------------


class Ltl(Node):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class TTrue(Ltl):
    pass


@dataclass(frozen=True, slots=True)
class TAtom(Ltl):
    letter: str


@dataclass(frozen=True, slots=True)
class TNot(Ltl):
    arg: Ltl


@dataclass(frozen=True, slots=True)
class TOr(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True, slots=True)
class TNext(Ltl):
    arg: Ltl


@dataclass(frozen=True, slots=True)
class TUntil(Ltl):
    left: Ltl
    right: Ltl


@dataclass(frozen=True, slots=True)
class WNext(Weighted):
    arg: Weighted


@dataclass(frozen=True, slots=True)
class WUntil(Weighted):
    left: Weighted
    right: Weighted


@dataclass(frozen=True, slots=True)
class BoxTimes(Weighted):
    arg: Weighted


def tneg(formula: Ltl) -> Ltl:
    if isinstance(formula, TNot):
        return formula.arg
    return TNot(formula)


# -- weighted rational expressions ---------------------------------------------


class Expr(Node):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Sym(Expr):
    """``k a`` for a letter, or ``k eps`` when ``letter`` is None."""

    weight: Any
    letter: str | None


@dataclass(frozen=True, slots=True)
class Sum(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Cauchy(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Plus(Expr):
    body: Expr


@dataclass(frozen=True, slots=True)
class Hadamard(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True, slots=True)
class Omega(Expr):
    body: Expr


def is_hadamard_free(expr: Expr) -> bool:
    """True for plain weighted rational expressions (no Hadamard product)."""
    return not any(isinstance(n, Hadamard) for n in walk(expr))


# -- traversal ------------------------------------------------------------------


def walk(node: Node) -> Iterator[Node]:
    """Pre-order traversal; shared subterms are visited once per occurrence."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children()))


def size(node: Node) -> int:
    """Number of nodes, counting shared subterms once per occurrence."""
    memo: dict[int, int] = {}

    def go(n: Node) -> int:
        key = id(n)
        if key not in memo:
            memo[key] = 1 + sum(go(c) for c in n.children())
        return memo[key]

    return go(node)


def weights_of(node: Node) -> list[Any]:
    out = []
    for n in walk(node):
        if isinstance(n, Const):
            out.append(n.value)
        elif isinstance(n, Sym):
            out.append(n.weight)
    return out
