"""Seeded random formulas, expressions and lasso words for property tests.

Every generator takes a :class:`random.Random`.  A node is a leaf with
probability ``leaf`` (and always at depth 0).  Iteration bodies are
regenerated until they are proper; after ``tries`` failures the iteration
is replaced by its body's leaf fallback.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import ast as A
from .errors import ImproperIteration
from .omega.lasso import Lasso
from .semantics import GreEvaluator, WldlEvaluator
from .semiring import Semiring

DEFAULT_DEPTH = 4
LEAF = 0.5


def weight_pool(S: Semiring) -> list[Any]:
    if S.name == "boolean":
        return [False, True]
    if S.name == "rat":
        return [Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(1, 2)]
    if S.name == "viterbi":
        return [Fraction(0), Fraction(1), Fraction(1, 2)]
    return [0, 1, 2, 3]


def omega_weight_pool(S: Semiring) -> list[Any]:
    """Weights for infinite-word generators, biased towards ``one`` so that
    random omega-iterations are not almost always zero."""
    if S.name == "boolean":
        return [True, True, True, False]
    if S.name == "minplus":
        return [0, 0, 0, 1, 2]
    return weight_pool(S)


class Generator:
    def __init__(
        self,
        rng: random.Random,
        alphabet: Sequence[str] = ("a", "b"),
        semiring: Semiring | None = None,
        leaf: float = LEAF,
        tries: int = 20,
        omega_negation: float = 0.0,
        pool: Sequence[Any] | None = None,
    ):
        self.rng = rng
        self.alphabet = tuple(alphabet)
        self.S = semiring
        self.leaf = leaf
        self.tries = tries
        self.omega_negation = omega_negation
        if pool is not None:
            self.pool = list(pool)
        else:
            self.pool = weight_pool(semiring) if semiring is not None else []

    def _is_leaf(self, depth: int) -> bool:
        return depth <= 0 or self.rng.random() < self.leaf

    def letter(self) -> str:
        return self.rng.choice(self.alphabet)

    def weight(self) -> Any:
        return self.rng.choice(self.pool)

    # propositional

    def prop(self, depth: int = 2) -> A.Prop:
        r = self.rng
        if self._is_leaf(depth):
            return A.PAtom(self.letter()) if r.random() < 0.8 else A.PTrue()
        k = r.randrange(3)
        if k == 0:
            return A.PNot(self.prop(depth - 1))
        if k == 1:
            return A.PAnd(self.prop(depth - 1), self.prop(depth - 1))
        return A.POr(self.prop(depth - 1), self.prop(depth - 1))

    # classical LDL, finite words

    def ldl(self, depth: int = DEFAULT_DEPTH) -> A.Ldl:
        r = self.rng
        if self._is_leaf(depth):
            return A.LAtom(self.letter()) if r.random() < 0.7 else A.LTrue()
        k = r.randrange(3)
        if k == 0:
            return A.neg(self.ldl(depth - 1))
        if k == 1:
            return A.LAnd(self.ldl(depth - 1), self.ldl(depth - 1))
        return A.LDiamond(self.lpath(depth - 1), self.ldl(depth - 1))

    def lpath(self, depth: int) -> A.LPath:
        r = self.rng
        if self._is_leaf(depth):
            if r.random() < 0.7:
                return A.LStep(self.prop(1))
            return A.LTest(self.ldl(0))
        k = r.randrange(4)
        if k == 0:
            return A.LTest(self.ldl(depth - 1))
        if k == 1:
            return A.LChoice(self.lpath(depth - 1), self.lpath(depth - 1))
        if k == 2:
            return A.LSeq(self.lpath(depth - 1), self.lpath(depth - 1))
        return A.LPlus(self.lpath(depth - 1))

    # weighted LDL, finite words

    def wldl(self, depth: int = DEFAULT_DEPTH) -> A.Weighted:
        """A formula whose iterations are all proper."""
        r = self.rng
        if self._is_leaf(depth):
            if r.random() < 0.5:
                return A.Const(self.weight())
            return A.Classical(self.ldl(1))
        k = r.randrange(3)
        if k == 0:
            return A.OPlus(self.wldl(depth - 1), self.wldl(depth - 1))
        if k == 1:
            return A.OTimes(self.wldl(depth - 1), self.wldl(depth - 1))
        return A.WDiamond(self.wpath(depth - 1), self.wldl(depth - 1))

    def wpath(self, depth: int) -> A.WPath:
        r = self.rng
        if self._is_leaf(depth):
            if r.random() < 0.7:
                return A.WStep(self.prop(1))
            return A.WTest(self.wldl(0))
        k = r.randrange(4)
        if k == 0:
            return A.WTest(self.wldl(depth - 1))
        if k == 1:
            return A.WChoice(self.wpath(depth - 1), self.wpath(depth - 1))
        if k == 2:
            return A.WSeq(self.wpath(depth - 1), self.wpath(depth - 1))
        return self.witer(depth)

    def proper_wpath(self, depth: int) -> A.WPath:
        ev = WldlEvaluator(self.S)
        for _ in range(self.tries):
            p = self.wpath(depth)
            try:
                ev.check(p)
                if self.S.is_zero(ev.diamond(p, A.W_TRUE, "")):
                    return p
            except ImproperIteration:
                pass
        return A.WStep(A.PAtom(self.letter()))

    def witer(self, depth: int) -> A.WPath:
        return A.WIter(self.proper_wpath(depth - 1))

    # expressions, finite words

    def gre(self, depth: int = DEFAULT_DEPTH, hadamard: bool = True) -> A.Expr:
        r = self.rng
        if self._is_leaf(depth):
            letter = None if r.random() < 0.2 else self.letter()
            return A.Sym(self.weight(), letter)
        k = r.randrange(4 if hadamard else 3)
        if k == 0:
            return A.Sum(self.gre(depth - 1, hadamard), self.gre(depth - 1, hadamard))
        if k == 1:
            return A.Cauchy(self.gre(depth - 1, hadamard), self.gre(depth - 1, hadamard))
        if k == 2:
            return A.Plus(self.proper_gre(depth - 1, hadamard))
        return A.Hadamard(self.gre(depth - 1, hadamard), self.gre(depth - 1, hadamard))

    def proper_gre(self, depth: int, hadamard: bool = True) -> A.Expr:
        ev = GreEvaluator(self.S)
        for _ in range(self.tries):
            e = self.gre(depth, hadamard)
            try:
                ev.check(e)
                if self.S.is_zero(ev.val(e, "")):
                    return e
            except ImproperIteration:
                pass
        return A.Sym(self.weight(), self.letter())

    # infinite words

    def ldlo(self, depth: int = 3) -> A.Ldl:
        """Classical LDL over infinite words; negation only on atoms unless
        ``omega_negation`` allows it on larger subformulas."""
        r = self.rng
        if self._is_leaf(depth):
            k = r.random()
            if k < 0.5:
                return A.LAtom(self.letter())
            if k < 0.7:
                return A.LNot(A.LAtom(self.letter()))
            return A.LTrue()
        k = r.randrange(3)
        if k == 0 and r.random() < self.omega_negation:
            return A.neg(self.ldlo(depth - 1))
        if k <= 1:
            return A.LAnd(self.ldlo(depth - 1), self.ldlo(depth - 1))
        return self.odiamond(self.opath(depth - 1), depth - 1)

    def opath(self, depth: int) -> A.LPath:
        r = self.rng
        if self._is_leaf(depth):
            k = r.random()
            if k < 0.5:
                return A.LStep(self.prop(1))
            if k < 0.75:
                return A.LOmega(self.lpath(1))
            return A.LTest(self.ldlo(0))
        k = r.randrange(4)
        if k == 0:
            return A.LTest(self.ldlo(depth - 1))
        if k == 1:
            return A.LChoice(self.opath(depth - 1), self.opath(depth - 1))
        if k == 2:
            return A.LSeq(self.lpath(depth - 1), self.opath(depth - 1))
        return A.LOmega(self.lpath(depth - 1))

    def odiamond(self, path: A.LPath, depth: int) -> A.Ldl:
        if _ends_in_omega(path) and self.rng.random() < 0.8:
            return A.LDiamond(path, A.LTrue())
        return A.LDiamond(path, self.ldlo(depth))

    def wldlo(self, depth: int = 3) -> A.Weighted:
        r = self.rng
        if self._is_leaf(depth):
            if r.random() < 0.5:
                return A.Const(self.weight())
            return A.Classical(self.ldlo(1))
        k = r.randrange(3)
        if k == 0:
            return A.OPlus(self.wldlo(depth - 1), self.wldlo(depth - 1))
        if k == 1:
            return A.OTimes(self.wldlo(depth - 1), self.wldlo(depth - 1))
        path = self.wopath(depth - 1)
        body = A.W_TRUE if _ends_in_omega(path) and r.random() < 0.8 else self.wldlo(depth - 1)
        return A.WDiamond(path, body)

    def wopath(self, depth: int) -> A.WPath:
        r = self.rng
        if self._is_leaf(depth):
            k = r.random()
            if k < 0.5:
                return A.WStep(self.prop(1))
            if k < 0.75:
                return A.WOmega(self.proper_wpath(1))
            return A.WTest(self.wldlo(0))
        k = r.randrange(4)
        if k == 0:
            return A.WTest(self.wldlo(depth - 1))
        if k == 1:
            return A.WChoice(self.wopath(depth - 1), self.wopath(depth - 1))
        if k == 2:
            return A.WSeq(self.wpath(depth - 1), self.wopath(depth - 1))
        return A.WOmega(self.proper_wpath(depth - 1))

    def greo(self, depth: int = 3) -> A.Expr:
        r = self.rng
        if self._is_leaf(depth):
            return A.Omega(self.proper_gre(1))
        k = r.random()
        if k < 0.3:
            return A.Sum(self.greo(depth - 1), self.greo(depth - 1))
        if k < 0.45:
            return A.Hadamard(self.greo(depth - 1), self.greo(depth - 1))
        if k < 0.75:
            return A.Cauchy(self.gre(depth - 1), self.greo(depth - 1))
        return A.Omega(self.proper_gre(depth - 1))

    def lasso(self, max_stem: int = 3, max_loop: int = 3) -> Lasso:
        r = self.rng
        stem = "".join(self.letter() for _ in range(r.randint(0, max_stem)))
        loop = "".join(self.letter() for _ in range(r.randint(1, max_loop)))
        return Lasso(stem, loop)


def _ends_in_omega(p: A.Node) -> bool:
    if isinstance(p, (A.LOmega, A.WOmega)):
        return True
    if isinstance(p, (A.LSeq, A.WSeq)):
        return _ends_in_omega(p.right)
    if isinstance(p, (A.LChoice, A.WChoice)):
        return _ends_in_omega(p.left) or _ends_in_omega(p.right)
    return False


def sample(
    kind: str,
    count: int,
    seed: int,
    semiring: Semiring | None = None,
    alphabet: Sequence[str] = ("a", "b"),
    depth: int | None = None,
) -> list[A.Node]:
    """``count`` random objects of a formula kind, reproducible from ``seed``."""
    pool = None
    if kind.endswith("-omega") and semiring is not None:
        pool = omega_weight_pool(semiring)
    g = Generator(random.Random(seed), alphabet, semiring, pool=pool)
    makers: dict[str, Callable[[], A.Node]] = {
        "prop": lambda: g.prop(depth or 2),
        "ldl": lambda: g.ldl(depth or DEFAULT_DEPTH),
        "wldl": lambda: g.wldl(depth or DEFAULT_DEPTH),
        "gre": lambda: g.gre(depth or DEFAULT_DEPTH),
        "ldl-omega": lambda: g.ldlo(depth or 3),
        "wldl-omega": lambda: g.wldlo(depth or 3),
        "gre-omega": lambda: g.greo(depth or 3),
    }
    if kind not in makers:
        raise ValueError(f"no generator for kind {kind!r}")
    if kind in ("wldl", "gre", "wldl-omega", "gre-omega") and semiring is None:
        raise ValueError(f"kind {kind!r} needs a semiring")
    return [makers[kind]() for _ in range(count)]


def perturb_weight(node: A.Node, index: int, change: Callable[[Any], Any]) -> A.Node:
    """Copy of ``node`` with its ``index``-th weight literal (pre-order) changed."""
    from dataclasses import fields, replace

    counter = [0]

    def go(n: A.Node) -> A.Node:
        if isinstance(n, (A.Const, A.Sym)):
            attr = "value" if isinstance(n, A.Const) else "weight"
            i = counter[0]
            counter[0] += 1
            if i == index:
                return replace(n, **{attr: change(getattr(n, attr))})
            return n
        updates = {}
        for f in fields(n):
            v = getattr(n, f.name)
            if isinstance(v, A.Node):
                nv = go(v)
                if nv is not v:
                    updates[f.name] = nv
        return replace(n, **updates) if updates else n

    return go(node)
