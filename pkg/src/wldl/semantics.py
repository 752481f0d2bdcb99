"""Exact evaluation on finite words.

Every clause of the semantics looks at a factor of the input word: tests
and props read the current factor, sequential composition splits it, and
iteration splits it into chunks.  The evaluators below therefore memoize on
``(node, factor)``.  An evaluator object can be reused across many words for
the same formula, which is what the property tests and the CLI batch paths
do; memo entries for shared factors carry over.

Conventions on the empty word: ``eps`` satisfies ``true`` but no ``p_a``; a
one-letter step cannot be taken from ``eps``; the suffix ``w_{>=1}`` of a word
of length at most one is ``eps``.
"""

from __future__ import annotations

from typing import Any, Iterable

from . import ast as A
from .errors import ImproperIteration, ImproperPlus
from .semiring import Semiring

_TRUE = A.LTrue()


# -- classical LDL ----------------------------------------------------------


class LdlChecker:
    """Satisfaction ``x |= psi`` for classical LDL on finite words."""

    def __init__(self) -> None:
        self._sat: dict[tuple[int, str], bool] = {}
        self._dia: dict[tuple[int, int, str], bool] = {}
        self._keep: dict[int, A.Node] = {}

    def sat(self, f: A.Ldl, x: str) -> bool:
        key = (id(f), x)
        hit = self._sat.get(key)
        if hit is None:
            hit = self._sat[key] = self._compute(f, x)
            self._keep[id(f)] = f
        return hit

    def _compute(self, f: A.Ldl, x: str) -> bool:
        if isinstance(f, A.LTrue):
            return True
        if isinstance(f, A.LAtom):
            return x[:1] == f.letter
        if isinstance(f, A.LNot):
            return not self.sat(f.arg, x)
        if isinstance(f, A.LAnd):
            return self.sat(f.left, x) and self.sat(f.right, x)
        if isinstance(f, A.LDiamond):
            return self.diamond(f.path, f.body, x)
        raise TypeError(f"not a finite-word LDL formula: {f!r}")

    def diamond(self, p: A.LPath, body: A.Ldl, x: str) -> bool:
        key = (id(p), id(body), x)
        hit = self._dia.get(key)
        if hit is None:
            hit = self._dia[key] = self._diamond(p, body, x)
            self._keep[id(body)] = body
            self._keep[id(p)] = p
        return hit

    def _diamond(self, p: A.LPath, body: A.Ldl, x: str) -> bool:
        if isinstance(p, A.LStep):
            return bool(x) and A.prop_holds(p.prop, x[0]) and self.sat(body, x[1:])
        if isinstance(p, A.LTest):
            return self.sat(p.formula, x) and self.sat(body, x)
        if isinstance(p, A.LChoice):
            return self.diamond(p.left, body, x) or self.diamond(p.right, body, x)
        if isinstance(p, A.LSeq):
            return any(
                self.diamond(p.left, _TRUE, x[:k]) and self.diamond(p.right, body, x[k:])
                for k in range(len(x) + 1)
            )
        if isinstance(p, A.LPlus):
            return self._plus(p.body, body, x)
        raise TypeError(f"not a finite-word path: {p!r}")

    def _plus(self, p: A.LPath, body: A.Ldl, x: str) -> bool:
        # <p^n> body with 1 <= n <= |x|: n-1 chunks satisfying <p>true, then
        # a last chunk satisfying <p>body.  Chunks may be empty.
        n = len(x)
        layer = {0}
        for _ in range(n):  # layer holds end positions after m chunks, m < n
            if any(self.diamond(p, body, x[i:]) for i in layer):
                return True
            nxt = set()
            for i in layer:
                for k in range(i, n + 1):
                    if k not in nxt and self.diamond(p, _TRUE, x[i:k]):
                        nxt.add(k)
            if not nxt:
                return False
            layer = nxt
        return False


def sat_ldl(f: A.Ldl, word: str) -> bool:
    return LdlChecker().sat(f, word)


# -- weighted LDL ------------------------------------------------------------


def _iteration_nodes(f: A.Node) -> list[A.Node]:
    """Iteration nodes in post-order, so inner bodies are checked first."""
    out = []

    def go(n: A.Node) -> None:
        for c in n.children():
            go(c)
        if isinstance(n, (A.WIter, A.Plus)):
            out.append(n)

    go(f)
    return out


class WldlEvaluator:
    """``||phi||(x)`` for weighted LDL on finite words."""

    def __init__(self, semiring: Semiring, printer=None) -> None:
        self.S = semiring
        self.classical = LdlChecker()
        self._val: dict[tuple[int, str], Any] = {}
        self._dia: dict[tuple[int, int, str], Any] = {}
        self._checked: set[int] = set()
        self._keep: dict[int, A.Node] = {}
        self._printer = printer

    def check(self, f: A.Node) -> None:
        """Raise :class:`ImproperIteration` for the first improper iteration body."""
        if id(f) in self._checked:
            return
        for node in _iteration_nodes(f):
            if isinstance(node, A.WIter) and not self.S.is_zero(
                self.diamond(node.body, A.W_TRUE, "")
            ):
                raise ImproperIteration(node.body, self._text(node.body))
        self._checked.add(id(f))
        self._keep[id(f)] = f

    def _text(self, node: A.Node) -> str:
        from .printer import to_text

        return to_text(node) if self._printer is None else self._printer(node)

    def value(self, f: A.Weighted, x: str) -> Any:
        self.check(f)
        return self.val(f, x)

    def val(self, f: A.Weighted, x: str) -> Any:
        key = (id(f), x)
        hit = self._val.get(key, self)
        if hit is self:
            hit = self._val[key] = self._compute(f, x)
            self._keep[id(f)] = f
        return hit

    def _compute(self, f: A.Weighted, x: str) -> Any:
        S = self.S
        if isinstance(f, A.Const):
            return f.value
        if isinstance(f, A.Classical):
            return S.one if self.classical.sat(f.formula, x) else S.zero
        if isinstance(f, A.OPlus):
            return S.add(self.val(f.left, x), self.val(f.right, x))
        if isinstance(f, A.OTimes):
            return S.mul(self.val(f.left, x), self.val(f.right, x))
        if isinstance(f, A.WDiamond):
            return self.diamond(f.path, f.body, x)
        raise TypeError(f"not a finite-word weighted formula: {f!r}")

    def diamond(self, p: A.WPath, body: A.Weighted, x: str) -> Any:
        key = (id(p), id(body), x)
        hit = self._dia.get(key, self)
        if hit is self:
            hit = self._dia[key] = self._diamond(p, body, x)
            self._keep[id(body)] = body
            self._keep[id(p)] = p
        return hit

    def _diamond(self, p: A.WPath, body: A.Weighted, x: str) -> Any:
        S = self.S
        if isinstance(p, A.WStep):
            if x and A.prop_holds(p.prop, x[0]):
                return self.val(body, x[1:])
            return S.zero
        if isinstance(p, A.WTest):
            return S.mul(self.val(p.formula, x), self.val(body, x))
        if isinstance(p, A.WChoice):
            return S.add(self.diamond(p.left, body, x), self.diamond(p.right, body, x))
        if isinstance(p, A.WSeq):
            return S.sum(
                S.mul(self.diamond(p.left, A.W_TRUE, x[:k]), self.diamond(p.right, body, x[k:]))
                for k in range(len(x) + 1)
            )
        if isinstance(p, A.WIter):
            if not S.is_zero(self.diamond(p.body, A.W_TRUE, "")):
                raise ImproperIteration(p.body, self._text(p.body))
            # S(i) = P(x[i:]) + sum_{k>i} T(x[i:k]) S(k), which is the sum over
            # n of T^{n-1} P restricted to nonempty T-chunks.
            n = len(x)
            acc = [S.zero] * (n + 1)
            for i in range(n, -1, -1):
                total = self.diamond(p.body, body, x[i:])
                for k in range(i + 1, n + 1):
                    if not S.is_zero(acc[k]):
                        total = S.add(total, S.mul(self.diamond(p.body, A.W_TRUE, x[i:k]), acc[k]))
                acc[i] = total
            return acc[0]
        raise TypeError(f"not a finite-word weighted path: {p!r}")


def eval_wldl(f: A.Weighted, word: str, semiring: Semiring) -> Any:
    return WldlEvaluator(semiring).value(f, word)


def check_proper(path: A.WPath, semiring: Semiring) -> bool:
    """True iff ``||<path> true||(eps)`` is zero.

    Nested iterations are checked first and raise if improper.
    """
    ev = WldlEvaluator(semiring)
    ev.check(path)
    return semiring.is_zero(ev.diamond(path, A.W_TRUE, ""))


def improper_subterm(node: A.Node, semiring: Semiring) -> A.Node | None:
    """The first improper iteration body in ``node`` (or ``node`` itself for a path)."""
    try:
        if isinstance(node, A.WPath):
            if not check_proper(node, semiring):
                return node
        elif isinstance(node, A.Expr):
            GreEvaluator(semiring).check(node)
        else:
            WldlEvaluator(semiring).check(node)
    except ImproperIteration as exc:
        return exc.body
    return None


# -- rational expressions --------------------------------------------------------


class GreEvaluator:
    def __init__(self, semiring: Semiring) -> None:
        self.S = semiring
        self._val: dict[tuple[int, str], Any] = {}
        self._keep: dict[int, A.Node] = {}
        self._checked: set[int] = set()

    def check(self, e: A.Expr) -> None:
        if id(e) in self._checked:
            return
        for node in _iteration_nodes(e):
            if isinstance(node, A.Plus) and not self.S.is_zero(self.val(node.body, "")):
                from .printer import to_text

                raise ImproperPlus(node.body, to_text(node.body))
        self._checked.add(id(e))
        self._keep[id(e)] = e

    def value(self, e: A.Expr, x: str) -> Any:
        self.check(e)
        return self.val(e, x)

    def val(self, e: A.Expr, x: str) -> Any:
        key = (id(e), x)
        hit = self._val.get(key, self)
        if hit is self:
            hit = self._val[key] = self._compute(e, x)
            self._keep[id(e)] = e
        return hit

    def _compute(self, e: A.Expr, x: str) -> Any:
        S = self.S
        if isinstance(e, A.Sym):
            if e.letter is None:
                return e.weight if x == "" else S.zero
            return e.weight if x == e.letter else S.zero
        if isinstance(e, A.Sum):
            return S.add(self.val(e.left, x), self.val(e.right, x))
        if isinstance(e, A.Hadamard):
            return S.mul(self.val(e.left, x), self.val(e.right, x))
        if isinstance(e, A.Cauchy):
            return S.sum(
                S.mul(self.val(e.left, x[:k]), self.val(e.right, x[k:]))
                for k in range(len(x) + 1)
            )
        if isinstance(e, A.Plus):
            if not S.is_zero(self.val(e.body, "")):
                from .printer import to_text

                raise ImproperPlus(e.body, to_text(e.body))
            n = len(x)
            if n == 0:
                return S.zero
            acc = [S.zero] * (n + 1)
            acc[n] = S.one
            for i in range(n - 1, -1, -1):
                total = S.zero
                for k in range(i + 1, n + 1):
                    if not S.is_zero(acc[k]):
                        total = S.add(total, S.mul(self.val(e.body, x[i:k]), acc[k]))
                acc[i] = total
            return acc[0]
        raise TypeError(f"not a finite-word expression: {e!r}")


def eval_gre(e: A.Expr, word: str, semiring: Semiring) -> Any:
    return GreEvaluator(semiring).value(e, word)


# -- LTL ------------------------------------------------------------------------


class LtlEvaluator:
    """Weighted LTL on finite words; classical LTL subformulas use the same conventions."""

    def __init__(self, semiring: Semiring) -> None:
        self.S = semiring
        self._val: dict[tuple[int, str], Any] = {}
        self._sat: dict[tuple[int, str], bool] = {}
        self._keep: dict[int, A.Node] = {}

    def sat(self, f: A.Ltl, x: str) -> bool:
        key = (id(f), x)
        hit = self._sat.get(key)
        if hit is None:
            hit = self._sat[key] = self._sat_compute(f, x)
            self._keep[id(f)] = f
        return hit

    def _sat_compute(self, f: A.Ltl, x: str) -> bool:
        if isinstance(f, A.TTrue):
            return True
        if isinstance(f, A.TAtom):
            return x[:1] == f.letter
        if isinstance(f, A.TNot):
            return not self.sat(f.arg, x)
        if isinstance(f, A.TOr):
            return self.sat(f.left, x) or self.sat(f.right, x)
        if isinstance(f, A.TNext):
            return self.sat(f.arg, x[1:])
        if isinstance(f, A.TUntil):
            for i in range(len(x)):
                if self.sat(f.right, x[i:]):
                    return True
                if not self.sat(f.left, x[i:]):
                    return False
            return False
        raise TypeError(f"not an LTL formula: {f!r}")

    def val(self, f: A.Weighted, x: str) -> Any:
        key = (id(f), x)
        hit = self._val.get(key, self)
        if hit is self:
            hit = self._val[key] = self._compute(f, x)
            self._keep[id(f)] = f
        return hit

    def _compute(self, f: A.Weighted, x: str) -> Any:
        S = self.S
        if isinstance(f, A.Const):
            return f.value
        if isinstance(f, A.Classical):
            return S.one if self.sat(f.formula, x) else S.zero
        if isinstance(f, A.OPlus):
            return S.add(self.val(f.left, x), self.val(f.right, x))
        if isinstance(f, A.OTimes):
            return S.mul(self.val(f.left, x), self.val(f.right, x))
        if isinstance(f, A.WNext):
            return self.val(f.arg, x[1:])
        if isinstance(f, A.BoxTimes):
            return S.prod(self.val(f.arg, x[i:]) for i in range(len(x)))
        if isinstance(f, A.WUntil):
            total, prefix = S.zero, S.one
            for i in range(len(x)):
                total = S.add(total, S.mul(prefix, self.val(f.right, x[i:])))
                prefix = S.mul(prefix, self.val(f.left, x[i:]))
            return total
        raise TypeError(f"not a weighted LTL formula: {f!r}")


def eval_wltl(f: A.Weighted, word: str, semiring: Semiring) -> Any:
    return LtlEvaluator(semiring).val(f, word)


def sat_ltl(f: A.Ltl, word: str) -> bool:
    return LtlEvaluator(_bool()).sat(f, word)


def _bool() -> Semiring:
    from .semiring import BOOLEAN

    return BOOLEAN


def words(alphabet: Iterable[str], max_len: int) -> list[str]:
    """All words up to ``max_len`` in shortlex order."""
    alphabet = sorted(alphabet)
    out = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + a for w in frontier for a in alphabet]
        out.extend(frontier)
    return out
