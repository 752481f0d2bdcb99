"""Ultimately periodic words ``u v^w``."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UsageError


def primitive_root(v: str) -> str:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


@dataclass(frozen=True)
class Lasso:
    """The infinite word ``stem loop loop loop ...``.

    Positions of the word are folded onto the nodes ``0 .. len(stem) +
    len(loop) - 1``; the node after the last one is ``len(stem)``.  The suffix
    starting at a position only depends on its node.
    """

    stem: str
    loop: str

    def __post_init__(self):
        if not self.loop:
            raise UsageError("the loop of a lasso word must be nonempty")

    @classmethod
    def parse(cls, text: str) -> "Lasso":
        if text.count(":") != 1:
            raise UsageError(f"lasso must be written stem:loop, got {text!r}")
        stem, loop = text.split(":")
        return cls(stem.strip(), loop.strip())

    def __str__(self) -> str:
        return f"{self.stem}:{self.loop}"

    @property
    def nodes(self) -> int:
        return len(self.stem) + len(self.loop)

    def letter(self, node: int) -> str:
        return self.stem[node] if node < len(self.stem) else self.loop[node - len(self.stem)]

    def next(self, node: int) -> int:
        node += 1
        return node if node < self.nodes else len(self.stem)

    def advance(self, node: int, k: int) -> int:
        """Node reached after reading ``k`` letters from ``node``."""
        u, p = len(self.stem), len(self.loop)
        pos = node + k
        return pos if pos < u else u + (pos - u) % p

    def chunk(self, node: int, k: int) -> str:
        """The ``k`` letters read from ``node``."""
        out = []
        for _ in range(k):
            out.append(self.letter(node))
            node = self.next(node)
        return "".join(out)

    def prefix(self, k: int) -> str:
        return self.chunk(0, k)

    def suffix(self, node: int) -> "Lasso":
        if node < len(self.stem):
            return Lasso(self.stem[node:], self.loop)
        i = node - len(self.stem)
        return Lasso("", self.loop[i:] + self.loop[:i])

    def canonical(self) -> "Lasso":
        """Primitive loop, then the shortest stem (loop rotated backwards)."""
        stem, loop = self.stem, primitive_root(self.loop)
        while stem and stem[-1] == loop[-1]:
            stem = stem[:-1]
            loop = loop[-1] + loop[:-1]
        return Lasso(stem, loop)

    def same_word(self, other: "Lasso") -> bool:
        return self.canonical() == other.canonical()

    def count(self, letter: str) -> int | None:
        """Occurrences of ``letter``; None when there are infinitely many."""
        if letter in self.loop:
            return None
        return self.stem.count(letter)


def lassos(alphabet, max_stem: int, max_loop: int):
    """All lassos with ``|u| <= max_stem`` and ``1 <= |v| <= max_loop``."""
    from ..semantics import words

    stems = words(alphabet, max_stem)
    loops = [v for v in words(alphabet, max_loop) if v]
    for u in stems:
        for v in loops:
            yield Lasso(u, v)
