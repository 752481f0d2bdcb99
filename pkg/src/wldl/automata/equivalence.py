"""Equivalence of weighted automata over the rational field.

Words are explored in shortlex order.  For each word ``u`` the vector
``(alpha_A M_A(u), alpha_B M_B(u))`` is reduced against the basis collected
so far; only independent vectors are kept and extended.  The automata are
equivalent iff every basis vector has zero dot product with
``(gamma_A, -gamma_B)``.  The basis never exceeds ``n_A + n_B`` vectors.  The
first failing word found is a shortest counterexample: every word whose
vector is skipped is a combination of shortlex-smaller explored words.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotAField, UsageError
from .wfa import Wfa


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    witness: str | None
    basis_size: int

    def __bool__(self) -> bool:
        return self.equivalent


class BasisOverflow(AssertionError):
    """Raised if the explored basis exceeds the dimension bound (never expected)."""


def wfa_equiv_field(m1: Wfa, m2: Wfa) -> EquivalenceResult:
    S = m1.semiring
    if m2.semiring is not S:
        raise UsageError("automata over different semirings")
    if not S.field:
        raise NotAField(f"equivalence is decided over the rational field, not {S.name}")
    if m1.alphabet != m2.alphabet:
        raise UsageError("automata over different alphabets")

    n1, n2 = m1.states, m2.states
    dim = n1 + n2
    final = [Fraction(g) for g in m1.final] + [-Fraction(g) for g in m2.final]
    basis: list[tuple[int, list[Fraction]]] = []  # (pivot, row with row[pivot] == 1)

    def reduce(v: list[Fraction]) -> list[Fraction] | None:
        v = list(v)
        for pivot, row in basis:
            c = v[pivot]
            if c:
                for i in range(pivot, dim):
                    if row[i]:
                        v[i] -= c * row[i]
        for i, x in enumerate(v):
            if x:
                inv = 1 / x
                return [y * inv for y in v]
        return None

    queue = deque([("", [Fraction(x) for x in m1.initial] + [Fraction(x) for x in m2.initial])])
    while queue:
        word, vec = queue.popleft()
        red = reduce(vec)
        if red is None:
            continue
        if sum(x * g for x, g in zip(vec, final) if x):
            return EquivalenceResult(False, word, len(basis))
        pivot = next(i for i, x in enumerate(red) if x)
        basis.append((pivot, red))
        if len(basis) > dim:
            raise BasisOverflow(f"basis size {len(basis)} exceeds {dim}")
        for a in m1.alphabet:
            queue.append((word + a, m1.step(vec[:n1], a) + m2.step(vec[n1:], a)))
    return EquivalenceResult(True, None, len(basis))
