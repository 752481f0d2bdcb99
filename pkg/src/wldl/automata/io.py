"""JSON interchange format for weighted automata.

::

    {"semiring": "rat", "alphabet": ["a", "b"], "states": 2,
     "initial": ["1", "0"], "final": ["0", "1"],
     "transitions": {"a": [["0", "2"], ["0", "0"]], "b": [...]}}

Weights are strings in the semiring's literal syntax.
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import UsageError, WeightSyntaxError
from ..semiring import get_semiring
from .wfa import Wfa, WfaBuilder


def _matrices(m) -> dict[str, list[list[str]]]:
    S = m.semiring
    n = m.states
    transitions = {}
    for a in m.alphabet:
        matrix = [[S.format(S.zero)] * n for _ in range(n)]
        for p, row in enumerate(m.trans[a]):
            for q, w in row:
                matrix[p][q] = S.format(w)
        transitions[a] = matrix
    return transitions


def wba_to_json(m) -> dict[str, Any]:
    """Weighted Büchi automata: no final vector, an ``accepting`` state list instead."""
    S = m.semiring
    return {
        "semiring": S.name,
        "alphabet": list(m.alphabet),
        "states": m.states,
        "initial": [S.format(x) for x in m.initial],
        "accepting": sorted(m.accepting),
        "transitions": _matrices(m),
    }


def wfa_to_json(m: Wfa) -> dict[str, Any]:
    S = m.semiring
    n = m.states
    transitions = _matrices(m)
    return {
        "semiring": S.name,
        "alphabet": list(m.alphabet),
        "states": n,
        "initial": [S.format(x) for x in m.initial],
        "final": [S.format(x) for x in m.final],
        "transitions": transitions,
    }


def wfa_from_json(data: dict[str, Any]) -> Wfa:
    try:
        S = get_semiring(data["semiring"])
        alphabet = list(data["alphabet"])
        n = int(data["states"])
        initial, final = data["initial"], data["final"]
        transitions = data["transitions"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed automaton file: {exc}") from None
    if len(initial) != n or len(final) != n:
        raise UsageError("initial and final vectors must have one entry per state")
    if any(not isinstance(a, str) or len(a) != 1 for a in alphabet):
        raise UsageError("alphabet entries must be single characters")

    def w(text: Any) -> Any:
        try:
            return S.parse(str(text))
        except WeightSyntaxError as exc:
            raise UsageError(f"automaton file: {exc.message}") from None

    b = WfaBuilder(S, sorted(alphabet))
    for i in range(n):
        b.new(w(initial[i]), w(final[i]))
    for a, matrix in transitions.items():
        if a not in alphabet:
            raise UsageError(f"transition letter {a!r} is not in the alphabet")
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise UsageError(f"transition matrix for {a!r} must be {n}x{n}")
        for p, row in enumerate(matrix):
            for q, x in enumerate(row):
                b.add(p, a, q, w(x))
    return b.build(trim=False)


def dump_wfa(m: Wfa) -> str:
    return json.dumps(wfa_to_json(m), indent=2)


def load_wfa(text: str) -> Wfa:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"automaton file is not valid JSON: {exc}") from None
    return wfa_from_json(data)
