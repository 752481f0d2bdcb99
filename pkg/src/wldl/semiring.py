"""Exact semirings.

Carrier values are plain Python objects (``bool``, ``int``, ``Fraction`` and
the two infinity sentinels below).  A :class:`Semiring` instance knows how to
combine, parse and print them; :class:`Weight` pairs a value with its semiring
for callers that want mixed-semiring mistakes caught.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable

from .errors import SemiringMismatch, WeightSyntaxError


class _Infinity:
    __slots__ = ("negative",)

    def __init__(self, negative: bool) -> None:
        self.negative = negative

    def __repr__(self) -> str:
        return "-inf" if self.negative else "inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_infinity, (self.negative,))


INF = _Infinity(False)
NEG_INF = _Infinity(True)


def _infinity(negative: bool) -> _Infinity:
    return NEG_INF if negative else INF


_INT_RE = re.compile(r"-?[0-9]+\Z")
_FRAC_RE = re.compile(r"-?[0-9]+/[0-9]+\Z")


def _parse_number(text: str) -> Fraction | int | None:
    if _INT_RE.match(text):
        return int(text)
    if _FRAC_RE.match(text):
        num, den = text.split("/")
        if int(den) == 0:
            return None
        return Fraction(int(num), int(den))
    return None


def format_value(value: Any) -> str:
    """Canonical text for a carrier value: reduced fractions, ``inf``, 0/1 for booleans."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, _Infinity):
        return repr(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


class Semiring:
    name: str = ""
    commutative = True
    idempotent = False
    field = False
    lasso_omega_supported = False
    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sum(self, values: Iterable) -> Any:
        return reduce(self.add, values, self.zero)

    def prod(self, values: Iterable) -> Any:
        return reduce(self.mul, values, self.one)

    def is_zero(self, value) -> bool:
        return value == self.zero

    def contains(self, value) -> bool:
        raise NotImplementedError

    def coerce(self, value):
        if not self.contains(value):
            raise WeightSyntaxError(f"{value!r} is not an element of {self.name}")
        return value

    def parse(self, text: str):
        value = self._parse(text.strip())
        if value is None or not self.contains(value):
            raise WeightSyntaxError(f"invalid {self.name} weight literal {text!r}")
        return value

    def _parse(self, text: str):
        return _parse_number(text)

    def format(self, value) -> str:
        return format_value(value)

    def sample(self, rng) -> Any:
        """A small random element, used by property tests and generators."""
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<semiring {self.name}>"

    def __reduce__(self):
        return (get_semiring, (self.name,))


class BooleanSemiring(Semiring):
    name = "boolean"
    idempotent = True
    lasso_omega_supported = True
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def contains(self, value):
        return isinstance(value, bool)

    def coerce(self, value):
        if value in (0, 1) and not isinstance(value, _Infinity):
            return bool(value)
        raise WeightSyntaxError(f"{value!r} is not a boolean weight")

    def _parse(self, text):
        return {"0": False, "1": True}.get(text)

    def sample(self, rng):
        return rng.random() < 0.5


class NaturalSemiring(Semiring):
    name = "nat"
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def contains(self, value):
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0

    def coerce(self, value):
        if isinstance(value, Fraction) and value.denominator == 1:
            value = value.numerator
        return super().coerce(value)

    def sample(self, rng):
        return rng.randrange(0, 6)


class IntegerSemiring(NaturalSemiring):
    name = "int"

    def contains(self, value):
        return isinstance(value, int) and not isinstance(value, bool)

    def sample(self, rng):
        return rng.randrange(-5, 6)


class RationalField(Semiring):
    name = "rat"
    field = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def contains(self, value):
        return isinstance(value, Fraction)

    def coerce(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        return super().coerce(value)

    def _parse(self, text):
        value = _parse_number(text)
        return None if value is None else Fraction(value)

    def sample(self, rng):
        return Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))


class MinPlusSemiring(Semiring):
    """Tropical semiring over the extended naturals: (min, +, inf, 0)."""

    name = "minplus"
    idempotent = True
    lasso_omega_supported = True
    zero = INF
    one = 0

    def add(self, a, b):
        if a is INF:
            return b
        if b is INF:
            return a
        return a if a <= b else b

    def mul(self, a, b):
        if a is INF or b is INF:
            return INF
        return a + b

    def contains(self, value):
        return value is INF or (
            isinstance(value, int) and not isinstance(value, bool) and value >= 0
        )

    def _parse(self, text):
        if text == "inf":
            return INF
        return _parse_number(text)

    def sample(self, rng):
        r = rng.randrange(0, 7)
        return INF if r == 6 else r


class MaxPlusSemiring(Semiring):
    """Arctic semiring over the naturals with -inf: (max, +, -inf, 0)."""

    name = "maxplus"
    idempotent = True
    zero = NEG_INF
    one = 0

    def add(self, a, b):
        if a is NEG_INF:
            return b
        if b is NEG_INF:
            return a
        return a if a >= b else b

    def mul(self, a, b):
        if a is NEG_INF or b is NEG_INF:
            return NEG_INF
        return a + b

    def contains(self, value):
        return value is NEG_INF or (
            isinstance(value, int) and not isinstance(value, bool) and value >= 0
        )

    def _parse(self, text):
        if text == "-inf":
            return NEG_INF
        return _parse_number(text)

    def sample(self, rng):
        r = rng.randrange(0, 7)
        return NEG_INF if r == 6 else r


class ViterbiSemiring(Semiring):
    """Probabilities in [0, 1] with (max, *)."""

    name = "viterbi"
    idempotent = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a * b

    def contains(self, value):
        return isinstance(value, Fraction) and 0 <= value <= 1

    def coerce(self, value):
        if isinstance(value, int) and not isinstance(value, bool):
            value = Fraction(value)
        return super().coerce(value)

    def _parse(self, text):
        value = _parse_number(text)
        return None if value is None else Fraction(value)

    def sample(self, rng):
        den = rng.randrange(1, 5)
        return Fraction(rng.randrange(0, den + 1), den)


BOOLEAN = BooleanSemiring()
NAT = NaturalSemiring()
INT = IntegerSemiring()
RAT = RationalField()
MINPLUS = MinPlusSemiring()
MAXPLUS = MaxPlusSemiring()
VITERBI = ViterbiSemiring()

SEMIRINGS = {
    s.name: s for s in (BOOLEAN, NAT, INT, RAT, MINPLUS, MAXPLUS, VITERBI)
}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(
            f"unknown semiring {name!r}; choose from {', '.join(SEMIRINGS)}"
        ) from None


@dataclass(frozen=True)
class Weight:
    semiring: Semiring
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.semiring.coerce(self.value))

    def _check(self, other: "Weight") -> None:
        if not isinstance(other, Weight) or other.semiring is not self.semiring:
            raise SemiringMismatch(
                f"cannot combine {self.semiring.name} weight with {other!r}"
            )

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.semiring, self.semiring.add(self.value, other.value))

    def __mul__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(self.semiring, self.semiring.mul(self.value, other.value))

    def __str__(self) -> str:
        return self.semiring.format(self.value)

    def __repr__(self) -> str:
        return f"Weight({self.semiring.name}, {self})"


def add(a: Weight, b: Weight) -> Weight:
    return a + b


def mul(a: Weight, b: Weight) -> Weight:
    return a * b


def zero(semiring: Semiring) -> Weight:
    return Weight(semiring, semiring.zero)


def one(semiring: Semiring) -> Weight:
    return Weight(semiring, semiring.one)
