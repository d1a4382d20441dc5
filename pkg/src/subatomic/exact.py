"""Exact arithmetic over Q and Q(sqrt2).

Rationals are plain :class:`fractions.Fraction` values.  :class:`QLin` holds
``a + b*sqrt2`` with rational ``a``, ``b``; it stands in for every irrational
quantity the constructions need (the generator ``alpha`` of the exponent
monoid and the irrational coefficient ``r``).  Comparisons are decided by sign
analysis and squaring, never by floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rat = Fraction

Number = Union[int, Fraction, "QLin"]


def as_fraction(value: int | Fraction | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def format_rat(q: Fraction) -> str:
    """Canonical ``p/q`` text (``p`` alone when the denominator is 1)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign_sqrt2(a: Fraction, b: Fraction) -> int:
    """Sign of the real number ``a + b*sqrt2``."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with 2 b^2
    d = a * a - 2 * b * b
    if a > 0:
        return (d > 0) - (d < 0)
    return (d < 0) - (d > 0)


@total_ordering
@dataclass(frozen=True)
class QLin:
    """The number ``rat + irr*sqrt2``."""

    rat: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "irr", Fraction(self.irr))

    @classmethod
    def coerce(cls, value: Number) -> QLin:
        if isinstance(value, QLin):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0))
        return NotImplemented  # type: ignore[return-value]

    def is_rational(self) -> bool:
        return self.irr == 0

    def is_integer(self) -> bool:
        return self.irr == 0 and self.rat.denominator == 1

    def conjugate(self) -> QLin:
        return QLin(self.rat, -self.irr)

    def norm(self) -> Fraction:
        return self.rat * self.rat - 2 * self.irr * self.irr

    def sign(self) -> int:
        return sign_sqrt2(self.rat, self.irr)

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.irr)

    def __add__(self, other: Number) -> QLin:
        o = QLin.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QLin(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __neg__(self) -> QLin:
        return QLin(-self.rat, -self.irr)

    def __sub__(self, other: Number) -> QLin:
        o = QLin.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QLin(self.rat - o.rat, self.irr - o.irr)

    def __rsub__(self, other: Number) -> QLin:
        return QLin.coerce(other) - self

    def __mul__(self, other: Number) -> QLin:
        o = QLin.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QLin(
            self.rat * o.rat + 2 * self.irr * o.irr,
            self.rat * o.irr + self.irr * o.rat,
        )

    __rmul__ = __mul__

    def inverse(self) -> QLin:
        n = self.norm()
        if n == 0:
            # a^2 = 2 b^2 has no rational solution besides 0
            raise ZeroDivisionError("QLin division by zero")
        c = self.conjugate()
        return QLin(c.rat / n, c.irr / n)

    def __truediv__(self, other: Number) -> QLin:
        o = QLin.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Number) -> QLin:
        return QLin.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> QLin:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QLin(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        if isinstance(other, QLin):
            return self.rat == other.rat and self.irr == other.irr
        return NotImplemented

    def __hash__(self) -> int:
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def __lt__(self, other: Number) -> bool:
        o = QLin.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return sign_sqrt2(self.rat - o.rat, self.irr - o.irr) < 0

    def __str__(self) -> str:
        if self.irr == 0:
            return format_rat(self.rat)
        return f"{format_rat(self.rat)} + {format_rat(self.irr)}*sqrt2"

    def __repr__(self) -> str:
        return f"QLin({self})"

    def __float__(self) -> float:
        return float(self.rat) + float(self.irr) * 2 ** 0.5


SQRT2 = QLin(0, 1)

_QLIN_RE = re.compile(
    r"^\s*(?P<rat>-?\d+(?:/\d+)?)\s*(?:\+\s*(?P<irr>-?\d+(?:/\d+)?)\s*\*\s*sqrt2)?\s*$"
)


def parse_qlin(text: str) -> QLin:
    """Inverse of ``str(QLin)``: accepts ``"p/q"`` and ``"p/q + r/s*sqrt2"``."""
    m = _QLIN_RE.match(text)
    if not m:
        raise ValueError(f"not a QLin literal: {text!r}")
    irr = m.group("irr")
    return QLin(Fraction(m.group("rat")), Fraction(irr) if irr else Fraction(0))


def qlin_cmp(u: Number, v: Number) -> int:
    """-1, 0 or 1 according to the real order of ``u`` and ``v``."""
    a, b = QLin.coerce(u), QLin.coerce(v)
    return sign_sqrt2(a.rat - b.rat, a.irr - b.irr)


def qlin_arith(u: Number, v: Number, op: str) -> QLin:
    a, b = QLin.coerce(u), QLin.coerce(v)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_integral(c: Fraction | QLin | int) -> bool:
    if isinstance(c, QLin):
        return c.is_integer()
    return Fraction(c).denominator == 1


def is_rational(c: Fraction | QLin | int) -> bool:
    if isinstance(c, QLin):
        return c.is_rational()
    return True


def format_coeff(c: Fraction | QLin | int) -> str:
    if isinstance(c, QLin):
        if c.irr == 0:
            return format_rat(c.rat)
        return f"({c})"
    return format_rat(Fraction(c))
