"""Sparse polynomials with exponents drawn from an ordered additive monoid.

One class covers every ring in the package: integer exponents (Q[x]-style
domains), rational exponents (Puiseux-style domains), monoid elements
(monoid algebras over F_2) and ``(k, alpha)`` pairs for the two-variable ring.
Coefficients are ints/Fractions/QLin, or residues mod 2 when ``modulus=2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping

from .exact import QLin, format_coeff, format_rat, parse_qlin


@dataclass(frozen=True, order=True)
class XY:
    """Exponent of ``x^alpha * y^k``; ordered by ``k`` first, then ``alpha``."""

    k: int
    alpha: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))

    def __add__(self, other: XY) -> XY:
        return XY(self.k + other.k, self.alpha + other.alpha)

    def __sub__(self, other: XY) -> XY:
        return XY(self.k - other.k, self.alpha - other.alpha)

    def __str__(self) -> str:
        return f"x^({format_rat(self.alpha)})*y^({self.k})"


def exp_key(exp: Any) -> Any:
    if hasattr(exp, "sort_key"):
        return exp.sort_key()
    return exp


def format_exp(exp: Any) -> str:
    if isinstance(exp, XY):
        return str(exp)
    if isinstance(exp, (int, Fraction)):
        return f"x^({format_rat(Fraction(exp))})"
    return f"x^[{exp}]"


class GenPoly:
    """Finite formal sum ``sum c_e * x^e`` with no zero coefficients."""

    __slots__ = ("terms", "modulus", "_hash")

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] = (),
                 modulus: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Any, Any] = {}
        for exp, c in items:
            clean[exp] = clean.get(exp, 0) + c
        if modulus is not None:
            clean = {k: v % modulus for k, v in clean.items()}
        self.terms = {k: v for k, v in clean.items() if v != 0}
        self.modulus = modulus
        self._hash: int | None = None

    # construction helpers -------------------------------------------------
    @classmethod
    def monomial(cls, exp: Any, coeff: Any = 1, modulus: int | None = None) -> GenPoly:
        return cls({exp: coeff}, modulus)

    def like(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]]) -> GenPoly:
        return GenPoly(terms, self.modulus)

    # inspection -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def exponents(self) -> list[Any]:
        return sorted(self.terms, key=exp_key)

    def items(self) -> Iterator[tuple[Any, Any]]:
        for exp in self.exponents():
            yield exp, self.terms[exp]

    def coeff(self, exp: Any) -> Any:
        return self.terms.get(exp, 0)

    def min_exp(self) -> Any:
        return min(self.terms, key=exp_key)

    def max_exp(self) -> Any:
        return max(self.terms, key=exp_key)

    def min_term(self) -> tuple[Any, Any]:
        e = self.min_exp()
        return e, self.terms[e]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other: Any) -> GenPoly:
        if isinstance(other, GenPoly):
            return other
        raise TypeError(f"cannot combine GenPoly with {type(other).__name__}")

    def __add__(self, other: GenPoly) -> GenPoly:
        o = self._coerce(other)
        return self.like(list(self.terms.items()) + list(o.terms.items()))

    def __neg__(self) -> GenPoly:
        return self.like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: GenPoly) -> GenPoly:
        return self + (-self._coerce(other))

    def __mul__(self, other: Any) -> GenPoly:
        if not isinstance(other, GenPoly):
            return self.like({k: v * other for k, v in self.terms.items()})
        out: dict[Any, Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return self.like(out)

    def __rmul__(self, other: Any) -> GenPoly:
        return self * other

    def __pow__(self, k: int) -> GenPoly:
        if k < 0:
            raise ValueError("negative power")
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            base = base * base
            k >>= 1
        return result if result is not None else self.like({})

    def shift(self, exp: Any) -> GenPoly:
        """Multiply by the monomial ``x^exp``."""
        return self.like({e + exp: c for e, c in self.terms.items()})

    def unshift(self, exp: Any) -> GenPoly:
        return self.like({e - exp: c for e, c in self.terms.items()})

    def scale(self, c: Any) -> GenPoly:
        return self * c

    def map_coeffs(self, fn: Callable[[Any], Any]) -> GenPoly:
        return self.like({e: fn(c) for e, c in self.terms.items()})

    # equality / hashing -----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple((exp_key(e), str(c)) for e, c in self.items())

    # text -------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            parts.append(f"{format_coeff(c)}*{format_exp(e)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GenPoly({self})"


_TERM_RE = re.compile(
    r"^(?P<c>\([^)]*\)|-?\d+(?:/\d+)?)"
    r"(?:\*x\^\((?P<a>-?\d+(?:/\d+)?)\))?"
    r"(?:\*y\^\((?P<k>-?\d+)\))?$"
)


def _split_terms(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    i = 0
    while i < len(text):
        ch = text[i]
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and text.startswith(" + ", i):
            parts.append("".join(cur))
            cur = []
            i += 3
            continue
        cur.append(ch)
        i += 1
    parts.append("".join(cur))
    # spaces only matter inside a parenthesised Q(sqrt2) coefficient
    return [p.strip() if p.strip().startswith("(") else p.replace(" ", "") for p in parts]


def parse_poly(text: str, *, two_var: bool = False, modulus: int | None = None,
               integer_exps: bool = False) -> GenPoly:
    """Parse ``"c1*x^(a1)*y^(k1) + ..."``; coefficients may be ``(p + q*sqrt2)``."""
    text = text.strip()
    if text == "0":
        return GenPoly({}, modulus)
    terms = []
    for raw in _split_terms(text):
        m = _TERM_RE.match(raw)
        if not m:
            raise ValueError(f"cannot parse term {raw!r}")
        c_txt = m.group("c")
        coeff: Any
        if c_txt.startswith("("):
            q = parse_qlin(c_txt[1:-1])
            coeff = q.rat if q.irr == 0 else q
        else:
            coeff = Fraction(c_txt)
        a = Fraction(m.group("a") or 0)
        if two_var:
            exp: Any = XY(int(m.group("k") or 0), a)
        elif integer_exps:
            if a.denominator != 1:
                raise ValueError(f"integer exponent expected in {raw!r}")
            exp = int(a)
        else:
            exp = a
        terms.append((exp, coeff))
    return GenPoly(terms, modulus)
