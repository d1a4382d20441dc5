"""Exponent monoids: Q_{>=0}, the alpha/dyadic/prime-pairing monoid and the
eventually-constant sequence monoid.

Each monoid gets a membership decision that ships a generator certificate,
an atom test, and bounded enumeration of atom factorizations.
"""

from __future__ import annotations

import enum
import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, Mapping

import numpy as np
import sympy

from .exact import SQRT2, QLin, format_rat, sign_sqrt2
from .verdict import DEFAULT_BOUNDS, SearchBounds, Verdict, holds, refuted


class MonoidId(str, enum.Enum):
    QPLUS = "qplus"
    SECTION_FOUR = "section_four"
    APPENDIX_A = "appendix_a"


# ---------------------------------------------------------------------------
# prime pairing

def cantor(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def cantor_inverse(k: int) -> tuple[int, int]:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    j = k - w * (w + 1) // 2
    return w - j, j


@lru_cache(maxsize=None)
def pairing_prime(n: int, m: int) -> int:
    """The odd prime attached to ``(n, m)``, ``n >= 1`` and ``m`` odd.

    Uses the (k+1)-th odd prime with ``k = cantor(n-1, (m-1)/2)``.
    """
    if n < 1 or m < 1:
        raise ValueError(f"pairing needs positive n, m; got ({n}, {m})")
    if m % 2 == 0:
        raise ValueError(f"pairing needs odd m; got {m}")
    k = cantor(n - 1, (m - 1) // 2)
    return int(sympy.prime(k + 2))  # prime(1) == 2 is skipped


@lru_cache(maxsize=None)
def pairing_inverse(p: int) -> tuple[int, int]:
    if p < 3 or not sympy.isprime(p):
        raise ValueError(f"{p} is not an odd prime")
    k = int(sympy.primepi(p)) - 2
    i, j = cantor_inverse(k)
    return i + 1, 2 * j + 1


# ---------------------------------------------------------------------------
# the alpha / dyadic / pairing monoid

@total_ordering
@dataclass(frozen=True)
class S4Elem:
    """``alpha_coeff * alpha + rat_coeff`` with ``alpha = sqrt2``."""

    alpha_coeff: Fraction = Fraction(0)
    rat_coeff: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha_coeff", Fraction(self.alpha_coeff))
        object.__setattr__(self, "rat_coeff", Fraction(self.rat_coeff))

    @property
    def value(self) -> QLin:
        return self.alpha_coeff * SQRT2 + self.rat_coeff

    def __add__(self, other: S4Elem) -> S4Elem:
        return S4Elem(self.alpha_coeff + other.alpha_coeff, self.rat_coeff + other.rat_coeff)

    def __sub__(self, other: S4Elem) -> S4Elem:
        return S4Elem(self.alpha_coeff - other.alpha_coeff, self.rat_coeff - other.rat_coeff)

    def __mul__(self, k: int | Fraction) -> S4Elem:
        return S4Elem(self.alpha_coeff * k, self.rat_coeff * k)

    __rmul__ = __mul__

    def __lt__(self, other: S4Elem) -> bool:
        return sign_sqrt2(self.rat_coeff - other.rat_coeff,
                          (self.alpha_coeff - other.alpha_coeff)) < 0

    def is_zero(self) -> bool:
        return self.alpha_coeff == 0 and self.rat_coeff == 0

    def __str__(self) -> str:
        return f"{format_rat(self.alpha_coeff)}*alpha + {format_rat(self.rat_coeff)}"

    def __repr__(self) -> str:
        return f"S4Elem({self})"


ALPHA = S4Elem(1, 0)
S4_ZERO = S4Elem(0, 0)

_S4_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*\*\s*alpha\s*\+\s*(-?\d+(?:/\d+)?)\s*$")


def parse_s4(text: str) -> S4Elem:
    m = _S4_RE.match(text)
    if not m:
        raise ValueError(f"not an S4Elem literal: {text!r}")
    return S4Elem(Fraction(m.group(1)), Fraction(m.group(2)))


def dyadic(k: int) -> S4Elem:
    """The generator ``1/2**k`` (any integer ``k``)."""
    return S4Elem(0, Fraction(1, 2 ** k) if k >= 0 else Fraction(2 ** -k))


def pairing_generator(n: int, m: int) -> S4Elem:
    p = pairing_prime(n, m)
    return S4Elem(Fraction(1, p), Fraction(m, 2 ** n * p))


# generator keys: ("alpha",), ("dyadic", k), ("pair", n, m)
Generator = tuple


def generator_value(g: Generator) -> S4Elem:
    if g[0] == "alpha":
        return ALPHA
    if g[0] == "dyadic":
        return dyadic(g[1])
    if g[0] == "pair":
        return pairing_generator(g[1], g[2])
    raise ValueError(f"unknown generator {g!r}")


def multiset_sum(ms: Mapping[Generator, int]) -> S4Elem:
    total = S4_ZERO
    for g, c in ms.items():
        if c < 0:
            raise ValueError("negative multiplicity")
        total = total + generator_value(g) * c
    return total


def generator_str(g: Generator) -> str:
    if g[0] == "alpha":
        return "alpha"
    if g[0] == "dyadic":
        return f"1/2^{g[1]}"
    return f"p({g[1]},{g[2]})^-1*(alpha+{g[2]}/2^{g[1]})"


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class S4Decomposition:
    """Canonical generator representation of an element of the monoid.

    ``alpha_count`` copies of alpha, ``forced`` copies of each pairing
    generator (the least counts the alpha-denominator allows) and a dyadic
    remainder.  Any other representation differs by trading ``p`` copies of a
    pairing generator for one alpha plus a dyadic.
    """

    alpha_count: int
    forced: tuple[tuple[tuple[int, int], int], ...]
    dyadic_rest: Fraction

    def multiset(self) -> dict[Generator, int]:
        ms: dict[Generator, int] = {}
        if self.alpha_count:
            ms[("alpha",)] = self.alpha_count
        for (n, m), c in self.forced:
            ms[("pair", n, m)] = c
        if self.dyadic_rest:
            q = self.dyadic_rest
            k = q.denominator.bit_length() - 1
            ms[("dyadic", k)] = q.numerator
        return ms

    def atom_count(self) -> int:
        return self.alpha_count + sum(c for _, c in self.forced)


def s4_decompose(t: S4Elem) -> S4Decomposition | str:
    """Canonical decomposition of ``t``, or the reason ``t`` is not in S."""
    a, q = t.alpha_coeff, t.rat_coeff
    if a < 0:
        return "negative alpha coefficient"
    den = a.denominator
    if den % 2 == 0:
        return "even denominator in the alpha coefficient (pairing primes are odd)"
    primes = sympy.factorint(den)
    if any(e > 1 for e in primes.values()):
        return "alpha-coefficient denominator is not squarefree"
    forced = []
    rest_alpha = a
    rest_rat = q
    for p in sorted(primes):
        n, m = pairing_inverse(p)
        cof = den // p
        r = (a.numerator * pow(cof, -1, p)) % p
        forced.append(((n, m), r))
        g = pairing_generator(n, m)
        rest_alpha -= r * g.alpha_coeff
        rest_rat -= r * g.rat_coeff
    assert rest_alpha.denominator == 1
    if rest_alpha < 0:
        return "alpha coefficient too small for the forced pairing generators"
    if rest_rat < 0:
        return "rational part too small for the forced pairing generators"
    if not _is_dyadic(rest_rat):
        return "rational remainder is not dyadic"
    return S4Decomposition(int(rest_alpha), tuple(forced), rest_rat)


def s4_membership(t: S4Elem, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    """Decide ``t in S``; Holds ships a generator multiset summing to ``t``."""
    dec = s4_decompose(t)
    if isinstance(dec, str):
        return refuted({"element": t, "reason": dec}, "alpha-denominator analysis", bounds,
                       structural=True)
    return holds({"element": t, "multiset": dec.multiset()}, "canonical decomposition",
                 bounds, structural=True)


def s4_in(t: S4Elem) -> bool:
    return not isinstance(s4_decompose(t), str)


def s4_min_rational_subtract(b: S4Elem) -> Fraction:
    """Largest rational ``q`` with ``b - q`` in S (``b - q`` may be 0)."""
    dec = s4_decompose(b)
    if isinstance(dec, str):
        raise ValueError(f"{b} is not in S: {dec}")
    return dec.dyadic_rest


def s4_is_atom(t: S4Elem) -> bool:
    """Atoms are alpha and the pairing generators."""
    dec = s4_decompose(t)
    if isinstance(dec, str):
        return False
    return dec.dyadic_rest == 0 and dec.atom_count() == 1


def _dyadic_terms_needed(d: Fraction) -> int:
    # fewest pairing generators (m/2^n, n>=1, m odd) summing to d
    if d == 0:
        return 0
    if d.denominator > 1:
        return 1
    return 2


def s4_split_dyadic(d: Fraction) -> list[tuple[int, int]]:
    """Shortest list of ``(n, m)`` with ``sum(m / 2**n) == d``."""
    if d == 0:
        return []
    if d.denominator > 1:
        return [(d.denominator.bit_length() - 1, d.numerator)]
    i = d.numerator
    if i == 1:
        return [(1, 1), (1, 1)]
    return [(1, 2 * i - 1), (1, 1)]


def s4_atomic_factorization(t: S4Elem) -> dict[S4Elem, int] | None:
    """A factorization of ``x^t`` into monomial atoms, or None if none exists.

    The alpha-coefficient forces the pairing-generator counts modulo p; the
    only freedom is to trade one alpha for ``p`` copies of the pairing
    generator ``(n, m)``, which shifts the rational part by ``m/2^n``.
    """
    dec = s4_decompose(t)
    if isinstance(dec, str):
        raise ValueError(f"{t} is not in S: {dec}")
    trades = s4_split_dyadic(dec.dyadic_rest)
    if len(trades) > dec.alpha_count:
        return None
    counts: Counter[S4Elem] = Counter()
    if dec.alpha_count - len(trades):
        counts[ALPHA] += dec.alpha_count - len(trades)
    for (n, m), c in dec.forced:
        if c:
            counts[pairing_generator(n, m)] += c
    for n, m in trades:
        counts[pairing_generator(n, m)] += pairing_prime(n, m)
    return dict(counts)


def s4_factorizations(t: S4Elem, bounds: SearchBounds = DEFAULT_BOUNDS
                      ) -> list[tuple[tuple[S4Elem, int], ...]]:
    """All atom factorizations of ``t`` using at most ``max_multiset`` trades."""
    dec = s4_decompose(t)
    if isinstance(dec, str):
        raise ValueError(f"{t} is not in S: {dec}")
    d = dec.dyadic_rest
    limit = min(dec.alpha_count, bounds.max_multiset)
    top_n = max(d.denominator.bit_length(), 1) + 1
    pairs = [(n, m) for n in range(1, top_n + 1)
             for m in range(1, int(d * 2 ** n) + 1, 2)]
    results = []

    def rec(start: int, remaining: Fraction, chosen: list[tuple[int, int]]) -> None:
        if remaining == 0:
            results.append(list(chosen))
            return
        if len(chosen) == limit:
            return
        for idx in range(start, len(pairs)):
            n, m = pairs[idx]
            v = Fraction(m, 2 ** n)
            if v <= remaining:
                chosen.append((n, m))
                rec(idx, remaining - v, chosen)
                chosen.pop()

    rec(0, d, [])
    out = []
    for trades in results:
        counts: Counter[S4Elem] = Counter()
        if dec.alpha_count - len(trades):
            counts[ALPHA] += dec.alpha_count - len(trades)
        for (n, m), c in dec.forced:
            if c:
                counts[pairing_generator(n, m)] += c
        for n, m in trades:
            counts[pairing_generator(n, m)] += pairing_prime(n, m)
        out.append(tuple(sorted(counts.items())))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# eventually-constant sequences

@dataclass(frozen=True)
class SeqElem:
    """Non-negative integer sequence equal to ``limit`` outside ``deviations``.

    ``deviations`` is a sorted tuple of ``(index, value)`` with 1-based
    indices and ``value != limit``.
    """

    limit: int
    deviations: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        devs = dict(self.deviations)
        if self.limit < 0 or any(v < 0 for v in devs.values()):
            raise ValueError("sequence entries must be non-negative")
        if any(i < 1 for i in devs):
            raise ValueError("sequence indices start at 1")
        clean = tuple(sorted((i, v) for i, v in devs.items() if v != self.limit))
        object.__setattr__(self, "deviations", clean)

    @classmethod
    def make(cls, limit: int, entries: Mapping[int, int] | None = None) -> SeqElem:
        return cls(limit, tuple((entries or {}).items()))

    def __getitem__(self, i: int) -> int:
        for j, v in self.deviations:
            if j == i:
                return v
        return self.limit

    def indices(self) -> set[int]:
        return {i for i, _ in self.deviations}

    def max_index(self) -> int:
        return max((i for i, _ in self.deviations), default=0)

    def entries(self) -> Iterator[int]:
        """Every value the sequence takes (deviations, then the limit)."""
        for _, v in self.deviations:
            yield v
        yield self.limit

    def __add__(self, other: SeqElem) -> SeqElem:
        idx = self.indices() | other.indices()
        return SeqElem(self.limit + other.limit,
                       tuple((i, self[i] + other[i]) for i in idx))

    def __sub__(self, other: SeqElem) -> SeqElem:
        idx = self.indices() | other.indices()
        return SeqElem(self.limit - other.limit,
                       tuple((i, self[i] - other[i]) for i in idx))

    def can_subtract(self, other: SeqElem) -> bool:
        if other.limit > self.limit:
            return False
        return all(other[i] <= self[i] for i in self.indices() | other.indices())

    def is_zero(self) -> bool:
        return self.limit == 0 and not self.deviations

    def sort_key(self) -> tuple:
        return (self.limit, self.deviations)

    def __lt__(self, other: SeqElem) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        body = ",".join(f"{i}:{v}" for i, v in self.deviations)
        return f"limit={self.limit}; {{{body}}}"

    def __repr__(self) -> str:
        return f"SeqElem({self})"


_SEQ_RE = re.compile(r"^\s*limit\s*=\s*(\d+)\s*;\s*\{([^}]*)\}\s*$")


def parse_seq(text: str) -> SeqElem:
    m = _SEQ_RE.match(text)
    if not m:
        raise ValueError(f"not a SeqElem literal: {text!r}")
    entries = {}
    for part in filter(None, (s.strip() for s in m.group(2).split(","))):
        i, v = part.split(":")
        entries[int(i)] = int(v)
    return SeqElem.make(int(m.group(1)), entries)


def e(n: int, k: int = 1) -> SeqElem:
    """``k * e_n``."""
    return SeqElem.make(0, {n: k})


def const(limit: int) -> SeqElem:
    return SeqElem(limit)


SEQ_ZERO = SeqElem(0)

# limits reachable as 3x + 5y with x + y >= 1 (7 = 15 - 3 - 5 is the gap)
_NON_3_5 = frozenset({0, 1, 2, 4, 7})


def limit_has_3_5_part(limit: int) -> bool:
    return limit not in _NON_3_5


def is_seq_generator(g: SeqElem) -> bool:
    """Generator type (i): all entries multiples of 7, not all zero; type (ii):
    limit 3 or 5."""
    if g.limit in (3, 5):
        return True
    return not g.is_zero() and all(v % 7 == 0 for v in g.entries())


def seq_in(t: SeqElem) -> bool:
    if t.is_zero():
        return False
    if limit_has_3_5_part(t.limit):
        return True
    if t.limit in (0, 7):
        return all(v % 7 == 0 for v in t.entries())
    return False


def rep_3_5(limit: int) -> tuple[int, int] | None:
    """``(x, y)`` with ``3x + 5y == limit`` and ``x`` as large as possible."""
    for x in range(limit // 3, -1, -1):
        if (limit - 3 * x) % 5 == 0:
            return x, (limit - 3 * x) // 5
    return None


def _blank_like(t: SeqElem, limit: int) -> SeqElem:
    # limit-`limit` sequence that is 0 wherever t deviates
    return SeqElem.make(limit, {i: 0 for i in t.indices()})


def seq_generator_sum(t: SeqElem) -> list[SeqElem] | None:
    """Generators summing to ``t`` (a single one whenever possible)."""
    if not seq_in(t):
        return None
    if is_seq_generator(t):
        return [t]
    x, y = rep_3_5(t.limit)  # type: ignore[misc]
    parts = [_blank_like(t, 3)] * x + [_blank_like(t, 5)] * y
    carrier = parts.pop(0)
    rest = SeqElem.make(carrier.limit, dict(t.deviations))
    return [rest] + parts


def seq_membership(t: SeqElem, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    gens = seq_generator_sum(t)
    if gens is None:
        if t.is_zero():
            reason = "zero sequence"
        elif t.limit in (0, 7):
            reason = f"limit {t.limit} forces every entry to be a multiple of 7"
        else:
            reason = f"limit {t.limit} is not a sum of generator limits"
        return refuted({"element": t, "reason": reason}, "limit analysis", bounds,
                       structural=True)
    return holds({"element": t, "summands": gens}, "generator sum", bounds, structural=True)


def check_generator_sum(t: SeqElem, summands: Iterable[SeqElem]) -> bool:
    total = SEQ_ZERO
    for g in summands:
        if not is_seq_generator(g):
            return False
        total = total + g
    return total == t


def seq_atom_characterization(t: SeqElem) -> bool:
    """Closed-form atom test: ``7 e_n``, or limit 3/5 with every term below 7."""
    if not seq_in(t):
        raise ValueError(f"{t} is not in S")
    if t.limit == 0:
        return len(t.deviations) == 1 and t.deviations[0][1] == 7
    return t.limit in (3, 5) and all(v < 7 for v in t.entries())


# --- brute force S \ (S + S) ------------------------------------------------

def _seq_in_vec(limit: int, arr: np.ndarray) -> np.ndarray:
    """Vectorised :func:`seq_in` for sequences sharing one limit; rows of
    ``arr`` hold the entries at the box indices."""
    if limit_has_3_5_part(limit):
        return np.ones(len(arr), dtype=bool)
    if limit in (0, 7):
        ok = np.all(arr % 7 == 0, axis=1)
        if limit == 0:
            ok &= np.any(arr > 0, axis=1)
        return ok
    return np.zeros(len(arr), dtype=bool)


def _possible_limits(limit: int) -> list[int]:
    ok = [lu for lu in range(limit + 1)
          if (lu == 0 or seq_in(const(lu)) or lu == 7)
          and (limit - lu == 0 or seq_in(const(limit - lu)) or limit - lu == 7)]
    return ok


def seq_split_bruteforce(t: SeqElem, index_bound: int) -> tuple[SeqElem, SeqElem] | None:
    """Search ``u, t - u`` both in S over every ``u <= t`` whose deviations lie
    in ``1..max(index_bound, max_index(t)) + 1`` (the extra index stands for
    any index where ``t`` sits at its limit)."""
    if not seq_in(t):
        raise ValueError(f"{t} is not in S")
    box = list(range(1, max(index_bound, t.max_index()) + 2))
    top = np.array([t[i] for i in box], dtype=np.int64)
    L = t.limit
    for lu in _possible_limits(L):
        # quick pass: each coordinate from a few natural values
        choices = [sorted({0, min(a, lu), a} | ({7} if a >= 7 else set()))
                   for a in top]
        found = _scan(t, box, top, lu, choices)
        if found is None:
            found = _scan(t, box, top, lu, [range(a + 1) for a in top], chunk=200_000)
        if found is not None:
            return found
    return None


def _scan(t: SeqElem, box: list[int], top: np.ndarray, lu: int, choices,
          chunk: int = 50_000) -> tuple[SeqElem, SeqElem] | None:
    it = itertools.product(*choices)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return None
        u = np.array(block, dtype=np.int64)
        ok = _seq_in_vec(lu, u) & _seq_in_vec(t.limit - lu, top[None, :] - u)
        hit = np.flatnonzero(ok)
        if len(hit):
            first = SeqElem.make(lu, {i: int(x) for i, x in zip(box, u[hit[0]])})
            return first, t - first


def seq_is_atom_bruteforce(t: SeqElem, index_bound: int) -> bool:
    return seq_split_bruteforce(t, index_bound) is None


def seq_universe(index_bound: int, entry_bound: int, limits: Iterable[int]) -> Iterator[SeqElem]:
    for L in limits:
        for vals in itertools.product(range(entry_bound + 1), repeat=index_bound):
            yield SeqElem.make(L, dict(zip(range(1, index_bound + 1), vals)))


# --- Lemma-15 style spans ----------------------------------------------------

def _peel_sevens(t: SeqElem) -> tuple[list[SeqElem], SeqElem]:
    atoms: list[SeqElem] = []
    entries = dict(t.deviations)
    for i in sorted(entries):
        while entries[i] >= 7:
            entries[i] -= 7
            atoms.append(e(i, 7))
    return atoms, SeqElem.make(t.limit, entries)


def seq_in_M_span(t: SeqElem, bounds: SearchBounds = DEFAULT_BOUNDS) -> Verdict:
    """Write ``t`` as a sum of atoms, or refute when the limit is 7."""
    if not seq_in(t):
        raise ValueError(f"{t} is not in S")
    L = t.limit
    if L == 7:
        reps = [(x, y) for x in range(3) for y in range(2) if 3 * x + 5 * y == 7]
        return refuted({"element": t, "limit": 7, "reps_3x_5y": reps},
                       "limit 7 is not 3x+5y", bounds, structural=True)
    if L == 0:
        atoms = []
        for i, v in t.deviations:
            atoms += [e(i, 7)] * (v // 7)
        return holds({"element": t, "atoms": atoms}, "sum of 7e_n", bounds, structural=True)
    x, y = rep_3_5(L)  # type: ignore[misc]
    # carrier keeps t's deviations; the others are limit-3/5 atoms that vanish
    # wherever t deviates
    carrier_limit = 3 if x else 5
    blanks = [_blank_like(t, 3)] * (x - (1 if x else 0)) + \
             [_blank_like(t, 5)] * (y - (0 if x else 1))
    carrier = SeqElem.make(carrier_limit, dict(t.deviations))
    sevens, core = _peel_sevens(carrier)
    atoms = sevens + [core] + blanks
    return holds({"element": t, "atoms": atoms}, "atom decomposition by limit case",
                 bounds, structural=True)


def check_atom_sum(t: SeqElem, atoms: Iterable[SeqElem]) -> bool:
    total = SEQ_ZERO
    for a in atoms:
        if not seq_in(a) or not seq_atom_characterization(a):
            return False
        total = total + a
    return total == t


def seq_atoms_in_box(r: SeqElem, box: list[int]) -> list[SeqElem]:
    """Atoms ``u <= r`` whose deviations lie in ``box``."""
    out = [e(i, 7) for i in box if r[i] >= 7]
    for lu in (3, 5):
        if lu > r.limit:
            continue
        for vals in itertools.product(*(range(min(r[i], 6) + 1) for i in box)):
            u = SeqElem.make(lu, dict(zip(box, vals)))
            if r.can_subtract(u):
                out.append(u)
    return out


def seq_factorizations(t: SeqElem, bounds: SearchBounds = DEFAULT_BOUNDS
                       ) -> list[tuple[SeqElem, ...]]:
    """Atom factorizations of ``t`` (at most ``max_multiset`` atoms, atom
    deviations restricted to indices up to ``index_bound`` or t's support)."""
    if not seq_in(t):
        raise ValueError(f"{t} is not in S")
    box = list(range(1, max(bounds.index_bound, t.max_index()) + 1))
    results: set[tuple[SeqElem, ...]] = set()

    def spannable(r: SeqElem) -> bool:
        return r.is_zero() or (seq_in(r) and r.limit != 7)

    def rec(r: SeqElem, chosen: list[SeqElem]) -> None:
        if r.is_zero():
            results.add(tuple(chosen))
            return
        if len(chosen) >= bounds.max_multiset:
            return
        for u in seq_atoms_in_box(r, box):
            if chosen and u.sort_key() < chosen[-1].sort_key():
                continue
            rest = r - u
            if spannable(rest):
                chosen.append(u)
                rec(rest, chosen)
                chosen.pop()

    if spannable(t):
        rec(t, [])
    return sorted(results, key=lambda f: [a.sort_key() for a in f])


# ---------------------------------------------------------------------------
# monoid-level dispatch

def atoms_up_to(mid: MonoidId, bounds: SearchBounds = DEFAULT_BOUNDS) -> list:
    """Atoms of the bounded universe, found by brute-force ``S \\ (S + S)``."""
    mid = MonoidId(mid)
    if mid is MonoidId.QPLUS:
        out = []
        for den in range(1, bounds.max_denominator + 1):
            for num in range(1, bounds.max_coeff_height + 1):
                t = Fraction(num, den)
                if t.denominator != den:
                    continue
                # any 0 < u < t splits t; try u = t/2 first, then the grid
                if not _qplus_splits(t, bounds):
                    out.append(t)
        return sorted(out)
    if mid is MonoidId.APPENDIX_A:
        out = []
        for t in seq_universe(bounds.index_bound, bounds.entry_bound,
                              range(bounds.entry_bound + 1)):
            if seq_in(t) and seq_is_atom_bruteforce(t, bounds.index_bound):
                out.append(t)
        return sorted(out, key=SeqElem.sort_key)
    # section four: single generators and pair sums over a finite generator set
    gens = [ALPHA] + [dyadic(k) for k in range(-1, bounds.max_denominator + 1)] + [
        pairing_generator(n, m) for n in range(1, bounds.max_denominator + 1)
        for m in range(1, bounds.max_denominator + 1, 2)]
    universe = set(gens) | {a + b for a in gens for b in gens}
    out = [t for t in universe if not _s4_splits(t, gens)]
    return sorted(out)


def _qplus_splits(t: Fraction, bounds: SearchBounds) -> bool:
    for den in range(1, 2 * bounds.max_denominator + 1):
        for num in range(1, den * bounds.max_coeff_height + 1):
            u = Fraction(num, den)
            if u >= t:
                break
            return True  # 0 < u < t and t - u > 0 both lie in Q_{>0}
    return False


def _s4_splits(t: S4Elem, gens: list[S4Elem]) -> bool:
    # t = u + (t - u) with u a generator-sum prefix; every element of S is a
    # sum of generators, so some generator can be split off unless t is one
    # indecomposable generator
    for g in gens:
        rest = t - g
        if not rest.is_zero() and s4_in(rest):
            return True
    # dyadic generators split into halves
    return t.alpha_coeff == 0 and t.rat_coeff > 0


def monoid_factorizations(mid: MonoidId, t, bounds: SearchBounds = DEFAULT_BOUNDS) -> list:
    mid = MonoidId(mid)
    if mid is MonoidId.QPLUS:
        if Fraction(t) < 0:
            raise ValueError("negative exponent")
        return []
    if mid is MonoidId.APPENDIX_A:
        return seq_factorizations(t, bounds)
    return s4_factorizations(t, bounds)
