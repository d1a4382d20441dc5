"""Named verification procedures behind ``subatomic verify`` and the
acceptance suite.  Each returns a :class:`Check` with a pass flag and a
one-line summary."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import monoids as M
from .checker import PropertyId, classify_all, classify_domain, dag_consistency, separation_table
from .domains import DomainId, get_domain
from .domains.appb import corollary_level, appb_witness, random_appb, small_universe
from .domains.base import omega
from .domains.monoid_algebra import random_seq_in_s
from .exact import QLin
from .poly import GenPoly
from .verdict import DEFAULT_BOUNDS, SearchBounds


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    t0 = time.perf_counter()
    ok, detail = fn()
    return Check(name, ok, detail, time.perf_counter() - t0)


# --- sequence monoid ---------------------------------------------------------

def lemma14(index_bound: int = 4, entry_bound: int = 14, limits=(0, 3, 5)) -> Check:
    def run():
        n = bad = 0
        first_bad = None
        for t in M.seq_universe(index_bound, entry_bound, limits):
            if not M.seq_in(t):
                continue
            n += 1
            if M.seq_atom_characterization(t) != M.seq_is_atom_bruteforce(t, index_bound):
                bad += 1
                first_bad = first_bad or t
        return bad == 0 and n > 0, f"{n} elements, {bad} disagreements" + (
            f", first {first_bad}" if first_bad else "")
    return _timed("lemma14", run)


def lemma15(seed: int = 0, n_span: int = 200, n_seven: int = 50, index_bound: int = 4) -> Check:
    def run():
        rng = random.Random(seed)
        good = 0
        for _ in range(n_span):
            t = random_seq_in_s(rng, rng.choice([0, 3, 5, 6, 8, 9, 10, 12]), index_bound)
            v = M.seq_in_M_span(t)
            atoms = v.certificate.get("atoms", []) if v.holds else []
            if (v.holds and M.check_atom_sum(t, atoms)
                    and all(M.seq_in(a) and M.seq_atom_characterization(a) for a in atoms)):
                good += 1
        refuted = sum(M.seq_in_M_span(random_seq_in_s(rng, 7, index_bound)).refuted
                      for _ in range(n_seven))
        ok = good == n_span and refuted == n_seven
        return ok, f"{good}/{n_span} spans verified, {refuted}/{n_seven} limit-7 refuted"
    return _timed("lemma15", run)


def lemma16(seed: int = 0, count: int = 100, index_bound: int = 4) -> Check:
    """Non-atomic monomials become atomic after the fixed multiplier."""
    def run():
        d = get_domain(DomainId.MA_APPA)
        rng = random.Random(seed)
        beta = d.semi_atomic_witness()
        good = decomposed = 0
        for _ in range(count):
            f = d.mono(random_seq_in_s(rng, 7, index_bound))
            if not d.is_atomic_elem(f).refuted:
                continue
            v = d.is_atomic_elem(f * beta)
            good += v.holds and d.check_certificate(v)
            b, g = d.min_exponent_decompose(f)
            gv = d.is_atomic_elem(g)
            decomposed += b.limit == 7 and gv.holds and d.check_certificate(gv) and \
                d.mono(b) * g == f
        ok = good == count and decomposed == count
        return ok, f"{good}/{count} products atomic, {decomposed}/{count} split as x^b * atomic"
    return _timed("lemma16", run)


# --- section four ------------------------------------------------------------

def section4(max_n: int = 8, max_m: int = 8) -> Check:
    def run():
        d = get_domain(DomainId.MA_S4)
        ident = refuted = total = 0
        for n in range(1, max_n + 1):
            for m in range(1, max_m + 1, 2):
                total += 1
                p = M.pairing_prime(n, m)
                target = M.ALPHA + M.S4Elem(0, Fraction(m, 2 ** n))
                r = target * Fraction(1, p)
                ident += (r * p == target and r == M.pairing_generator(n, m) and M.s4_in(r)
                          and M.s4_is_atom(r))
                v = d.furstenberg_divisor(d.mono(M.S4Elem(0, Fraction(m, 2 ** n))))
                refuted += v.refuted and d.check_certificate(v)
        ok = ident == total and refuted == total
        return ok, f"{ident}/{total} identities, {refuted}/{total} divisor refutations"
    return _timed("section4", run)


def lemma6(seed: int = 0, count: int = 12) -> Check:
    def run():
        msgs, ok = [], True
        for did in (DomainId.MA_S4, DomainId.MA_APPA):
            d = get_domain(did)
            beta = d.semi_atomic_witness()
            v = d.lemma6_transform(beta)
            samples = d.sample_universe(random.Random(seed), count)
            semi = d.check_semi_atomic(beta, samples)
            cond = True
            if semi.holds:
                sq = v.certificate["square"]
                cond = all(d.is_atomic_elem(f * sq).holds for f in samples)
            good = v.holds and d.check_certificate(v) and cond
            ok &= good
            msgs.append(f"{did.value} {'ok' if good else 'fail'}")
        return ok, ", ".join(msgs)
    return _timed("lemma6", run)


def example11() -> Check:
    def run():
        d = get_domain(DomainId.MA_QPLUS)
        v = d.check_antimatter()
        atoms = M.atoms_up_to(M.MonoidId.QPLUS)
        ok = v.holds and d.check_certificate(v) and atoms == []
        return ok, f"antimatter {v.label()}, {len(atoms)} atoms"
    return _timed("example11", run)


# --- integer-exponent polynomial domains ------------------------------------

def _nonintegral(rng: random.Random, height: int) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(2, height))
        if q.denominator != 1:
            return q


def example8(seed: int = 0, count: int = 100, height: int = 50, degree: int = 6) -> Check:
    def run():
        d = get_domain(DomainId.D8)
        rng = random.Random(seed)
        good = 0
        worst = ""
        for _ in range(count):
            f = d.random_element(rng, height, degree, force_min=_nonintegral(rng, height),
                                 min_deg=rng.randint(2, degree))
            v = d.almost_atomic_witness_search(f)
            if not (v.holds and d.check_certificate(v)):
                worst = worst or f"no witness for {f}"
                continue
            k0, q = f.min_term()
            n = Fraction(q).denominator
            g = (f * n).unshift(k0 - 1)
            facs = v.certificate["product"].certificate["factors"]
            k = len(facs) - (k0 - 1)
            bound = omega(abs(Fraction(q).numerator)) + g.max_exp() + 1
            if k <= bound:
                good += 1
            else:
                worst = worst or f"{k} > {bound} for {f}"
        return good == count, f"{good}/{count} witnessed within the length bound" + (
            f"; {worst}" if worst else "")
    return _timed("example8", run)


def example9(seed: int = 0, count: int = 50, height: int = 20, exhaustive: int = 10) -> Check:
    def run():
        d = get_domain(DomainId.D9)
        rng = random.Random(seed)
        quasi = not_almost = searched = 0
        for i in range(count):
            r = QLin(Fraction(rng.randint(-height, height), rng.randint(1, height)),
                     Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height)))
            f = d.random_element(rng, height, 5, force_min=r, min_deg=rng.randint(2, 4))
            k, c = f.min_term()
            v = d.quasi_atomic_witness_search(f)
            expect = d.normalize(GenPoly({2: c.inverse()}))
            quasi += v.holds and d.check_certificate(v) and v.certificate["multiplier"] == expect
            a = d.almost_atomic_witness_search(f)
            not_almost += not a.holds and d.check_certificate(a)
            if i < exhaustive:
                d.almost_search_exhausts(f, height=20, max_irreducibles=4)
                searched += 1
        ok = quasi == count and not_almost == count
        return ok, (f"{quasi}/{count} via x^2/r, {not_almost}/{count} without almost-atomic "
                    f"witness, {searched} exhaustive multiplier searches")
    return _timed("example9", run)


def lemma23(seed: int = 0, count: int = 300, height: int = 10, degree: int = 4,
            max_den: int = 6) -> Check:
    def run():
        d = get_domain(DomainId.D23)
        rng = random.Random(seed)
        x = GenPoly({1: 1})
        divisor = non_atomic = 0
        for _ in range(count):
            f = d.random_element(rng, height, degree, max_den)
            v = d.furstenberg_divisor(f)
            divisor += v.holds and d.check_certificate(v)
            w = d.is_atomic_elem(x * f)
            non_atomic += w.refuted and d.check_certificate(w)
        q = d.quasi_atomic_witness_search(x)
        ok = divisor == count and non_atomic == count and q.refuted
        return ok, (f"{divisor}/{count} divisors, {non_atomic}/{count} x*beta non-atomic, "
                    f"quasi-atomic at x {q.label()}")
    return _timed("lemma23", run)


def theorem10() -> Check:
    def run():
        d = get_domain(DomainId.D23)
        v = d.prime_ideal_instance_check()
        return v.holds and d.check_certificate(v), f"{v.label()}: {v.rule}"
    return _timed("theorem10", run)


# --- Puiseux-type domains ---------------------------------------------------

def lemma24(seed: int = 0, n_irr: int = 40, n_beta: int = 40, degree: int = 2,
            max_n: int = 4, height: int = 10) -> Check:
    def run():
        d = get_domain(DomainId.D24)
        rng = random.Random(seed)
        universe = list(d.universe(degree, max_n, height))
        irr: list[GenPoly] = []
        while len(irr) < n_irr:
            f = rng.choice(universe)
            if not d.is_unit(f) and d.is_irreducible(f).holds:
                irr.append(f)
        betas = [g for g in rng.sample(universe, n_beta)]
        # multiples make the hypothesis non-vacuous
        betas += [p * rng.choice(universe) for p in irr[:n_beta // 2]]
        x = GenPoly({Fraction(1): 1})
        pairs = hyp = bad = 0
        for p in irr:
            for b in betas:
                pairs += 1
                if d.divides(p, x * b):
                    hyp += 1
                    bad += not d.divides(p, b)
        am = d.check_antimatter()
        cert2 = am.certificate.get("element") == d.const(2)
        ok = bad == 0 and hyp > 0 and am.refuted and d.check_certificate(am) and cert2
        return ok, (f"{pairs} pairs, {hyp} with pi | x*beta, {bad} violations; "
                    f"antimatter {am.label()} via 2")
    return _timed("lemma24", run)


def example12(seed: int = 0, count: int = 100, truncation: int = 4, max_n: int = 4) -> Check:
    def run():
        d = get_domain(DomainId.D12, truncation)
        rng = random.Random(seed)
        x = GenPoly({Fraction(1): 1})
        good = 0
        for _ in range(count):
            f = d.random_element(rng, 10, max_n)
            af = d.check_almost_furstenberg(f)
            sf = d.check_semi_furstenberg(x, [f])
            good += (af.holds and d.check_certificate(af) and sf.holds
                     and d.check_certificate(sf))
        row = classify_domain(DomainId.D12, truncation=truncation)
        sf_ok = row.verdicts[PropertyId.SEMI_FURSTENBERG].holds
        af_ok = row.verdicts[PropertyId.ALMOST_FURSTENBERG].holds
        ok = good == count and sf_ok and af_ok
        return ok, f"{good}/{count} witnesses verified; classification SF={sf_ok} AF={af_ok}"
    return _timed("example12", run)


# --- two-variable ring -------------------------------------------------------

def appendix_b(seed: int = 0, count: int = 1000, bounds: SearchBounds = DEFAULT_BOUNDS) -> Check:
    def run():
        d = get_domain(DomainId.APPB)
        rng = random.Random(seed)
        shaped = 0
        for _ in range(count):
            f = random_appb(rng, 4, 4, 3)
            if d.is_unit(f):
                f = f + d.one()
            m, _case = appb_witness(f)
            shaped += corollary_level(f * m) is not None
        # no product of two small non-units carries the term y
        factors = [g for g in small_universe(2, 4, 2) if not d.is_unit(g)]
        y_products = sum(d.irreducible_example() in [GenPoly({e: 1}, modulus=2)
                                                     for e in (g * h).terms]
                         for g, h in itertools.combinations_with_replacement(factors, 2))
        mismatch = 0
        universe = [f for f in small_universe(3, 4, 3) if not d.is_unit(f)]
        for f in universe:
            closed = d.is_irreducible(f, bounds).holds
            searched = d.split_search(f, bounds) is None
            mismatch += closed != searched
        ok = shaped == count and y_products == 0 and mismatch == 0
        return ok, (f"{shaped}/{count} witness products in corollary shape, {y_products} "
                    f"non-unit products with a y term, {mismatch}/{len(universe)} "
                    "irreducibility mismatches")
    return _timed("appendix_b", run)


# --- whole matrix ------------------------------------------------------------

def matrix(bounds: SearchBounds = DEFAULT_BOUNDS, seed: int = 0, truncation: int = 4) -> Check:
    def run():
        rows = classify_all(bounds, seed=seed, truncation=truncation)
        dag = dag_consistency(rows)
        seps = {s["separation"]: s["status"] for s in separation_table(rows)}
        open_ = sorted(k for k, v in seps.items() if v == "OPEN")
        others = all(v == "WITNESSED" for k, v in seps.items() if k not in ("iii", "iv"))
        disagree = [f"{r.domain.value}/{p.value}" for r in rows for p in PropertyId
                    if not r.agrees(p)]
        ok = dag.holds and open_ == ["iii", "iv"] and others and not disagree
        return ok, (f"dag {dag.outcome.value}, open {open_}, separations {seps}, "
                    f"disagreements {disagree}")
    return _timed("matrix", run)


PROCEDURES: dict[str, Callable[[], Check]] = {
    "lemma6": lemma6,
    "lemma14": lemma14,
    "lemma15": lemma15,
    "lemma16": lemma16,
    "lemma23": lemma23,
    "lemma24": lemma24,
    "example8": example8,
    "example9": example9,
    "example11": example11,
    "example12": example12,
    "section4": section4,
    "appendix_b": appendix_b,
    "theorem10": theorem10,
}
