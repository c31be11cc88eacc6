"""Ideals over Q and deterministic Groebner-basis computations.

Everything reduces to Buchberger's algorithm with the normal selection
strategy (smallest lcm first, ties by generator indices) plus the coprime and
chain criteria, followed by minimalization and full inter-reduction.  Reduced
Groebner bases are unique for a given order, which is what makes
``ideal_equal`` and the certificate replay byte-stable.

Intersections use the ``t*I + (1-t)*J`` elimination trick, saturation by a
variable uses the Rabinowitsch trick, and Krull dimension comes from a
minimum vertex cover of the initial-ideal supports.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .algebra import (
    Order, Poly, Ring,
    elim_order, initial_term, mono_div, mono_divides, mono_gcd, mono_lcm,
    mono_mul, mono_one, mono_support, mono_is_squarefree, storage_order,
)

__all__ = [
    "Ideal", "s_polynomial", "normal_form", "buchberger", "initial_ideal",
    "ideal_equal", "ideal_contains", "ideal_contains_ideal", "intersect",
    "saturate_variable", "eliminate", "contract", "extend",
    "krull_dimension", "is_generated_by_variables", "is_square_free_monomial_ideal",
    "is_unit_ideal", "radical_contains", "radical_equal",
    "minimal_monomial_generators", "fresh_name",
]

ONE = Fraction(1)


class Ideal:
    """An ideal of Q[ring], held as an explicit generator tuple.

    Reduced Groebner bases are cached per order spec; generators keep the
    order the caller gave them (displays rely on that).
    """

    __slots__ = ("ring", "gens", "_rgb")

    def __init__(self, ring: Ring, gens: Iterable[Poly]):
        kept = []
        for g in gens:
            if g.ring.names != ring.names:
                raise ValueError("generator ring mismatch")
            if not g.is_zero():
                kept.append(g)
        self.ring = ring
        self.gens = tuple(kept)
        self._rgb = {}

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ring: Ring) -> "Ideal":
        return Ideal(ring, [])

    @staticmethod
    def unit(ring: Ring) -> "Ideal":
        return Ideal(ring, [ring.one()])

    def with_extra(self, extra: Iterable[Poly]) -> "Ideal":
        return Ideal(self.ring, list(self.gens) + list(extra))

    def rename(self, new_ring: Ring, name_map=None) -> "Ideal":
        return Ideal(new_ring, [g.rename(new_ring, name_map) for g in self.gens])

    # -- Groebner layer -------------------------------------------------------

    def groebner(self, order: Order = None) -> tuple:
        """The reduced Groebner basis under ``order`` (storage order by default)."""
        if order is None:
            order = storage_order(self.ring)
        key = order.spec
        got = self._rgb.get(key)
        if got is None:
            got = tuple(buchberger(order, self.gens))
            self._rgb[key] = got
        return got

    def contains(self, f: Poly) -> bool:
        return ideal_contains(self, f)

    def is_zero_ideal(self) -> bool:
        return not self.groebner()

    def is_unit_ideal(self) -> bool:
        rgb = self.groebner()
        return len(rgb) == 1 and rgb[0].is_constant()

    def __repr__(self):
        return "Ideal<%d gens over %r>" % (len(self.gens), self.ring)


# ---------------------------------------------------------------------------
# Core reduction machinery.

def s_polynomial(order: Order, f: Poly, g: Poly) -> Poly:
    """The S-polynomial (lcm/lt_f)*f - (lcm/lt_g)*g."""
    mf, cf = initial_term(order, f)
    mg, cg = initial_term(order, g)
    lcm = mono_lcm(mf, mg)
    return f.term_mul(mono_div(lcm, mf), ONE / cf) - g.term_mul(mono_div(lcm, mg), ONE / cg)


def _reducers(basis: Sequence[Poly], order: Order):
    out = []
    for g in basis:
        if g.is_zero():
            continue
        m, c = initial_term(order, g)
        out.append((g.terms, m, c))
    return out


def _normal_form_raw(order: Order, terms: dict, reducers) -> dict:
    """Full normal form of a raw term dict against precomputed reducers."""
    key = order.key
    work = dict(terms)
    rem: dict = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for gterms, ltm, ltc in reducers:
            if mono_divides(ltm, m):
                q = mono_div(m, ltm)
                s = c / ltc
                for gm, gc in gterms.items():
                    if gm == ltm:
                        continue
                    mm = mono_mul(gm, q)
                    v = work.get(mm, 0) - s * gc
                    if v:
                        work[mm] = v
                    elif mm in work:
                        del work[mm]
                break
        else:
            rem[m] = c
    return rem


def normal_form(order: Order, f: Poly, basis: Sequence[Poly]) -> Poly:
    """Fully reduce f modulo the list of polynomials (first divisor wins)."""
    return Poly(f.ring, _normal_form_raw(order, f.terms, _reducers(basis, order)))


def buchberger(order: Order, gens: Iterable[Poly]) -> list:
    """The reduced Groebner basis of the given generators under the order.

    Deterministic: normal selection strategy keyed by (order key of pair lcm,
    i, j); the result is minimalized, fully inter-reduced, monic, and sorted
    by ascending initial term.
    """
    basis = []
    seen = set()
    for g in gens:
        if g.is_zero():
            continue
        _, c = initial_term(order, g)
        g = g * (ONE / c)
        if g.canonical() in seen:
            continue
        seen.add(g.canonical())
        basis.append(g)
    if not basis:
        return []

    lts = [initial_term(order, g).mono for g in basis]
    heap = []
    for i, j in combinations(range(len(basis)), 2):
        lcm = mono_lcm(lts[i], lts[j])
        heapq.heappush(heap, (order.key(lcm), i, j))
    done = set()

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) in done:
            continue
        done.add((i, j))
        lcm = mono_lcm(lts[i], lts[j])
        if mono_mul(lts[i], lts[j]) == lcm:
            continue  # coprime initial terms
        chained = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lts[k], lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                chained = True
                break
        if chained:
            continue
        s = s_polynomial(order, basis[i], basis[j])
        rem = _normal_form_raw(order, s.terms, _reducers(basis, order))
        if not rem:
            continue
        h = Poly(order.ring, rem)
        m, c = initial_term(order, h)
        h = h * (ONE / c)
        basis.append(h)
        lts.append(m)
        n = len(basis) - 1
        for k in range(n):
            heapq.heappush(heap, (order.key(mono_lcm(lts[k], m)), k, n))

    # minimalize: drop elements whose initial term another initial term divides
    order_idx = sorted(range(len(basis)), key=lambda i: order.key(lts[i]))
    kept = []
    for i in order_idx:
        if not any(mono_divides(lts[k], lts[i]) for k in kept):
            kept.append(i)
    minimal = [basis[i] for i in kept]

    # inter-reduce tails
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        h = Poly(order.ring, _normal_form_raw(order, g.terms, _reducers(others, order)))
        _, c = initial_term(order, h)
        reduced.append(h * (ONE / c))
    reduced.sort(key=lambda g: (order.key(initial_term(order, g).mono), g.canonical()))
    return reduced


def initial_ideal(order: Order, I: Ideal) -> Ideal:
    """The monomial ideal of initial terms (from the reduced basis)."""
    gens = []
    for g in I.groebner(order):
        m, _ = initial_term(order, g)
        gens.append(Poly(I.ring, {m: ONE}))
    return Ideal(I.ring, gens)


# ---------------------------------------------------------------------------
# Membership and equality.

def ideal_contains(I: Ideal, f: Poly) -> bool:
    if f.is_zero():
        return True
    order = storage_order(I.ring)
    return normal_form(order, f, I.groebner(order)).is_zero()


def ideal_contains_ideal(I: Ideal, J: Ideal) -> bool:
    """True iff J is a subset of I (generatorwise membership)."""
    return all(ideal_contains(I, g) for g in J.gens)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """Exact equality via the (unique) reduced bases under the storage order."""
    if I.ring.names != J.ring.names:
        raise ValueError("ideal_equal across different rings")
    a = [g.canonical() for g in I.groebner()]
    b = [g.canonical() for g in J.groebner()]
    return a == b


# ---------------------------------------------------------------------------
# Elimination-based operations.

def fresh_name(ring: Ring, base: str) -> str:
    if base not in ring.index:
        return base
    k = 1
    while "%s_%d" % (base, k) in ring.index:
        k += 1
    return "%s_%d" % (base, k)


def eliminate(I: Ideal, vars_out: Iterable[Union[int, str]]) -> Ideal:
    """Intersect with the subring omitting ``vars_out``; result lives there."""
    names_out = {I.ring.names[I.ring.vidx(v)] for v in vars_out}
    if not names_out:
        return Ideal(I.ring, I.gens)
    small = Ring([n for n in I.ring.names if n not in names_out])
    rgb = I.groebner(elim_order(I.ring, sorted(names_out, key=I.ring.index.get)))
    out_idx = [I.ring.index[n] for n in names_out]
    kept = [g for g in rgb if all(m[i] == 0 for m in g.terms for i in out_idx)]
    return Ideal(small, [g.rename(small) for g in kept])


def contract(I: Ideal, y: Union[int, str]) -> Ideal:
    """The contraction I ∩ Q[ring without y], in the smaller ring."""
    return eliminate(I, [y])


def extend(I: Ideal, big: Ring) -> Ideal:
    """Re-express the ideal in a larger ring (same generator set)."""
    return I.rename(big)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J and elimination of the fresh t."""
    if I.ring.names != J.ring.names:
        raise ValueError("intersect across different rings")
    if I.is_zero_ideal() or J.is_zero_ideal():
        return Ideal.zero(I.ring)
    if I.is_unit_ideal():
        return Ideal(J.ring, J.gens)
    if J.is_unit_ideal():
        return Ideal(I.ring, I.gens)
    t = fresh_name(I.ring, "t")
    big = I.ring.with_vars([t], front=True)
    tp = big.var(t)
    gens = [tp * g.rename(big) for g in I.gens]
    gens += [(big.one() - tp) * g.rename(big) for g in J.gens]
    mixed = Ideal(big, gens)
    inter = eliminate(mixed, [t])
    return inter.rename(I.ring)


def saturate_variable(I: Ideal, y: Union[int, str]) -> Ideal:
    """The saturation I : y^infinity, in the same ring."""
    yname = I.ring.names[I.ring.vidx(y)]
    w = fresh_name(I.ring, "w")
    big = I.ring.with_vars([w], front=True)
    gens = [g.rename(big) for g in I.gens]
    gens.append(big.var(w) * big.var(yname) - big.one())
    sat = eliminate(Ideal(big, gens), [w])
    return sat.rename(I.ring)


def radical_contains(I: Ideal, f: Poly) -> bool:
    """True iff f lies in the radical of I (Rabinowitsch trick)."""
    if f.is_zero():
        return True
    w = fresh_name(I.ring, "w")
    big = I.ring.with_vars([w], front=True)
    gens = [g.rename(big) for g in I.gens]
    gens.append(big.var(w) * f.rename(big) - big.one())
    return Ideal(big, gens).is_unit_ideal()


def radical_equal(I: Ideal, J: Ideal) -> bool:
    """True iff the two ideals have the same radical."""
    if I.ring.names != J.ring.names:
        raise ValueError("radical_equal across different rings")
    return (all(radical_contains(J, g) for g in I.gens)
            and all(radical_contains(I, g) for g in J.gens))


# ---------------------------------------------------------------------------
# Structure of (initial) monomial ideals.

def minimal_monomial_generators(monos: Iterable[tuple]) -> list:
    """Minimal generating monomials (divisibility-reduced), sorted by grlex."""
    ms = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in ms:
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def _min_cover_size(supports: list) -> int:
    """Minimum number of variables hitting every support set."""
    supports = [frozenset(s) for s in supports]
    # quick reductions: drop supersets
    supports.sort(key=len)
    core = []
    for s in supports:
        if not any(t <= s for t in core):
            core.append(s)
    best = len(frozenset().union(*core)) if core else 0

    def bb(uncovered, size):
        nonlocal best
        if size >= best:
            return
        if not uncovered:
            best = size
            return
        s = min(uncovered, key=len)
        for v in sorted(s):
            rest = [t for t in uncovered if v not in t]
            bb(rest, size + 1)

    bb(core, 0)
    return best


def krull_dimension(I: Ideal) -> int:
    """dim Q[ring]/I; -1 for the unit ideal, arity for the zero ideal."""
    rgb = I.groebner()
    if not rgb:
        return I.ring.arity
    if len(rgb) == 1 and rgb[0].is_constant():
        return -1
    order = storage_order(I.ring)
    supports = [mono_support(initial_term(order, g).mono) for g in rgb]
    return I.ring.arity - _min_cover_size(supports)


def is_generated_by_variables(I: Ideal) -> bool:
    """True iff I is generated by a (possibly empty) set of variables."""
    return all(g.is_variable() for g in I.groebner())


def is_square_free_monomial_ideal(I: Ideal) -> bool:
    """True iff the reduced basis consists of square-free monomials."""
    rgb = I.groebner()
    return all(g.is_monomial() and mono_is_squarefree(next(iter(g.terms)))
               for g in rgb)


def is_unit_ideal(I: Ideal) -> bool:
    return I.is_unit_ideal()
