"""Exact multivariate polynomials over Q and the monomial-order vocabulary.

Variables live in an immutable :class:`Ring` (an ordered tuple of names).
Monomials are dense exponent tuples, polynomials are sparse maps from exponent
tuple to ``Fraction``.  Monomial orders are small declarative specs compiled to
key functions; supported kinds are lex, graded lex, y-degree-first (the
"y-compatible" wrapper), elimination (block-degree first) and block
concatenation.  All values are immutable after construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

__all__ = [
    "Ring", "Poly", "Term",
    "Lex", "GrLex", "YFirst", "Elim", "Block", "Order",
    "compile_order", "storage_order", "lex_order", "y_order", "elim_order",
    "order_from_dict",
    "compare", "initial_term", "initial_y_form", "y_split",
    "mono_mul", "mono_div", "mono_divides", "mono_lcm", "mono_gcd",
    "mono_degree", "mono_support", "mono_is_squarefree", "mono_one",
    "parse_poly", "format_poly",
]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Monomials: dense exponent tuples.

def mono_one(arity: int) -> tuple:
    return (0,) * arity


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


def mono_support(a: tuple) -> tuple:
    """Indices of variables appearing in the monomial."""
    return tuple(i for i, e in enumerate(a) if e)


def mono_is_squarefree(a: tuple) -> bool:
    return all(e <= 1 for e in a)


def _grlex_key(m: tuple):
    return (sum(m), m)


# ---------------------------------------------------------------------------
# Rings.

class Ring:
    """An ordered list of variable names; the ambient polynomial ring over Q."""

    __slots__ = ("names", "index", "_hash")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        for n in names:
            if not n or not isinstance(n, str):
                raise ValueError("bad variable name: %r" % (n,))
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self._hash = hash(names)

    @property
    def arity(self) -> int:
        return len(self.names)

    def vidx(self, v: Union[int, str]) -> int:
        """Resolve a variable given by name or index."""
        if isinstance(v, str):
            try:
                return self.index[v]
            except KeyError:
                raise KeyError("unknown variable %r in ring %r" % (v, self.names))
        if not 0 <= v < len(self.names):
            raise IndexError("variable index %d out of range" % v)
        return v

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(ONE)

    def constant(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Poly(self, {mono_one(self.arity): c})

    def var(self, v: Union[int, str]) -> "Poly":
        i = self.vidx(v)
        m = [0] * self.arity
        m[i] = 1
        return Poly(self, {tuple(m): ONE})

    def monomial(self, exps: Mapping[str, int], coeff=ONE) -> "Poly":
        """Build a single-term polynomial from a name -> exponent map."""
        m = [0] * self.arity
        for name, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent for %s" % name)
            m[self.vidx(name)] = e
        c = Fraction(coeff)
        return Poly(self, {tuple(m): c} if c else {})

    def without(self, v: Union[int, str]) -> "Ring":
        i = self.vidx(v)
        return Ring(self.names[:i] + self.names[i + 1:])

    def with_vars(self, new_names: Iterable[str], front: bool = True) -> "Ring":
        new_names = tuple(new_names)
        return Ring(new_names + self.names if front else self.names + new_names)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Ring(%s)" % (",".join(self.names))


class Term(NamedTuple):
    mono: tuple
    coeff: Fraction


# ---------------------------------------------------------------------------
# Polynomials.

class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def is_monomial(self) -> bool:
        """A single term with coefficient +1 or -1 counts after normalization."""
        return len(self.terms) == 1

    def is_binomial(self) -> bool:
        return len(self.terms) == 2

    def is_variable(self) -> bool:
        if len(self.terms) != 1:
            return False
        (m, c), = self.terms.items()
        return c == 1 and sum(m) == 1

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return max(sum(m) for m in self.terms)

    def degree_in(self, v: Union[int, str]) -> int:
        i = self.ring.vidx(v)
        if not self.terms:
            return 0
        return max(m[i] for m in self.terms)

    def support(self) -> tuple:
        """Sorted indices of variables appearing in some term."""
        s = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    s.add(i)
        return tuple(sorted(s))

    def sorted_terms(self) -> list:
        """Terms in canonical (graded-lex descending) storage order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring.names != other.ring.names:
            raise ValueError("mixed rings: %r vs %r" % (self.ring, other.ring))

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Poly(self.ring, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) - c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Poly(self.ring, out)

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Poly(self.ring, {m: c * k for m, k in self.terms.items()})
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def term_mul(self, mono: tuple, coeff: Fraction) -> "Poly":
        return Poly(self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    # -- structure ----------------------------------------------------------

    def coeff_of(self, mono: tuple) -> Fraction:
        return self.terms.get(mono, ZERO)

    def canonical(self) -> tuple:
        return tuple((m, c) for m, c in self.sorted_terms())

    def rename(self, new_ring: Ring, name_map: Mapping[str, str] = None) -> "Poly":
        """Re-express in ``new_ring``; variables map by (renamed) name.

        Every variable actually appearing must exist in the target ring.
        """
        names = self.ring.names
        if name_map:
            names = tuple(name_map.get(n, n) for n in names)
        pos = []
        for i, n in enumerate(names):
            pos.append(new_ring.index.get(n, -1))
        out = {}
        for m, c in self.terms.items():
            mm = [0] * new_ring.arity
            for i, e in enumerate(m):
                if not e:
                    continue
                j = pos[i]
                if j < 0:
                    raise KeyError("variable %r not in target ring" % (names[i],))
                mm[j] = e
            out[tuple(mm)] = c
        return Poly(new_ring, out)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.ring.names == other.ring.names
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, self.canonical()))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


# ---------------------------------------------------------------------------
# Monomial orders.

@dataclass(frozen=True)
class Lex:
    vars: tuple  # sequence of names, most significant first


@dataclass(frozen=True)
class GrLex:
    vars: tuple


@dataclass(frozen=True)
class YFirst:
    """y-degree first, ties broken by the inner order (a y-compatible order)."""
    y: str
    inner: object


@dataclass(frozen=True)
class Elim:
    """Degree in the eliminated block first; an elimination order for ``vars``."""
    vars: tuple
    inner: object


@dataclass(frozen=True)
class Block:
    parts: tuple


class Order:
    """A compiled monomial order: a spec plus a sort-key function."""

    __slots__ = ("ring", "spec", "key")

    def __init__(self, ring: Ring, spec, key):
        self.ring = ring
        self.spec = spec
        self.key = key

    def to_dict(self) -> dict:
        return _spec_to_dict(self.spec)

    def __repr__(self):
        return "Order(%r)" % (self.spec,)


def _spec_deciders(spec) -> set:
    if isinstance(spec, (Lex, GrLex)):
        return set(spec.vars)
    if isinstance(spec, YFirst):
        return {spec.y} | _spec_deciders(spec.inner)
    if isinstance(spec, Elim):
        return set(spec.vars) | _spec_deciders(spec.inner)
    if isinstance(spec, Block):
        out = set()
        for p in spec.parts:
            out |= _spec_deciders(p)
        return out
    raise TypeError("not an order spec: %r" % (spec,))


def _compile(ring: Ring, spec):
    if isinstance(spec, Lex):
        idx = tuple(ring.vidx(v) for v in spec.vars)
        return lambda m: tuple(m[i] for i in idx)
    if isinstance(spec, GrLex):
        idx = tuple(ring.vidx(v) for v in spec.vars)
        return lambda m: (sum(m[i] for i in idx), tuple(m[i] for i in idx))
    if isinstance(spec, YFirst):
        iy = ring.vidx(spec.y)
        inner = _compile(ring, spec.inner)
        return lambda m: (m[iy], inner(m))
    if isinstance(spec, Elim):
        idx = tuple(ring.vidx(v) for v in spec.vars)
        inner = _compile(ring, spec.inner)
        return lambda m: (sum(m[i] for i in idx), inner(m))
    if isinstance(spec, Block):
        parts = tuple(_compile(ring, p) for p in spec.parts)
        return lambda m: tuple(k(m) for k in parts)
    raise TypeError("not an order spec: %r" % (spec,))


def compile_order(ring: Ring, spec) -> Order:
    """Compile a spec to an Order, checking it decides every variable."""
    missing = set(ring.names) - _spec_deciders(spec)
    if missing:
        raise ValueError("order does not decide variables: %s" % sorted(missing))
    return Order(ring, spec, _compile(ring, spec))


def storage_order(ring: Ring) -> Order:
    """The fixed canonical order (graded lex on the ring's own variable order)."""
    return compile_order(ring, GrLex(ring.names))


def lex_order(ring: Ring, names: Iterable[str] = None) -> Order:
    seq = tuple(names) if names is not None else ring.names
    if set(seq) != set(ring.names):
        raise ValueError("lex order must list every ring variable exactly once")
    return compile_order(ring, Lex(seq))


def y_order(ring: Ring, y: Union[int, str]) -> Order:
    """The engine's default y-compatible order: y-degree first, inner lex.

    The inner lex puts y first and the remaining variables in ring order, so
    the composite coincides with plain lex ``y > (others in ring order)``.
    """
    yname = ring.names[ring.vidx(y)]
    rest = tuple(n for n in ring.names if n != yname)
    return compile_order(ring, YFirst(yname, Lex((yname,) + rest)))


def elim_order(ring: Ring, elim_vars: Iterable[str]) -> Order:
    ev = tuple(elim_vars)
    rest = tuple(n for n in ring.names if n not in set(ev))
    return compile_order(ring, Elim(ev, GrLex(ev + rest)))


def _spec_to_dict(spec) -> dict:
    if isinstance(spec, Lex):
        return {"kind": "lex", "vars": list(spec.vars)}
    if isinstance(spec, GrLex):
        return {"kind": "grlex", "vars": list(spec.vars)}
    if isinstance(spec, YFirst):
        return {"kind": "y-first", "y": spec.y, "inner": _spec_to_dict(spec.inner)}
    if isinstance(spec, Elim):
        return {"kind": "elim", "vars": list(spec.vars), "inner": _spec_to_dict(spec.inner)}
    if isinstance(spec, Block):
        return {"kind": "block", "parts": [_spec_to_dict(p) for p in spec.parts]}
    raise TypeError("not an order spec: %r" % (spec,))


def order_from_dict(ring: Ring, d: dict) -> Order:
    return compile_order(ring, _spec_from_dict(d))


def _spec_from_dict(d: dict):
    kind = d["kind"]
    if kind == "lex":
        return Lex(tuple(d["vars"]))
    if kind == "grlex":
        return GrLex(tuple(d["vars"]))
    if kind == "y-first":
        return YFirst(d["y"], _spec_from_dict(d["inner"]))
    if kind == "elim":
        return Elim(tuple(d["vars"]), _spec_from_dict(d["inner"]))
    if kind == "block":
        return Block(tuple(_spec_from_dict(p) for p in d["parts"]))
    raise ValueError("unknown order kind %r" % kind)


# ---------------------------------------------------------------------------
# Order-dependent views of a polynomial.

def compare(order: Order, a: tuple, b: tuple) -> int:
    """-1, 0 or 1 as a <, =, > b under the order."""
    ka, kb = order.key(a), order.key(b)
    return -1 if ka < kb else (0 if ka == kb else 1)


def initial_term(order: Order, f: Poly) -> Term:
    """The order-maximal term of f."""
    if f.is_zero():
        raise ValueError("initial term of zero polynomial")
    m = max(f.terms, key=order.key)
    return Term(m, f.terms[m])


def initial_y_form(y: Union[int, str], f: Poly) -> Poly:
    """All terms of maximal y-degree (equals f when y is absent)."""
    if f.is_zero():
        raise ValueError("initial y-form of zero polynomial")
    iy = f.ring.vidx(y)
    d = max(m[iy] for m in f.terms)
    return Poly(f.ring, {m: c for m, c in f.terms.items() if m[iy] == d})


def y_split(y: Union[int, str], f: Poly) -> tuple:
    """Write f = y^d * q + r with y absent from q and deg_y(r) < d."""
    if f.is_zero():
        raise ValueError("y-split of zero polynomial")
    ring = f.ring
    iy = ring.vidx(y)
    d = max(m[iy] for m in f.terms)
    q, r = {}, {}
    for m, c in f.terms.items():
        if m[iy] == d:
            mm = list(m)
            mm[iy] = 0
            q[tuple(mm)] = c
        else:
            r[m] = c
    return d, Poly(ring, q), Poly(ring, r)


# ---------------------------------------------------------------------------
# Text syntax:  terms like `-3*e1^2*e4`, joined by `+` / `-`.

_TERM_SPLIT = re.compile(r"(?=[+-])")
_FACTOR = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z_0-9]*)(?:\^(?P<exp>\d+))?$")
_NUM = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(ring: Ring, text: str) -> Poly:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return ring.zero()
    out = ring.zero()
    for chunk in _TERM_SPLIT.split(s):
        if not chunk:
            continue
        sign = ONE
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -ONE
            chunk = chunk[1:]
        if not chunk:
            raise ValueError("dangling sign in %r" % text)
        coeff = sign
        exps: dict = {}
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError("empty factor in %r" % text)
            if factor[0].isdigit():
                if not _NUM.match(factor):
                    raise ValueError("bad numeric factor %r in %r" % (factor, text))
                coeff *= Fraction(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError("bad factor %r in %r" % (factor, text))
            e = int(m.group("exp") or 1)
            name = m.group("name")
            exps[name] = exps.get(name, 0) + e
        out = out + ring.monomial(exps, coeff)
    return out


def _format_coeff(c: Fraction) -> str:
    return str(c)  # Fraction prints p/q or p


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m, c in f.sorted_terms():
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(f.ring.names[i])
            elif e > 1:
                factors.append("%s^%d" % (f.ring.names[i], e))
        body = "*".join(factors)
        mag = abs(c)
        if mag != 1 or not body:
            body = _format_coeff(mag) + ("*" + body if body else "")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
