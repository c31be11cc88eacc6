"""Finite simple graphs and their toric ideals.

The toric ideal of a graph G lives in Q[edge labels] and is generated by the
binomials of closed even walks.  Its universal Groebner basis is the set of
primitive walk binomials, computed here as the Graver basis of the integer
kernel of the vertex-edge incidence matrix (Pottier-style completion).  A
bounded walk enumerator is kept alongside as an independent small-scale
oracle.  The graph operations that interact well with these ideals -- leaf
removal, even-cycle gluing, disjoint union, gap-freeness and 4-cycle tests --
live here too.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Poly, Ring
from .groebner import Ideal, ideal_contains, ideal_equal

__all__ = [
    "Graph", "cycle_graph", "path_graph", "complete_graph",
    "complete_bipartite", "ferrers_graph",
    "integer_kernel_basis", "graver_basis",
    "universal_groebner_basis", "primitive_walk_binomials", "toric_ideal",
    "toric_dimension", "remove_leaves_fixpoint", "glue_even_cycle",
    "disjoint_union", "is_gap_free", "four_cycles_containing",
    "has_four_cycle", "vector_to_binomial",
]

ONE = Fraction(1)


class Graph:
    """A finite simple graph with named vertices and named edges.

    Edge names double as polynomial ring variables, in listed order.
    """

    __slots__ = ("vertices", "edges", "_ends", "_adj", "_labels")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]]):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        es = []
        seen_pairs = set()
        seen_labels = set()
        for e in edges:
            label, u, v = e
            if label in seen_labels:
                raise ValueError("duplicate edge label %r" % label)
            if u not in vset or v not in vset:
                raise ValueError("edge %r has unknown endpoint" % label)
            if u == v:
                raise ValueError("loop at %r not allowed" % u)
            pair = frozenset((u, v))
            if pair in seen_pairs:
                raise ValueError("parallel edge %r" % label)
            seen_labels.add(label)
            seen_pairs.add(pair)
            es.append((label, u, v))
        self.edges = tuple(es)
        self._labels = tuple(e[0] for e in es)
        self._ends = {e[0]: (e[1], e[2]) for e in es}
        adj = {v: [] for v in self.vertices}
        for label, u, v in es:
            adj[u].append((label, v))
            adj[v].append((label, u))
        self._adj = adj

    # -- basic queries -------------------------------------------------------

    @property
    def edge_labels(self) -> tuple:
        return self._labels

    def edge_ring(self) -> Ring:
        return Ring(self._labels)

    def ends(self, label: str) -> tuple:
        return self._ends[label]

    def neighbors(self, v: str) -> list:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge_between(self, u: str, v: str) -> bool:
        return any(w == v for _, w in self._adj[u])

    def edge_between(self, u: str, v: str) -> str:
        for label, w in self._adj[u]:
            if w == v:
                return label
        raise KeyError("no edge between %r and %r" % (u, v))

    # -- derived graphs ------------------------------------------------------

    def delete_edges(self, labels: Iterable[str]) -> "Graph":
        drop = set(labels)
        unknown = drop - set(self._labels)
        if unknown:
            raise KeyError("no such edges: %s" % sorted(unknown))
        return Graph(self.vertices, [e for e in self.edges if e[0] not in drop])

    def delete_vertices(self, vs: Iterable[str]) -> "Graph":
        drop = set(vs)
        return Graph([v for v in self.vertices if v not in drop],
                     [e for e in self.edges if e[1] not in drop and e[2] not in drop])

    def with_edges(self, new_vertices: Iterable[str], new_edges: Iterable[Sequence[str]]) -> "Graph":
        return Graph(self.vertices + tuple(new_vertices), self.edges + tuple(tuple(e) for e in new_edges))

    # -- structure -----------------------------------------------------------

    def components(self) -> list:
        """Connected components as sorted vertex tuples (isolated included)."""
        seen = set()
        out = []
        for v0 in self.vertices:
            if v0 in seen:
                continue
            comp = {v0}
            queue = deque([v0])
            while queue:
                v = queue.popleft()
                for _, w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            out.append(tuple(sorted(comp)))
        return out

    def bipartition_of(self, comp: Iterable[str]):
        """2-coloring of one component as (side0, side1), or None if odd cycle."""
        comp = list(comp)
        color = {comp[0]: 0}
        queue = deque([comp[0]])
        while queue:
            v = queue.popleft()
            for _, w in self._adj[v]:
                if w not in color:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
        side0 = tuple(sorted(v for v in comp if color.get(v) == 0))
        side1 = tuple(sorted(v for v in comp if color.get(v) == 1))
        return side0, side1

    def is_bipartite(self) -> bool:
        return all(self.bipartition_of(c) is not None for c in self.components())

    def incidence_matrix(self) -> list:
        """0/1 rows indexed by vertices, columns by edges."""
        vpos = {v: i for i, v in enumerate(self.vertices)}
        rows = [[0] * len(self.edges) for _ in self.vertices]
        for j, (_, u, v) in enumerate(self.edges):
            rows[vpos[u]][j] = 1
            rows[vpos[v]][j] = 1
        return rows

    def __repr__(self):
        return "Graph(%d vertices, %d edges)" % (len(self.vertices), len(self.edges))


# ---------------------------------------------------------------------------
# Standard families.

def cycle_graph(n: int, vprefix: str = "x", eprefix: str = "e") -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    vs = ["%s%d" % (vprefix, i) for i in range(1, n + 1)]
    es = [("%s%d" % (eprefix, i), vs[i - 1], vs[i % n]) for i in range(1, n + 1)]
    return Graph(vs, es)


def path_graph(n: int, vprefix: str = "x", eprefix: str = "e") -> Graph:
    vs = ["%s%d" % (vprefix, i) for i in range(1, n + 1)]
    es = [("%s%d" % (eprefix, i), vs[i - 1], vs[i]) for i in range(1, n)]
    return Graph(vs, es)


def complete_graph(n: int, vprefix: str = "x", eprefix: str = "e") -> Graph:
    vs = ["%s%d" % (vprefix, i) for i in range(1, n + 1)]
    es = []
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            k += 1
            es.append(("%s%d" % (eprefix, k), vs[i], vs[j]))
    return Graph(vs, es)


def complete_bipartite(r: int, s: int) -> Graph:
    xs = ["x%d" % i for i in range(1, r + 1)]
    ys = ["y%d" % j for j in range(1, s + 1)]
    es = []
    k = 0
    for i in range(r):
        for j in range(s):
            k += 1
            es.append(("e%d" % k, xs[i], ys[j]))
    return Graph(xs + ys, es)


def ferrers_graph(partition: Sequence[int]) -> Graph:
    """Bipartite graph of a partition: row i joins column j iff j <= lambda_i."""
    lam = list(partition)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(p <= 0 for p in lam):
        raise ValueError("partition must be positive and weakly decreasing")
    xs = ["x%d" % i for i in range(1, len(lam) + 1)]
    ys = ["y%d" % j for j in range(1, max(lam) + 1)]
    es = []
    k = 0
    for i, p in enumerate(lam):
        for j in range(p):
            k += 1
            es.append(("e%d" % k, xs[i], ys[j]))
    return Graph(xs + ys, es)


# ---------------------------------------------------------------------------
# Integer linear algebra: kernel of the incidence matrix.

def integer_kernel_basis(rows: list) -> list:
    """A lattice basis of {u in Z^m : A u = 0} via unimodular column reduction."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    cols = [[rows[i][j] for i in range(n)] for j in range(m)]
    U = [[1 if i == j else 0 for i in range(m)] for j in range(m)]
    lead = 0
    for r in range(n):
        while True:
            nz = [j for j in range(lead, m) if cols[j][r] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda j: (abs(cols[j][r]), j))
            j, k = nz[0], nz[1]
            q = cols[k][r] // cols[j][r]
            cols[k] = [a - q * b for a, b in zip(cols[k], cols[j])]
            U[k] = [a - q * b for a, b in zip(U[k], U[j])]
        if nz:
            j = nz[0]
            cols[lead], cols[j] = cols[j], cols[lead]
            U[lead], U[j] = U[j], U[lead]
            lead += 1
    return [tuple(U[j]) for j in range(lead, m)]


def _conformal(s: tuple, f: tuple) -> bool:
    """s <= f in the conformal (sign-compatible, componentwise) order."""
    return all(si * fi >= 0 and abs(si) <= abs(fi) for si, fi in zip(s, f))


def graver_basis(lattice_basis: list) -> list:
    """All conformally-minimal nonzero lattice vectors (Pottier completion).

    Returns one representative per +/- pair, oriented so the positive part is
    the storage-order-larger monomial; sorted for determinism.
    """
    S = []
    seen = set()
    for b in lattice_basis:
        for v in (tuple(b), tuple(-x for x in b)):
            if any(v) and v not in seen:
                seen.add(v)
                S.append(v)
    if not S:
        return []

    def nf(f):
        while True:
            if not any(f):
                return None
            for s in S:
                if _conformal(s, f):
                    f = tuple(a - b for a, b in zip(f, s))
                    break
            else:
                return f

    queue = deque()
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            queue.append((S[i], S[j]))
    while queue:
        u, v = queue.popleft()
        h = nf(tuple(a + b for a, b in zip(u, v)))
        if h is None or h in seen:
            continue
        hn = tuple(-x for x in h)
        for w in (h, hn):
            seen.add(w)
            for s in S:
                queue.append((w, s))
            S.append(w)

    minimal = [u for u in S
               if not any(v != u and _conformal(v, u) for v in S)]
    out = set()
    for u in minimal:
        pos = tuple(max(x, 0) for x in u)
        neg = tuple(max(-x, 0) for x in u)
        if (sum(pos), pos) > (sum(neg), neg):
            out.add(u)
        else:
            out.add(tuple(-x for x in u))
    return sorted(out)


def vector_to_binomial(ring: Ring, u: tuple) -> Poly:
    """The binomial x^{u+} - x^{u-} of an integer vector."""
    pos = tuple(max(x, 0) for x in u)
    neg = tuple(max(-x, 0) for x in u)
    return Poly(ring, {pos: ONE, neg: -ONE})


# ---------------------------------------------------------------------------
# Universal Groebner basis / toric ideal.

_UGB_CACHE: dict = {}


def universal_groebner_basis(G: Graph) -> tuple:
    """The primitive closed-even-walk binomials of G (its universal basis).

    Computed as the Graver basis of the incidence-matrix kernel; forests give
    the empty tuple.  Results are cached by graph structure, since the
    decomposability search revisits the same subgraphs many times.
    """
    if not G.edges:
        return ()
    key = (G.vertices, G.edges)
    hit = _UGB_CACHE.get(key)
    if hit is not None:
        return hit
    ring = G.edge_ring()
    kernel = integer_kernel_basis(G.incidence_matrix())
    vs = graver_basis(kernel)
    polys = [vector_to_binomial(ring, u) for u in vs]
    polys.sort(key=lambda f: (f.total_degree(), f.canonical()))
    out = tuple(polys)
    _UGB_CACHE[key] = out
    return out


def primitive_walk_binomials(G: Graph, max_edges: int = 10) -> tuple:
    """Independent oracle: bounded enumeration of closed even walks.

    Uses the fact that a primitive walk traverses each edge at most twice and
    never repeats an edge immediately (cyclically); the collected exponent
    vectors are then filtered to the conformally minimal ones.  Exponential --
    intended for graphs with few edges only.
    """
    if len(G.edges) > max_edges:
        raise ValueError("walk enumeration limited to %d edges" % max_edges)
    ring = G.edge_ring()
    eidx = {label: i for i, label in enumerate(G.edge_labels)}
    m = len(G.edges)
    vectors = set()
    order = {v: i for i, v in enumerate(sorted(G.vertices))}

    def walk(v0, v, used, last, step, vec, first_edge):
        for label, w in sorted(G.neighbors(v)):
            i = eidx[label]
            if i == last or used[i] == 2 or order[w] < order[v0]:
                continue
            used[i] += 1
            vec[i] += 1 if step % 2 == 1 else -1
            if w == v0 and step % 2 == 0 and i != first_edge and any(vec):
                vectors.add(tuple(vec))
            if step < 2 * m:
                walk(v0, w, used, i, step + 1,
                     vec, first_edge if first_edge is not None else i)
            used[i] -= 1
            vec[i] -= 1 if step % 2 == 1 else -1

    for v0 in sorted(G.vertices):
        walk(v0, v0, [0] * m, None, 1, [0] * m, None)

    minimal = [u for u in vectors
               if not any(v != u and _conformal(v, u) for v in vectors)]
    out = set()
    for u in minimal:
        pos = tuple(max(x, 0) for x in u)
        neg = tuple(max(-x, 0) for x in u)
        if (sum(pos), pos) > (sum(neg), neg):
            out.add(u)
        else:
            out.add(tuple(-x for x in u))
    polys = [vector_to_binomial(ring, u) for u in sorted(out)]
    polys.sort(key=lambda f: (f.total_degree(), f.canonical()))
    return tuple(polys)


def toric_ideal(G: Graph) -> Ideal:
    """The toric ideal of G with a minimal generating set as generators.

    Generators are chosen greedily from the universal basis (degree
    ascending); by graded Nakayama this yields a minimal generating set.
    """
    ring = G.edge_ring()
    ugb = universal_groebner_basis(G)
    chosen = []
    pool = sorted(ugb, key=lambda f: f.canonical(), reverse=True)
    pool.sort(key=lambda f: f.total_degree())
    for f in pool:
        if not chosen or not ideal_contains(Ideal(ring, chosen), f):
            chosen.append(f)
    return Ideal(ring, chosen)


def toric_dimension(G: Graph) -> int:
    """Rank of the incidence matrix over Q, by the component-wise formula."""
    dim = 0
    for comp in G.components():
        if not any(u in comp for _, u, v in G.edges):
            continue
        sub = G.delete_vertices([v for v in G.vertices if v not in comp])
        dim += len(comp) - 1 if sub.is_bipartite() else len(comp)
    return dim


# ---------------------------------------------------------------------------
# Graph operations from the decomposability toolkit.

def remove_leaves_fixpoint(G: Graph) -> Graph:
    """Repeatedly delete edges with a degree-1 endpoint until none remain."""
    H = G
    while True:
        drop = [label for label, u, v in H.edges
                if H.degree(u) == 1 or H.degree(v) == 1]
        if not drop:
            return H
        H = H.delete_edges(drop)


def _next_index(names: Iterable[str], prefix: str) -> int:
    best = 0
    for n in names:
        if n.startswith(prefix) and n[len(prefix):].isdigit():
            best = max(best, int(n[len(prefix):]))
    return best + 1


def glue_even_cycle(G: Graph, edge: str, length: int, prefix: str = "f",
                    verify: bool = True):
    """Glue an even cycle of the given length onto G along an existing edge.

    Adds length-1 new edges f_i forming a cycle with ``edge`` and returns
    (H, F) where F = f1 f3 ... f_{len-1}  -  e f2 f4 ... f_{len-2} is the new
    cycle binomial.  With ``verify`` on, asserts I_H = I_G + <F>.
    """
    if length % 2 or length < 4:
        raise ValueError("cycle length must be even and at least 4")
    if edge not in G._ends:
        raise KeyError("no edge %r to glue along" % edge)
    a, b = G.ends(edge)
    k = length - 1  # number of new edges
    e0 = _next_index(G.edge_labels, prefix)
    v0 = _next_index(G.vertices, "w")
    labels = ["%s%d" % (prefix, e0 + i) for i in range(k)]
    inner = ["w%d" % (v0 + i) for i in range(k - 1)]
    chain = [a] + inner + [b]
    new_edges = [(labels[i], chain[i], chain[i + 1]) for i in range(k)]
    H = G.with_edges(inner, new_edges)

    ring = H.edge_ring()
    odd = ring.one()
    even = ring.var(edge)
    for i, lab in enumerate(labels):
        if i % 2 == 0:
            odd = odd * ring.var(lab)
        else:
            even = even * ring.var(lab)
    F = odd - even

    if verify:
        IH = toric_ideal(H)
        IG_ext = toric_ideal(G).rename(ring).with_extra([F])
        if not ideal_equal(IH, IG_ext):
            raise AssertionError("gluing identity I_H = I_G + <F> failed")
    return H, F


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """Disjoint union; colliding vertex/edge names on the H side get suffixes."""
    taken_v = set(G.vertices)
    taken_e = set(G.edge_labels)
    vmap = {}
    for v in H.vertices:
        new = v
        k = 2
        while new in taken_v:
            new = "%s_%d" % (v, k)
            k += 1
        taken_v.add(new)
        vmap[v] = new
    emap = {}
    for label in H.edge_labels:
        new = label
        k = 2
        while new in taken_e:
            new = "%s_%d" % (label, k)
            k += 1
        taken_e.add(new)
        emap[label] = new
    new_edges = [(emap[label], vmap[u], vmap[v]) for label, u, v in H.edges]
    return Graph(G.vertices + tuple(vmap[v] for v in H.vertices),
                 G.edges + tuple(new_edges))


def is_gap_free(G: Graph) -> bool:
    """No two vertex-disjoint edges without an edge connecting them."""
    es = G.edges
    for i in range(len(es)):
        _, a, b = es[i]
        for j in range(i + 1, len(es)):
            _, c, d = es[j]
            if len({a, b, c, d}) < 4:
                continue
            if not any(G.has_edge_between(p, q)
                       for p in (a, b) for q in (c, d)):
                return False
    return True


def four_cycles_containing(G: Graph, edge: str) -> list:
    """All 4-cycles through the edge, as edge-label tuples starting with it."""
    a, b = G.ends(edge)
    found = set()
    for lab_bc, c in G.neighbors(b):
        if c == a:
            continue
        for lab_cd, d in G.neighbors(c):
            if d in (a, b):
                continue
            if G.has_edge_between(d, a):
                cyc = (edge, lab_bc, lab_cd, G.edge_between(d, a))
                rev = (edge, cyc[3], cyc[2], cyc[1])
                found.add(min(cyc, rev))
    return sorted(found)


def has_four_cycle(G: Graph) -> bool:
    return any(four_cycles_containing(G, label) for label in G.edge_labels)
