"""The edge-splitting framework for toric ideals with a square-free
lexicographic degeneration.

Fix the lexicographic order e_1 > e_2 > ... > e_n given by the edge
labelling, and assume the initial ideal of the toric ideal under it is
square-free.  Splitting the first k edges into two disjoint sets E and F
yields the ideal

    I^G_{E,F} = I_{G minus the first k edges} + M_{E,F},

where M_{E,F} is generated by the monomials obtained from universal-basis
elements whose lead term involves some E-edge and no F-edge, by deleting
the E-part of the lead.  These ideals form a binary tree: the initial-form
ideal of I^G_{E,F} at y = e_{k+1} decomposes into the branch that moves
e_{k+1} into E (the saturated initial-form side) and the branch that
moves it into F (the deletion side), and at full depth every ideal is the
zero or unit ideal.  Verifying that every node decomposes this way, that
full-depth leaves are trivial, and that every node is equidimensional
certifies the toric ideal decomposable.

All three statements are checked computationally node by node; nothing is
assumed.  When the universal basis is quadratic the equidimensionality
check always succeeds structurally (every node ideal is a subgraph toric
ideal plus variables), and ``quadratic_pipeline`` turns the tree walk
into a full replayable decomposability certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra import Order, Ring, initial_term, lex_order, mono_is_squarefree
from .components import UnmixednessEvidence, unmixedness_evidence
from .graphs import Graph, universal_groebner_basis
from .groebner import (
    Ideal, contract, ideal_equal, initial_ideal, minimal_monomial_generators,
)
from .gvd import GvdCertificate, check_decomposition, cn_split
from .util import Budget

__all__ = [
    "EFState", "EFNode", "EFNodeCheck", "EFReport", "ef_ideal", "ef_tree",
    "tree_nodes", "squarefree_lex_initial", "check_statements_ABC",
    "quadratic_pipeline",
]

QUADRATIC_CITED_DETAIL = ("Cohen-Macaulay for edge-split ideals of graphs "
                          "with quadratic universal bases (cited, not "
                          "computed)")


def label_order(ring: Ring) -> Order:
    """Lex with earlier-labelled edges greater: e_1 > e_2 > ... > e_n."""
    return lex_order(ring, list(ring.names))


def squarefree_lex_initial(G: Graph) -> bool:
    """Whether the label-order initial ideal of the toric ideal is
    square-free (the framework's standing hypothesis)."""
    ring = G.edge_ring()
    order = label_order(ring)
    leads = [initial_term(order, g).mono for g in universal_groebner_basis(G)]
    return all(mono_is_squarefree(m)
               for m in minimal_monomial_generators(leads))


# ---------------------------------------------------------------------------
# The ideals I^G_{E,F}.

@dataclass(frozen=True)
class EFState:
    """One node ideal: the first k edges split as E (lead-collapsed) and F
    (deleted), with the resulting ideal in the full edge ring."""

    E: tuple
    F: tuple
    ideal: Ideal

    @property
    def k(self) -> int:
        return len(self.E) + len(self.F)

    def trivial(self) -> Optional[str]:
        rgb = self.ideal.groebner()
        if not rgb:
            return "zero"
        if len(rgb) == 1 and rgb[0].is_constant():
            return "unit"
        return None

    def to_json_dict(self) -> dict:
        return {"E": list(self.E), "F": list(self.F),
                "generators": [str(g) for g in self.ideal.gens]}


def _validate_sets(G: Graph, E, F) -> tuple:
    E, F = tuple(E), tuple(F)
    merged = set(E) | set(F)
    if len(merged) != len(E) + len(F):
        raise ValueError("E and F are not disjoint")
    k = len(merged)
    prefix = G.edge_labels[:k]
    if merged != set(prefix):
        raise ValueError("E and F must partition the first k edge labels")
    in_e = set(E)
    return (tuple(l for l in prefix if l in in_e),
            tuple(l for l in prefix if l not in in_e))


def _shadow_monomials(G: Graph, E: tuple, F: tuple, ring: Ring) -> list:
    """Exponent tuples of the M_{E,F} generators: for each universal-basis
    element whose lead involves an E-edge and no F-edge, the lead with its
    E-part deleted (minimal ones only)."""
    order = label_order(G.edge_ring())
    eidx = {G.edge_ring().vidx(e) for e in E}
    fidx = {G.edge_ring().vidx(f) for f in F}
    found = []
    for g in universal_groebner_basis(G):
        lead = initial_term(order, g).mono
        if any(lead[i] for i in fidx) or not any(lead[i] for i in eidx):
            continue
        found.append(tuple(0 if i in eidx else e for i, e in enumerate(lead)))
    return minimal_monomial_generators(found)


def _natural_generators(G: Graph, E: tuple, F: tuple, ring: Ring) -> list:
    """Universal basis of the k-edges-deleted subgraph plus the shadow
    monomials, as elements of ``ring`` (which they never leave)."""
    deleted = G.delete_edges(E + F)
    gens = [g.rename(ring) for g in universal_groebner_basis(deleted)]
    full = G.edge_ring()
    for mono in _shadow_monomials(G, E, F, ring):
        gens.append(ring.monomial({full.names[i]: e
                                   for i, e in enumerate(mono) if e}))
    return gens


def ef_ideal(G: Graph, E, F) -> EFState:
    """The node ideal for the split (E, F), with natural generators.

    Requires the square-free label-order degeneration; raises otherwise.
    """
    if not squarefree_lex_initial(G):
        raise ValueError("label-order initial ideal is not square-free")
    E, F = _validate_sets(G, E, F)
    ring = G.edge_ring()
    return EFState(E, F, Ideal(ring, _natural_generators(G, E, F, ring)))


# ---------------------------------------------------------------------------
# The split tree.

class EFNode:
    """A lazily expanded tree node; children move the next edge into E
    (``child_c``, the saturated initial-form side) or into F (``child_n``,
    the deletion side).  Trivial and depth-capped nodes are leaves."""

    __slots__ = ("state", "_graph", "_depth", "_memo", "_children")

    def __init__(self, state: EFState, graph: Graph, depth: int, memo: dict):
        self.state = state
        self._graph = graph
        self._depth = depth
        self._memo = memo
        self._children = ()

    @property
    def split_edge(self) -> Optional[str]:
        k = self.state.k
        if k >= min(self._depth, len(self._graph.edges)):
            return None
        return self._graph.edge_labels[k]

    def children(self) -> Optional[tuple]:
        """(E-child, F-child), or None at leaves."""
        if self._children != ():
            return self._children
        y = self.split_edge
        if y is None or self.state.trivial() is not None:
            self._children = None
            return None
        self._children = (
            _tree_node(self._graph, self.state.E + (y,), self.state.F,
                       self._depth, self._memo),
            _tree_node(self._graph, self.state.E, self.state.F + (y,),
                       self._depth, self._memo))
        return self._children

    def to_json_dict(self) -> dict:
        out = self.state.to_json_dict()
        trivial = self.state.trivial()
        if trivial is not None:
            out["trivial"] = trivial
        kids = self.children()
        if kids is not None:
            out["split_edge"] = self.split_edge
            out["child_c"], out["child_n"] = (k.to_json_dict() for k in kids)
        return out


def _tree_node(G: Graph, E: tuple, F: tuple, depth: int, memo: dict) -> EFNode:
    key = (E, F)
    node = memo.get(key)
    if node is None:
        ring = G.edge_ring()
        state = EFState(E, F, Ideal(ring, _natural_generators(G, E, F, ring)))
        node = EFNode(state, G, depth, memo)
        memo[key] = node
    return node


def ef_tree(G: Graph, depth: Optional[int] = None) -> EFNode:
    """Root of the split tree, expanded on demand down to ``depth`` edges
    (default: all of them) and pruned at trivial nodes."""
    if not squarefree_lex_initial(G):
        raise ValueError("label-order initial ideal is not square-free")
    if depth is None:
        depth = len(G.edges)
    return _tree_node(G, (), (), depth, {})


def tree_nodes(root: EFNode) -> list:
    """All nodes in deterministic depth-first order, E-child first."""
    out, stack = [], [root]
    while stack:
        node = stack.pop()
        out.append(node)
        kids = node.children()
        if kids is not None:
            stack.extend(reversed(kids))
    return out


# ---------------------------------------------------------------------------
# Statement checks.

@dataclass(frozen=True)
class EFNodeCheck:
    """Per-node verification: the natural generators form a Groebner basis
    with square-free initial ideal, the split at the next edge holds with
    branches matching the two child ideals, and the node ideal carries
    equidimensionality evidence."""

    E: tuple
    F: tuple
    trivial: Optional[str]
    groebner_ok: bool
    split_ok: Optional[bool]
    evidence: Optional[UnmixednessEvidence]

    def to_json_dict(self) -> dict:
        return {"E": list(self.E), "F": list(self.F), "trivial": self.trivial,
                "groebner_ok": self.groebner_ok, "split_ok": self.split_ok,
                "evidence": (None if self.evidence is None
                             else self.evidence.to_json_dict())}


@dataclass(frozen=True)
class EFReport:
    """Aggregated statement checks over the whole split tree.

    ``statement_a``: every nontrivial node decomposes at the next edge
    with branches equal to its children.  ``statement_b``: every maximal
    leaf is trivial.  ``statement_c``: "verified" when every node's
    equidimensionality evidence is conclusive, "refuted" when some node
    has components of different dimensions, else "inconclusive".  The
    conclusion is "decomposability-verified" only when everything is
    conclusive, since the three statements together certify the toric
    ideal decomposable.
    """

    square_free_lex: bool
    checks: tuple
    statement_a: bool
    statement_b: bool
    statement_c: str
    conclusion: str

    def to_json_dict(self) -> dict:
        return {"square_free_lex": self.square_free_lex,
                "checks": [c.to_json_dict() for c in self.checks],
                "statement_a": self.statement_a,
                "statement_b": self.statement_b,
                "statement_c": self.statement_c,
                "conclusion": self.conclusion}


def _groebner_property(I: Ideal, order: Order) -> bool:
    """The given generators already form a Groebner basis whose initial
    ideal is square-free."""
    leads = [initial_term(order, g).mono for g in I.gens if not g.is_zero()]
    if not all(mono_is_squarefree(m)
               for m in minimal_monomial_generators(leads)):
        return False
    ring = I.ring
    lead_ideal = Ideal(ring, [ring.monomial(
        {ring.names[i]: e for i, e in enumerate(m) if e}) for m in leads])
    return ideal_equal(lead_ideal, initial_ideal(order, I))


def check_statements_ABC(G: Graph, budget: Optional[Budget] = None) -> EFReport:
    """Walk the full split tree and verify the three framework statements.

    Unlike ``ef_tree`` this does not raise on a non-square-free label
    order: the failed hypothesis is itself the report.
    """
    if budget is None:
        budget = Budget(None)
    if not squarefree_lex_initial(G):
        return EFReport(False, (), False, False, "inconclusive",
                        "hypothesis-not-met")
    root = ef_tree(G)
    order = label_order(G.edge_ring())
    checks = []
    a_ok = b_ok = True
    c_refuted = c_inconclusive = False
    for node in tree_nodes(root):
        if budget.exceeded():
            return EFReport(True, tuple(checks), a_ok, b_ok, "inconclusive",
                            "inconclusive")
        state = node.state
        trivial = state.trivial()
        groebner_ok = trivial is not None or _groebner_property(state.ideal,
                                                                order)
        split_ok = None
        kids = node.children()
        if kids is not None:
            split = cn_split(state.ideal, node.split_edge)
            split_ok = (check_decomposition(state.ideal, split).holds
                        and ideal_equal(split.C, kids[0].state.ideal)
                        and ideal_equal(split.N, kids[1].state.ideal))
            a_ok = a_ok and split_ok and groebner_ok
        elif trivial is None:
            b_ok = False
        evidence = None
        if trivial is None:
            evidence = unmixedness_evidence(state.ideal,
                                            G.delete_edges(state.E + state.F))
            if evidence.refuted:
                c_refuted = True
            elif not evidence.conclusive_unmixed:
                c_inconclusive = True
        checks.append(EFNodeCheck(state.E, state.F, trivial, groebner_ok,
                                  split_ok, evidence))
        a_ok = a_ok and groebner_ok
    statement_c = ("refuted" if c_refuted
                   else "inconclusive" if c_inconclusive else "verified")
    if c_refuted:
        conclusion = "equidimensionality-refuted"
    elif a_ok and b_ok and statement_c == "verified":
        conclusion = "decomposability-verified"
    else:
        conclusion = "inconclusive"
    return EFReport(True, tuple(checks), a_ok, b_ok, statement_c, conclusion)


# ---------------------------------------------------------------------------
# The quadratic pipeline.

def quadratic_pipeline(G: Graph, budget: Optional[Budget] = None) -> GvdCertificate:
    """Certify decomposability when the universal basis is quadratic.

    Quadratic universal bases are doubly square-free (degree-two lead
    terms of primitive walks are four-cycles), so the framework hypothesis
    holds for free and every node ideal collapses to variables plus the
    toric ideal of a smaller subgraph — which is prime, hence unmixed.
    The tree walk is emitted as a replayable decomposition certificate;
    any verification failure yields an inconclusive verdict, never a
    silently assumed step.
    """
    basis = universal_groebner_basis(G)
    if any(g.total_degree() != 2 for g in basis):
        raise ValueError("universal basis is not quadratic")
    for g in basis:
        if not all(mono_is_squarefree(m) for m in g.terms):
            raise AssertionError("quadratic universal basis is not doubly "
                                 "square-free: %s" % g)
    if budget is None:
        budget = Budget(None)
    return _quadratic_node(G, (), (), G.edge_ring(), budget, {})


def _quadratic_node(G: Graph, E: tuple, F: tuple, ring: Ring,
                    budget: Budget, memo: dict) -> GvdCertificate:
    if budget.exceeded():
        return GvdCertificate("inconclusive", "inconclusive", ring.names,
                              reason="budget exhausted")
    key = (E, F)
    hit = memo.get(key)
    if hit is not None:
        return hit
    gens = _natural_generators(G, E, F, ring)
    I = Ideal(ring, gens)
    rgb = I.groebner()
    if not rgb:
        cert = GvdCertificate("zero", "gvd", ring.names,
                              unmixedness=UnmixednessEvidence(
                                  "zero", "the zero ideal is prime"))
        memo[key] = cert
        return cert
    if len(rgb) == 1 and rgb[0].is_constant():
        cert = GvdCertificate("unit", "gvd", ring.names,
                              unmixedness=UnmixednessEvidence(
                                  "unit", "the unit ideal is vacuously unmixed"))
        memo[key] = cert
        return cert

    # quadratic collapse: shadow monomials are single variables, and the
    # node ideal equals those variables plus the toric ideal of the graph
    # without them
    shadow = [g for g in gens if g.is_monomial()]
    if not all(g.is_variable() for g in shadow):
        raise AssertionError("quadratic shadow monomials must be variables")
    var_names = [ring.names[next(i for i, e in enumerate(next(iter(g.terms)))
                                 if e)] for g in shadow]
    smaller = G.delete_edges(E + F + tuple(var_names))
    collapsed = [g.rename(ring) for g in universal_groebner_basis(smaller)]
    collapsed += [ring.var(v) for v in var_names]
    collapsed_ideal = Ideal(ring, collapsed)
    if not ideal_equal(I, collapsed_ideal):
        cert = GvdCertificate("inconclusive", "inconclusive", ring.names,
                              reason="node ideal did not collapse to "
                                     "variables plus a subgraph toric ideal")
        return cert
    # evidence is evaluated on the collapsed generators, whose shape the
    # prime recognizer handles directly
    I = collapsed_ideal

    if all(g.is_variable() for g in rgb):
        idx = sorted(next(i for i, e in enumerate(next(iter(g.terms))) if e)
                     for g in rgb)
        cert = GvdCertificate(
            "variables", "gvd", ring.names,
            unmixedness=UnmixednessEvidence(
                "variables", "generated by variables, hence prime"),
            variables=tuple(ring.names[i] for i in idx))
        memo[key] = cert
        return cert

    context = G.delete_edges(E + F)
    ev = unmixedness_evidence(I, context)
    if ev.refuted:
        cert = GvdCertificate("not-gvd", "not-gvd", ring.names, unmixedness=ev,
                              reason="unmixedness refuted")
        memo[key] = cert
        return cert
    if not ev.conclusive_unmixed:
        ev = UnmixednessEvidence("cited", QUADRATIC_CITED_DETAIL)

    yname = G.edge_labels[len(E) + len(F)]
    split = cn_split(I, yname)
    check = check_decomposition(I, split)
    if not check.holds:
        return GvdCertificate("inconclusive", "inconclusive", ring.names,
                              reason="decomposition identity failed at %s"
                                     % yname)
    sub = ring.without(yname)
    c_ideal = Ideal(sub, _natural_generators(G, E + (yname,), F, sub))
    n_ideal = Ideal(sub, _natural_generators(G, E, F + (yname,), sub))
    if not (ideal_equal(contract(split.C, yname), c_ideal)
            and ideal_equal(contract(split.N, yname), n_ideal)):
        return GvdCertificate("inconclusive", "inconclusive", ring.names,
                              reason="split branches do not match the "
                                     "child ideals at %s" % yname)
    cert_c = _quadratic_node(G, E + (yname,), F, sub, budget, memo)
    cert_n = _quadratic_node(G, E, F + (yname,), sub, budget, memo)
    if {cert_c.verdict, cert_n.verdict} == {"gvd"}:
        cert = GvdCertificate("decomposition", "gvd", ring.names,
                              unmixedness=ev, y=yname,
                              order=split.order.to_dict(),
                              degenerate=check.degenerate,
                              child_c=cert_c, child_n=cert_n)
        memo[key] = cert
        return cert
    return GvdCertificate("inconclusive", "inconclusive", ring.names,
                          reason="a branch at %s did not certify (C: %s, N: %s)"
                                 % (yname, cert_c.verdict, cert_n.verdict))
