"""Tests for the glicci sufficient-condition checks and order sampling."""

import json

from gvdlab.algebra import lex_order
from gvdlab.glicci import (
    find_even_cycle_gluings,
    glicci_checks,
    sample_initial_ideals,
    squarefree_order_search,
)
from gvdlab.graphs import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    glue_even_cycle,
    path_graph,
    toric_ideal,
)
from gvdlab.groebner import ideal_equal
from gvdlab.util import Budget, seeded_rng

from fixtures import two_k4_sharing_vertex

C4 = cycle_graph(4)
C5 = cycle_graph(5)
K4 = complete_graph(4)
K33 = complete_bipartite(3, 3)
TWO_K2 = Graph(["x1", "x2", "x3", "x4"],
               [("e1", "x1", "x2"), ("e2", "x3", "x4")])
CHAIN, CHAIN_F = glue_even_cycle(C4, "e1", 4)


# -- gluing structure detection ----------------------------------------------

def test_gluings_of_a_plain_cycle():
    # Every edge of C4 closes an even cycle with the remaining degree-two path.
    assert find_even_cycle_gluings(C4) == [
        ("e1", ("e2", "e3", "e4")),
        ("e2", ("e1", "e4", "e3")),
        ("e3", ("e2", "e1", "e4")),
        ("e4", ("e1", "e2", "e3")),
    ]


def test_gluings_of_a_glued_chain():
    # Both four-cycles of the chain hang off the shared edge e1.
    assert find_even_cycle_gluings(CHAIN) == [
        ("e1", ("e2", "e3", "e4")),
        ("e1", ("f1", "f2", "f3")),
    ]


def test_no_gluings_without_degree_two_cycle_vertices():
    assert find_even_cycle_gluings(K4) == []
    assert find_even_cycle_gluings(complete_bipartite(2, 3)) == []
    assert find_even_cycle_gluings(path_graph(5)) == []


def test_odd_cycles_are_rejected_by_parity():
    assert find_even_cycle_gluings(C5) == []


# -- square-free order search -------------------------------------------------

def test_search_hits_on_the_natural_order():
    rng = seeded_rng(0, "test-search")
    names = squarefree_order_search(toric_ideal(C4), 5, rng)
    assert names == ("e1", "e2", "e3", "e4")


def test_search_hoists_the_requested_first_variable():
    rng = seeded_rng(0, "test-search")
    names = squarefree_order_search(toric_ideal(K4), 5, rng, first="e4")
    assert names is not None
    assert names[0] == "e4"


def test_search_misses_on_the_shared_vertex_benchmark():
    I = toric_ideal(two_k4_sharing_vertex())
    rng = seeded_rng(0, "test-search")
    assert squarefree_order_search(I, 20, rng) is None


def test_search_respects_the_budget():
    I = toric_ideal(C4)
    rng = seeded_rng(0, "test-search")
    assert squarefree_order_search(I, 5, rng, budget=Budget(0.0)) is None


# -- order sampling ------------------------------------------------------------

def test_sampling_is_seed_deterministic():
    I = toric_ideal(C4)
    a = sample_initial_ideals(I, 12, seed=7)
    b = sample_initial_ideals(I, 12, seed=7)
    assert a.to_json_dict() == b.to_json_dict()
    assert a.first_hit is not None


def test_sampling_counts_every_hit_on_a_single_binomial():
    # Both monomials of the C4 cycle binomial are square-free, so every lex
    # order yields a square-free initial ideal.
    rep = sample_initial_ideals(toric_ideal(C4), 10, seed=1)
    assert rep.requested == rep.tried == rep.hits == 10


def test_sampling_finds_no_hits_on_the_shared_vertex_benchmark():
    rep = sample_initial_ideals(toric_ideal(two_k4_sharing_vertex()), 30,
                                seed=42)
    assert rep.hits == 0
    assert rep.first_hit is None
    assert rep.tried == 30


def test_sampling_stops_when_the_budget_is_exhausted():
    rep = sample_initial_ideals(toric_ideal(C4), 10, seed=1, budget=Budget(0.0))
    assert rep.tried == 0
    assert rep.requested == 10


# -- the three checks -----------------------------------------------------------

def _check(report, name):
    matches = [c for c in report.checks if c.name == name]
    assert len(matches) == 1
    return matches[0]


def test_complete_graph_fires_the_gap_free_check():
    report = glicci_checks(K4)
    assert report.conclusion == "glicci-certified-by-theorem"
    gap = _check(report, "gap-free-with-four-cycle")
    assert gap.fired
    assert gap.witness == {"four_cycle": ["e1", "e2", "e6", "e5"]}
    four = _check(report, "four-cycle-square-free-order")
    assert four.fired
    assert four.witness["edge"] == "e1"
    assert four.witness["order"][0] == "e1"
    assert not _check(report, "even-cycle-gluing").fired


def test_glued_chain_fires_the_gluing_check():
    report = glicci_checks(CHAIN)
    assert report.conclusion == "glicci-certified-by-theorem"
    glue = _check(report, "even-cycle-gluing")
    assert glue.fired
    assert glue.witness["edge"] == "e1"
    assert glue.witness["path"] == ["e2", "e3", "e4"]
    assert glue.witness["base_edges"] == ["e1", "f1", "f2", "f3"]
    assert not _check(report, "gap-free-with-four-cycle").fired


def test_gluing_structure_reconstructs_the_ideal_sum():
    # The chain is also a gluing of the f-cycle onto the original square, and
    # the cycle binomial returned at build time completes the base ideal.
    assert ("e1", ("f1", "f2", "f3")) in find_even_cycle_gluings(CHAIN)
    base = CHAIN.delete_edges(["f1", "f2", "f3"]).delete_vertices(["w1", "w2"])
    assert base.edge_labels == C4.edge_labels
    ring = CHAIN.edge_ring()
    glued = toric_ideal(base).rename(ring).with_extra([CHAIN_F])
    assert ideal_equal(toric_ideal(CHAIN), glued)


def test_two_disjoint_edges_fire_nothing():
    report = glicci_checks(TWO_K2)
    assert report.conclusion == "hypotheses-not-met"
    assert [c.fired for c in report.checks] == [False, False, False]
    assert _check(report, "even-cycle-gluing").witness == {
        "reason": "no even-cycle gluing structure found"}
    assert _check(report, "four-cycle-square-free-order").witness == {
        "reason": "no edge lies on a 4-cycle"}
    assert _check(report, "gap-free-with-four-cycle").witness == {
        "reason": "the graph is not gap-free; the graph has no 4-cycle"}


def test_a_single_even_cycle_is_a_gluing_over_one_edge():
    report = glicci_checks(C4)
    glue = _check(report, "even-cycle-gluing")
    assert glue.fired
    assert glue.witness["base_edges"] == ["e1"]


def test_gap_free_without_a_four_cycle_does_not_fire():
    report = glicci_checks(C5)
    gap = _check(report, "gap-free-with-four-cycle")
    assert not gap.fired
    assert gap.witness == {"reason": "the graph has no 4-cycle"}
    assert report.conclusion == "hypotheses-not-met"


def test_complete_bipartite_certifies_by_search_and_gap_free():
    report = glicci_checks(K33)
    assert report.conclusion == "glicci-certified-by-theorem"
    assert _check(report, "four-cycle-square-free-order").fired
    assert _check(report, "gap-free-with-four-cycle").fired


def test_checks_report_budget_exhaustion_without_raising():
    report = glicci_checks(K4, budget=Budget(0.0))
    four = _check(report, "four-cycle-square-free-order")
    assert not four.fired
    assert "budget" in four.witness["reason"]
    # The purely combinatorial check needs no budget and still fires.
    assert _check(report, "gap-free-with-four-cycle").fired


def test_reports_serialize_to_json():
    report = glicci_checks(TWO_K2)
    blob = json.dumps(report.to_json_dict(), sort_keys=True)
    data = json.loads(blob)
    assert data["conclusion"] == "hypotheses-not-met"
    assert [c["name"] for c in data["checks"]] == [
        "even-cycle-gluing", "four-cycle-square-free-order",
        "gap-free-with-four-cycle"]


def test_search_results_are_real_initial_ideal_witnesses():
    report = glicci_checks(K33)
    four = _check(report, "four-cycle-square-free-order")
    I = toric_ideal(K33)
    order = lex_order(I.ring, four.witness["order"])
    from gvdlab.algebra import mono_is_squarefree
    from gvdlab.groebner import initial_ideal
    init = initial_ideal(order, I)
    assert all(mono_is_squarefree(next(iter(g.terms))) for g in init.gens)
