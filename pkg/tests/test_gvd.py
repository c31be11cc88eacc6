"""The C/N split, the decomposition-identity check, and the recursive
decomposability certifier, including refutations and certificate replay."""

import pytest

from gvdlab.algebra import Ring, parse_poly, y_order
from gvdlab.graphs import Graph, complete_graph, cycle_graph, toric_ideal
from gvdlab.groebner import Ideal, contract, ideal_equal
from gvdlab.gvd import (
    check_decomposition, cn_split, gvd_disjoint_union, initial_y_ideal,
    is_gvd, replay_certificate,
)
from gvdlab.util import Budget

from fixtures import (
    TWO_K4_C_E2, TWO_K4_C_E5_OF_K, TWO_K4_C_E8_OF_J, TWO_K4_C_E11_OF_M,
    TWO_K4_C_E12_OF_L, TWO_K4_IN_E5_OF_K, TWO_K4_IN_E11_OF_M,
    TWO_K4_IN_E12_OF_L, TWO_K4_N_E2, TWO_K4_N_E8_OF_J, TWO_K4_N_E11_OF_M,
    TWO_K4_N_E12_OF_L, two_k4_sharing_vertex, two_triangles_bridged,
)

XYZW = Ring(["x", "y", "z", "w"])


def I(*texts, ring=XYZW):
    return Ideal(ring, [parse_poly(ring, t) for t in texts])


def equal_to_display(ideal, texts):
    ring = ideal.ring
    return ideal_equal(ideal, Ideal(ring, [parse_poly(ring, t) for t in texts]))


# ---------------------------------------------------------------------------
# The C/N split.

def test_split_of_principal_multiple_of_y():
    split = cn_split(I("y*x - y*z"), "y")
    assert split.square_free_in_y
    assert ideal_equal(split.C, I("x - z"))
    assert split.N.is_zero_ideal()


def test_split_at_absent_variable_repeats_the_ideal():
    J = I("x*z - w^2")
    split = cn_split(J, "y")
    assert ideal_equal(split.C, J)
    assert ideal_equal(split.N, J)
    assert split.square_free_in_y


def test_split_flags_square_exponent():
    split = cn_split(I("x^2 - z*w"), "x")
    assert not split.square_free_in_y
    assert split.C.is_unit_ideal()


def test_split_n_is_contained_in_c():
    G = two_k4_sharing_vertex()
    split = cn_split(toric_ideal(G), "e2")
    for g in split.N.gens:
        assert split.C.contains(g)


def test_split_of_benchmark_at_e2_matches_displays():
    G = two_k4_sharing_vertex()
    split = cn_split(toric_ideal(G), "e2")
    assert split.square_free_in_y
    assert equal_to_display(split.C, TWO_K4_C_E2)
    assert equal_to_display(split.N, TWO_K4_N_E2)


def test_split_is_order_independent_for_the_benchmark():
    # Recompute the split with the ring variables stored in reverse order so
    # every tie-break differs; C and N must come out the same.
    G = two_k4_sharing_vertex()
    ring = G.edge_ring()
    rev = Ring(tuple(reversed(ring.names)))
    J = toric_ideal(G).rename(rev)
    split = cn_split(J, "e2")
    assert equal_to_display(split.C.rename(ring), TWO_K4_C_E2)
    assert equal_to_display(split.N.rename(ring), TWO_K4_N_E2)


# ---------------------------------------------------------------------------
# The identity check.

def test_check_holds_for_benchmark_at_e2():
    G = two_k4_sharing_vertex()
    J = toric_ideal(G)
    split = cn_split(J, "e2")
    check = check_decomposition(J, split)
    assert check.holds
    assert not check.degenerate


def test_check_fails_for_square_generator():
    # in_y(<y^2>) = <y^2> while C:(N + <y>) intersect to <y>, so the identity
    # is honestly false even though C is the unit ideal.
    R1 = Ring(["e4"])
    J = Ideal(R1, [parse_poly(R1, "e4^2")])
    split = cn_split(J, "e4")
    check = check_decomposition(J, split)
    assert not check.holds
    assert check.degenerate


def test_check_degenerate_at_absent_variable():
    J = I("x*z - w^2")
    split = cn_split(J, "y")
    check = check_decomposition(J, split)
    assert check.holds
    assert check.degenerate


def test_initial_y_ideal_of_principal():
    J = I("y*x - z*w")
    assert ideal_equal(initial_y_ideal(J, "y"), I("y*x"))


# ---------------------------------------------------------------------------
# The witness chain of C/N displays inside the benchmark ideal.  Each split
# is checked against the frozen display; the chain is meaningful independent
# of any decomposability verdicts.

def chain_rings_and_ideals():
    G = two_k4_sharing_vertex()
    I_G = toric_ideal(G)
    split2 = cn_split(I_G, "e2")
    J = contract(split2.C, "e2")
    K = contract(split2.N, "e2")
    return G, J, K


def test_chain_step_j_at_e8():
    _, J, _ = chain_rings_and_ideals()
    split = cn_split(J, "e8")
    assert equal_to_display(split.C, TWO_K4_C_E8_OF_J)
    assert equal_to_display(split.N, TWO_K4_N_E8_OF_J)


def test_chain_step_k_at_e5():
    _, _, K = chain_rings_and_ideals()
    assert equal_to_display(initial_y_ideal(K, "e5"), TWO_K4_IN_E5_OF_K)
    split = cn_split(K, "e5")
    assert equal_to_display(split.C, TWO_K4_C_E5_OF_K)
    # N is the toric ideal of the graph without e2 and e5.
    G = two_k4_sharing_vertex()
    sub = G.delete_edges(["e2", "e5"])
    N = contract(split.N, "e5")
    assert ideal_equal(N, toric_ideal(sub).rename(N.ring))


def test_chain_steps_l_and_m():
    _, _, K = chain_rings_and_ideals()
    L = contract(cn_split(K, "e5").C, "e5")
    assert equal_to_display(initial_y_ideal(L, "e12"), TWO_K4_IN_E12_OF_L)
    split12 = cn_split(L, "e12")
    assert equal_to_display(split12.N, TWO_K4_N_E12_OF_L)
    assert equal_to_display(split12.C, TWO_K4_C_E12_OF_L)
    M = contract(split12.N, "e12")
    assert equal_to_display(initial_y_ideal(M, "e11"), TWO_K4_IN_E11_OF_M)
    split11 = cn_split(M, "e11")
    assert equal_to_display(split11.N, TWO_K4_N_E11_OF_M)
    assert equal_to_display(split11.C, TWO_K4_C_E11_OF_M)


def test_contracted_n_is_toric_ideal_of_smaller_graph():
    # Removing the decomposed edge from the graph realizes the N side, for
    # every edge of a couple of small graphs.
    for G in [complete_graph(4), cycle_graph(6)]:
        J = toric_ideal(G)
        for e in G.edge_labels:
            N = contract(cn_split(J, e).N, e)
            assert ideal_equal(N, toric_ideal(G.delete_edges([e])).rename(N.ring))


# ---------------------------------------------------------------------------
# The certifier: base cases and one-variable ideals.

def test_gvd_zero_unit_variables():
    assert is_gvd(Ideal.zero(XYZW)).verdict == "gvd"
    assert is_gvd(Ideal.unit(XYZW)).verdict == "gvd"
    cert = is_gvd(I("x", "z"))
    assert cert.verdict == "gvd"
    assert cert.kind == "variables"
    assert cert.variables == ("x", "z")


def test_gvd_univariate_linear_only():
    # In one variable exactly the linear ideals are decomposable.
    R1 = Ring(["x"])
    lin = Ideal(R1, [parse_poly(R1, "2*x + 3")])
    assert is_gvd(lin).verdict == "gvd"
    for text in ["x^2", "x^2 + x", "x^2 + 1"]:
        cert = is_gvd(Ideal(R1, [parse_poly(R1, text)]))
        assert cert.verdict == "not-gvd"
        assert "square-free" in dict(cert.failures)["x"]


def test_gvd_principal_with_square_free_monomials():
    cert = is_gvd(I("x*y - z*w + w"))
    assert cert.verdict == "gvd"
    assert replay_certificate(I("x*y - z*w + w"), cert)


def test_gvd_square_free_monomial_ideals():
    assert is_gvd(I("x*y", "x*z", "y*z")).verdict == "gvd"
    # <xy, xz> has minimal primes of dimensions 3 and 2, so not unmixed.
    cert = is_gvd(I("x*y", "x*z"))
    assert cert.verdict == "not-gvd"
    assert cert.unmixedness.refuted


def test_gvd_composes_over_disjoint_supports():
    cert = is_gvd(I("x*y", "z*w"))
    assert cert.verdict == "gvd"
    assert is_gvd(I("x^2", "z*w")).verdict == "not-gvd"


def test_gvd_collapses_absent_variables():
    # <xy> in three variables: the step at the absent z is degenerate and
    # the verdict is that of the contraction.
    R3 = Ring(["x", "y", "z"])
    pos = is_gvd(Ideal(R3, [parse_poly(R3, "x*y")]))
    assert pos.verdict == "gvd"
    R2 = Ring(["x", "y"])
    neg = is_gvd(Ideal(R2, [parse_poly(R2, "x^2")]))
    assert neg.verdict == "not-gvd"
    assert "rules out every variable" in dict(neg.failures)["y"]


def test_gvd_substituted_bridged_triangles_ideal():
    # Replacing the squared edge by a fresh variable turns the bridged
    # triangles generator into a decomposable principal ideal.
    R = Ring(["e1", "e2", "e3", "y", "e5", "e6", "e7", "e8"])
    J = Ideal(R, [parse_poly(R, "y*e1*e6*e7 - e2*e3*e5^2*e8")])
    assert is_gvd(J).verdict == "gvd"


# ---------------------------------------------------------------------------
# The certifier: refutations.

def test_gvd_refutes_bridged_triangles():
    G = two_triangles_bridged()
    cert = is_gvd(toric_ideal(G), context=G)
    assert cert.verdict == "not-gvd"
    reasons = dict(cert.failures)
    assert set(reasons) == set(G.edge_labels)
    for e in ["e4", "e5"]:
        assert "square-free" in reasons[e]


def test_gvd_refutes_quadratic_block_of_benchmark():
    # <e9*e10 - e7*e12, e7*e9> fails at every variable: two variables break
    # square-freeness of the reduced basis, the other two lead to a branch
    # containing a square.
    R = Ring(["e7", "e9", "e10", "e12"])
    F2 = Ideal(R, [parse_poly(R, "e9*e10 - e7*e12"), parse_poly(R, "e7*e9")])
    cert = is_gvd(F2)
    assert cert.verdict == "not-gvd"
    assert set(dict(cert.failures)) == {"e7", "e9", "e10", "e12"}


def test_gvd_refutes_benchmark_c_side():
    G = two_k4_sharing_vertex()
    sub = G.delete_edges(["e2"])
    ring = Ring([n for n in G.edge_labels if n != "e2"])
    J = Ideal(ring, [parse_poly(ring, t) for t in TWO_K4_C_E2])
    cert = is_gvd(J, context=sub)
    assert cert.verdict == "not-gvd"
    assert replay_certificate(J, cert, context=sub)


def test_gvd_certifies_benchmark_c_side_at_e3():
    # The C-branch at e3 of the benchmark ideal is decomposable, and its
    # certificate replays.
    G = two_k4_sharing_vertex()
    J = toric_ideal(G)
    C3 = contract(cn_split(J, "e3").C, "e3")
    ctx = G.delete_edges(["e3"])
    cert = is_gvd(C3, context=ctx)
    assert cert.verdict == "gvd"
    assert replay_certificate(C3, cert, context=ctx)


# ---------------------------------------------------------------------------
# Even cycles, unions, budgets, memoization.

def test_gvd_even_cycles():
    for n in [4, 6, 8]:
        G = cycle_graph(n)
        cert = is_gvd(toric_ideal(G), context=G)
        assert cert.verdict == "gvd"


def test_gvd_disjoint_union_combines_verdicts():
    both = gvd_disjoint_union(cycle_graph(4), cycle_graph(6))
    assert both.kind == "disjoint-union"
    assert both.verdict == "gvd"
    mixed = gvd_disjoint_union(cycle_graph(4), two_triangles_bridged())
    assert mixed.verdict == "not-gvd"


def test_gvd_budget_exhaustion_is_inconclusive():
    G = two_k4_sharing_vertex()
    cert = is_gvd(toric_ideal(G), context=G, budget=Budget(0.0))
    assert cert.verdict == "inconclusive"
    assert "budget" in cert.reason


def test_gvd_memo_is_shared_across_renamings():
    # Same cycle, same vertices, re-labelled edges: the second call must be
    # served from the memo with the names mapped over.
    verts = ["x1", "x2", "x3", "x4"]
    G1 = Graph(verts, [("f1", "x1", "x2"), ("f2", "x2", "x3"),
                       ("f3", "x3", "x4"), ("f4", "x4", "x1")])
    G2 = Graph(verts, [("h1", "x1", "x2"), ("h2", "x2", "x3"),
                       ("h3", "x3", "x4"), ("h4", "x4", "x1")])
    memo = {}
    first = is_gvd(toric_ideal(G1), context=G1, memo=memo)
    assert first.verdict == "gvd"
    filled = len(memo)
    second = is_gvd(toric_ideal(G2), context=G2, memo=memo)
    assert second.verdict == "gvd"
    assert len(memo) == filled
    assert second.ring_names == ("h1", "h2", "h3", "h4")


# ---------------------------------------------------------------------------
# Replay.

def test_replay_rejects_wrong_ring():
    cert = is_gvd(I("x*y", "z*w"))
    other = Ring(["a", "b", "c", "d"])
    assert not replay_certificate(Ideal(other, [parse_poly(other, "a*b")]), cert)


def test_replay_rejects_tampered_certificate():
    G = cycle_graph(4)
    J = toric_ideal(G)
    cert = is_gvd(J, context=G)
    assert cert.verdict == "gvd"
    assert replay_certificate(J, cert, context=G)
    flipped = cert.rename({})  # deep copy via identity rename
    object.__setattr__(flipped, "degenerate", not cert.degenerate)
    assert not replay_certificate(J, flipped, context=G)


def test_replay_of_negative_certificate_reruns_the_engine():
    R1 = Ring(["x"])
    J = Ideal(R1, [parse_poly(R1, "x^2")])
    cert = is_gvd(J)
    assert cert.verdict == "not-gvd"
    assert replay_certificate(J, cert)
