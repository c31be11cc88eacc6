"""Benchmark graphs and frozen expected values shared across the test suite."""

from gvdlab.algebra import Ring, parse_poly
from gvdlab.graphs import Graph


def two_k4_sharing_vertex() -> Graph:
    """Two K4's glued at one vertex: 7 vertices, 12 edges."""
    return Graph(
        ["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        [("e1", "x1", "x2"), ("e2", "x1", "x3"), ("e3", "x1", "x4"),
         ("e4", "x2", "x3"), ("e5", "x2", "x4"), ("e6", "x4", "x3"),
         ("e7", "x4", "x5"), ("e8", "x4", "x6"), ("e9", "x4", "x7"),
         ("e10", "x5", "x6"), ("e11", "x5", "x7"), ("e12", "x7", "x6")],
    )


# Minimal generating set of the toric ideal of two_k4_sharing_vertex:
# four quadrics and nine cubics.
TWO_K4_GENERATORS = [
    "e8*e11 - e7*e12",
    "e9*e10 - e7*e12",
    "e2*e5 - e1*e6",
    "e3*e4 - e1*e6",
    "e4*e8*e9 - e5*e6*e12",
    "e1*e8*e9 - e3*e5*e12",
    "e4*e7*e9 - e5*e6*e11",
    "e1*e7*e9 - e3*e5*e11",
    "e4*e7*e8 - e5*e6*e10",
    "e1*e7*e8 - e3*e5*e10",
    "e2*e8*e9 - e3*e6*e12",
    "e2*e7*e9 - e3*e6*e11",
    "e2*e7*e8 - e3*e6*e10",
]

# Reduced lex basis (e2 > e1 > e3 > e4 > ... > e12) of the same ideal.
TWO_K4_LEX_E2_BASIS = [
    "e8*e11 - e7*e12",
    "e9*e10 - e7*e12",
    "e3*e4 - e1*e6",
    "e4*e8*e9 - e5*e6*e12",
    "e1*e8*e9 - e3*e5*e12",
    "e4*e7*e9 - e5*e6*e11",
    "e1*e7*e9 - e3*e5*e11",
    "e4*e7*e8 - e5*e6*e10",
    "e1*e7*e8 - e3*e5*e10",
    "e5*e6*e10*e11 - e4*e7^2*e12",
    "e3*e5*e10*e11 - e1*e7^2*e12",
    "e2*e5 - e1*e6",
    "e2*e8*e9 - e3*e6*e12",
    "e2*e7*e9 - e3*e6*e11",
    "e2*e7*e8 - e3*e6*e10",
    "e2*e7^2*e12 - e3*e6*e10*e11",
]

# The C/N pair at y = e2 for the same ideal.
TWO_K4_C_E2 = [
    "e5",
    "e8*e11 - e7*e12",
    "e9*e10 - e7*e12",
    "e8*e9",
    "e7*e9",
    "e7*e8",
    "e3*e4 - e1*e6",
]

TWO_K4_N_E2 = [
    "e8*e11 - e7*e12",
    "e9*e10 - e7*e12",
    "e3*e4 - e1*e6",
    "e4*e8*e9 - e5*e6*e12",
    "e1*e8*e9 - e3*e5*e12",
    "e4*e7*e9 - e5*e6*e11",
    "e1*e7*e9 - e3*e5*e11",
    "e4*e7*e8 - e5*e6*e10",
    "e1*e7*e8 - e3*e5*e10",
]

# Deeper C/N displays along the witness chain of the same ideal.
# J = C_{e2}; K = N_{e2}; L = C_{e5,K}; M = N_{e12,L}.
TWO_K4_C_E8_OF_J = ["e11", "e9", "e7", "e5", "e3*e4 - e1*e6"]
TWO_K4_N_E8_OF_J = ["e5", "e9*e10 - e7*e12", "e7*e9", "e3*e4 - e1*e6"]
TWO_K4_IN_E5_OF_K = [
    "e8*e11 - e7*e12", "e9*e10 - e7*e12", "e3*e4 - e1*e6",
    "e5*e6*e12", "e3*e5*e12", "e5*e6*e11", "e3*e5*e11",
    "e5*e6*e10", "e3*e5*e10",
]
TWO_K4_IN_E12_OF_L = [
    "e6*e11", "e3*e11", "e9*e10 - e8*e11", "e6*e10", "e3*e10",
    "e3*e4 - e1*e6", "e7*e12", "e6*e12", "e3*e12",
]
TWO_K4_IN_E11_OF_M = [
    "e6*e10", "e3*e10", "e3*e4 - e1*e6", "e8*e11", "e6*e11", "e3*e11",
]
TWO_K4_C_E5_OF_K = [
    "e6*e12", "e3*e12",
    "e8*e11 - e7*e12",
    "e6*e11", "e3*e11",
    "e9*e10 - e7*e12",
    "e6*e10", "e3*e10",
    "e3*e4 - e1*e6",
]
TWO_K4_C_E12_OF_L = ["e7", "e6", "e3", "e9*e10 - e8*e11"]
TWO_K4_N_E12_OF_L = [
    "e6*e11", "e3*e11", "e9*e10 - e8*e11", "e6*e10", "e3*e10",
    "e3*e4 - e1*e6",
]
TWO_K4_C_E11_OF_M = ["e8", "e6", "e3"]
TWO_K4_N_E11_OF_M = ["e6*e10", "e3*e10", "e3*e4 - e1*e6"]


def two_triangles_bridged() -> Graph:
    """Two triangles joined by a path of length 2: 7 vertices, 8 edges.

    Its toric ideal is principal with a non-square-free generator.
    """
    return Graph(
        ["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        [("e1", "x1", "x2"), ("e2", "x1", "x3"), ("e3", "x3", "x2"),
         ("e4", "x3", "x4"), ("e5", "x4", "x5"), ("e6", "x5", "x6"),
         ("e7", "x5", "x7"), ("e8", "x6", "x7")],
    )


TWO_TRIANGLES_GENERATOR = "e1*e4^2*e6*e7 - e2*e3*e5^2*e8"


def k2d_with_path(r: int, d: int) -> Graph:
    """K_{2,d} (hubs x1,x2; spokes a_i,b_i through y_i) plus an x1-x2 path
    of length 2r-2 through new vertices z_1..z_{2r-3}."""
    if r < 2 or d < 1:
        raise ValueError("need r >= 2 and d >= 1")
    ys = ["y%d" % i for i in range(1, d + 1)]
    zs = ["z%d" % i for i in range(1, 2 * r - 2)]
    edges = []
    for i in range(1, d + 1):
        edges.append(("a%d" % i, "x1", "y%d" % i))
    for i in range(1, d + 1):
        edges.append(("b%d" % i, "x2", "y%d" % i))
    chain = ["x1"] + zs + ["x2"]
    for i in range(1, 2 * r - 1):
        edges.append(("e%d" % i, chain[i - 1], chain[i]))
    return Graph(["x1", "x2"] + ys + zs, edges)


def k2d_with_path_universal_basis(r: int, d: int) -> set:
    """Closed-form universal basis of k2d_with_path as polynomial text."""
    ring = k2d_with_path(r, d).edge_ring()
    out = set()
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            out.add(parse_poly(ring, "a%d*b%d - b%d*a%d" % (i, j, i, j)))
    evens = "*".join("e%d" % k for k in range(2, 2 * r - 1, 2))
    odds = "*".join("e%d" % k for k in range(1, 2 * r - 1, 2))
    for i in range(1, d + 1):
        out.add(parse_poly(ring, "a%d*%s - b%d*%s" % (i, evens, i, odds)))
    return out


def rational_rank(rows) -> int:
    """Row rank over Q by exact Gaussian elimination (test oracle)."""
    from fractions import Fraction
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    rank = 0
    ncols = len(M[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                c = M[r][col]
                M[r] = [a - c * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank
