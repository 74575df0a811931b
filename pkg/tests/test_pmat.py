from fractions import Fraction
from itertools import permutations
import random

import pytest

from nrmat.pfield import ALPHA, NRElem, ONE, RING_ONE, RingElem, gf
from nrmat.pmat import (
    BipartiteGraph, LabeledMatrix, det, det_cofactor, find_twirl, format_pmx, graph,
    induced_cycle_through, is_p_matrix, lex_forest, matrix_rank, normalize, parse_pmx,
    pivot, scaling_factors, shrink_twirl,
)
from nrmat.pmat import is_twirl
from nrmat.matroid.catalog import NR_MATRICES, nr_whirl_matrix

A_ = ALPHA.to_ring()


def nr(entries, rows=None, cols=None):
    r, c = len(entries), len(entries[0])
    rows = rows or [f"r{i}" for i in range(r)]
    cols = cols or [f"c{j}" for j in range(c)]
    return LabeledMatrix(rows, cols, entries, "nearreg")


def rand_mono(rng, b=2):
    return NRElem(rng.choice((1, -1)), rng.randint(-b, b), rng.randint(-b, b)).to_ring()


def leibniz(vals):
    """Permutation-sum determinant over Fractions."""
    n = len(vals)
    total = Fraction(0)
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= vals[i][p[i]]
        total += term
    return total


# -- determinants

def test_det_examples():
    assert det(nr([[1, 1], [A_, 1]])) == RING_ONE - A_
    G = LabeledMatrix("abc", "xyz", [[0, 1, 1], [1, 0, 1], [1, 1, 0]], "gf3")
    assert det(G) == gf("gf3")(2)
    assert det(nr([[0]])) == RingElem.integer(0)


def test_det_non_square():
    with pytest.raises(ValueError):
        det(nr([[1, 1]]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_det_matches_leibniz_at_rational_points(n):
    rng = random.Random(n)
    for _ in range(6):
        entries = [[rand_mono(rng) if rng.random() < 0.8 else RingElem.integer(0)
                    for _ in range(n)] for _ in range(n)]
        A = nr(entries)
        d = det(A)
        for x in (Fraction(7, 3), Fraction(-2, 5)):
            vals = [[e.evaluate(x) for e in row] for row in entries]
            assert d.evaluate(x) == leibniz(vals)


def test_bareiss_agrees_with_cofactor_over_fields():
    rng = random.Random(3)
    for q in ("gf3", "gf4", "gf5", "gf7", "gf8"):
        F = gf(q)
        els = list(F.elements())
        for _ in range(10):
            entries = [[rng.choice(els) for _ in range(5)] for _ in range(5)]
            A = LabeledMatrix("abcde", "vwxyz", entries, q)
            assert det(A) == det_cofactor(A)


# -- P-matrices

def test_is_p_matrix():
    assert is_p_matrix(nr([[1, 1], [1, A_]])) is True
    bad = is_p_matrix(nr([[1, 1], [1, A_ * A_]]))
    assert not bad
    assert set(bad.rows) == {"r0", "r1"}
    for name, A in NR_MATRICES.items():
        assert is_p_matrix(A) is True, name


def test_is_p_matrix_rejects_field_kind():
    with pytest.raises(ValueError):
        is_p_matrix(LabeledMatrix("a", "b", [[1]], "gf3"))


# -- pivots

def test_pivot_example():
    A = LabeledMatrix(["x", "u"], ["y", "v"], [[1, 1], [1, -1]], "gf3")
    P = pivot(A, "x", "y")
    assert P.rows == ("y", "u") and P.cols == ("x", "v")
    expect = LabeledMatrix(["y", "u"], ["x", "v"], [[1, 1], [-1, 1]], "gf3")
    assert P == expect


def test_pivot_twice_is_identity():
    rng = random.Random(11)
    for _ in range(30):
        entries = [[rand_mono(rng) for _ in range(4)] for _ in range(3)]
        A = nr(entries)
        x, y = rng.choice(A.rows), rng.choice(A.cols)
        assert pivot(pivot(A, x, y), y, x) == A


def test_pivot_preserves_p_matrix():
    rng = random.Random(5)
    A = NR_MATRICES["W3"]
    for _ in range(40):
        x = rng.choice(A.rows)
        ys = [y for y in A.cols if A[x, y]]
        A = pivot(A, x, rng.choice(ys))
        assert is_p_matrix(A) is True


def test_pivot_zero_entry():
    with pytest.raises(ZeroDivisionError):
        pivot(nr([[0, 1], [1, 1]]), "r0", "c0")


def test_one_by_one_pivot():
    A = nr([[A_]])
    P = pivot(A, "r0", "c0")
    assert P["c0", "r0"] * A_ == RING_ONE


# -- scaling

def test_normalize_sets_forest_to_one():
    A = nr([[A_, 1], [1, A_ * A_]])
    T = [("r0", "c0"), ("r0", "c1"), ("r1", "c0")]
    N = normalize(A, T)
    assert all(N[e] == RING_ONE for e in T)
    # the remaining entry is the cross ratio of the 2x2 block
    assert N["r1", "c1"] == A["r1", "c1"] * A["r0", "c0"] * (A["r0", "c1"] * A["r1", "c0"]).inverse()
    r, c = scaling_factors(A, T)
    for x in A.rows:
        for y in A.cols:
            assert N[x, y] == r[x] * A[x, y] * c[y]


def test_normalize_rejects_cycles():
    A = nr([[1, 1], [1, A_]])
    with pytest.raises(ValueError):
        normalize(A, [("r0", "c0"), ("r0", "c1"), ("r1", "c0"), ("r1", "c1")])


def test_normalize_custom_targets():
    A = nr([[1, 1], [1, A_]])
    N = normalize(A, [("r0", "c0")], [-RING_ONE])
    assert N["r0", "c0"] == -RING_ONE


def test_lex_forest_spans():
    A = nr_whirl_matrix(4)
    T = lex_forest(A)
    assert len(T) == len(A.rows) + len(A.cols) - 1
    assert T[0] == (A.rows[0], A.cols[0])


# -- graphs and cycles

def test_graph():
    G = graph(nr([[1, 0], [1, 1]]))
    assert G.edges == {("r0", "c0"), ("r1", "c0"), ("r1", "c1")}


def test_bipartite_graph_rejects_foreign_edges():
    with pytest.raises(ValueError):
        BipartiteGraph(["a"], ["b"], [("a", "z")])


def test_induced_cycle_k22():
    G = BipartiteGraph(["a", "b"], ["x", "y"], [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")])
    S = [("a", "x"), ("a", "y"), ("b", "x")]
    cyc = induced_cycle_through(G, S, ("b", "y"))
    assert set(cyc) == {"a", "b", "x", "y"}
    assert G.is_cycle(cyc)


def test_induced_cycle_hexagon():
    rows, cols = ["r1", "r2", "r3"], ["c1", "c2", "c3"]
    E = [("r1", "c1"), ("r2", "c1"), ("r2", "c2"), ("r3", "c2"), ("r3", "c3"), ("r1", "c3")]
    G = BipartiteGraph(rows, cols, E)
    cyc = induced_cycle_through(G, E[:-1], ("r1", "c3"))
    assert len(cyc) == 6 and G.is_cycle(cyc)


def test_induced_cycle_needs_spanning_set():
    G = BipartiteGraph(["a", "b"], ["x", "y"], [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")])
    with pytest.raises(ValueError):
        induced_cycle_through(G, [("a", "x")], ("b", "y"))


# -- twirls

def test_find_twirl_u24():
    C = find_twirl(nr([[1, 1], [A_, 1]]))
    assert C is not None and C.vertices == {"r0", "r1", "c0", "c1"}


def test_find_twirl_totally_unimodular():
    assert find_twirl(nr([[1, 1], [1, 0]])) is None
    assert find_twirl(NR_MATRICES["MK4"]) is None


def test_find_twirl_whirl_is_hexagon():
    C = find_twirl(nr_whirl_matrix(3))
    assert len(C) == 6


def test_shrink_twirl():
    A = nr([[1, 1], [1, A_], [1, 1]], rows=["p", "q", "x"], cols=["s", "t"])
    # the 4-twirl on p, q, s, t; x sees both columns
    from nrmat.pmat import TwirlCertificate
    C = TwirlCertificate(("p", "s", "q", "t"))
    assert is_twirl(A, C.cycle)
    D = shrink_twirl(A, C, "x")
    assert "x" in D.vertices and is_twirl(A, D.cycle)
    assert D.vertices == {"x", "s", "q", "t"}


def test_shrink_twirl_needs_two_neighbours():
    from nrmat.pmat import TwirlCertificate
    A = nr([[1, 1], [1, A_], [1, 0]], rows=["p", "q", "x"], cols=["s", "t"])
    with pytest.raises(ValueError):
        shrink_twirl(A, TwirlCertificate(("p", "s", "q", "t")), "x")


# -- rank

def test_matrix_rank():
    assert matrix_rank(nr([[1, 1], [A_, A_]])) == 1
    assert matrix_rank(nr([[1, 1], [1, A_]])) == 2
    assert matrix_rank(LabeledMatrix("ab", "xy", [[1, 2], [2, 4]], "gf5")) == 1


# -- .pmx

def test_pmx_round_trip():
    for name, A in NR_MATRICES.items():
        nm, B = parse_pmx(format_pmx(A, name=name.replace("*", "d")))
        assert B == A and B.rows == A.rows and B.cols == A.cols


def test_pmx_round_trip_gf():
    A = LabeledMatrix("ab", "xyz", [[1, 2, 3], [0, 4, 1]], "gf5")
    assert parse_pmx(format_pmx(A))[1] == A


@pytest.mark.parametrize("text", [
    "name A\nfield gf3\nrows a\ncols x y\n1\n",
    "name A\nfield gf9\nrows a\ncols x\n1\n",
    "name A\nfield gf3\nrows a b\ncols x\n1\n",
    "field gf3\nname A\nrows a\ncols x\n1\n",
    "name A\nfield nearreg\nrows a\ncols x\n+:0:q\n",
    "name A\nfield gf3\nrows a a\ncols x\n1\n1\n",
])
def test_pmx_strict(text):
    with pytest.raises(ValueError):
        parse_pmx(text)


def test_labeled_matrix_validation():
    with pytest.raises(ValueError):
        LabeledMatrix(["a"], ["a"], [[1]], "gf3")
    with pytest.raises(ValueError):
        LabeledMatrix(["a"], ["b"], [[1, 1]], "gf3")
    with pytest.raises(ValueError):
        LabeledMatrix(["a"], ["b"], [[1]], "gf6")
