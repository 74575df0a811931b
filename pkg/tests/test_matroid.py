from itertools import combinations
import random

import pytest

from nrmat.matroid import catalog
from nrmat.matroid.core import Matroid, basis_exchange_violation, matroid_from_matrix, uniform
from nrmat.matroid.extend import (
    coindependent_triangles, delta_y, extensions, generalized_parallel_connection, triangles,
)
from nrmat.matroid.io import MtdError, format_mtd, parse_mtd
from nrmat.matroid.iso import IsoClasses, apply_bijection, find_minor, has_minor, is_isomorphic
from nrmat.matroid.ops import (
    circuit_hyperplanes, connectivity, deletion_pairs, is_3_connected, is_binary, is_connected,
    is_stable, relax_circuit_hyperplane, separations, simplify, two_sum, two_sum_expressions,
    two_sum_parts,
)
from nrmat.pmat import LabeledMatrix


def graphic(edges):
    """Cycle matroid from an edge list {label: (u, v)}, bases = spanning forests."""
    labels = list(edges)
    verts = {v for e in edges.values() for v in e}

    def forest(S):
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v
        for e in S:
            a, b = find(edges[e][0]), find(edges[e][1])
            if a == b:
                return False
            parent[a] = b
        return True

    r = max(k for k in range(len(labels) + 1) if any(forest(S) for S in combinations(labels, k)))
    return Matroid(labels, [S for S in combinations(labels, r) if forest(S)])


K4 = {"a": (1, 2), "b": (1, 3), "c": (2, 3), "d": (1, 4), "e": (2, 4), "f": (3, 4)}


# -- basics

def test_uniform_counts():
    U = uniform(2, 5)
    assert (U.n, U.rank, len(U.bases)) == (5, 2, 10)
    assert len(U.circuits()) == 10


def test_dual_and_minors():
    M = catalog.get("F7")
    D = M.dual()
    assert D.rank == 4 and len(D.bases) == len(M.bases)
    assert D.dual() == M
    e = M.ground[0]
    assert M.delete([e]).dual() == D.contract([e])


def test_validate_rejects_non_matroid():
    with pytest.raises(ValueError):
        Matroid("abcd", ["ab", "cd"], validate=True)
    assert basis_exchange_violation(uniform(2, 4)) is None


def test_catalog_fingerprints():
    for entry in catalog.ENTRIES:
        M = catalog.get(entry.name)
        assert (M.n, M.rank, len(M.bases)) == entry.fingerprint
        assert basis_exchange_violation(M) is None


def test_catalog_aliases():
    assert catalog.get("F7m") is catalog.get("F7-")
    with pytest.raises(KeyError):
        catalog.get("nope")


def test_mk4_is_graphic():
    assert is_isomorphic(catalog.get("MK4"), graphic(K4)) is not None


def test_p8_self_dual():
    P8 = catalog.get("P8")
    assert is_isomorphic(P8, P8.dual()) is not None


def test_p8_circuit_hyperplanes_and_relaxation():
    P8 = catalog.get("P8")
    H = circuit_hyperplanes(P8)
    disjoint = [(a, b) for a, b in combinations(H, 2) if not a & b]
    assert len(disjoint) == 1
    R = relax_circuit_hyperplane(relax_circuit_hyperplane(P8, disjoint[0][0]), disjoint[0][1])
    assert is_isomorphic(R, catalog.get("P8pp")) is not None
    with pytest.raises(ValueError):
        relax_circuit_hyperplane(P8, P8.labels(min(P8.bases)))


# -- connectivity and 2-sums

def test_connectivity_uniform():
    U = uniform(2, 4)
    assert connectivity(U, U.ground[:2]) == 2
    assert is_3_connected(U)


def test_direct_sum_is_disconnected():
    M = uniform(1, 2, "a").direct_sum(uniform(1, 2, "b"))
    assert not is_connected(M)
    assert separations(M, 1, exact=True)


def test_two_sum_round_trip():
    M1 = uniform(2, 4, "x").relabel({"x0": "p"})
    M2 = catalog.get("W3").relabel({"1": "p"})
    S = two_sum(M1, M2, "p")
    assert S.n == 4 + 6 - 2 and S.rank == 2 + 3 - 1
    assert not is_3_connected(S)
    X = [e for e in S.ground if e.startswith("x")]
    P1, P2 = two_sum_parts(S, X, basepoint="q")
    assert two_sum(P1, P2, "q") == S
    assert is_isomorphic(P1, M1) is not None and is_isomorphic(P2, M2) is not None


def test_two_sum_expressions_recombine():
    M = two_sum(uniform(2, 4, "x").relabel({"x0": "p"}), uniform(2, 4, "y").relabel({"y0": "p"}), "p")
    ex = two_sum_expressions(M, basepoint="q")
    assert ex
    for X, A, B in ex:
        if len(A.ground) > 1 and "q" in A.index:
            assert two_sum(A, B, "q") == M
    assert not is_stable(M)


def test_stability_of_3_connected():
    assert is_stable(catalog.get("P7"))


def test_is_binary():
    assert is_binary(catalog.get("F7"))
    assert is_binary(catalog.get("MK4"))
    assert not is_binary(catalog.get("F7-"))
    assert not is_binary(uniform(2, 4))


def test_simplify():
    M = Matroid("abc", ["a", "b"])  # c is a loop, a and b are parallel
    S = simplify(M)
    assert S.n == 1


# -- isomorphism

def test_isomorphism_random_relabel():
    rng = random.Random(1)
    for name in ("P7", "O7", "W4", "AG23-e", "P8"):
        M = catalog.get(name)
        perm = list(M.ground)
        rng.shuffle(perm)
        N = apply_bijection(M, dict(zip(M.ground, perm)))
        f = is_isomorphic(M, N)
        assert f is not None
        assert apply_bijection(M, f) == N


def test_non_isomorphic_same_counts():
    assert is_isomorphic(catalog.get("F7"), catalog.get("O7")) is None


def test_iso_classes():
    C = IsoClasses()
    assert C.add(catalog.get("F7-"))
    assert not C.add(catalog.get("F7-").relabel({"1": "z"}))
    assert len(C) == 1


def test_minors():
    assert has_minor(catalog.get("W3"), uniform(2, 4))
    assert not has_minor(catalog.get("F7"), uniform(2, 4))
    # W3 is a single-element deletion of P7
    assert find_minor(catalog.get("P7"), catalog.get("W3")) is not None


# -- extensions

def test_u24_extensions():
    found = [N for N in extensions(uniform(2, 4)) if is_3_connected(N)]
    assert len(found) == 1 and is_isomorphic(found[0], uniform(2, 5)) is not None


def test_extension_count_includes_loop_parallel_coloop():
    exts = extensions(uniform(1, 2))
    # coloop, loop, parallel, free (U_{1,3} is parallel too): up to iso
    assert len(exts) >= 2
    for N in exts:
        assert basis_exchange_violation(N) is None


# -- Delta-Y

def test_delta_y_fano_gives_dual():
    F = catalog.get("F7")
    T = coindependent_triangles(F)[0]
    assert is_isomorphic(delta_y(F, T), F.dual()) is not None


def test_delta_y_k4_is_k23():
    K23 = graphic({"a": (1, 3), "b": (1, 4), "c": (1, 5), "d": (2, 3), "e": (2, 4), "f": (2, 5)})
    M = graphic(K4)
    D = delta_y(M, ["a", "b", "c"])
    assert is_isomorphic(D, K23) is not None


def test_delta_y_ag23e():
    M = catalog.get("AG23-e")
    seen = IsoClasses()
    for T in coindependent_triangles(M):
        seen.add(delta_y(M, T))
    assert any(is_isomorphic(N, catalog.get("DT-AG23-e")) is not None for N in seen)


def test_nabla_inverts_delta():
    M = catalog.get("F7-")
    T = sorted(coindependent_triangles(M)[0])
    D = delta_y(M, T)
    assert delta_y(D, T, "nabla") == M


def test_delta_y_rejects_non_triangle():
    M = catalog.get("F7")
    with pytest.raises(ValueError):
        delta_y(M, M.labels(min(M.bases)))


def test_generalized_parallel_connection_on_a_point():
    A = uniform(2, 3, "a").relabel({"a0": "t"})
    B = uniform(2, 3, "b").relabel({"b0": "t"})
    P = generalized_parallel_connection(A, B, ["t"])
    assert P.rank == 3 and P.n == 5


# -- .mtd files

def test_mtd_round_trip():
    for name in catalog.names():
        M = catalog.get(name)
        if any(ch in M.name for ch in " #"):
            continue
        N = parse_mtd(format_mtd(M), validate=True)
        assert N == M and N.ground == M.ground


def test_mtd_empty_basis():
    M = Matroid("ab", [()])
    assert parse_mtd(format_mtd(M)) == M


@pytest.mark.parametrize("text", [
    "name M\nground a b\nrank 1\nbases\na\nz\nend\n",        # unknown label
    "name M\nground a b\nrank 1\nbases\na b\nend\n",         # wrong size
    "name M\nground a b\nrank 1\nbases\na\na\nend\n",        # repeated
    "name M\nground a b\nrank 1\nbases\na\n",                # no end
    "name M\nground a b\nrank 1\nbases\na\nend\nextra\n",    # trailing text
    "ground a b\nname M\nrank 1\nbases\na\nend\n",           # order
    "name M\nground a a\nrank 1\nbases\na\nend\n",           # duplicate labels
])
def test_mtd_strict(text):
    with pytest.raises(MtdError):
        parse_mtd(text)


def test_mtd_validate():
    text = "name M\nground a b c d\nrank 2\nbases\na b\nc d\nend\n"
    parse_mtd(text)
    with pytest.raises(MtdError):
        parse_mtd(text, validate=True)


def test_matroid_from_matrix():
    A = LabeledMatrix(["1", "2"], ["3", "4"], [[1, 1], [1, 2]], "gf3")
    M = matroid_from_matrix(A)
    assert is_isomorphic(M, uniform(2, 4)) is not None
