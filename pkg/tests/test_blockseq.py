from itertools import combinations
import random

import pytest

from nrmat.blockseq import (
    BasisContext, BlockingSequence, InducedWitness, exact_separations_of_minor,
    find_blocking_sequence, induced_check, is_blocking_sequence, is_k_separation, is_split,
    lambda_B, shortest_blocking_sequence, u24_pattern,
)
from nrmat.matroid import catalog
from nrmat.matroid.core import uniform
from nrmat.matroid.ops import connectivity, two_sum


def u24_ctx():
    U = uniform(2, 4)
    return BasisContext(U, U.ground[:2]), U


def test_rejects_non_basis():
    U = uniform(2, 4)
    with pytest.raises(ValueError):
        BasisContext(U.relabel({}), [U.ground[0]])


def test_lambda_on_partitions_is_connectivity():
    rng = random.Random(2)
    for name in ("W3", "P7", "AG23-e"):
        M = catalog.get(name)
        bases = sorted(M.bases)
        for _ in range(20):
            ctx = BasisContext(M, rng.choice(bases))
            X = rng.getrandbits(M.n) & M.full
            assert lambda_B(ctx, X, M.full & ~X) == connectivity(M, X)


def test_lambda_matches_connectivity_of_minor():
    # lambda_B(X, Y) is the connectivity of X inside M_B[X u Y]
    rng = random.Random(7)
    M = catalog.get("W4")
    ctx = BasisContext(M)
    for _ in range(40):
        Z = rng.getrandbits(M.n) & M.full
        X = Z & rng.getrandbits(M.n)
        N = ctx.minor(Z)
        sub = [e for e in N.ground if M.index[e] in range(M.n) and X >> M.index[e] & 1]
        assert lambda_B(ctx, X, Z & ~X) == connectivity(N, sub)


def test_minor_of_context():
    M = catalog.get("W3")
    ctx = BasisContext(M)
    B = set(M.labels(ctx.B))
    Z = set(M.ground[:4])
    expect = M.minor(delete=[e for e in M.ground if e not in Z and e not in B],
                     contract=[e for e in B if e not in Z])
    assert ctx.minor(M.mask(Z)) == expect


def test_pivot_context():
    ctx, U = u24_ctx()
    b, y = ctx.edges()[0]
    P = ctx.pivot(b, y)
    assert P.B == ctx.B ^ (1 << b) ^ (1 << y)
    with pytest.raises(ValueError):
        ctx.pivot(0, 1)


def test_split_examples():
    ctx, U = u24_ctx()
    g = U.ground
    assert is_split(ctx, [g[0], g[1]], [g[2], g[3]])
    assert not is_split(ctx, [g[0], g[2]], [g[1], g[3]])
    with pytest.raises(ValueError):
        is_split(ctx, [g[0]], g[1:])


def test_u24_pattern():
    ctx, U = u24_ctx()
    X, Y = U.mask(U.ground[:2]), U.mask(U.ground[2:])
    x2y2 = u24_pattern(ctx, X, Y, 0, 2)
    assert x2y2 is not None and set(x2y2) == {U.ground[1], U.ground[3]}


def test_two_sum_separation_is_split_and_exact():
    A = uniform(2, 4, "x").relabel({"x0": "p"})
    B = catalog.get("W3").relabel({"1": "p"})
    M = two_sum(A, B, "p")
    X = M.mask([e for e in M.ground if str(e).startswith("x")])
    for b in sorted(M.bases)[:10]:
        ctx = BasisContext(M, b)
        assert is_k_separation(ctx, X, M.full & ~X, 2, exact=True)
        assert is_split(ctx, X, M.full & ~X)


def test_blocking_sequence_in_whirl():
    M = catalog.get("W3")
    ctx = BasisContext(M)
    done = 0
    for Z in range(1, M.full):
        for X, Y in exact_separations_of_minor(ctx, Z, 2):
            res = find_blocking_sequence(ctx, X, Y, 2)
            # W3 is 3-connected, so the induced branch never applies
            assert isinstance(res, BlockingSequence)
            assert is_blocking_sequence(ctx, X, Y, 2, res.elements)
            done += 1
    assert done > 0


def test_blocking_sequence_is_minimal():
    M = catalog.get("P7")
    ctx = BasisContext(M)
    for Z in range(1, M.full):
        for X, Y in exact_separations_of_minor(ctx, Z, 2):
            seq = shortest_blocking_sequence(ctx, X, Y, 2)
            if seq is not None and len(seq) >= 2:
                idx = [M.index[e] for e in seq.elements]
                assert not is_blocking_sequence(ctx, X, Y, 2, idx[:-1])
                return
    pytest.skip("no long sequence on this basis")


def test_induced_branch_on_two_sum():
    A = uniform(2, 4, "x").relabel({"x0": "p"})
    B = catalog.get("W3").relabel({"1": "p"})
    M = two_sum(A, B, "p")
    ctx = BasisContext(M)
    hits = 0
    for Z in range(1, M.full):
        if Z.bit_count() > 5:
            continue
        for X, Y in exact_separations_of_minor(ctx, Z, 2):
            res = find_blocking_sequence(ctx, X, Y, 2)
            if isinstance(res, InducedWitness):
                hits += 1
                assert res.value < 2
                assert M.labels(X) <= res.X and M.labels(Y) <= res.Y
                assert shortest_blocking_sequence(ctx, X, Y, 2) is None
    assert hits > 0


def test_check_requires_exact_separation():
    ctx, U = u24_ctx()
    with pytest.raises(ValueError):
        shortest_blocking_sequence(ctx, 0b0011, 0b1100, 2)
    with pytest.raises(ValueError):
        shortest_blocking_sequence(ctx, 0b0001, 0b0010, 3)


def test_sequence_elements_must_be_outside():
    ctx, U = u24_ctx()
    assert not is_blocking_sequence(ctx, 0b0001, 0b0010, 1, [0])


def test_lambda_empty():
    M = catalog.get("W3")
    ctx = BasisContext(M)
    assert lambda_B(ctx, 0, 0) == 0


def test_one_element_outside_gives_length_one():
    M = catalog.get("W3")
    hits = 0
    for b in sorted(M.bases):
        ctx = BasisContext(M, b)
        for e in range(M.n):
            for X, Y in exact_separations_of_minor(ctx, M.full & ~(1 << e), 2):
                seq = find_blocking_sequence(ctx, X, Y, 2)
                assert isinstance(seq, BlockingSequence) and seq.elements == (M.ground[e],)
                hits += 1
    assert hits > 0
