"""Connectivity relative to a basis: lambda_B, splits and blocking sequences.

For a basis B of M with complement Y = E - B, write M_B[Z] for the minor
M / (B - Z) \\ (Y - Z).  A pair (X, Y) of disjoint sets is a k-separation of
M_B[X u Y] when |X|, |Y| >= k and lambda_B(X, Y) < k.

Everything here is brute force and meant for ground sets of a dozen
elements or fewer.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .matroid.core import Matroid, bits
from .matroid.ops import connectivity


class BasisContext:
    """A matroid together with a fixed basis."""

    def __init__(self, M: Matroid, B=None):
        if B is None:
            B = min(M.bases)
        B = M.mask(B)
        if B not in M.bases:
            raise ValueError(f"{sorted(M.labels(B))} is not a basis")
        self.M = M
        self.B = B
        self.Y = M.full & ~B

    def __repr__(self):
        return f"BasisContext({self.M.name or 'M'}, B={self.M.ordered(self.B)})"

    def mask(self, S):
        return self.M.mask(S)

    def minor(self, Z) -> Matroid:
        """M_B[Z]."""
        Z = self.mask(Z)
        return self.M.minor(delete=self.Y & ~Z, contract=self.B & ~Z)

    def minus(self, Z) -> Matroid:
        """M_B - Z, that is M_B[E - Z]."""
        return self.minor(self.M.full & ~self.mask(Z))

    def edges(self):
        """Edges (b, y) of the fundamental graph G_B(M), as element indices."""
        M, B = self.M, self.B
        return [(b, y) for b in bits(B) for y in bits(self.Y) if (B & ~(1 << b) | 1 << y) in M.bases]

    def adjacent(self, e, f):
        B = self.B
        if B >> e & 1 == B >> f & 1:
            return False
        b, y = (e, f) if B >> e & 1 else (f, e)
        return (B & ~(1 << b) | 1 << y) in self.M.bases

    def pivot(self, x1, x2) -> BasisContext:
        """The context for B xor {x1, x2}; x1 x2 must be an edge of G_B(M)."""
        e, f = self.M.index[x1] if not isinstance(x1, int) else x1, \
            self.M.index[x2] if not isinstance(x2, int) else x2
        if not self.adjacent(e, f):
            raise ValueError("pivot elements are not adjacent in the fundamental graph")
        return BasisContext(self.M, self.B ^ (1 << e) ^ (1 << f))


def lambda_B(ctx: BasisContext, X, Y) -> int:
    """r_{M/(B-Y)}(X - B) + r_{M/(B-X)}(Y - B)."""
    M, B = ctx.M, ctx.B
    X, Y = ctx.mask(X), ctx.mask(Y)
    cy, cx = B & ~Y, B & ~X
    return (M.r((X & ~B) | cy) - cy.bit_count()) + (M.r((Y & ~B) | cx) - cx.bit_count())


def is_k_separation(ctx, X, Y, k, exact=False):
    X, Y = ctx.mask(X), ctx.mask(Y)
    if X & Y or X.bit_count() < k or Y.bit_count() < k:
        return False
    lam = lambda_B(ctx, X, Y)
    return lam == k - 1 if exact else lam < k


def is_split(ctx: BasisContext, X, Y) -> bool:
    """Do the X-Y edges of G_B(M) form a complete bipartite graph?

    (X, Y) must partition E with both sides of size at least two.  No
    crossing edges at all counts as a (degenerate) split.
    """
    X, Y = ctx.mask(X), ctx.mask(Y)
    if X & Y or X | Y != ctx.M.full:
        raise ValueError("(X, Y) must partition the ground set")
    if X.bit_count() < 2 or Y.bit_count() < 2:
        raise ValueError("both sides need at least two elements")
    cross = [(b, y) for b, y in ctx.edges() if (X >> b & 1) != (X >> y & 1)]
    if not cross:
        return True
    rows = {b for b, _ in cross}
    cols = {y for _, y in cross}
    # complete bipartite: one crossing block, and every row-col pair is an edge
    if len({X >> b & 1 for b in rows}) != 1:
        return False
    es = set(cross)
    return all((b, y) in es for b in rows for y in cols)


def u24_pattern(ctx, X, Y, x1, y1):
    """(x2, y2) with M_B[{x1, y1, x2, y2}] a U_{2,4}, or None."""
    M = ctx.M
    X, Y = ctx.mask(X), ctx.mask(Y)
    for x2 in bits(X):
        for y2 in bits(Y):
            Z = (1 << x1) | (1 << y1) | (1 << x2) | (1 << y2)
            if Z.bit_count() != 4:
                continue
            N = ctx.minor(Z)
            if N.rank == 2 and len(N.bases) == 6:
                return M.ground[x2], M.ground[y2]
    return None


# ---------------------------------------------------------------------------
# blocking sequences

@dataclass(frozen=True)
class BlockingSequence:
    elements: tuple
    X: frozenset
    Y: frozenset
    k: int

    def __len__(self):
        return len(self.elements)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class InducedWitness:
    """A k-separation (X', Y') of M extending the given one."""
    X: frozenset
    Y: frozenset
    value: int

    def __bool__(self):
        return True


def satisfies_blocking(ctx, X, Y, k, seq) -> bool:
    """Conditions (1)-(3) for an index sequence, without minimality."""
    X, Y = ctx.mask(X), ctx.mask(Y)
    if not seq:
        return False
    if lambda_B(ctx, X, Y | 1 << seq[0]) != k:
        return False
    for a, b in zip(seq, seq[1:]):
        if lambda_B(ctx, X | 1 << a, Y | 1 << b) != k:
            return False
    return lambda_B(ctx, X | 1 << seq[-1], Y) == k


def is_blocking_sequence(ctx, X, Y, k, seq) -> bool:
    """All four conditions, minimality checked over every proper subsequence."""
    seq = tuple(ctx.M.index[e] if not isinstance(e, int) else e for e in seq)
    outside = ctx.M.full & ~ctx.mask(X) & ~ctx.mask(Y)
    if len(set(seq)) != len(seq) or any(not outside >> e & 1 for e in seq):
        return False
    if not satisfies_blocking(ctx, X, Y, k, seq):
        return False
    for m in range(1, len(seq)):
        for keep in combinations(range(len(seq)), m):
            if satisfies_blocking(ctx, X, Y, k, tuple(seq[i] for i in keep)):
                return False
    return True


def _check_sep(ctx, X, Y, k):
    if k not in (1, 2):
        raise ValueError("only k = 1 and k = 2 are supported")
    if not is_k_separation(ctx, X, Y, k, exact=True):
        raise ValueError(f"not an exact {k}-separation of M_B[X u Y]")


def shortest_blocking_sequence(ctx, X, Y, k):
    """Shortest, then lexicographically least, blocking sequence; None if none exists."""
    _check_sep(ctx, X, Y, k)
    Xm, Ym = ctx.mask(X), ctx.mask(Y)
    B = ctx.B
    outside = bits(ctx.M.full & ~Xm & ~Ym)
    for p in range(1, len(outside) + 1):
        for seq in permutations(outside, p):
            # consecutive elements sit on opposite sides of B
            if any((B >> a & 1) == (B >> b & 1) for a, b in zip(seq, seq[1:])):
                continue
            if is_blocking_sequence(ctx, Xm, Ym, k, seq):
                M = ctx.M
                return BlockingSequence(tuple(M.ground[e] for e in seq),
                                        M.labels(Xm), M.labels(Ym), k)
    return None


def induced_check(ctx, X, Y, k):
    """Sweep all ways to place the remaining elements; a witness or None."""
    M = ctx.M
    Xm, Ym = ctx.mask(X), ctx.mask(Y)
    rest = bits(M.full & ~Xm & ~Ym)
    for side in product((0, 1), repeat=len(rest)):
        Xp = Xm
        for e, s in zip(rest, side):
            if s == 0:
                Xp |= 1 << e
        Yp = M.full & ~Xp
        if Xp.bit_count() < k or Yp.bit_count() < k:
            continue
        lam = connectivity(M, Xp)
        if lam < k:
            return InducedWitness(M.labels(Xp), M.labels(Yp), lam)
    return None


def find_blocking_sequence(ctx, X, Y, k=2):
    """A minimal blocking sequence for (X, Y), or an `InducedWitness`."""
    seq = shortest_blocking_sequence(ctx, X, Y, k)
    if seq is not None:
        return seq
    wit = induced_check(ctx, X, Y, k)
    if wit is None:
        raise AssertionError("neither a blocking sequence nor an inducing separation")
    return wit


def exact_separations_of_minor(ctx, Z, k):
    """Exact k-separations (X, Y) of M_B[Z], with the least element of Z in X."""
    Z = ctx.mask(Z)
    els = bits(Z)
    if not els:
        return
    first, rest = els[0], els[1:]
    for m in range(len(rest) + 1):
        for S in combinations(rest, m):
            X = (1 << first) | sum(1 << e for e in S)
            Y = Z & ~X
            if is_k_separation(ctx, X, Y, k, exact=True):
                yield X, Y
