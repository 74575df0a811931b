"""Isomorphism of basis-family matroids: colour refinement, then backtracking.

Element colours start from basis degree and are refined by the multiset of
(pair co-occurrence count, neighbour colour).  Colours are hashes of the
refinement history, so they are comparable across matroids.  Backtracking
pairs elements of equal colour, prunes on pair counts, and checks every
member of the smaller of {bases, non-bases} as soon as its last element is
mapped.
"""

from __future__ import annotations

from collections import Counter
from math import comb

import numpy as np

from .core import Matroid, bits


def _basis_array(M):
    arr = np.zeros((len(M.bases), M.n), dtype=np.int32)
    for k, b in enumerate(sorted(M.bases)):
        for e in bits(b):
            arr[k, e] = 1
    return arr


class _Profile:
    __slots__ = ("M", "pair", "colour", "family", "use_bases", "invariant")

    def __init__(self, M: Matroid):
        self.M = M
        n = M.n
        arr = _basis_array(M)
        self.pair = (arr.T @ arr).tolist()
        lst = [self.pair[e][e] for e in range(n)]
        classes = len(set(lst))
        for _ in range(n):
            new = [hash((lst[e], tuple(sorted((self.pair[e][f], lst[f]) for f in range(n) if f != e))))
                   for e in range(n)]
            k = len(set(new))
            lst = new
            if k == classes:
                break
            classes = k
        self.colour = lst
        total = comb(n, M.rank)
        self.use_bases = len(M.bases) <= total - len(M.bases)
        self.family = None
        self.invariant = (n, M.rank, len(M.bases), tuple(sorted(Counter(lst).items())))

    def fam(self):
        if self.family is None:
            self.family = frozenset(self.M.bases) if self.use_bases else frozenset(self.M.nonbases())
        return self.family


_PROFILES = {}


def _profile(M):
    key = id(M)
    p = _PROFILES.get(key)
    if p is None or p.M is not M:
        if len(_PROFILES) > 4096:
            _PROFILES.clear()
        p = _Profile(M)
        _PROFILES[key] = p
    return p


def invariant(M: Matroid):
    """Isomorphism invariant, suitable for bucketing."""
    return _profile(M).invariant


def is_isomorphic(M1: Matroid, M2: Matroid):
    """A label bijection carrying bases of M1 onto bases of M2, or None."""
    if (M1.n, M1.rank, len(M1.bases)) != (M2.n, M2.rank, len(M2.bases)):
        return None
    P1, P2 = _profile(M1), _profile(M2)
    if P1.invariant != P2.invariant:
        return None
    n = M1.n
    if n == 0:
        return {}
    c1, c2 = P1.colour, P2.colour
    size = Counter(c1)
    # order: rarest colour first, then elements strongly linked to those placed
    order = []
    left = set(range(n))
    while left:
        if order:
            e = min(left, key=lambda e: (size[c1[e]], -sum(P1.pair[e][f] for f in order), e))
        else:
            e = min(left, key=lambda e: (size[c1[e]], e))
        order.append(e)
        left.discard(e)
    pos = {e: k for k, e in enumerate(order)}
    fam1 = P1.fam()
    fam2 = P2.fam() if P1.use_bases == P2.use_bases else (
        frozenset(M2.bases) if P1.use_bases else frozenset(M2.nonbases()))
    checks = [[] for _ in range(n)]
    for m in fam1:
        last = max(bits(m), key=lambda e: pos[e]) if m else None
        if last is not None:
            checks[pos[last]].append(m)
    cand = {}
    for e in range(n):
        cand.setdefault(c1[e], [f for f in range(n) if c2[f] == c1[e]])
    image = [-1] * n
    used = [False] * n
    pair1, pair2 = P1.pair, P2.pair

    def img(m):
        out = 0
        for e in bits(m):
            out |= 1 << image[e]
        return out

    def rec(k):
        if k == n:
            return True
        e = order[k]
        prev = order[:k]
        for f in cand[c1[e]]:
            if used[f]:
                continue
            pe = pair1[e]
            pf = pair2[f]
            if any(pe[a] != pf[image[a]] for a in prev):
                continue
            image[e] = f
            if all(img(m) in fam2 for m in checks[k]):
                used[f] = True
                if rec(k + 1):
                    return True
                used[f] = False
            image[e] = -1
        return False

    if not rec(0):
        return None
    return {M1.ground[e]: M2.ground[image[e]] for e in range(n)}


def isomorphic(M1, M2) -> bool:
    return is_isomorphic(M1, M2) is not None


def apply_bijection(M: Matroid, f) -> Matroid:
    return M.relabel(f)


class IsoClasses:
    """Duplicate-free collection of matroids up to isomorphism."""

    def __init__(self):
        self.buckets = {}
        self.items = []

    def add(self, M) -> bool:
        """Insert M unless an isomorphic copy is present; returns True if new."""
        key = invariant(M)
        bucket = self.buckets.setdefault(key, [])
        for N in bucket:
            if is_isomorphic(M, N) is not None:
                return False
        bucket.append(M)
        self.items.append(M)
        return True

    def find(self, M):
        for N in self.buckets.get(invariant(M), ()):
            if is_isomorphic(M, N) is not None:
                return N
        return None

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def find_minor(M: Matroid, N: Matroid):
    """(delete, contract) label sets with M / C \\ D isomorphic to N, or None."""
    from itertools import combinations
    kc = M.rank - N.rank
    kd = M.corank - N.corank
    if kc < 0 or kd < 0:
        return None
    full = M.full
    for C in combinations(range(M.n), kc):
        cm = sum(1 << e for e in C)
        if M.r(cm) != kc:
            continue
        rest = [e for e in range(M.n) if not cm >> e & 1]
        for D in combinations(rest, kd):
            dm = sum(1 << e for e in D)
            # D must be coindependent in M / C
            if M.r(full & ~dm) != M.rank:
                continue
            if is_isomorphic(M.minor(dm, cm), N) is not None:
                return M.labels(dm), M.labels(cm)
    return None


def has_minor(M, N) -> bool:
    return find_minor(M, N) is not None
