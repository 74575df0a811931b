"""Connectivity, separations, 2-sums, stability, relaxation and deletion pairs."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import Matroid, bits, compress, gf_matroid_from_codes, popcounts
from ..pfield import gf


@dataclass(frozen=True)
class Separation:
    """A partition (X, Y) with connectivity `value` below `order`; falsy.

    Returned as the failure witness of `is_k_connected`, hence falsy.
    """
    X: frozenset
    Y: frozenset
    order: int
    value: int

    def __bool__(self):
        return False

    @property
    def exact(self):
        return self.value == self.order - 1


def connectivity(M: Matroid, X) -> int:
    """lambda(X) = r(X) + r(E - X) - r(M)."""
    m = M.mask(X)
    return M.r(m) + M.r(M.full & ~m) - M.rank


lambda_ = connectivity


def _lambda_array(M):
    rt = M.rank_table.astype(np.int16)
    return rt + rt[::-1] - M.rank   # rt[full ^ m] == rt[::-1][m]


def separations(M: Matroid, k: int, exact=False):
    """All k-separations as (X, Y) label pairs, each partition listed once."""
    n = M.n
    if n == 0:
        return []
    lam = _lambda_array(M)
    pc = popcounts(n).astype(np.int16)
    idx = np.arange(1 << n)
    ok = (idx & 1).astype(bool) & (pc >= k) & (n - pc >= k)
    ok &= (lam == k - 1) if exact else (lam < k)
    full = M.full
    return [(M.labels(int(m)), M.labels(full ^ int(m))) for m in np.nonzero(ok)[0]]


def is_k_connected(M: Matroid, k: int):
    """True if M has no j-separation for j < k; else a witnessing `Separation`."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    lam = _lambda_array(M)
    n = M.n
    pc = popcounts(n).astype(np.int16) if n else np.zeros(1, dtype=np.int16)
    for j in range(1, k):
        ok = (pc >= j) & (n - pc >= j) & (lam < j)
        hits = np.nonzero(ok)[0]
        if len(hits):
            m = int(hits[0])
            return Separation(M.labels(m), M.labels(M.full ^ m), j, int(lam[m]))
    return True


def is_connected(M):
    return is_k_connected(M, 2) is True


def is_3_connected(M):
    return is_k_connected(M, 3) is True


# ---------------------------------------------------------------------------
# simplification

def parallel_classes(M: Matroid):
    """Parallel classes of non-loops, as masks, in ground order."""
    loops = set(M.loops())
    seen = 0
    out = []
    for e in range(M.n):
        if e in loops or seen >> e & 1:
            continue
        cls = 1 << e
        for f in range(e + 1, M.n):
            if f not in loops and M.r(1 << e | 1 << f) == 1:
                cls |= 1 << f
        seen |= cls
        out.append(cls)
    return out


def simplify(M: Matroid) -> Matroid:
    keep = 0
    for cls in parallel_classes(M):
        keep |= cls & -cls
    return M.restrict(keep)


def cosimplify(M: Matroid) -> Matroid:
    return simplify(M.dual()).dual()


def simplify_cosimplify(M: Matroid, mode: str) -> Matroid:
    if mode == "si":
        return simplify(M)
    if mode == "co":
        return cosimplify(M)
    raise ValueError("mode must be 'si' or 'co'")


def is_simple(M):
    return all(cls.bit_count() == 1 for cls in parallel_classes(M)) and not M.loops()


# ---------------------------------------------------------------------------
# binary test

def fundamental_support(M: Matroid, B=None):
    """Rows B, columns E - B, entry 1 iff B - x + y is a basis."""
    if B is None:
        B = min(M.bases)
    rows = bits(B)
    cols = [e for e in range(M.n) if not B >> e & 1]
    codes = [[1 if (B ^ (1 << x) | (1 << y)) in M.bases else 0 for y in cols] for x in rows]
    return rows, cols, codes


def is_binary(M: Matroid) -> bool:
    """M equals the matroid of its forced GF(2) standard representation."""
    if M.rank == 0 or M.corank == 0:
        return True
    rows, cols, codes = fundamental_support(M)
    N = gf_matroid_from_codes([M.ground[x] for x in rows], [M.ground[y] for y in cols], codes, gf(2))
    return N == M


# ---------------------------------------------------------------------------
# 2-sums

def two_sum(M1: Matroid, M2: Matroid, p) -> Matroid:
    """2-sum along basepoint p, straight from the basis description."""
    if p not in M1.index or p not in M2.index:
        raise ValueError("basepoint missing from a part")
    g1 = [e for e in M1.ground if e != p]
    g2 = [e for e in M2.ground if e != p]
    if set(g1) & set(g2):
        raise ValueError("parts overlap away from the basepoint")
    p1, p2 = 1 << M1.index[p], 1 << M2.index[p]
    k1 = [k for k in range(M1.n) if M1.ground[k] != p]
    k2 = [k for k in range(M2.n) if M2.ground[k] != p]
    sh = len(g1)
    out = set()
    for b1 in M1.bases:
        for b2 in M2.bases:
            if (b1 & p1) and not (b2 & p2) or (b2 & p2) and not (b1 & p1):
                out.add(compress(b1, k1) | compress(b2, k2) << sh)
    return Matroid._raw(g1 + g2, out, M1.rank + M2.rank - 1)


def two_sum_parts(M: Matroid, X, basepoint="p"):
    """Parts (M1 on X + p, M2 on Y + p) of an exact separation (X, Y).

    For lambda = 1 the part on X u p has rank function r1(S) = r(S) and
    r1(S + p) = r(S u Y) - r(Y) + 1; for lambda = 0 the parts are M|X and M|Y.
    """
    Xm = M.mask(X)
    Ym = M.full & ~Xm
    if basepoint in M.index:
        raise ValueError("basepoint label already used")
    lam = M.r(Xm) + M.r(Ym) - M.rank
    if lam == 0:
        return M.restrict(Xm), M.restrict(Ym)
    if lam != 1 or Xm.bit_count() < 2 or Ym.bit_count() < 2:
        raise ValueError("not an exact 2-separation")
    return _part(M, Xm, Ym, basepoint), _part(M, Ym, Xm, basepoint)


def _part(M, Xm, Ym, p):
    xs = bits(Xm)
    t = len(xs)
    rX = M.r(Xm)
    rY = M.r(Ym)

    def r1(sub, with_p):
        S = sum(1 << xs[k] for k in bits(sub))
        return M.r(S | Ym) - rY + 1 if with_p else M.r(S)

    out = []
    for sub in range(1 << t):
        c = sub.bit_count()
        if c == rX and r1(sub, False) == rX:
            out.append(sub)
        elif c == rX - 1 and r1(sub, True) == rX:
            out.append(sub | 1 << t)
    ground = [M.ground[k] for k in xs] + [p]
    return Matroid._raw(ground, out, rX)


def two_sum_expressions(M: Matroid, basepoint="p"):
    """(X, M1, M2) for each exact 1- or 2-separation whose parts recombine to M."""
    out = []
    for k in (1, 2):
        for X, Y in separations(M, k, exact=True):
            M1, M2 = two_sum_parts(M, X, basepoint)
            if k == 1 or two_sum(M1, M2, basepoint) == M:
                out.append((X, M1, M2))
    return out


def is_stable(M: Matroid) -> bool:
    """No direct-sum or 2-sum decomposition into two nonbinary matroids."""
    for X, M1, M2 in two_sum_expressions(M, basepoint=_fresh(M)):
        if not is_binary(M1) and not is_binary(M2):
            return False
    return True


def _fresh(M, stem="_p"):
    k = 0
    while f"{stem}{k}" in M.index:
        k += 1
    return f"{stem}{k}"


# ---------------------------------------------------------------------------
# relaxation

def circuit_hyperplanes(M: Matroid):
    """Sets (as label frozensets) that are both circuits and hyperplanes."""
    out = []
    r = M.rank
    for H in M.nonbases():
        if M.r(H) == r - 1 and all(M.r(H ^ (1 << e)) == r - 1 for e in bits(H)) and M.is_flat(H):
            out.append(M.labels(H))
    return out


def relax_circuit_hyperplane(M: Matroid, H) -> Matroid:
    Hm = M.mask(H)
    r = M.rank
    if not (Hm.bit_count() == r and Hm not in M.bases and M.r(Hm) == r - 1
            and all(M.r(Hm ^ (1 << e)) == r - 1 for e in bits(Hm)) and M.is_flat(Hm)):
        raise ValueError("not a circuit-hyperplane")
    return Matroid._raw(M.ground, M.bases | {Hm}, r)


# ---------------------------------------------------------------------------
# deletion pairs

def is_deletion_pair(M: Matroid, u, v) -> bool:
    uv = M.mask([u, v])
    if M.r(M.full & ~uv) != M.rank:
        return False
    Mu, Mv, Muv = M.delete([u]), M.delete([v]), M.delete([u, v])
    if not is_connected(Muv) or is_binary(Muv):
        return False
    return is_stable(Muv) and is_stable(Mu) and is_stable(Mv)


def deletion_pairs(M: Matroid):
    return [(u, v) for u, v in combinations(M.ground, 2) if is_deletion_pair(M, u, v)]


def find_deletion_pair(M: Matroid):
    """(M or dual(M), u, v) for the first deletion pair found, else None."""
    for N in (M, M.dual()):
        for u, v in combinations(N.ground, 2):
            if is_deletion_pair(N, u, v):
                return N, u, v
    return None
