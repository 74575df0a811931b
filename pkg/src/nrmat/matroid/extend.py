"""Single-element extensions, generalized parallel connection and Delta-Y."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .core import Matroid, bits, popcounts
from .iso import IsoClasses

MAX_EXTEND = 9


# ---------------------------------------------------------------------------
# linear subclasses and modular cuts

def _hyperplane_structure(M):
    flats = M.flats()
    r = M.rank
    hyps = [F for F in flats if M.r(F) == r - 1]
    lines = [F for F in flats if M.r(F) == r - 2]
    on_line = []
    for L in lines:
        hs = [k for k, H in enumerate(hyps) if H & L == L]
        if len(hs) >= 2:
            on_line.append(hs)
    return flats, hyps, on_line


def linear_subclasses(M: Matroid):
    """All sets of hyperplanes meeting every line's pencil in 0, 1 or all members.

    Yields tuples of hyperplane masks.
    """
    flats, hyps, pencils = _hyperplane_structure(M)
    h = len(hyps)
    by_hyp = [[] for _ in range(h)]
    for p, hs in enumerate(pencils):
        for k in hs:
            by_hyp[k].append(p)

    def propagate(state, k):
        # state[k] in {0 out, 1 in, None open}; returns False on conflict
        stack = [k]
        while stack:
            j = stack.pop()
            for p in by_hyp[j]:
                hs = pencils[p]
                ins = [t for t in hs if state[t] == 1]
                outs = [t for t in hs if state[t] == 0]
                if len(ins) >= 2:
                    if outs:
                        return False
                    for t in hs:
                        if state[t] is None:
                            state[t] = 1
                            stack.append(t)
                elif len(ins) == 1 and outs:
                    for t in hs:
                        if state[t] is None:
                            state[t] = 0
                            stack.append(t)
        return True

    def rec(state, k):
        while k < h and state[k] is not None:
            k += 1
        if k == h:
            yield tuple(hyps[t] for t in range(h) if state[t] == 1)
            return
        for v in (0, 1):
            s = list(state)
            s[k] = v
            if propagate(s, k):
                yield from rec(s, k + 1)

    yield from rec([None] * h, 0)


def modular_cut(M: Matroid, subclass):
    """Flats F (masks) all of whose covering hyperplanes lie in the subclass."""
    chosen = set(subclass)
    _, hyps, _ = _hyperplane_structure(M)
    cut = []
    for F in M.flats():
        if all(H in chosen for H in hyps if H & F == F):
            cut.append(F)
    return cut


def extension_by_cut(M: Matroid, cut, label):
    """M + label, placed by the modular cut (list of flat masks); empty = coloop."""
    if label in M.index:
        raise ValueError(f"label {label!r} already in use")
    n, r = M.n, M.rank
    e = 1 << n
    if not cut:
        return Matroid._raw(M.ground + (label,), [b | e for b in M.bases], r + 1)
    cutset = set(cut)
    out = set(M.bases)
    for S in combinations(range(n), r - 1) if r else ():
        m = sum(1 << s for s in S)
        if M.r(m) == r - 1 and M.closure(m) not in cutset:
            out.add(m | e)
    if r == 0:
        out = {0}
    return Matroid._raw(M.ground + (label,), out, r)


def extensions(M: Matroid, label="e", up_to_iso=True, include_coloop=True):
    """Single-element extensions, one per modular cut (deduplicated up to iso)."""
    if M.n > MAX_EXTEND:
        raise ValueError(f"extension enumeration capped at {MAX_EXTEND} elements")
    results = []
    if include_coloop:
        results.append(extension_by_cut(M, [], label))
    for sub in linear_subclasses(M):
        results.append(extension_by_cut(M, modular_cut(M, sub), label))
    if not up_to_iso:
        return results
    classes = IsoClasses()
    for N in results:
        classes.add(N)
    return list(classes)


def coextensions(M: Matroid, label="e", up_to_iso=True):
    return [N.dual() for N in extensions(M.dual(), label, up_to_iso)]


# ---------------------------------------------------------------------------
# generalized parallel connection

def matroid_from_flats(ground, flats):
    """Matroid whose flat lattice is `flats` (masks over ground).

    Rank of a flat is its height in the lattice; rank of a set is the least
    rank among flats containing it.
    """
    n = len(ground)
    flats = sorted(set(flats), key=lambda f: (f.bit_count(), f))
    height = {}
    for F in flats:
        below = [height[G] for G in height if G & F == G and G != F]
        height[F] = max(below) + 1 if below else 0
    big = np.int16(n + 1)
    rt = np.full(1 << n, big, dtype=np.int16)
    for F, h in height.items():
        rt[F] = min(rt[F], h)
    for e in range(n):
        v = rt.reshape(-1, 2, 1 << e)
        np.minimum(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])
    full = (1 << n) - 1
    R = int(rt[full])
    pc = popcounts(n)
    idx = np.nonzero((pc == R) & (rt == R))[0]
    return Matroid._raw(ground, [int(b) for b in idx], R)


def generalized_parallel_connection(M: Matroid, N: Matroid, T):
    """P_T(M, N) for a shared set T that is a modular flat of N, with M|T = N|T."""
    T = frozenset(T)
    if set(M.ground) & set(N.ground) != T:
        raise ValueError("ground sets must meet exactly in T")
    ground = M.ground + tuple(e for e in N.ground if e not in T)
    idx = {e: k for k, e in enumerate(ground)}

    def lift(X, e_of):
        out = 0
        for k in bits(X):
            out |= 1 << idx[e_of.ground[k]]
        return out

    TM, TN = M.mask(T), N.mask(T)
    if not N.is_flat(TN):
        raise ValueError("T must be a flat of N")
    order = sorted(T, key=str)
    for k in range(1 << len(order)):
        S = [order[i] for i in range(len(order)) if k >> i & 1]
        if M.rank_of(S) != N.rank_of(S):
            raise ValueError("M and N must agree on T")
    nflats = {}
    for F in N.flats():
        key = frozenset(N.labels(F & TN))
        nflats.setdefault(key, []).append(lift(F, N))
    found = []
    for F in M.flats():
        key = frozenset(M.labels(F & TM))
        for G in nflats.get(key, ()):
            found.append(lift(F, M) | G)
    return matroid_from_flats(ground, found)


def _k4_on(T, fresh):
    """M(K4) whose triangle 12,13,23 is T = (a, b, c) and 34,24,14 are fresh."""
    a, b, c = T
    ap, bp, cp = fresh
    edges = {a: (1, 2), b: (1, 3), c: (2, 3), ap: (3, 4), bp: (2, 4), cp: (1, 4)}
    labels = [a, b, c, ap, bp, cp]
    bases = []
    for S in combinations(labels, 3):
        parent = {v: v for v in (1, 2, 3, 4)}

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v

        ok = True
        for s in S:
            u, v = edges[s]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if ok:
            bases.append(S)
    return Matroid(labels, bases)


def is_triangle(M, T):
    m = M.mask(T)
    return m.bit_count() == 3 and M.r(m) == 2 and all(M.r(m ^ (1 << e)) == 2 for e in bits(m))


def delta_y(M: Matroid, T, direction="delta") -> Matroid:
    """Delta_T(M) (direction 'delta') or Nabla_T(M) (direction 'nabla')."""
    T = tuple(T)
    if direction in ("nabla", "wye", "Y"):
        D = M.dual()
        if not is_triangle(D, T) or D.r(D.full & ~D.mask(T)) != D.rank:
            raise ValueError("T is not an independent triad")
        return delta_y(D, T, "delta").dual()
    if direction not in ("delta", "D"):
        raise ValueError("direction must be 'delta' or 'nabla'")
    if not is_triangle(M, T):
        raise ValueError("T is not a triangle")
    if M.r(M.full & ~M.mask(T)) != M.rank:
        raise ValueError("T is not coindependent")
    fresh = []
    k = 0
    while len(fresh) < 3:
        lab = f"_dy{k}"
        if lab not in M.index:
            fresh.append(lab)
        k += 1
    K = _k4_on(T, fresh)
    P = generalized_parallel_connection(M, K, T)
    out = P.delete(list(T))
    swap = dict(zip(fresh, T))
    out = out.relabel(swap)
    return out.reorder(M.ground)


def triangles(M):
    return [M.labels(m) for m in (sum(1 << e for e in c) for c in combinations(range(M.n), 3))
            if is_triangle(M, m)]


def coindependent_triangles(M):
    return [T for T in triangles(M) if M.r(M.full & ~M.mask(T)) == M.rank]
