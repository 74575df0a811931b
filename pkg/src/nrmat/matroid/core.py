"""Matroids as explicit basis families over ground sets of at most 16 labels.

Subsets are bitmasks over the ground order.  The rank function is a dense
numpy table over all 2^n subsets, built lazily from the bases with two
subset-lattice sweeps (downward closure for independence, then an upward
max for rank).
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..pmat import LabeledMatrix, det

MAX_GROUND = 16

_POPCOUNT = {}


def popcounts(n):
    """int8 array of popcounts for all masks below 2^n."""
    if n not in _POPCOUNT:
        pc = np.zeros(1 << n, dtype=np.int8)
        for e in range(n):
            pc.reshape(-1, 2, 1 << e)[:, 1, :] += 1
        _POPCOUNT[n] = pc
    return _POPCOUNT[n]


def bits(mask):
    """Indices of the set bits of mask, ascending."""
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def compress(mask, keep):
    """Re-index mask onto the positions listed (ascending) in keep."""
    out = 0
    for new, old in enumerate(keep):
        if mask >> old & 1:
            out |= 1 << new
    return out


class Matroid:
    """A matroid on an ordered ground tuple with bases stored as bitmasks."""

    __slots__ = ("ground", "index", "bases", "rank", "name", "_rt", "_key", "_hash")

    def __init__(self, ground, bases, name=None, validate=False):
        ground = tuple(ground)
        if len(ground) > MAX_GROUND:
            raise ValueError(f"ground sets are capped at {MAX_GROUND} elements")
        if len(set(ground)) != len(ground):
            raise ValueError("duplicate ground labels")
        index = {e: k for k, e in enumerate(ground)}
        masks = set()
        for B in bases:
            if isinstance(B, int):
                m = B
                if m >> len(ground):
                    raise ValueError("basis mask outside the ground set")
            else:
                m = 0
                for e in B:
                    if e not in index:
                        raise ValueError(f"basis element {e!r} not in ground set")
                    m |= 1 << index[e]
            masks.add(m)
        if not masks:
            raise ValueError("a matroid has at least one basis")
        sizes = {m.bit_count() for m in masks}
        if len(sizes) != 1:
            raise ValueError("bases have different sizes")
        self.ground = ground
        self.index = index
        self.bases = frozenset(masks)
        self.rank = sizes.pop()
        self.name = name
        self._rt = None
        self._key = None
        self._hash = None
        if validate:
            bad = basis_exchange_violation(self)
            if bad is not None:
                raise ValueError(f"basis exchange fails at {bad}")

    @classmethod
    def _raw(cls, ground, masks, rank, name=None):
        M = cls.__new__(cls)
        M.ground = tuple(ground)
        M.index = {e: k for k, e in enumerate(M.ground)}
        M.bases = frozenset(masks)
        M.rank = rank
        M.name = name
        M._rt = None
        M._key = None
        M._hash = None
        return M

    # -- sizes and subsets
    @property
    def n(self):
        return len(self.ground)

    @property
    def corank(self):
        return self.n - self.rank

    @property
    def full(self):
        return (1 << self.n) - 1

    def mask(self, S):
        if isinstance(S, int):
            return S
        m = 0
        for e in S:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise ValueError(f"{e!r} is not in the ground set") from None
        return m

    def labels(self, mask):
        return frozenset(self.ground[k] for k in bits(mask))

    def ordered(self, mask):
        return tuple(self.ground[k] for k in bits(mask))

    def basis_family(self):
        return frozenset(self.labels(b) for b in self.bases)

    # -- rank
    @property
    def rank_table(self):
        if self._rt is None:
            n = self.n
            ind = np.zeros(1 << n, dtype=bool)
            ind[np.fromiter(self.bases, dtype=np.int64)] = True
            for e in range(n):
                v = ind.reshape(-1, 2, 1 << e)
                v[:, 0, :] |= v[:, 1, :]
            rt = np.where(ind, popcounts(n), 0).astype(np.int8)
            for e in range(n):
                v = rt.reshape(-1, 2, 1 << e)
                np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
            rt.flags.writeable = False
            self._rt = rt
        return self._rt

    def r(self, mask):
        return int(self.rank_table[mask])

    def rank_of(self, S):
        return self.r(self.mask(S))

    def is_basis(self, S):
        return self.mask(S) in self.bases

    def is_independent(self, S):
        m = self.mask(S)
        return self.r(m) == m.bit_count()

    def closure(self, S):
        m = self.mask(S)
        rk = self.r(m)
        for e in range(self.n):
            if not m >> e & 1 and self.r(m | 1 << e) == rk:
                m |= 1 << e
        return m

    def is_flat(self, S):
        m = self.mask(S)
        return self.closure(m) == m

    def flats(self):
        """All flats as masks (numpy sweep: S is a flat iff no e outside raises rank by 0)."""
        rt = self.rank_table.astype(np.int16)
        n = self.n
        ok = np.ones(1 << n, dtype=bool)
        idx = np.arange(1 << n)
        for e in range(n):
            b = 1 << e
            out = (idx & b) == 0
            ok &= ~(out & (rt[idx | b] == rt))
        return [int(m) for m in np.nonzero(ok)[0]]

    def loops(self):
        return [e for e in range(self.n) if self.r(1 << e) == 0]

    def coloops(self):
        full = self.full
        return [e for e in range(self.n) if self.r(full ^ (1 << e)) < self.rank]

    def circuits(self):
        """Minimal dependent sets, as masks."""
        rt = self.rank_table
        out = []
        for k in range(1, self.rank + 2):
            for c in combinations(range(self.n), k):
                m = sum(1 << e for e in c)
                if rt[m] == k - 1 and all(rt[m ^ (1 << e)] == k - 1 for e in c):
                    out.append(m)
        return out

    def hyperplanes(self):
        return [f for f in self.flats() if self.r(f) == self.rank - 1]

    def nonbases(self):
        """r-subsets that are not bases."""
        out = []
        for c in combinations(range(self.n), self.rank):
            m = sum(1 << e for e in c)
            if m not in self.bases:
                out.append(m)
        return out

    # -- constructions
    def dual(self):
        full = self.full
        return Matroid._raw(self.ground, [full ^ b for b in self.bases], self.n - self.rank,
                            _dual_name(self.name))

    def minor(self, delete=(), contract=()):
        D, C = self.mask(delete), self.mask(contract)
        if D & C:
            raise ValueError("delete and contract sets overlap")
        if not D and not C:
            return self
        S = self.full & ~D
        rS = self.r(S)
        rC = self.r(C)
        keep = [k for k in range(self.n) if S >> k & 1 and not C >> k & 1]
        out = set()
        for b in self.bases:
            bs = b & S
            if bs.bit_count() == rS and (bs & C).bit_count() == rC:
                out.add(compress(bs & ~C, keep))
        return Matroid._raw([self.ground[k] for k in keep], out, rS - rC)

    def delete(self, D):
        return self.minor(delete=D)

    def contract(self, C):
        return self.minor(contract=C)

    def restrict(self, S):
        return self.minor(delete=self.full & ~self.mask(S))

    def relabel(self, mapping):
        g = tuple(mapping.get(e, e) for e in self.ground)
        return Matroid._raw(g, self.bases, self.rank, self.name)

    def reorder(self, ground):
        """Same matroid with the ground tuple listed in a new order."""
        ground = tuple(ground)
        if set(ground) != set(self.ground) or len(ground) != self.n:
            raise ValueError("not a reordering of the ground set")
        perm = [self.index[e] for e in ground]
        return Matroid._raw(ground, [compress_perm(b, perm) for b in self.bases], self.rank, self.name)

    def direct_sum(self, other):
        if set(self.ground) & set(other.ground):
            raise ValueError("ground sets overlap")
        sh = self.n
        bs = [a | (b << sh) for a in self.bases for b in other.bases]
        return Matroid._raw(self.ground + other.ground, bs, self.rank + other.rank)

    def with_name(self, name):
        M = Matroid._raw(self.ground, self.bases, self.rank, name)
        M._rt = self._rt
        return M

    # -- equality is label-level and independent of ground order
    def key(self):
        if self._key is None:
            self._key = (frozenset(self.ground), self.basis_family())
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        if self.ground == other.ground:
            return self.bases == other.bases
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        nm = f"{self.name} " if self.name else ""
        return f"<Matroid {nm}n={self.n} r={self.rank} bases={len(self.bases)}>"


def _dual_name(name):
    if not name:
        return None
    return name[:-1] if name.endswith("*") else name + "*"


def compress_perm(mask, perm):
    """Mask over the new order where new position k holds old element perm[k]."""
    out = 0
    for new, old in enumerate(perm):
        if mask >> old & 1:
            out |= 1 << new
    return out


def basis_exchange_violation(M: Matroid):
    """None if the basis axioms hold, else an offending (B1, B2, e) triple."""
    bases = M.bases
    for b1 in bases:
        for b2 in bases:
            for e in bits(b1 & ~b2):
                base = b1 & ~(1 << e)
                if not any((base | 1 << f) in bases for f in bits(b2 & ~b1)):
                    return (M.ordered(b1), M.ordered(b2), M.ground[e])
    return None


def uniform(r, n, prefix="e"):
    ground = [f"{prefix}{k}" for k in range(n)]
    return Matroid._raw(ground, [sum(1 << e for e in c) for c in combinations(range(n), r)], r,
                        f"U{r}{n}")


# ---------------------------------------------------------------------------
# matroids of matrices

def _gf_codes(A):
    return [[v.value for v in row] for row in A.entries]


def matroid_from_matrix(A: LabeledMatrix, name=None) -> Matroid:
    """Bases {X} u {X ^ Z : det A[Z] != 0} on ground X u Y (rows first).

    A near-regular input must be a P-matrix for the result to be a matroid
    representation in the partial-field sense; the zero test itself is exact
    for any ring matrix, so `matroid_from_ring_matrix` skips that check.
    """
    if A.kind == "nearreg":
        from ..pmat import is_p_matrix
        if is_p_matrix(A) is not True:
            raise ValueError("near-regular input is not a P-matrix")
    return matroid_from_ring_matrix(A, name)


def matroid_from_ring_matrix(A: LabeledMatrix, name=None) -> Matroid:
    X, Y = A.rows, A.cols
    r, c = len(X), len(Y)
    ground = X + Y
    bases = []
    if A.kind == "nearreg":
        nonzero = lambda R, C: bool(det(A.submatrix([X[i] for i in R], [Y[j] for j in C])))
    else:
        F = A.field
        codes = _gf_codes(A)
        nonzero = lambda R, C: F.det([[codes[i][j] for j in C] for i in R]) != 0
    full_rows = (1 << r) - 1
    for k in range(0, min(r, c) + 1):
        for R in combinations(range(r), k):
            rm = sum(1 << i for i in R)
            for C in combinations(range(c), k):
                if k == 0 or nonzero(R, C):
                    bases.append((full_rows & ~rm) | sum(1 << (r + j) for j in C))
    return Matroid._raw(ground, bases, r, name)


def gf_matroid_from_codes(rows, cols, codes, F, name=None) -> Matroid:
    """Fast path: [I|A] over GF(q) given as integer codes."""
    r, c = len(rows), len(cols)
    n = r + c
    # columns of [I|A]
    colvecs = [[1 if i == k else 0 for i in range(r)] for k in range(r)]
    colvecs += [[codes[i][j] for i in range(r)] for j in range(c)]
    bases = []
    for S in combinations(range(n), r):
        if F.det([[colvecs[s][i] for s in S] for i in range(r)]):
            bases.append(sum(1 << s for s in S))
    return Matroid._raw(tuple(rows) + tuple(cols), bases, r, name)
