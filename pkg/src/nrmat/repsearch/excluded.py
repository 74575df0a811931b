"""Near-regularity, excluded-minor checks and the exhaustive ternary searches."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product

import numpy as np

from ..matroid.core import Matroid
from ..matroid.iso import IsoClasses, is_isomorphic
from .gfrep import is_representable

NEAR_REGULAR_FIELDS = ("gf3", "gf4", "gf5")


def is_near_regular(M: Matroid) -> bool:
    """Representable over GF(3), GF(4) and GF(5)."""
    return all(is_representable(M, q) for q in NEAR_REGULAR_FIELDS)


def field_profile(M: Matroid, fields=NEAR_REGULAR_FIELDS):
    return {q: is_representable(M, q) for q in fields}


@dataclass
class MinorVerdict:
    op: str          # "delete" or "contract"
    element: object
    near_regular: bool


@dataclass
class ExcludedMinorReport:
    """Truthy iff M is an excluded minor for near-regularity."""
    name: str
    fields: dict
    minors: list = field(default_factory=list)

    @property
    def near_regular(self):
        return all(self.fields.values())

    @property
    def failing_fields(self):
        return [q for q, ok in self.fields.items() if not ok]

    @property
    def minimal(self):
        return all(m.near_regular for m in self.minors)

    def __bool__(self):
        return not self.near_regular and self.minimal

    def lines(self):
        out = [f"{self.name}: " + ", ".join(f"{q}={'yes' if ok else 'no'}" for q, ok in self.fields.items())]
        for m in self.minors:
            out.append(f"  {m.op} {m.element}: {'near-regular' if m.near_regular else 'NOT near-regular'}")
        out.append(f"  excluded minor: {'yes' if self else 'no'}")
        return out


def excluded_minor_check(M: Matroid, name=None, fields=NEAR_REGULAR_FIELDS,
                         minor_test=None, always_minors=True) -> ExcludedMinorReport:
    """Is M outside the class while every single-element deletion and contraction is inside?

    `fields` / `minor_test` allow the same check for other field classes.
    """
    name = name or M.name or "M"
    prof = {q: is_representable(M, q) for q in fields}
    rep = ExcludedMinorReport(name, prof)
    if all(prof.values()) and not always_minors:
        return rep
    test = minor_test or (lambda N: all(is_representable(N, q) for q in fields))
    for e in M.ground:
        rep.minors.append(MinorVerdict("delete", e, test(M.delete([e]))))
        rep.minors.append(MinorVerdict("contract", e, test(M.contract([e]))))
    return rep


def gf4_excluded_minor_check(M: Matroid, name=None):
    return excluded_minor_check(M, name, fields=("gf4",))


# ---------------------------------------------------------------------------
# ternary enumeration

def _canonical_pattern(rows, c):
    """Least sorted row tuple over all column permutations (rows are c-bit masks)."""
    best = None
    for perm in permutations(range(c)):
        t = tuple(sorted(sum(1 << perm[j] for j in range(c) if row >> j & 1) for row in rows))
        if best is None or t < best:
            best = t
    return best


def support_patterns(r, c):
    """Row-mask tuples, one per r x c 0/1 pattern up to row and column permutation."""
    seen = set()
    out = []
    for rows in combinations_with_replacement(range(1 << c), r):
        can = _canonical_pattern(rows, c)
        if can not in seen:
            seen.add(can)
            out.append(can)
    return out


def _forest_mask(rows, r, c):
    parent = list(range(r + c))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    forest = set()
    for i in range(r):
        for j in range(c):
            if rows[i] >> j & 1:
                a, b = find(i), find(r + j)
                if a != b:
                    parent[a] = b
                    forest.add((i, j))
    return forest


def _minor_index(r, c):
    pairs = [((), ())]
    for k in range(1, min(r, c) + 1):
        for R in combinations(range(r), k):
            for C in combinations(range(c), k):
                pairs.append((R, C))
    return pairs


def _batch_minors_nonzero(mats, r, c, p=3):
    """Boolean array (N, P): which minors (in `_minor_index` order) are nonzero mod p."""
    pairs = _minor_index(r, c)
    N = mats.shape[0]
    val = {((), ()): np.ones(N, dtype=np.int64)}
    for R, C in pairs[1:]:
        r0 = R[0]
        acc = np.zeros(N, dtype=np.int64)
        rest = R[1:]
        for t, col in enumerate(C):
            sub = val[(rest, C[:t] + C[t + 1:])]
            term = mats[:, r0, col] * sub
            acc = acc + term if t % 2 == 0 else acc - term
        val[(R, C)] = acc % p
    return np.stack([val[pc] != 0 for pc in pairs], axis=1), pairs


def ternary_matrices(r, c):
    """Forest-normalized GF(3) matrices, one support pattern per permutation class."""
    for rows in support_patterns(r, c):
        forest = _forest_mask(rows, r, c)
        free = [(i, j) for i in range(r) for j in range(c) if rows[i] >> j & 1 and (i, j) not in forest]
        base = np.zeros((r, c), dtype=np.int64)
        for i in range(r):
            for j in range(c):
                if rows[i] >> j & 1:
                    base[i, j] = 1
        if not free:
            yield base[None, :, :]
            continue
        vals = np.array(list(product((1, 2), repeat=len(free))), dtype=np.int64)
        batch = np.repeat(base[None, :, :], len(vals), axis=0)
        for k, (i, j) in enumerate(free):
            batch[:, i, j] = vals[:, k]
        yield batch


@dataclass
class EnumStats:
    matrices: int = 0
    labeled: int = 0
    classes: int = 0


def enumerate_ternary_matroids(max_rank, max_corank, stats=None):
    """Every GF(3)-representable matroid with rank <= max_rank and corank <= max_corank,
    once per isomorphism class."""
    if max_rank > 4 or max_corank > 4:
        raise ValueError("rank and corank are capped at 4")
    stats = stats if stats is not None else EnumStats()
    for r in range(max_rank + 1):
        for c in range(max_corank + 1):
            rows = [str(k + 1) for k in range(r)]
            cols = [str(r + k + 1) for k in range(c)]
            ground = rows + cols
            classes = IsoClasses()
            if r == 0 or c == 0:
                stats.matrices += 1
                stats.labeled += 1
                M = Matroid._raw(ground, [(1 << r) - 1], r)
                classes.add(M)
                stats.classes += 1
                yield M
                continue
            pairs = _minor_index(r, c)
            full_rows = (1 << r) - 1
            pmasks = []
            for R, C in pairs:
                rm = sum(1 << i for i in R)
                pmasks.append((full_rows & ~rm) | sum(1 << (r + j) for j in C))
            pmasks = np.array(pmasks, dtype=np.int64)
            seen = set()
            for batch in ternary_matrices(r, c):
                stats.matrices += len(batch)
                nz, _ = _batch_minors_nonzero(batch, r, c)
                packed = np.packbits(nz, axis=1)
                for k in range(len(batch)):
                    key = packed[k].tobytes()
                    if key in seen:
                        continue
                    seen.add(key)
                    stats.labeled += 1
                    M = Matroid._raw(ground, pmasks[nz[k]].tolist(), r)
                    if classes.add(M):
                        stats.classes += 1
                        yield M


# ---------------------------------------------------------------------------
# searches

@dataclass
class SearchReport:
    space: str
    parameters: dict
    found: list = field(default_factory=list)        # (Matroid, ExcludedMinorReport, catalog name)
    counters: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def names(self):
        return [nm for _, _, nm in self.found]

    def table(self):
        lines = [f"space {self.space}: {len(self.found)} excluded minors"]
        lines.append(f"{'name':<12}{'n':>4}{'rank':>6}{'corank':>8}{'bases':>8}  fails")
        for M, rep, nm in self.found:
            lines.append(f"{nm:<12}{M.n:>4}{M.rank:>6}{M.corank:>8}{len(M.bases):>8}  "
                         + ",".join(rep.failing_fields))
        lines.append("counters: " + ", ".join(f"{k}={v}" for k, v in self.counters.items()))
        return "\n".join(lines)


def identify(M, names=None):
    """Catalog name of a matroid isomorphic to M, or None."""
    from ..matroid import catalog
    for nm in names or catalog.names():
        N = catalog.get(nm)
        if (N.n, N.rank, len(N.bases)) == (M.n, M.rank, len(M.bases)) and is_isomorphic(M, N) is not None:
            return nm
    return None


def pg23_restrictions(stats=None):
    """All restrictions of PG(2,3), once per isomorphism class."""
    from ..matroid.catalog import get
    P = get("PG23")
    stats = stats if stats is not None else EnumStats()
    classes = IsoClasses()
    for S in range(1, 1 << P.n):
        stats.matrices += 1
        M = P.restrict(S)
        stats.labeled += 1
        if classes.add(M):
            stats.classes += 1
            yield M


def search_excluded_minors(space: str) -> SearchReport:
    t0 = time.perf_counter()
    stats = EnumStats()
    if space == "rank4-corank4":
        gen = enumerate_ternary_matroids(4, 4, stats)
        params = {"max_rank": 4, "max_corank": 4, "fields": list(NEAR_REGULAR_FIELDS)}
    elif space == "rank3-pg23":
        gen = pg23_restrictions(stats)
        params = {"ambient": "PG(2,3)", "subsets": 2 ** 13 - 1, "fields": list(NEAR_REGULAR_FIELDS)}
    else:
        raise ValueError(f"unknown search space {space!r}")
    report = SearchReport(space, params)
    checked = 0
    for M in gen:
        checked += 1
        rep = excluded_minor_check(M, always_minors=False)
        if rep:
            nm = identify(M) or f"new{len(report.found)}"
            report.found.append((M.with_name(nm), rep, nm))
    report.counters = {"matrices": stats.matrices, "labeled": stats.labeled,
                       "classes": stats.classes, "checked": checked}
    report.elapsed = time.perf_counter() - t0
    return report
