"""Verification suites: every finite statement we can replay, as named checks.

Each check is a plain function returning (ok, detail).  Suites are ordered
lists of check ids; `run_suite` executes them, optionally across worker
processes, and always reports in id order.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .blockseq import (
    BasisContext, exact_separations_of_minor, induced_check, is_blocking_sequence,
    is_split, shortest_blocking_sequence, u24_pattern,
)
from .matroid import catalog
from .matroid.core import basis_exchange_violation, bits, matroid_from_matrix, matroid_from_ring_matrix
from .matroid.extend import coextensions, coindependent_triangles, delta_y, extensions, is_triangle
from .matroid.iso import find_minor, isomorphic
from .matroid.ops import (
    connectivity, find_deletion_pair, is_3_connected, is_binary, separations, two_sum, two_sum_parts,
)
from .pfield import (
    ALPHA, FUNDAMENTALS, ONE, NRElem, apply_automorphism, enumerate_fundamentals,
    list_automorphisms, nr_add,
)
from .pmat import LabeledMatrix, find_twirl, graph, is_p_matrix, is_twirl, pivot
from .repsearch.excluded import excluded_minor_check, identify, is_near_regular, search_excluded_minors
from .repsearch.gfrep import binary_unique_rep_check, is_representable
from .repsearch.nrrep import build_companion, nr_representation_search, unique_rep_check_u24


@dataclass
class CheckResult:
    id: str
    description: str
    status: str          # pass, fail or skip
    elapsed: float
    detail: str = ""


@dataclass
class VerificationSuite:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.status != "fail" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def lines(self, timings=True):
        out = []
        for c in self.checks:
            t = f" ({c.elapsed:.2f}s)" if timings else ""
            out.append(f"[{c.status.upper():4}] {c.id}: {c.description}{t}")
            if c.detail:
                for ln in c.detail.splitlines():
                    out.append(f"       {ln}")
        n_ok = sum(c.status == "pass" for c in self.checks)
        out.append(f"suite {self.suite}: {n_ok}/{len(self.checks)} passed")
        return out

    def as_dict(self, timings=True):
        return {"suite": self.suite, "passed": self.passed,
                "checks": [{"id": c.id, "description": c.description, "status": c.status,
                            "detail": c.detail, **({"elapsed": round(c.elapsed, 4)} if timings else {})}
                           for c in self.checks]}


CHECKS = {}


def check(cid, description):
    def deco(fn):
        CHECKS[cid] = (description, fn)
        return fn
    return deco


def _gf3(rows, cols, entries):
    return matroid_from_matrix(LabeledMatrix(rows, cols, entries, "gf3"))


# ---------------------------------------------------------------------------
# partial field

# image of a^i (1-a)^j, one formula per automorphism (keyed by the image of a)
def _auto_table(image, s, i, j):
    m = NRElem
    if image == m(1, 1, 0):
        return m(s, i, j)
    if image == m(1, 0, 1):
        return m(s, j, i)
    if image == m(1, 0, -1):
        return m(s * (-1) ** j, j, -(i + j))
    if image == m(-1, 1, -1):
        return m(s * (-1) ** i, i, -(i + j))
    if image == m(-1, -1, 1):
        return m(s * (-1) ** i, -(i + j), i)
    if image == m(1, -1, 0):
        return m(s * (-1) ** j, -(i + j), j)
    raise KeyError(image)


@check("field.fundamentals", "the fundamental elements are exactly the eight listed")
def _fundamentals():
    got = enumerate_fundamentals(10)
    ok = got == frozenset(FUNDAMENTALS) and len(got) == 8
    return ok, "fundamentals: " + " ".join(sorted(p.token() for p in got))


@check("field.automorphisms", "six automorphisms forming a closed group, transitive on fundamentals")
def _automorphisms():
    autos = list(list_automorphisms())
    imgs = {g.image_of_alpha for g in autos}
    closed = all(g.compose(h).image_of_alpha in imgs and g.inverse().image_of_alpha in imgs
                 for g in autos for h in autos)
    nontriv = set(FUNDAMENTALS) - {NRElem(0), ONE}
    transitive = all(any(apply_automorphism(g, p) == q for g in autos) for p in nontriv for q in nontriv)
    # each image of a still satisfies 1 - image in P
    relation = all(nr_add(ONE, -g.image_of_alpha) is not None for g in autos)
    rng = random.Random(16)
    table_ok = True
    for _ in range(300):
        s, i, j = rng.choice((1, -1)), rng.randint(-5, 5), rng.randint(-5, 5)
        for g in autos:
            if apply_automorphism(g, NRElem(s, i, j)) != _auto_table(g.image_of_alpha, s, i, j):
                table_ok = False
    ok = len(autos) == 6 and len(imgs) == 6 and closed and transitive and relation and table_ok
    return ok, f"order={len(imgs)} closed={closed} transitive={transitive} table={table_ok}"


def _fixed_by(A, g):
    return A.map_entries(lambda v: g(v)) == A


@check("field.autofixed", "a non-totally-unimodular near-unimodular matrix is fixed only by the identity")
def _autofixed():
    bad = []
    for name, A in catalog.NR_MATRICES.items():
        fixers = [g for g in list_automorphisms() if _fixed_by(A, g)]
        tu_like = is_binary(matroid_from_ring_matrix(A))
        if not tu_like and len(fixers) != 1:
            bad.append(name)
        if tu_like and name == "MK4" and len(fixers) != 6:
            bad.append(name)
    return not bad, "violations: " + (", ".join(bad) or "none")


# ---------------------------------------------------------------------------
# matrices, pivots, twirls

def catalog_p_matrices():
    """The stored U1 matrices plus a found witness for each small near-regular catalog matroid."""
    out = dict(catalog.NR_MATRICES)
    for nm in catalog.names():
        M = catalog.get(nm)
        if M.n > 10 or nm in out or not is_near_regular(M):
            continue
        w = nr_representation_search(M)
        if w:
            out[nm] = w.matrix
    return out


@check("pmat.pivot-random", "random pivots keep P-matrices P-matrices and keep the matroid")
def _pivot_random(n_pivots=600, seed=11):
    rng = random.Random(seed)
    mats = list(catalog_p_matrices().values())
    done = 0
    fails = 0
    while done < n_pivots:
        A = rng.choice(mats)
        M = matroid_from_ring_matrix(A)
        for _ in range(4):
            nz = [(x, y) for x in A.rows for y in A.cols if A[x, y]]
            x, y = rng.choice(nz)
            A = pivot(A, x, y)
            done += 1
            if is_p_matrix(A) is not True or matroid_from_ring_matrix(A) != M:
                fails += 1
    # field matrices as well
    for name, A in catalog.MATRICES.items():
        M = matroid_from_matrix(A)
        for _ in range(10):
            nz = [(x, y) for x in A.rows for y in A.cols if A[x, y]]
            x, y = rng.choice(nz)
            A = pivot(A, x, y)
            done += 1
            if matroid_from_matrix(A) != M:
                fails += 1
    return fails == 0, f"{done} pivots, {fails} failures"


@check("pmat.twirl-dichotomy", "a P-matrix contains a twirl iff its matroid is nonbinary")
def _twirl_dichotomy():
    bad, lines = [], []
    for name, A in catalog_p_matrices().items():
        t = find_twirl(A)
        nonbinary = not is_binary(matroid_from_ring_matrix(A))
        if (t is not None) != nonbinary or (t is not None and not is_twirl(A, t.cycle)):
            bad.append(name)
        lines.append(f"{name}: twirl={'yes' if t else 'no'} nonbinary={'yes' if nonbinary else 'no'}")
    return not bad, "\n".join(lines)


@check("pmat.twirl-pivot", "pivoting a twirl on a nonzero entry leaves a twirl (after removing x, y when larger than 2x2)")
def _twirl_pivot():
    count, bad = 0, 0
    for name in ("U24", "W2", "W3", "W4"):
        A = catalog.NR_MATRICES[name]
        if not is_twirl(A, A.labels()):
            bad += 1
            continue
        for x in A.rows:
            for y in A.cols:
                if not A[x, y]:
                    continue
                P = pivot(A, x, y)
                count += 1
                if len(A.labels()) == 4:
                    ok = is_twirl(P, P.labels())
                else:
                    Q = P.delete([x, y])
                    ok = is_twirl(Q, Q.labels())
                bad += not ok
    return bad == 0, f"{count} pivots checked, {bad} failures"


# ---------------------------------------------------------------------------
# matroid structure

@check("matroid.basis-exchange", "every catalog entry satisfies basis exchange")
def _basis_exchange():
    bad = [nm for nm in catalog.names() if basis_exchange_violation(catalog.get(nm))]
    return not bad, f"{len(catalog.names())} entries, violations: " + (", ".join(bad) or "none")


def _two_sum_instances():
    out = []
    for nm in catalog.names():
        M = catalog.get(nm)
        if M.n > 9:
            continue
        out.append(M)
        for e in M.ground:
            out.append(M.delete([e]))
            out.append(M.contract([e]))
    a = catalog.get("U24").relabel({"4": "p"})
    b = catalog.get("W3").relabel({"1": "p", "2": "w2", "3": "w3", "4": "w4", "5": "w5", "6": "w6"})
    out.append(two_sum(a, b, "p"))
    return out


@check("matroid.two-sum", "the parts of every exact 2-separation recombine to the matroid")
def _two_sum_check():
    seps, bad = 0, 0
    for M in _two_sum_instances():
        for X, Y in separations(M, 2, exact=True):
            if connectivity(M, X) != 1:
                continue
            M1, M2 = two_sum_parts(M, X, "_bp")
            seps += 1
            if two_sum(M1, M2, "_bp") != M:
                bad += 1
    return bad == 0 and seps > 0, f"{seps} exact 2-separations, {bad} mismatches"


@check("matroid.deltay", "Delta-Y raises rank by one, leaves an independent triad, and Y-Delta undoes it")
def _deltay():
    n, bad = 0, []
    for nm in catalog.names():
        M = catalog.get(nm)
        if M.n > 9:
            continue
        for T in coindependent_triangles(M):
            D = delta_y(M, T)
            n += 1
            D_star = D.dual()
            triad = is_triangle(D_star, T) and D.r(D.mask(T)) == 3
            if D.rank != M.rank + 1 or not triad or delta_y(D, T, "nabla") != M:
                bad.append(f"{nm}:{','.join(sorted(T))}")
    return not bad and n > 0, f"{n} triangles, failures: " + (", ".join(bad) or "none")


@check("matroid.deltay-ag23e", "Delta-Y of AG23-e matches the stored 4x4 ternary matrix and is again an excluded minor")
def _deltay_ag():
    M = catalog.get("AG23-e")
    T = coindependent_triangles(M)[0]
    D = delta_y(M, T)
    same = isomorphic(D, catalog.get("DT-AG23-e"))
    rep = excluded_minor_check(D, "Delta(AG23-e)")
    return same and bool(rep), f"triangle {sorted(T)}: isomorphic={same}, excluded minor={bool(rep)}"


# ---------------------------------------------------------------------------
# unique representability

@check("rep.binary-unique", "M(K4) and F7 have unique normalized representations over several fields")
def _binuniq():
    res = []
    for nm, fields in (("MK4", ("gf3", "gf4", "gf5", "gf7")), ("F7", ("gf4", "gf8"))):
        for q in fields:
            res.append((nm, q, binary_unique_rep_check(catalog.get(nm), q)))
    ok = all(r for _, _, r in res)
    return ok, " ".join(f"{nm}/{q}={'yes' if r else 'no'}" for nm, q, r in res)


@check("rep.u24-unique", "U24 has six normalized U1 representations, one automorphism orbit")
def _u24():
    return unique_rep_check_u24(), ""


@check("rep.u24-stabilizer", "U24 has no 3-connected near-regular single-element extension or coextension")
def _u24_stab():
    U = catalog.get("U24")
    found = [N for N in extensions(U) + coextensions(U) if is_3_connected(N) and is_near_regular(N)]
    return not found, f"{len(found)} offending extensions"


@check("rep.field-equivalence", "on the catalog: GF3+GF4+GF5 iff GF3+GF8 iff all five of GF3, GF4, GF5, GF7, GF8")
def _field_equivalence():
    lines, bad = [], []
    for nm in catalog.names():
        M = catalog.get(nm)
        f = {q: is_representable(M, q) for q in ("gf3", "gf4", "gf5", "gf7", "gf8")}
        a = f["gf3"] and f["gf4"] and f["gf5"]
        b = f["gf3"] and f["gf8"]
        c = all(f.values())
        if not (a == b == c):
            bad.append(nm)
        lines.append(f"{nm}: " + "".join("1" if f[q] else "0" for q in f) + f" near-regular={a}")
    return not bad, "\n".join(lines)


# ---------------------------------------------------------------------------
# connectivity relative to a basis

def blockseq_instances(names=("W3", "W4", "P7", "O7")):
    for nm in names:
        M = catalog.get(nm)
        for B in sorted(M.bases):
            yield nm, BasisContext(M, B)


@check("blockseq.dichotomy", "every exact 2-separation of every minor M_B[Z] of W3, W4, P7, O7 has a blocking sequence or is induced, never both")
def _blockseq_dichotomy():
    n, seqs, bad, extra = 0, 0, 0, 0
    for nm, ctx in blockseq_instances():
        for Z in range(1, 1 << ctx.M.n):
            for X, Y in exact_separations_of_minor(ctx, Z, 2):
                s = shortest_blocking_sequence(ctx, X, Y, 2)
                w = induced_check(ctx, X, Y, 2)
                n += 1
                if (s is None) == (w is None):
                    bad += 1
                if s is not None:
                    seqs += 1
                    extra += not _sequence_properties(ctx, X, Y, s)
    return bad == 0 and extra == 0 and n > 0, \
        f"{n} separations, {seqs} blocked, {bad} dichotomy failures, {extra} property failures"


def _sequence_properties(ctx, X, Y, s):
    """Alternation, the sub-sequence property and stability under pivots inside X u Y."""
    M = ctx.M
    idx = [M.index[e] for e in s.elements]
    if any((ctx.B >> a & 1) == (ctx.B >> b & 1) for a, b in zip(idx, idx[1:])):
        return False
    p = len(idx)
    for i in range(p):
        for j in range(i, p):
            Xi = X | sum(1 << e for e in idx[:i])
            Yj = Y | sum(1 << e for e in idx[j + 1:])
            if not is_blocking_sequence(ctx, Xi, Yj, 2, idx[i:j + 1]):
                return False
    inside = bits(X | Y)
    for a in inside:
        for b in inside:
            if a < b and ctx.adjacent(a, b):
                c2 = BasisContext(M, ctx.B ^ (1 << a) ^ (1 << b))
                if not is_blocking_sequence(c2, X, Y, 2, idx):
                    return False
    return True


@check("blockseq.induced-branch", "the induced branch fires on a 2-sum, and 1-separations of a non-3-connected minor")
def _blockseq_induced():
    a = catalog.get("U24").relabel({"4": "p"})
    b = catalog.get("W3").relabel({"1": "p", "2": "w2", "3": "w3", "4": "w4", "5": "w5", "6": "w6"})
    M = two_sum(a, b, "p")
    n, induced, bad = 0, 0, 0
    for B in sorted(M.bases)[:6]:
        ctx = BasisContext(M, B)
        for Z in range(1, 1 << M.n):
            if Z.bit_count() > 6:
                continue
            for k in (1, 2):
                for X, Y in exact_separations_of_minor(ctx, Z, k):
                    s = shortest_blocking_sequence(ctx, X, Y, k)
                    w = induced_check(ctx, X, Y, k)
                    n += 1
                    induced += w is not None
                    bad += (s is None) == (w is None)
    return bad == 0 and induced > 0, f"{n} separations, {induced} induced, {bad} failures"


@check("blockseq.splits", "2-separations are splits, and a split fails to be a 2-separation iff a U24 pattern appears")
def _splits():
    from itertools import combinations
    n, bad = 0, 0
    for nm in ("W3", "P7", "MK4", "F7-", "U24"):
        M = catalog.get(nm)
        for B in sorted(M.bases)[:4]:
            ctx = BasisContext(M, B)
            for m in range(2, M.n - 1):
                for S in combinations(range(M.n), m):
                    X = sum(1 << e for e in S)
                    Y = M.full & ~X
                    sep = connectivity(M, X) < 2
                    sp = is_split(ctx, X, Y)
                    n += 1
                    if sep and not sp:
                        bad += 1
                    if not sp:
                        continue
                    for b, y in ctx.edges():
                        if (X >> b & 1) == (X >> y & 1):
                            continue
                        x1, y1 = (b, y) if X >> b & 1 else (y, b)
                        has = u24_pattern(ctx, X, Y, x1, y1) is not None
                        if has == sep:
                            bad += 1
    return bad == 0, f"{n} partitions, {bad} failures"


@check("blockseq.lambda-matrix", "lambda_B agrees with the rank formula on the represented blocks")
def _lambda_matrix():
    from .blockseq import lambda_B
    from .pmat import matrix_rank
    bad, n = 0, 0
    rng = random.Random(5)
    for nm in ("P8", "W4", "AG23-e"):
        A = catalog.MATRICES[nm]
        M = matroid_from_matrix(A)
        ctx = BasisContext(M, A.rows)
        for _ in range(80):
            side = {e: rng.randint(0, 2) for e in A.labels()}
            X1 = [x for x in A.rows if side[x] == 0]
            X2 = [x for x in A.rows if side[x] == 1]
            Y1 = [y for y in A.cols if side[y] == 0]
            Y2 = [y for y in A.cols if side[y] == 1]
            lhs = lambda_B(ctx, X1 + Y1, X2 + Y2)
            rhs = (matrix_rank(A.submatrix(X2, Y1)) if X2 and Y1 else 0) + \
                  (matrix_rank(A.submatrix(X1, Y2)) if X1 and Y2 else 0)
            n += 1
            bad += lhs != rhs
    return bad == 0, f"{n} samples, {bad} mismatches"


# ---------------------------------------------------------------------------
# the excluded minors

for _nm, _q in catalog.NEAR_REGULAR_EXCLUDED.items():
    def _make(nm=_nm, q=_q):
        def fn():
            rep = excluded_minor_check(catalog.get(nm))
            ok = bool(rep) and q in rep.failing_fields and len(rep.minors) == 2 * catalog.get(nm).n
            return ok, f"fails over {', '.join(rep.failing_fields)}; all {len(rep.minors)} single-element minors near-regular: {rep.minimal}"
        return fn
    check(f"thm1.excluded.{_nm}", f"{_nm} is an excluded minor for near-regularity")(_make())


_EXPECTED_SEARCH = {
    "rank4-corank4": {"F7-", "F7-*", "DT-AG23-e", "P8"},
    "rank3-pg23": {"F7-", "AG23-e"},
}


for _space, _want in _EXPECTED_SEARCH.items():
    def _make(space=_space, want=_want):
        def fn():
            rep = search_excluded_minors(space)
            got = rep.names()
            ok = set(got) == want and len(got) == len(want)
            return ok, rep.table() + f"\nelapsed {rep.elapsed:.1f}s"
        return fn
    check(f"thm1.search.{_space}", f"exhaustive ternary search over {_space} returns {sorted(_want)}")(_make())


@check("thm1.whirl-extensions", "3-connected extensions of W3 with no U25 minor are F7-, P7 and O7")
def _whirl_ext():
    U25 = catalog.get("U25")
    kept = [N for N in extensions(catalog.get("W3")) if is_3_connected(N) and find_minor(N, U25) is None]
    names = sorted(identify(N, ["F7-", "P7", "O7", "F7"]) or "?" for N in kept)
    return names == ["F7-", "O7", "P7"], "found: " + ", ".join(names)


@check("thm1.companion", "the companion of AG23-e differs from it, agrees on both deletions and maps back under phi")
def _companion():
    M = catalog.get("AG23-e")
    found = find_deletion_pair(M)
    if found is None:
        return False, "no deletion pair"
    D, u, v = found
    C = build_companion(D, u, v)
    N = C.N
    back = matroid_from_ring_matrix(C.phi_image())
    near_uni = is_p_matrix(C.A.delete([u])) is True and is_p_matrix(C.A.delete([v])) is True
    ok = N != D and N.delete([u]) == D.delete([u]) and N.delete([v]) == D.delete([v]) and back == D and near_uni
    return ok, (f"pair ({u},{v}) in {D.name}; N != M: {N != D}; phi(A) gives M: {back == D}; "
                f"A-u, A-v P-matrices: {near_uni}\n" + C.A.pretty())


@check("thm1.trivial-minors", "U26 and P7 are not excluded minors")
def _non_examples():
    a = excluded_minor_check(catalog.get("U26"))
    b = excluded_minor_check(catalog.get("P7"))
    return not a and not b and b.near_regular, f"U26 minimal={a.minimal}; P7 near-regular={b.near_regular}"


# ---------------------------------------------------------------------------
# GF(4)

for _nm in catalog.GF4_EXCLUDED:
    def _make(nm=_nm):
        def fn():
            rep = excluded_minor_check(catalog.get(nm), fields=("gf4",))
            return bool(rep), f"gf4={rep.fields['gf4']}; single-element minors all gf4: {rep.minimal}"
        return fn
    check(f"thm4.excluded.{_nm}", f"{_nm} is not GF(4)-representable but all its single-element minors are")(_make())


# ---------------------------------------------------------------------------
# endgame case replays

def _k0_matrix(s):
    return _gf3(["3", "a", "b"], ["1", "2", "v1", "u", "v"],
                [[-1, 1, 1, 0, s], [1, 1, 1, 1, 1], [-1, -1, 0, 1, 1]])


@check("cases.k0.s=1", "k=0, s=1: deleting 2 leaves F7-")
def _k0_a():
    M = _k0_matrix(1)
    return isomorphic(M.delete(["2"]), catalog.get("F7-")), ""


@check("cases.k0.s=-1", "k=0, s=-1: the matrix represents AG23-e")
def _k0_b():
    return isomorphic(_k0_matrix(-1), catalog.get("AG23-e")), ""


_ZROWS = ["3", "vp", "a", "b"]
_ZCOLS = ["1", "2", "vq", "u", "v"]


def _long_k0(s, w):
    return _gf3(_ZROWS, _ZCOLS, [[-1, 1, 0, 0, s], [1, 0, 1, 0, w], [1, 1, 1, 1, 1], [-1, -1, -1, 1, 1]])


def _k2(s, w):
    return _gf3(_ZROWS, _ZCOLS, [[-1, 1, 0, 0, s], [1, 0, 1, 0, w], [1, 1, 1, 1, 1], [0, 0, 0, 1, 1]])


@check("cases.k0-long.w=1", "k=0, longer sequence, w=1: pivot on (3,v) and remove v, 3 to get F7-")
def _lk0_a():
    ctx = BasisContext(_long_k0(1, 1), _ZROWS)
    return isomorphic(ctx.pivot("3", "v").minus(["v", "3"]), catalog.get("F7-")), ""


@check("cases.k0-long.w=-1", "k=0, longer sequence, w=-1: pivot on (a,u) and remove a, u to get F7-")
def _lk0_b():
    ctx = BasisContext(_long_k0(1, -1), _ZROWS)
    return isomorphic(ctx.pivot("a", "u").minus(["a", "u"]), catalog.get("F7-")), ""


_K2_TABLE = {
    (1, 1): ("F7-", ("3", "v"), ("v", "1")),
    (1, -1): ("F7-", ("a", "u"), ("a", "u")),
    (-1, 1): ("F7-", ("a", "u"), ("a", "u")),
    (-1, -1): ("AG23-e", ("3", "v"), ("v",)),
}

for (_s, _w), (_target, _pv, _rm) in _K2_TABLE.items():
    def _make(s=_s, w=_w, target=_target, pv=_pv, rm=_rm):
        def fn():
            ctx = BasisContext(_k2(s, w), _ZROWS).pivot(*pv)
            N = ctx.minus(list(rm))
            return isomorphic(N, catalog.get(target)), \
                f"pivot {pv}, remove {list(rm)}: {identify(N) or 'unnamed'}"
        return fn
    check(f"cases.k2.s={_s},w={_w}", f"k=2 table, (s,w)=({_s},{_w}) yields {_target}")(_make())


_FIVE = {
    "i": (1, 1, 0), "ii": (1, 1, 1), "iii": (1, -1, 1), "iv": (-1, 1, 1), "v": (-1, -1, 0),
}


def five_case_matrix(a, b, g):
    return _gf3(["x", "y", "z", "e"], ["a", "b", "c", "d"],
                [[0, 1, 1, -1], [1, 0, 1, 1], [1, 1, 0, 1], [-1, a, b, g]])


def _five(case):
    a, b, g = _FIVE[case]
    M = five_case_matrix(a, b, g)
    if case in ("i", "iii", "iv"):
        return isomorphic(M, catalog.get("P8")), f"M is {identify(M) or 'unnamed'}"
    F = catalog.get("F7-")
    good = [x for x in "xyz" if isomorphic(M.contract([x]), F)]
    return bool(good), "contractions giving F7-: " + (", ".join(f"M/{x}" for x in good) or "none")


for _c in _FIVE:
    def _make(c=_c):
        return lambda: _five(c)
    _desc = "M is P8" if _c in ("i", "iii", "iv") else "a single-row contraction is F7-"
    check(f"cases.five.{_c}", f"final case ({_c}): {_desc}")(_make())


@check("cases.five.ii-label", "final case (ii): the contraction by y is F7- as the text labels it")
def _five_ii_label():
    M = five_case_matrix(*_FIVE["ii"])
    N = M.contract(["y"])
    return isomorphic(N, catalog.get("F7-")), f"M/y is {identify(N) or 'unnamed'}; M/x is {identify(M.contract(['x'])) or 'unnamed'}"


@check("cases.five.p7", "deleting row e of the final-case matrix leaves P7")
def _five_p7():
    M = five_case_matrix(1, 1, 0)
    return isomorphic(M.contract(["e"]), catalog.get("P7")), ""


# ---------------------------------------------------------------------------
# suites

def _ids(prefix):
    return [c for c in CHECKS if c.startswith(prefix)]


SUITES = {
    "props": _ids("field.") + _ids("pmat.") + _ids("matroid.") + _ids("rep.") + _ids("blockseq."),
    "thm1": _ids("thm1."),
    "thm4": _ids("thm4."),
    "cases": [c for c in _ids("cases.") if c != "cases.five.ii-label"],
}
SUITES["all"] = SUITES["props"] + SUITES["thm1"] + SUITES["thm4"] + SUITES["cases"]

def run_check(cid) -> CheckResult:
    desc, fn = CHECKS[cid]
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
        status = "pass" if ok else "fail"
    except Exception as exc:          # a crash is a failed check, with the reason kept
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(cid, desc, status, time.perf_counter() - t0, detail)


def run_suite(suite, jobs=1, only=None) -> VerificationSuite:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    ids = list(SUITES[suite]) if only is None else [c for c in SUITES[suite] if c in only]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(run_check, ids))
    else:
        results = [run_check(c) for c in ids]
    return VerificationSuite(suite, results)
