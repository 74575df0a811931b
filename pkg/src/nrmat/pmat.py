"""Labeled matrices over U1 or a small finite field.

Near-regular matrices store `RingElem` entries (so that non-unit ring values
produced by determinants and Schur complements stay exact); finite-field
matrices store `FieldElem` entries.  The kind is ``"nearreg"`` or a field id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .pfield import (
    FIELD_IDS, FieldElem, NRElem, RingElem, RING_ONE, RING_ZERO, gf,
    p_membership,
)

__all__ = [
    "LabeledMatrix", "BipartiteGraph", "TwirlCertificate", "FailingSubmatrix",
    "det", "det_cofactor", "is_p_matrix", "pivot", "normalize", "graph",
    "lex_forest", "induced_cycle_through", "induced_cycles", "find_twirl",
    "shrink_twirl", "matrix_rank", "parse_pmx", "format_pmx", "read_pmx",
    "write_pmx", "scaling_factors",
]

KINDS = ("nearreg",) + FIELD_IDS


def _coerce(kind, v):
    if kind == "nearreg":
        if isinstance(v, RingElem):
            return v
        if isinstance(v, NRElem):
            return v.to_ring()
        if isinstance(v, int):
            return RingElem.integer(v)
        raise TypeError(f"cannot use {v!r} as a near-regular entry")
    F = gf(kind)
    if isinstance(v, FieldElem):
        if v.field is not F:
            raise ValueError(f"entry {v!r} is not over {kind}")
        return v
    if isinstance(v, int):
        return F(v % F.q) if F.prime else F(v)
    raise TypeError(f"cannot use {v!r} as a {kind} entry")


class LabeledMatrix:
    """An X x Y matrix with ordered, disjoint row and column label tuples."""

    __slots__ = ("rows", "cols", "entries", "kind", "_ri", "_ci")

    def __init__(self, rows, cols, entries, kind="nearreg"):
        if kind not in KINDS:
            raise ValueError(f"unknown scalar kind {kind!r}")
        rows, cols = tuple(rows), tuple(cols)
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("duplicate labels")
        if set(rows) & set(cols):
            raise ValueError("row and column labels must be disjoint")
        entries = [list(r) for r in entries]
        if len(entries) != len(rows) or any(len(r) != len(cols) for r in entries):
            raise ValueError("entry array does not match the label sets")
        self.rows, self.cols, self.kind = rows, cols, kind
        self.entries = tuple(tuple(_coerce(kind, v) for v in r) for r in entries)
        self._ri = {x: k for k, x in enumerate(rows)}
        self._ci = {y: k for k, y in enumerate(cols)}

    # -- basic access
    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    @property
    def field(self):
        return None if self.kind == "nearreg" else gf(self.kind)

    def zero(self):
        return RING_ZERO if self.kind == "nearreg" else gf(self.kind)(0)

    def one(self):
        return RING_ONE if self.kind == "nearreg" else gf(self.kind)(1)

    def __getitem__(self, xy):
        x, y = xy
        return self.entries[self._ri[x]][self._ci[y]]

    def nr(self, x, y) -> NRElem:
        """Entry as a partial-field element (near-regular kind only)."""
        q = p_membership(self[x, y])
        if q is None:
            raise ValueError(f"entry ({x},{y}) is not in U1")
        return q

    def labels(self):
        return self.rows + self.cols

    def submatrix(self, rows, cols) -> LabeledMatrix:
        rows, cols = list(rows), list(cols)
        ri = [self._ri[x] for x in rows]
        ci = [self._ci[y] for y in cols]
        return LabeledMatrix(rows, cols, [[self.entries[a][b] for b in ci] for a in ri], self.kind)

    def restrict(self, Z) -> LabeledMatrix:
        """A[Z]: rows and columns whose labels lie in Z, in original order."""
        Z = set(Z)
        return self.submatrix([x for x in self.rows if x in Z], [y for y in self.cols if y in Z])

    def delete(self, Z) -> LabeledMatrix:
        """A - Z."""
        Z = set(Z)
        return self.restrict(set(self.labels()) - Z)

    def transpose(self) -> LabeledMatrix:
        return LabeledMatrix(self.cols, self.rows, list(zip(*self.entries)) if self.rows else
                             [[] for _ in self.cols], self.kind)

    def relabel(self, mapping) -> LabeledMatrix:
        g = lambda s: mapping.get(s, s)
        return LabeledMatrix([g(x) for x in self.rows], [g(y) for y in self.cols], self.entries, self.kind)

    def map_entries(self, f, kind=None) -> LabeledMatrix:
        kind = kind or self.kind
        return LabeledMatrix(self.rows, self.cols, [[f(v) for v in r] for r in self.entries], kind)

    def permuted(self, rows, cols) -> LabeledMatrix:
        """Same matrix, labels reordered."""
        if set(rows) != set(self.rows) or set(cols) != set(self.cols):
            raise ValueError("not a reordering of the labels")
        return self.submatrix(rows, cols)

    def with_column(self, label, column) -> LabeledMatrix:
        entries = [list(r) + [column[k]] for k, r in enumerate(self.entries)]
        return LabeledMatrix(self.rows, self.cols + (label,), entries, self.kind)

    def astuple(self):
        return (self.kind, self.rows, self.cols, self.entries)

    def __eq__(self, other):
        if not isinstance(other, LabeledMatrix):
            return NotImplemented
        if self.kind != other.kind or set(self.rows) != set(other.rows) or set(self.cols) != set(other.cols):
            return False
        return all(self[x, y] == other[x, y] for x in self.rows for y in self.cols)

    def __hash__(self):
        return hash((self.kind, frozenset((x, y, self[x, y]) for x in self.rows for y in self.cols)))

    def __repr__(self):
        return f"LabeledMatrix({self.kind}, rows={list(self.rows)}, cols={list(self.cols)})"

    def pretty(self):
        tok = _token_fn(self.kind)
        cells = [[tok(v) for v in r] for r in self.entries]
        w = max([len(str(c)) for c in self.cols] + [len(t) for r in cells for t in r] + [1])
        lw = max([len(str(x)) for x in self.rows] + [1])
        lines = [" " * lw + " " + " ".join(str(c).rjust(w) for c in self.cols)]
        for x, r in zip(self.rows, cells):
            lines.append(str(x).rjust(lw) + " " + " ".join(t.rjust(w) for t in r))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# determinants and rank

def _ring_div(kind, a, b):
    if kind == "nearreg":
        return a.exact_div(b)
    return a / b


def _bareiss(m, kind):
    """In-place fraction-free elimination with full pivoting.

    Returns (rank, det_sign_and_value) where the value is only meaningful
    for square full-rank input.
    """
    nr = len(m)
    nc = len(m[0]) if nr else 0
    one = RING_ONE if kind == "nearreg" else gf(kind)(1)
    prev = one
    sign = 1
    k = 0
    while k < min(nr, nc):
        piv = next(((i, j) for j in range(k, nc) for i in range(k, nr) if m[i][j]), None)
        if piv is None:
            break
        i, j = piv
        if i != k:
            m[i], m[k] = m[k], m[i]
            sign = -sign
        if j != k:
            for row in m:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, nr):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, nc):
                v = row_i[j] * p - mik * row_k[j]
                row_i[j] = _ring_div(kind, v, prev) if v else v
            row_i[k] = row_i[k] - row_i[k]
        prev = p
        k += 1
    return k, (prev if sign > 0 else -prev)


def det(A: LabeledMatrix):
    """Exact determinant of a square labeled matrix."""
    n, c = A.shape
    if n != c:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return A.one()
    if n <= 3:
        return det_cofactor(A)
    m = [list(r) for r in A.entries]
    rk, d = _bareiss(m, A.kind)
    return d if rk == n else A.zero()


def det_cofactor(A: LabeledMatrix):
    """Determinant by Laplace expansion along the first row."""
    n, c = A.shape
    if n != c:
        raise ValueError("determinant of a non-square matrix")

    def rec(rows, cols):
        if not rows:
            return A.one()
        r0 = rows[0]
        total = A.zero()
        for k, cc in enumerate(cols):
            v = A.entries[r0][cc]
            if v:
                term = v * rec(rows[1:], cols[:k] + cols[k + 1:])
                total = total + term if k % 2 == 0 else total - term
        return total

    return rec(tuple(range(n)), tuple(range(n)))


def matrix_rank(A: LabeledMatrix) -> int:
    if not A.rows or not A.cols:
        return 0
    return _bareiss([list(r) for r in A.entries], A.kind)[0]


@dataclass(frozen=True)
class FailingSubmatrix:
    """Witness that a matrix is not a P-matrix; falsy."""
    rows: tuple
    cols: tuple
    value: RingElem

    def __bool__(self):
        return False

    @property
    def labels(self):
        return frozenset(self.rows + self.cols)


def is_p_matrix(A: LabeledMatrix):
    """True, or a falsy `FailingSubmatrix` with a subdeterminant outside U1."""
    if A.kind != "nearreg":
        raise ValueError("P-matrix test needs a near-regular matrix")
    nr, nc = A.shape
    for k in range(1, min(nr, nc) + 1):
        for R in combinations(A.rows, k):
            for C in combinations(A.cols, k):
                d = det(A.submatrix(R, C))
                if p_membership(d) is None:
                    return FailingSubmatrix(R, C, d)
    return True


# ---------------------------------------------------------------------------
# pivoting and scaling

def _inverse(kind, a):
    if not a:
        raise ZeroDivisionError("pivot on a zero entry")
    return a.inverse()


def pivot(A: LabeledMatrix, x, y) -> LabeledMatrix:
    """A^{xy}: swap labels x (row) and y (column) by the pivot formula."""
    if x not in A._ri or y not in A._ci:
        raise KeyError("pivot labels must be a row and a column")
    a = A[x, y]
    if not a:
        raise ZeroDivisionError(f"zero entry at ({x},{y})")
    inv = _inverse(A.kind, a)
    rows = tuple(y if r == x else r for r in A.rows)
    cols = tuple(x if c == y else c for c in A.cols)
    out = []
    for u in A.rows:
        row = []
        for v in A.cols:
            if u == x and v == y:
                row.append(inv)
            elif u == x:
                row.append(inv * A[x, v])
            elif v == y:
                row.append(-(inv * A[u, y]))
            else:
                row.append(A[u, v] - inv * A[u, y] * A[x, v])
        out.append(row)
    return LabeledMatrix(rows, cols, out, A.kind)


def pivot_to_basis(A: LabeledMatrix, basis) -> LabeledMatrix:
    """Pivot until the row labels are exactly `basis` (which must be a basis)."""
    basis = set(basis)
    while set(A.rows) != basis:
        x = next(r for r in A.rows if r not in basis)
        y = next((c for c in A.cols if c in basis and A[x, c]), None)
        if y is None:
            raise ValueError("target set is not a basis of the represented matroid")
        A = pivot(A, x, y)
    return A


def _forest_components(rows, cols, T):
    adj = {v: [] for v in list(rows) + list(cols)}
    for (x, y) in T:
        adj[x].append(y)
        adj[y].append(x)
    return adj


def _check_forest(A, T):
    parent = {v: v for v in A.labels()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (x, y) in T:
        if x not in A._ri or y not in A._ci:
            raise ValueError(f"edge ({x},{y}) is not row-column")
        if not A[x, y]:
            raise ValueError(f"edge ({x},{y}) is not an edge of G(A)")
        a, b = find(x), find(y)
        if a == b:
            raise ValueError("edge set is not a forest")
        parent[a] = b


def scaling_factors(A: LabeledMatrix, T, targets=None):
    """Row and column multipliers r, c with r_x A_xy c_y = target on T."""
    T = [tuple(e) for e in T]
    _check_forest(A, T)
    one = A.one()
    if targets is None:
        targets = [one] * len(T)
    targets = [_coerce(A.kind, t) for t in targets]
    if len(targets) != len(T):
        raise ValueError("targets and forest differ in length")
    if any(not t for t in targets):
        raise ValueError("targets must be nonzero")
    want = dict(zip(T, targets))
    adj = _forest_components(A.rows, A.cols, T)
    mult = {}
    for root in A.labels():
        if root in mult:
            continue
        mult[root] = one
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w in mult:
                    continue
                if v in A._ri:
                    t = want[(v, w)]
                    mult[w] = t * _inverse(A.kind, mult[v] * A[v, w])
                else:
                    t = want[(w, v)]
                    mult[w] = t * _inverse(A.kind, A[w, v] * mult[v])
                queue.append(w)
    return {x: mult[x] for x in A.rows}, {y: mult[y] for y in A.cols}


def normalize(A: LabeledMatrix, T, targets=None) -> LabeledMatrix:
    """Scaling-equivalent matrix taking prescribed values (default 1) on forest T."""
    r, c = scaling_factors(A, T, targets)
    return LabeledMatrix(A.rows, A.cols,
                         [[r[x] * A[x, y] * c[y] for y in A.cols] for x in A.rows], A.kind)


def lex_forest(A: LabeledMatrix):
    """Lexicographically first maximal forest of G(A): greedy over row-major edges."""
    parent = {v: v for v in A.labels()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    T = []
    for x in A.rows:
        for y in A.cols:
            if A[x, y]:
                a, b = find(x), find(y)
                if a != b:
                    parent[a] = b
                    T.append((x, y))
    return T


# ---------------------------------------------------------------------------
# bipartite graphs, induced cycles, twirls

class BipartiteGraph:
    def __init__(self, left, right, edges):
        self.left, self.right = tuple(left), tuple(right)
        self.edges = frozenset((x, y) for x, y in edges)
        self.adj = {v: set() for v in self.left + self.right}
        for x, y in self.edges:
            if x not in self.adj or y not in self.adj:
                raise ValueError("edge endpoint outside the vertex set")
            self.adj[x].add(y)
            self.adj[y].add(x)

    @property
    def vertices(self):
        return self.left + self.right

    def has_edge(self, u, v):
        return v in self.adj.get(u, ())

    def is_cycle(self, verts) -> bool:
        """Whether the induced subgraph on verts is a single cycle."""
        verts = set(verts)
        if len(verts) < 4:
            return False
        if any(len(self.adj[v] & verts) != 2 for v in verts):
            return False
        start = next(iter(verts))
        seen, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for w in self.adj[v] & verts:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == verts

    def __eq__(self, other):
        return (isinstance(other, BipartiteGraph) and set(self.vertices) == set(other.vertices)
                and self.edges == other.edges)

    def __repr__(self):
        return f"BipartiteGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def graph(A: LabeledMatrix) -> BipartiteGraph:
    return BipartiteGraph(A.rows, A.cols, [(x, y) for x in A.rows for y in A.cols if A[x, y]])


def _norm_edge(G, e):
    u, v = e
    return (u, v) if u in G.left else (v, u)


def _paths(adj, src, dst, limit):
    """Simple paths src -> dst in increasing length (vertex lists)."""
    frontier = [[src]]
    while frontier:
        nxt = []
        for p in frontier:
            for w in sorted(adj[p[-1]], key=str):
                if w == dst:
                    yield p + [w]
                elif w not in p and len(p) < limit:
                    nxt.append(p + [w])
        frontier = nxt


def induced_cycle_through(G: BipartiteGraph, S, e):
    """An induced cycle of G through edge e whose other edges lie in S.

    Returns the cycle as a vertex list starting at e's row end.  Raises
    ValueError if S misses a maximal forest, or if no such cycle exists for
    this particular e (possible when G has chords outside S; see
    `induced_cycles` for an existential search).
    """
    S = {_norm_edge(G, f) for f in S}
    e = _norm_edge(G, e)
    if e in S or e not in G.edges:
        raise ValueError("e must be an edge of G outside S")
    if not S <= G.edges:
        raise ValueError("S must consist of edges of G")
    _require_spanning(G, S)
    adj = {v: set() for v in G.vertices}
    for x, y in S:
        adj[x].add(y)
        adj[y].add(x)
    x, y = e
    for p in _paths(adj, y, x, len(G.vertices)):
        cyc = [x] + p[:-1]
        if G.is_cycle(cyc):
            return cyc
    raise ValueError("no induced cycle through e with its other edges in S")


def _require_spanning(G, S):
    parent = {v: v for v in G.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in S:
        parent[find(x)] = find(y)
    for x, y in G.edges:
        if find(x) != find(y):
            raise ValueError("S does not contain a maximal forest of G")


def induced_cycles(G: BipartiteGraph, max_len=None):
    """All induced cycles of G as vertex lists, shortest first, deterministic."""
    order = {v: k for k, v in enumerate(G.vertices)}
    n = len(G.vertices)
    max_len = max_len or n
    found = []
    # each cycle is rooted at its smallest vertex and grown as an induced path
    for root in G.vertices:
        allowed = {v for v in G.vertices if order[v] > order[root]}
        stack = [[root]]
        while stack:
            p = stack.pop()
            for w in G.adj[p[-1]]:
                if w not in allowed or w in p:
                    continue
                if any(G.has_edge(w, q) for q in p[1:-1]):
                    continue
                if len(p) >= 3 and G.has_edge(w, root):
                    if order[p[1]] < order[w]:
                        found.append(p + [w])
                    continue
                if len(p) < max_len - 1:
                    stack.append(p + [w])
    found.sort(key=lambda c: (len(c), [order[v] for v in c]))
    return found


@dataclass(frozen=True)
class TwirlCertificate:
    """Vertex set of a twirl, in cyclic order."""
    cycle: tuple

    @property
    def vertices(self):
        return frozenset(self.cycle)

    def __len__(self):
        return len(self.cycle)


def _cycle_det_nonzero(A, cyc):
    rows = [v for v in A.rows if v in set(cyc)]
    cols = [v for v in A.cols if v in set(cyc)]
    if len(rows) != len(cols):
        return False
    return bool(det(A.submatrix(rows, cols)))


def is_twirl(A: LabeledMatrix, verts) -> bool:
    verts = set(verts)
    return graph(A).is_cycle(verts) and _cycle_det_nonzero(A, verts)


def find_twirl(A: LabeledMatrix):
    """A twirl of A, or None when M[I|A] is binary (A must be a P-matrix)."""
    if A.kind != "nearreg":
        raise ValueError("twirls are searched in near-regular matrices")
    if is_p_matrix(A) is not True:
        raise ValueError("find_twirl needs a P-matrix")
    G = graph(A)
    T = lex_forest(A)
    N = normalize(A, T)
    unit_like = {RING_ONE, -RING_ONE}
    for x in N.rows:
        for y in N.cols:
            v = N[x, y]
            if v and v not in unit_like:
                try:
                    cyc = induced_cycle_through(G, T, (x, y))
                except ValueError:
                    continue
                if _cycle_det_nonzero(A, cyc):
                    return TwirlCertificate(tuple(cyc))
    # normalized entries in {0,+-1}: a nonzero cycle may still exist only
    # through chords; fall back to the exhaustive scan
    for cyc in induced_cycles(G):
        if _cycle_det_nonzero(A, cyc):
            return TwirlCertificate(tuple(cyc))
    return None


def shrink_twirl(A: LabeledMatrix, C: TwirlCertificate, x) -> TwirlCertificate:
    """A twirl on x plus an arc of C between two consecutive neighbours of x."""
    cyc = list(C.cycle)
    if x in cyc:
        raise ValueError("x must lie outside the twirl")
    G = graph(A)
    nbr = [k for k, v in enumerate(cyc) if G.has_edge(x, v)]
    if len(nbr) < 2:
        raise ValueError("x needs at least two neighbours on the twirl")
    n = len(cyc)
    for t, a in enumerate(nbr):
        b = nbr[(t + 1) % len(nbr)]
        arc = [cyc[(a + s) % n] for s in range(((b - a) % n) + 1)]
        cand = [x] + arc
        if G.is_cycle(cand) and _cycle_det_nonzero(A, cand):
            return TwirlCertificate(tuple(cand))
    raise ValueError("no arc of the twirl through x has nonzero determinant")


# ---------------------------------------------------------------------------
# .pmx files

def _token_fn(kind):
    if kind == "nearreg":
        def tok(v):
            q = p_membership(v)
            if q is None:
                raise ValueError(f"ring element {v} has no token")
            return q.token()
        return tok
    return lambda v: v.token()


def _parse_token(kind, tok):
    if kind == "nearreg":
        return NRElem.parse(tok).to_ring()
    return gf(kind).parse(tok)


def format_pmx(A: LabeledMatrix, name="A") -> str:
    tok = _token_fn(A.kind)
    field = "nearreg" if A.kind == "nearreg" else A.kind
    lines = [f"name {name}", f"field {field}",
             "rows " + " ".join(map(str, A.rows)), "cols " + " ".join(map(str, A.cols))]
    for r in A.entries:
        lines.append(" ".join(tok(v) for v in r))
    return "\n".join(lines) + "\n"


def parse_pmx(text: str):
    """Returns (name, LabeledMatrix)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    head = {}
    k = 0
    for key in ("name", "field", "rows", "cols"):
        if k >= len(lines):
            raise ValueError(f"missing '{key}' line")
        parts = lines[k].split()
        if parts[0] != key:
            raise ValueError(f"expected '{key}', got {lines[k]!r}")
        head[key] = parts[1:]
        k += 1
    if len(head["name"]) != 1 or len(head["field"]) != 1:
        raise ValueError("name and field take one value")
    kind = head["field"][0]
    if kind not in KINDS:
        raise ValueError(f"unknown field {kind!r}")
    rows, cols = head["rows"], head["cols"]
    body = lines[k:]
    if len(body) != len(rows):
        raise ValueError(f"expected {len(rows)} matrix lines, got {len(body)}")
    entries = []
    for ln in body:
        toks = ln.split()
        if len(toks) != len(cols):
            raise ValueError(f"row {ln!r} has {len(toks)} entries, expected {len(cols)}")
        entries.append([_parse_token(kind, t) for t in toks])
    return head["name"][0], LabeledMatrix(rows, cols, entries, kind)


def read_pmx(path):
    with open(path) as fh:
        return parse_pmx(fh.read())


def write_pmx(path, A, name="A"):
    with open(path, "w") as fh:
        fh.write(format_pmx(A, name))
