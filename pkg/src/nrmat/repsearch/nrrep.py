"""Representations over U1: bounded search, U_{2,4} uniqueness, companions."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..matroid.core import Matroid, matroid_from_ring_matrix
from ..pfield import (
    NRElem, RING_ONE, RING_ZERO, gf, list_automorphisms, p_membership, phi_gf3,
)
from ..pmat import LabeledMatrix, det, is_p_matrix, lex_forest, normalize
from .engine import Layout, backtrack
from .gfrep import RepWitness, SearchExhausted

MAX_NR_GROUND = 10
DEFAULT_BOUND = 3


def monomials(bound):
    """Nonzero elements of U1 with |i|, |j| <= bound, small exponents first."""
    out = [NRElem(s, i, j) for s, i, j in product((1, -1), range(-bound, bound + 1), range(-bound, bound + 1))]
    out.sort(key=lambda p: (abs(p.i) + abs(p.j), max(abs(p.i), abs(p.j)), -p.sign, -p.i, -p.j))
    return [p.to_ring() for p in out]


def _ring_det(grid, R, C):
    k = len(R)
    if k == 2:
        a, b = grid[R[0]], grid[R[1]]
        return a[C[0]] * b[C[1]] - a[C[1]] * b[C[0]]
    if k == 3:
        r0, r1, r2 = grid[R[0]], grid[R[1]], grid[R[2]]
        x, y, z = C
        return (r0[x] * (r1[y] * r2[z] - r1[z] * r2[y])
                - r0[y] * (r1[x] * r2[z] - r1[z] * r2[x])
                + r0[z] * (r1[x] * r2[y] - r1[y] * r2[x]))
    sub = LabeledMatrix([f"r{i}" for i in R], [f"c{j}" for j in C],
                        [[grid[i][j] for j in C] for i in R], "nearreg")
    return det(sub)


def _nr_test(grid, R, C, nz):
    d = _ring_det(grid, R, C)
    if not d:
        return not nz
    return nz and p_membership(d) is not None


def nr_representations(M: Matroid, bound=DEFAULT_BOUND, B=None):
    """All forest-normalized U1 representations with entries in the bounded range."""
    layout = Layout(M, B)
    rows = [M.ground[x] for x in layout.rows]
    cols = [M.ground[y] for y in layout.cols]
    for grid in backtrack(layout, monomials(bound), RING_ONE, RING_ZERO, _nr_test):
        yield LabeledMatrix(rows, cols, grid, "nearreg")


def nr_representation_search(M: Matroid, exponent_bound=DEFAULT_BOUND):
    """A near-regular `RepWitness`, or a falsy `SearchExhausted`.

    An unsuccessful bounded search is conclusive only when M fails to be
    representable over one of GF(3), GF(4), GF(5).
    """
    if M.n > MAX_NR_GROUND:
        raise ValueError(f"near-regular search is capped at {MAX_NR_GROUND} elements")
    for A in nr_representations(M, exponent_bound):
        if is_p_matrix(A) is not True or matroid_from_ring_matrix(A) != M:
            raise AssertionError("search produced an invalid representation")
        return RepWitness(A, frozenset(A.rows), "nearreg")
    from .excluded import is_near_regular
    if not is_near_regular(M):
        return SearchExhausted(True, "not representable over all of GF(3), GF(4), GF(5)")
    return SearchExhausted(False, f"no representation with exponents bounded by {exponent_bound}")


def unique_rep_check_u24(bound=DEFAULT_BOUND):
    """U_{2,4} has exactly six normalized U1 representations, one automorphism orbit."""
    from ..matroid.catalog import get
    M = get("U24")
    reps = list(nr_representations(M, bound))
    if len(reps) != 6 or any(is_p_matrix(A) is not True for A in reps):
        return False
    base = reps[0]
    orbit = {apply_automorphism_matrix(g, base) for g in list_automorphisms()}
    return orbit == set(reps)


def apply_automorphism_matrix(psi, A: LabeledMatrix) -> LabeledMatrix:
    return A.map_entries(lambda v: psi(v))


def apply_hom_matrix(h, A: LabeledMatrix) -> LabeledMatrix:
    return A.map_entries(lambda v: h(v), h.field.name)


# ---------------------------------------------------------------------------
# companion matroid

@dataclass
class Companion:
    N: Matroid
    A: LabeledMatrix          # over the ring, columns include u and v
    A1: LabeledMatrix         # represents M \ u
    A2: LabeledMatrix         # represents M \ v (after alignment)
    automorphism: object
    M: Matroid
    u: object
    v: object

    def phi_image(self):
        return apply_hom_matrix(phi_gf3(), self.A)


def _basis_avoiding(M, u, v):
    """A basis of M avoiding u and v (exists since {u, v} is coindependent)."""
    mu = M.mask([u, v])
    for b in sorted(M.bases):
        if not b & mu:
            return b
    raise ValueError("{u, v} is not coindependent")


def build_companion(M: Matroid, u, v, bound=DEFAULT_BOUND) -> Companion:
    """Glue U1 representations of M \\ u and M \\ v along M \\ {u, v}.

    Both are taken on a common basis X of M \\ {u, v}.  They agree on M \\ {u, v}
    up to scaling and an automorphism; after normalizing both on the same forest,
    the automorphism is found by trying all six.
    """
    from .excluded import is_near_regular
    from ..matroid.ops import is_deletion_pair
    if not is_deletion_pair(M, u, v):
        raise ValueError(f"({u}, {v}) is not a deletion pair")
    Mu, Mv = M.delete([u]), M.delete([v])
    if not (is_near_regular(Mu) and is_near_regular(Mv)):
        raise ValueError("M \\ u and M \\ v must be near-regular")
    X = _basis_avoiding(M, u, v)
    Xl = M.ordered(X)
    A1 = _rep_on(Mu, Xl, bound)
    A2 = _rep_on(Mv, Xl, bound)
    common = [y for y in A1.cols if y != v]
    # forest of the common part, extended by one edge in column v / u
    core = A1.submatrix(Xl, common)
    T0 = lex_forest(core)
    T1 = T0 + [(next(x for x in Xl if A1[x, v]), v)]
    T2 = T0 + [(next(x for x in Xl if A2[x, u]), u)]
    A1 = normalize(A1.permuted(Xl, common + [v]), T1)
    A2 = normalize(A2.permuted(Xl, common + [u]), T2)
    target = A1.submatrix(Xl, common)
    for psi in list_automorphisms():
        B2 = apply_automorphism_matrix(psi, A2)
        if B2.submatrix(Xl, common) == target:
            A = A1.with_column(u, [B2[x, u] for x in Xl])
            N = matroid_from_ring_matrix(A)
            return Companion(N, A, A1, B2, psi, M, u, v)
    raise AssertionError("no automorphism aligns the two representations")


def _rep_on(M, rows, bound):
    mask = M.mask(rows)
    for A in nr_representations(M, bound, B=mask):
        return A
    raise ValueError("no near-regular representation within the exponent bound")
