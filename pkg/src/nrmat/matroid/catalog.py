"""Named matroids, each rebuilt from an explicit matrix, basis list or derivation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from ..pfield import ALPHA, NRElem, ONE, ZERO, gf
from ..pmat import LabeledMatrix
from .core import Matroid, matroid_from_matrix, uniform
from .ops import circuit_hyperplanes, relax_circuit_hyperplane


def std_matrix(entries, kind="gf3", start=1):
    """[I|A] labels: rows 1..r, columns r+1..r+c (as strings)."""
    r, c = len(entries), len(entries[0])
    rows = [str(start + i) for i in range(r)]
    cols = [str(start + r + j) for j in range(c)]
    return LabeledMatrix(rows, cols, entries, kind)


def nr_whirl_matrix(r):
    """U1 whirl: 1 on the diagonal and subdiagonal, corner -a (r odd) or a (r even)."""
    A = [[ZERO] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = ONE
        if i:
            A[i][i - 1] = ONE
    A[0][r - 1] = -ALPHA if r % 2 else ALPHA
    return std_matrix(A, "nearreg")


def gf3_whirl_matrix(r):
    A = [[0] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = 1
        if i:
            A[i][i - 1] = 1
    A[0][r - 1] = 1 if r % 2 else -1
    return std_matrix(A, "gf3")


def wheel_matrix(r):
    A = [[0] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = 1
        if i:
            A[i][i - 1] = 1
    A[0][r - 1] = 1
    return std_matrix(A, "gf2")


MATRICES = {
    "F7": std_matrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]], "gf2"),
    "F7-": std_matrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]], "gf3"),
    "AG23-e": std_matrix([[0, 1, 1, -1, 1], [1, 0, 1, 1, -1], [1, 1, 0, 1, 1]]),
    "DT-AG23-e": std_matrix([[0, 1, 1, 1], [1, -1, 1, -1], [1, 1, 1, 0], [1, -1, 0, 0]]),
    "P8": std_matrix([[0, 1, 1, -1], [1, 0, 1, 1], [1, 1, 0, 1], [-1, 1, 1, 0]]),
    "P7": std_matrix([[0, 1, 1, -1], [1, 0, 1, 1], [1, 1, 0, 1]]),
    "O7": std_matrix([[1, 1, 0, 1], [1, 0, 1, -1], [0, 1, -1, -1]]),
    "MK4": wheel_matrix(3),
    "W2": gf3_whirl_matrix(2),
    "W3": gf3_whirl_matrix(3),
    "W4": gf3_whirl_matrix(4),
}

# matrices over U1 kept for twirl and automorphism checks
NR_MATRICES = {
    "U24": std_matrix([[ONE, ONE], [ONE, ALPHA]], "nearreg"),
    "W2": nr_whirl_matrix(2),
    "W3": nr_whirl_matrix(3),
    "W4": nr_whirl_matrix(4),
    # the unsigned 0/1 pattern has determinant 2, so one sign is flipped
    "MK4": std_matrix([[ONE, ZERO, -ONE], [ONE, ONE, ZERO], [ZERO, ONE, ONE]], "nearreg"),
}


def _projective_points(F, dim):
    pts = []
    for v in product(range(F.q), repeat=dim):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def points_matroid(points, F, labels=None, name=None):
    """Matroid of column vectors (tuples of field codes)."""
    n = len(points)
    r = len(points[0])
    labels = labels or [str(k + 1) for k in range(n)]
    bases = []
    for S in combinations(range(n), r):
        if F.det([[points[s][i] for s in S] for i in range(r)]):
            bases.append(sum(1 << s for s in S))
    rank = r
    if not bases:
        raise ValueError("points do not span")
    return Matroid._raw(labels, bases, rank, name)


def pg23():
    F = gf(3)
    return points_matroid(_projective_points(F, 3), F, name="PG23")


def ag23():
    F = gf(3)
    pts = [(x, y, 1) for x in range(3) for y in range(3)]
    return points_matroid(pts, F, name="AG23")


def p6():
    M = uniform(3, 6)
    ground = [str(k + 1) for k in range(6)]
    return Matroid._raw(ground, [b for b in M.bases if b != 0b111], 3, "P6")


def p8pp():
    P8 = get("P8")
    chs = circuit_hyperplanes(P8)
    pairs = [(a, b) for a, b in combinations(chs, 2) if not a & b]
    if len(pairs) != 1:
        raise AssertionError("expected one disjoint pair of circuit-hyperplanes in P8")
    M = P8
    for H in pairs[0]:
        M = relax_circuit_hyperplane(M, H)
    return M


def _uniform(r, n):
    M = uniform(r, n)
    return M.relabel({f"e{k}": str(k + 1) for k in range(n)})


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    construction: str            # "matrix", "bases" or "derived"
    fingerprint: tuple           # (elements, rank, bases)
    description: str = ""
    source: str = field(default="", compare=False)


def _derived(name):
    if name.endswith("*"):
        return get(name[:-1]).dual()
    raise KeyError(name)


_BUILDERS = {
    "U24": lambda: _uniform(2, 4),
    "U25": lambda: _uniform(2, 5),
    "U35": lambda: _uniform(3, 5),
    "U26": lambda: _uniform(2, 6),
    "U46": lambda: _uniform(4, 6),
    "P6": p6,
    "AG23": ag23,
    "PG23": pg23,
    "P8pp": p8pp,
}

ENTRIES = [
    CatalogEntry("U24", "bases", (4, 2, 6), "uniform matroid U_{2,4}"),
    CatalogEntry("U25", "bases", (5, 2, 10), "uniform matroid U_{2,5}"),
    CatalogEntry("U35", "bases", (5, 3, 10), "uniform matroid U_{3,5}"),
    CatalogEntry("U26", "bases", (6, 2, 15), "uniform matroid U_{2,6}"),
    CatalogEntry("U46", "bases", (6, 4, 15), "uniform matroid U_{4,6}"),
    CatalogEntry("P6", "bases", (6, 3, 19), "rank-3 six-point matroid with one 3-point line"),
    CatalogEntry("F7", "matrix", (7, 3, 28), "Fano plane"),
    CatalogEntry("F7*", "derived", (7, 4, 28), "dual of the Fano plane"),
    CatalogEntry("F7-", "matrix", (7, 3, 29), "non-Fano matroid"),
    CatalogEntry("F7-*", "derived", (7, 4, 29), "dual of the non-Fano matroid"),
    CatalogEntry("P7", "matrix", (7, 3, 30), "ternary rank-3 matroid with five 3-point lines"),
    CatalogEntry("P7*", "derived", (7, 4, 30), "dual of P7"),
    CatalogEntry("O7", "matrix", (7, 3, 28), "three 3-point lines and one 4-point line"),
    CatalogEntry("W2", "matrix", (4, 2, 6), "rank-2 whirl"),
    CatalogEntry("W3", "matrix", (6, 3, 17), "rank-3 whirl"),
    CatalogEntry("W4", "matrix", (8, 4, 46), "rank-4 whirl"),
    CatalogEntry("MK4", "matrix", (6, 3, 16), "cycle matroid of K4"),
    CatalogEntry("AG23", "matrix", (9, 3, 72), "ternary affine plane"),
    CatalogEntry("AG23-e", "matrix", (8, 3, 48), "ternary affine plane minus a point"),
    CatalogEntry("AG23-e*", "derived", (8, 5, 48), "dual of AG23-e"),
    CatalogEntry("DT-AG23-e", "matrix", (8, 4, 56), "Delta-Y of AG23-e"),
    CatalogEntry("P8", "matrix", (8, 4, 60), "ternary self-dual rank-4 matroid P8"),
    CatalogEntry("P8pp", "derived", (8, 4, 62), "P8 with its disjoint circuit-hyperplanes relaxed"),
    CatalogEntry("PG23", "matrix", (13, 3, 234), "ternary projective plane"),
]

BY_NAME = {e.name: e for e in ENTRIES}

ALIASES = {"F7m": "F7-", "F7-dual": "F7-*", "AG23-e-dual": "AG23-e*", "DeltaT-AG23-e": "DT-AG23-e",
           "P8''": "P8pp", "M(K4)": "MK4", "K4": "MK4"}


def names():
    return [e.name for e in ENTRIES]


@lru_cache(maxsize=None)
def _build(name):
    if name in _BUILDERS:
        M = _BUILDERS[name]()
    elif name in MATRICES:
        M = matroid_from_matrix(MATRICES[name])
    else:
        M = _derived(name)
    M = M.with_name(name)
    fp = (M.n, M.rank, len(M.bases))
    if fp != BY_NAME[name].fingerprint:
        raise AssertionError(f"catalog entry {name} rebuilt with fingerprint {fp}")
    return M


def get(name) -> Matroid:
    name = ALIASES.get(name, name)
    if name not in BY_NAME:
        raise KeyError(f"unknown catalog matroid {name!r}")
    return _build(name)


catalog_get = get


def matrix_of(name):
    """The stored representation (LabeledMatrix) of an entry, or None."""
    name = ALIASES.get(name, name)
    return MATRICES.get(name)


# the ten excluded minors for near-regularity, with the field each fails on
NEAR_REGULAR_EXCLUDED = {
    "U25": "gf3", "U35": "gf3", "F7": "gf3", "F7*": "gf3",
    "F7-": "gf4", "F7-*": "gf4", "AG23-e": "gf5", "AG23-e*": "gf5",
    "DT-AG23-e": "gf5", "P8": "gf4",
}

GF4_EXCLUDED = ["U26", "U46", "P6", "F7-", "F7-*", "P8", "P8pp"]
