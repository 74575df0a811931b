"""Representability over GF(q), q in {2,3,4,5,7,8}."""

from __future__ import annotations

from dataclasses import dataclass

from ..matroid.core import Matroid, matroid_from_ring_matrix
from ..matroid.iso import invariant, is_isomorphic
from ..matroid.ops import is_binary
from ..pfield import FIELD_IDS, gf
from ..pmat import LabeledMatrix
from .engine import Layout, backtrack, gf_tester


@dataclass(frozen=True)
class RepWitness:
    """A matrix representing M on rows `basis`; `kind` is a field id or 'nearreg'."""
    matrix: LabeledMatrix
    basis: frozenset
    kind: str

    def __bool__(self):
        return True


@dataclass(frozen=True)
class SearchExhausted:
    """Falsy search result.  `conclusive` is False if the space was truncated."""
    conclusive: bool = True
    reason: str = "exhausted"

    def __bool__(self):
        return False


def _field_id(q):
    fid = q if isinstance(q, str) else f"gf{q}"
    if fid not in FIELD_IDS:
        raise ValueError(f"unsupported field {q!r}")
    return fid


def _to_matrix(M, layout, grid, kind):
    rows = [M.ground[x] for x in layout.rows]
    cols = [M.ground[y] for y in layout.cols]
    return LabeledMatrix(rows, cols, [[gf(kind)(v) for v in row] for row in grid], kind)


def gf_representations(M: Matroid, q, B=None):
    """All forest-normalized GF(q) representations on basis B (as matrices)."""
    kind = _field_id(q)
    F = gf(kind)
    layout = Layout(M, B)
    for grid in backtrack(layout, F.nonzero, 1, 0, gf_tester(F)):
        yield _to_matrix(M, layout, grid, kind)


def _search(M, kind):
    F = gf(kind)
    layout = Layout(M)
    for grid in backtrack(layout, F.nonzero, 1, 0, gf_tester(F)):
        return _to_matrix(M, layout, grid, kind), layout
    return None, layout


# results cached per isomorphism class
_CACHE = {}


def _cached(M, kind):
    bucket = _CACHE.setdefault((kind, invariant(M)), [])
    for N, ok in bucket:
        if N is M:
            return ok
    for N, ok in bucket:
        if is_isomorphic(M, N) is not None:
            return ok
    return None


def representable_over_gf(M: Matroid, q):
    """A `RepWitness` over GF(q), or a falsy `SearchExhausted`."""
    kind = _field_id(q)
    A, layout = _search(M, kind)
    if A is None:
        return SearchExhausted(True, f"no {kind} representation on basis {sorted(M.labels(layout.B))}")
    if matroid_from_ring_matrix(A) != M:
        raise AssertionError("representation search returned a matrix for a different matroid")
    return RepWitness(A, M.labels(layout.B), kind)


def is_representable(M: Matroid, q) -> bool:
    """Cached yes/no version of `representable_over_gf`."""
    kind = _field_id(q)
    if kind == "gf2":
        return is_binary(M)
    hit = _cached(M, kind)
    if hit is not None:
        return hit
    ok = bool(representable_over_gf(M, kind))
    _CACHE[(kind, invariant(M))].append((M, ok))
    return ok


def clear_cache():
    _CACHE.clear()


def binary_unique_rep_check(M: Matroid, q) -> bool:
    """All forest-normalized GF(q) representations on a fixed basis coincide."""
    if not is_binary(M):
        raise ValueError("matroid is not binary")
    if M.n > 10:
        raise ValueError("capped at 10 elements")
    reps = list(gf_representations(M, q))
    return len(reps) == 1
