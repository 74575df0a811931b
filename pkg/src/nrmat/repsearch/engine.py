"""Backtracking over forest-normalized matrices with a prescribed support.

Given a basis B of M, a representation on rows B and columns E - B has
support exactly {(x, y) : B - x + y is a basis}.  After scaling, the entries
on a maximal forest of the support graph are 1.  The remaining nonzero
entries are unknowns; every square submatrix gives one constraint (its
determinant vanishes iff B xor (R u C) is not a basis), checked as soon as
its last unknown is assigned.
"""

from __future__ import annotations

from itertools import combinations

from ..matroid.core import Matroid, bits


class Layout:
    """Support, forest and constraint schedule for M on a fixed basis."""

    def __init__(self, M: Matroid, B=None):
        if B is None:
            B = min(M.bases)
        self.M = M
        self.B = B
        self.rows = bits(B)
        self.cols = [e for e in range(M.n) if not B >> e & 1]
        r, c = len(self.rows), len(self.cols)
        self.r, self.c = r, c
        bases = M.bases
        self.support = [[(B & ~(1 << x) | (1 << y)) in bases for y in self.cols] for x in self.rows]
        # lexicographic spanning forest, row-major
        parent = list(range(r + c))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        self.forest = set()
        for i in range(r):
            for j in range(c):
                if self.support[i][j]:
                    a, b = find(i), find(r + j)
                    if a != b:
                        parent[a] = b
                        self.forest.add((i, j))
        self.free = [(i, j) for i in range(r) for j in range(c)
                     if self.support[i][j] and (i, j) not in self.forest]
        # constraints: (rows, cols, must be nonzero), size >= 2
        cons = []
        for k in range(2, min(r, c) + 1):
            for R in combinations(range(r), k):
                rm = 0
                for i in R:
                    rm |= 1 << self.rows[i]
                for C in combinations(range(c), k):
                    cm = 0
                    for j in C:
                        cm |= 1 << self.cols[j]
                    cons.append((R, C, ((B & ~rm) | cm) in bases))
        self.constraints = cons
        self._schedule()

    def _schedule(self):
        free = set(self.free)
        cells = [{(i, j) for i in R for j in C if (i, j) in free} for R, C, _ in self.constraints]
        # greedy most-constrained order
        order = []
        known = set()
        left = set(free)
        while left:
            def score(v):
                done = 0
                touch = 0
                for s in cells:
                    if v in s:
                        touch += 1
                        if s <= known | {v}:
                            done += 1
                return (-done, -touch, v)
            v = min(left, key=score)
            order.append(v)
            known.add(v)
            left.discard(v)
        self.order = order
        pos = {v: k for k, v in enumerate(order)}
        self.fixed_constraints = []
        self.at = [[] for _ in order]
        for (R, C, nz), s in zip(self.constraints, cells):
            if s:
                self.at[max(pos[v] for v in s)].append((R, C, nz))
            else:
                self.fixed_constraints.append((R, C, nz))


def backtrack(layout: Layout, domain, one, zero, test):
    """Yield complete grids (lists of lists) satisfying every constraint.

    `test(grid, R, C, must_nonzero)` decides a single constraint.
    """
    r, c = layout.r, layout.c
    grid = [[(one if (i, j) in layout.forest else zero) if layout.support[i][j] else zero
             for j in range(c)] for i in range(r)]
    for R, C, nz in layout.fixed_constraints:
        if not test(grid, R, C, nz):
            return
    order, at = layout.order, layout.at
    n = len(order)

    def rec(k):
        if k == n:
            yield [row[:] for row in grid]
            return
        i, j = order[k]
        checks = at[k]
        for v in domain:
            grid[i][j] = v
            if all(test(grid, R, C, nz) for R, C, nz in checks):
                yield from rec(k + 1)
        grid[i][j] = zero

    yield from rec(0)


def gf_tester(F):
    add, mul, sub = F.add, F.mul, F.sub

    def test(grid, R, C, nz):
        k = len(R)
        if k == 2:
            a, b = R
            c0, c1 = C
            ra, rb = grid[a], grid[b]
            d = sub[mul[ra[c0]][rb[c1]]][mul[ra[c1]][rb[c0]]]
        elif k == 3:
            r0, r1, r2 = grid[R[0]], grid[R[1]], grid[R[2]]
            x, y, z = C
            d = add[add[mul[r0[x]][sub[mul[r1[y]][r2[z]]][mul[r1[z]][r2[y]]]]]
                        [mul[r0[y]][sub[mul[r1[z]][r2[x]]][mul[r1[x]][r2[z]]]]]] \
                [mul[r0[z]][sub[mul[r1[x]][r2[y]]][mul[r1[y]][r2[x]]]]]
        else:
            d = F.det([[grid[i][j] for j in C] for i in R])
        return (d != 0) == nz

    return test
