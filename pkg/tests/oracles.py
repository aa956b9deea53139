"""Independent oracles for the test suite.

Everything here recomputes a production result by a different route —
exhaustive filtering, classical recurrences, or reduced row echelon form —
and deliberately avoids the pruned/optimized code paths under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from surjcat.finset import FinMap
from surjcat.epi_cat import SliceObject
from surjcat.linalg import Mat, rref


def brute_surjection_values(k: int, i: int) -> list[tuple[int, ...]]:
    """All surjections [k] -> [i] by filtering every map."""
    out = []
    for values in itertools.product(range(1, i + 1), repeat=k):
        if len(set(values)) == i:
            out.append(values)
    return out


def stirling_surjection_count(k: int, i: int) -> int:
    """i! * S(k, i) via the Stirling-number recurrence (no inclusion-exclusion)."""
    if i > k:
        return 0
    table = [[0] * (i + 1) for _ in range(k + 1)]
    table[0][0] = 1
    for n in range(1, k + 1):
        for m in range(1, min(n, i) + 1):
            table[n][m] = m * table[n - 1][m] + table[n - 1][m - 1]
    fact = 1
    for t in range(2, i + 1):
        fact *= t
    return fact * table[k][i]


def brute_hom_values(u: SliceObject, v: SliceObject) -> list[tuple[int, ...]]:
    """All surjections u -> v over [r], by filtering every map of sets."""
    out = []
    su, sv = u.structure_map, v.structure_map
    for values in itertools.product(range(1, v.total_size + 1), repeat=u.total_size):
        if len(set(values)) != v.total_size:
            continue
        if all(sv(values[x - 1]) == su(x) for x in range(1, u.total_size + 1)):
            out.append(values)
    return out


def brute_good_subsets(f: FinMap, g: FinMap, d: int) -> set[frozenset]:
    """Power-set scan of the fiber product for the good subsets of size <= d.

    Only use on small fiber products (<= 16 cells): this is the literal
    definition, kept exponential on purpose.
    """
    cells = [
        (a, b)
        for a in range(1, f.source_size + 1)
        for b in range(1, g.source_size + 1)
        if f(a) == g(b)
    ]
    assert len(cells) <= 16, "oracle restricted to small fiber products"
    out = set()
    for n in range(1, min(d, len(cells)) + 1):
        for combo in itertools.combinations(cells, n):
            if {a for a, _ in combo} == set(range(1, f.source_size + 1)) and \
               {b for _, b in combo} == set(range(1, g.source_size + 1)):
                out.add(frozenset(combo))
    return out


def rref_nullspace(a: Mat) -> Mat:
    """Kernel basis straight off the reduced row echelon form."""
    red, pivots = rref(a)
    free = [j for j in range(a.n) if j not in pivots]
    cols = []
    for fc in free:
        v = [Fraction(0)] * a.n
        v[fc] = Fraction(1)
        for ri, pj in enumerate(pivots):
            v[pj] = -red.rows[ri][fc]
        cols.append(v)
    return Mat(a.n, len(cols), [[cols[c][i] for c in range(len(cols))] for i in range(a.n)])


def poset_limit_kernel(diagram, objects) -> Mat:
    """Limit of a diagram over the given objects, via the difference map of
    EVERY comparable pair (not just covering arrows) and an rref kernel."""
    objects = list(objects)
    offsets = {}
    run = 0
    for b in objects:
        offsets[b] = run
        run += diagram.dims[b]
    rows: list[list] = []
    for a in objects:
        for b in objects:
            if a == b or not diagram.poset.reaches(a, b):
                continue
            m = diagram.matrix(a, b)
            for ri in range(m.m):
                row = [Fraction(0)] * run
                row[offsets[b] + ri] = Fraction(1)
                for ci in range(m.n):
                    row[offsets[a] + ci] -= Fraction(m.rows[ri][ci])
                rows.append(row)
    if not rows:
        return Mat.identity(run)
    return rref_nullspace(Mat(len(rows), run, rows))
