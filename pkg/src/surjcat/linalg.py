"""Exact dense linear algebra over the integers and rationals.

Matrices act on column vectors: a map V → W of free modules with dim V = n
and dim W = m is an m × n matrix, and composition is the usual product in
application order (second ∘ first = second @ first).  Entries are Python
ints or Fractions; nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class Mat:
    """An immutable m × n matrix with exact entries.

    Degenerate shapes (zero rows or zero columns) are first-class: both
    dimensions are stored explicitly rather than inferred from the rows.
    """

    __slots__ = ("m", "n", "rows")

    def __init__(self, m: int, n: int, rows):
        rows = tuple(tuple(row) for row in rows)
        if m < 0 or n < 0 or len(rows) != m or any(len(row) != n for row in rows):
            raise ValueError(f"not a {m}x{n} matrix")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def from_rows(rows) -> "Mat":
        rows = [tuple(row) for row in rows]
        if not rows:
            raise ValueError("ambiguous empty matrix; use Mat(0, n, [])")
        return Mat(len(rows), len(rows[0]), rows)

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(m: int, n: int) -> "Mat":
        return Mat(m, n, [[0] * n for _ in range(m)])

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.m == other.m
            and self.n == other.n
            and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.m)
                for j in range(self.n)
            )
        )

    def __hash__(self):
        return hash((self.m, self.n, tuple(tuple(Fraction(x) for x in row) for row in self.rows)))

    def __repr__(self):
        return f"Mat({self.m}x{self.n}, {[list(row) for row in self.rows]})"

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.n != other.m:
            raise ValueError(f"shape mismatch: {self.m}x{self.n} @ {other.m}x{other.n}")
        out = [[0] * other.n for _ in range(self.m)]
        for i in range(self.m):
            row = self.rows[i]
            acc = out[i]
            for k in range(self.n):
                a = row[k]
                if a:
                    brow = other.rows[k]
                    for j in range(other.n):
                        acc[j] += a * brow[j]
        return Mat(self.m, other.n, out)

    def _same_shape(self, other: "Mat") -> None:
        if not isinstance(other, Mat) or (self.m, self.n) != (other.m, other.n):
            raise ValueError("shape mismatch")

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(
            self.m,
            self.n,
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.n)]
                for i in range(self.m)
            ],
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(
            self.m,
            self.n,
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.n)]
                for i in range(self.m)
            ],
        )

    def scale(self, c) -> "Mat":
        return Mat(self.m, self.n, [[c * x for x in row] for row in self.rows])

    def transpose(self) -> "Mat":
        return Mat(self.n, self.m, [[self.rows[i][j] for i in range(self.m)] for j in range(self.n)])

    def row_slice(self, start: int, stop: int) -> "Mat":
        if not (0 <= start <= stop <= self.m):
            raise ValueError("row slice out of range")
        return Mat(stop - start, self.n, self.rows[start:stop])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def to_lists(self) -> list[list]:
        return [list(row) for row in self.rows]


def block_matrix(blocks: dict, row_dims: list[int], col_dims: list[int]) -> Mat:
    """Assemble a matrix from blocks[(i, j)]; missing blocks are zero."""
    offs_r = [0]
    for h in row_dims:
        offs_r.append(offs_r[-1] + h)
    offs_c = [0]
    for w in col_dims:
        offs_c.append(offs_c[-1] + w)
    out = [[0] * offs_c[-1] for _ in range(offs_r[-1])]
    for (bi, bj), blk in blocks.items():
        if blk.m != row_dims[bi] or blk.n != col_dims[bj]:
            raise ValueError(f"block ({bi},{bj}) has shape {blk.m}x{blk.n}")
        r0, c0 = offs_r[bi], offs_c[bj]
        for i in range(blk.m):
            row = blk.rows[i]
            acc = out[r0 + i]
            for j in range(blk.n):
                acc[c0 + j] = row[j]
    return Mat(offs_r[-1], offs_c[-1], out)


def rref(a: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row-echelon form over the rationals plus the pivot columns."""
    rows = [[Fraction(x) for x in row] for row in a.rows]
    pivots: list[int] = []
    pr = 0
    for c in range(a.n):
        pivot = next((i for i in range(pr, a.m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[pr], rows[pivot] = rows[pivot], rows[pr]
        inv = 1 / rows[pr][c]
        rows[pr] = [x * inv for x in rows[pr]]
        for i in range(a.m):
            if i != pr and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[pr])]
        pivots.append(c)
        pr += 1
        if pr == a.m:
            break
    return Mat(a.m, a.n, rows), tuple(pivots)


def _int_rows(a: Mat) -> list[list[int]]:
    """Each row scaled by its denominators' lcm: same row space, int entries."""
    out = []
    for row in a.rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def _echelon(rows: list[list[int]], n: int) -> tuple[list[list[int]], list[int]]:
    """Integer row-echelon form (row operations only), with pivot columns.

    Row operations preserve the solution set, so the echelon form can stand
    in for rref in rank, kernel, and solve computations; cross-multiplied
    eliminations avoid rational arithmetic in the hot loop, and rows are
    divided by their gcd to keep entries small.
    """
    m = len(rows)
    pivots: list[int] = []
    pr = 0
    for c in range(n):
        best = None
        for i in range(pr, m):
            x = rows[i][c]
            if x and (best is None or abs(x) < abs(rows[best][c])):
                best = i
        if best is None:
            continue
        rows[pr], rows[best] = rows[best], rows[pr]
        piv_row = rows[pr]
        piv = piv_row[c]
        for i in range(pr + 1, m):
            x = rows[i][c]
            if x:
                g = gcd(piv, x)
                pa, xb = piv // g, x // g
                row = [pa * u - xb * v for u, v in zip(rows[i], piv_row)]
                g = 0
                for u in row:
                    g = gcd(g, u)
                    if g == 1:
                        break
                rows[i] = [u // g for u in row] if g > 1 else row
        pivots.append(c)
        pr += 1
        if pr == m:
            break
    return rows[:pr], pivots


def rank(a: Mat) -> int:
    return len(_echelon(_int_rows(a), a.n)[1])


def is_invertible(a: Mat) -> bool:
    return a.m == a.n and rank(a) == a.n


def nullspace(a: Mat) -> Mat:
    """A basis of {x : a·x = 0} as the columns of an n × k matrix."""
    rows, pivots = _echelon(_int_rows(a), a.n)
    pivot_set = set(pivots)
    free = [c for c in range(a.n) if c not in pivot_set]
    cols = []
    for fc in free:
        v = [Fraction(0)] * a.n
        v[fc] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            row = rows[i]
            acc = row[fc]
            for q in pivots[i + 1:]:
                if row[q]:
                    acc += row[q] * v[q]
            v[p] = Fraction(-acc, row[p]) if isinstance(acc, int) else -acc / row[p]
        cols.append(v)
    return Mat(a.n, len(free), [[col[i] for col in cols] for i in range(a.n)])


def solve(a: Mat, b: Mat) -> Mat | None:
    """An exact solution X of a·X = b (free variables zero), or None."""
    if a.m != b.m:
        raise ValueError("left and right sides have different row counts")
    aug = Mat(a.m, a.n + b.n, [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)])
    rows, pivots = _echelon(_int_rows(aug), aug.n)
    if any(p >= a.n for p in pivots):
        return None
    out = [[Fraction(0)] * b.n for _ in range(a.n)]
    for col in range(b.n):
        for i in range(len(pivots) - 1, -1, -1):
            p = pivots[i]
            row = rows[i]
            acc = Fraction(row[a.n + col])
            for q in pivots[i + 1:]:
                if row[q]:
                    acc -= row[q] * out[q][col]
            out[p][col] = acc / row[p]
    return Mat(a.n, b.n, out)
