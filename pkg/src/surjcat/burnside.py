"""Burnside rings of the truncated slice categories.

The ring A(d, r) is free abelian on the iso classes of Epi_{d,r}; the product
of two basis classes is the good-subset decomposition of their pullback over
the final object.  Marks count homs out of a fixed basis object; the marks
matrix is lower triangular with factorial diagonal, so it embeds the ring
into a product of copies of the integers.  The augmentation-ideal machinery
at r = 1 reproduces, prime by prime, the arithmetic of the map
"evaluate all marks" on the ideal I(d).
"""

from __future__ import annotations

import math

from .epi_cat import SliceMorphism, SliceObject, enumerate_objects, hom_count
from .fin_coprod import good_subset_classes


class BurnsideElement:
    """An integer vector over the basis of a fixed ring."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "BurnsideRing", coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != len(ring.basis):
            raise ValueError("coefficient vector does not match basis")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("BurnsideElement is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, BurnsideElement)
            and self.ring is other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        self._same_ring(other)
        return BurnsideElement(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same_ring(other)
        return BurnsideElement(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return BurnsideElement(self.ring, [n * a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        self._same_ring(other)
        return self.ring.multiply(self, other)

    def _same_ring(self, other):
        if not isinstance(other, BurnsideElement) or other.ring is not self.ring:
            raise ValueError("elements of different rings")

    def __repr__(self):
        terms = [
            f"{c}*{t}" for c, t in zip(self.coeffs, self.ring.basis_tuples) if c
        ]
        return " + ".join(terms) if terms else "0"


class BurnsideRing:
    """A(d, r) with its full structure-constant table.

    ``sc[i][j]`` is a dict {k: c} recording [b_i]·[b_j] = Σ c·[b_k] in the
    global basis order.  build_ring verifies unit, commutativity and
    associativity before handing the instance out.
    """

    __slots__ = ("d", "r", "basis", "basis_tuples", "index", "sc")

    def __init__(self, d, r, basis, sc):
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "basis", tuple(basis))
        object.__setattr__(self, "basis_tuples", tuple(b.fiber_tuple for b in basis))
        object.__setattr__(
            self, "index", {b.fiber_tuple: i for i, b in enumerate(basis)}
        )
        object.__setattr__(self, "sc", sc)

    def __setattr__(self, name, value):
        raise AttributeError("BurnsideRing is immutable")

    def element(self, coeffs) -> BurnsideElement:
        return BurnsideElement(self, coeffs)

    def basis_element(self, fiber_tuple) -> BurnsideElement:
        i = self.index[tuple(fiber_tuple)]
        return BurnsideElement(self, [1 if j == i else 0 for j in range(len(self.basis))])

    @property
    def unit(self) -> BurnsideElement:
        return self.basis_element((1,) * self.r)

    @property
    def zero(self) -> BurnsideElement:
        return BurnsideElement(self, [0] * len(self.basis))

    def multiply(self, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
        n = len(self.basis)
        out = [0] * n
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            for j, yj in enumerate(y.coeffs):
                if not yj:
                    continue
                for k, c in self.sc[i][j].items():
                    out[k] += xi * yj * c
        return BurnsideElement(self, out)

    def to_dict(self) -> dict:
        constants = []
        for i, u in enumerate(self.basis_tuples):
            for j, v in enumerate(self.basis_tuples):
                for k in sorted(self.sc[i][j]):
                    constants.append(
                        {"u": list(u), "v": list(v),
                         "w": list(self.basis_tuples[k]), "c": self.sc[i][j][k]}
                    )
        return {
            "d": self.d,
            "r": self.r,
            "basis": [list(t) for t in self.basis_tuples],
            "structure_constants": constants,
            "marks": [list(row) for row in marks_matrix_of(self)],
        }


class RingConsistencyError(AssertionError):
    """An internal invariant of a freshly built ring failed (a bug, not bad input)."""


def build_ring(d: int, r: int) -> BurnsideRing:
    """Structure constants from good subsets over the final object, with
    unit/commutativity/associativity verified on the full table."""
    if not (1 <= r <= d):
        raise ValueError(f"need 1 <= r <= d, got r={r}, d={d}")
    if d > 7:
        raise ValueError("ring builds are capped at d <= 7")
    basis = enumerate_objects(d, r)
    final = SliceObject((1,) * r)
    to_final = {
        b.fiber_tuple: SliceMorphism(b, final, b.structure_map) for b in basis
    }
    index = {b.fiber_tuple: i for i, b in enumerate(basis)}
    n = len(basis)
    sc: list[list[dict[int, int]]] = [[{} for _ in range(n)] for _ in range(n)]
    for i, u in enumerate(basis):
        for j in range(i, n):
            v = basis[j]
            row = {
                index[t]: c
                for t, c in good_subset_classes(
                    to_final[u.fiber_tuple], to_final[v.fiber_tuple], d
                ).items()
            }
            sc[i][j] = row
            sc[j][i] = dict(row)

    ring = BurnsideRing(d, r, basis, sc)

    one = index[(1,) * r]
    for i in range(n):
        if sc[one][i] != {i: 1} or sc[i][one] != {i: 1}:
            raise RingConsistencyError(f"unit fails at basis {basis[i].fiber_tuple}")
    for i in range(n):
        for j in range(n):
            if sc[i][j] != sc[j][i]:
                raise RingConsistencyError(f"commutativity fails at ({i},{j})")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left: dict[int, int] = {}
                for x, c in sc[i][j].items():
                    for y, e in sc[x][k].items():
                        left[y] = left.get(y, 0) + c * e
                right: dict[int, int] = {}
                for z, c in sc[j][k].items():
                    for y, e in sc[i][z].items():
                        right[y] = right.get(y, 0) + c * e
                left = {y: c for y, c in left.items() if c}
                right = {y: c for y, c in right.items() if c}
                if left != right:
                    raise RingConsistencyError(
                        f"associativity fails at ({basis[i].fiber_tuple}, "
                        f"{basis[j].fiber_tuple}, {basis[k].fiber_tuple})"
                    )
    return ring


def mark(u: SliceObject, x: BurnsideElement) -> int:
    """Φ^u(x) = Σ_v x_v · |Hom(u, v)|."""
    ring = x.ring
    if u.fiber_tuple not in ring.index:
        raise ValueError(f"{u.fiber_tuple} is not a basis object of this ring")
    return sum(
        c * hom_count(u, v) for c, v in zip(x.coeffs, ring.basis) if c
    )


def marks_matrix_of(ring: BurnsideRing) -> list[list[int]]:
    return [
        [hom_count(u, v) for v in ring.basis] for u in ring.basis
    ]


def marks_matrix(d: int, r: int) -> list[list[int]]:
    """Entries |Hom(u, v)| in the global basis order: lower triangular with
    diagonal Π_i k_i! (marking object u on rows)."""
    basis = enumerate_objects(d, r)
    return [[hom_count(u, v) for v in basis] for u in basis]


def augmentation_ideal(d: int, ring: BurnsideRing | None = None) -> list[BurnsideElement]:
    """Generators [λ_i] − Surj(d, i)·[λ_1] of the kernel of the top mark, i = 2..d."""
    if ring is None:
        ring = build_ring(d, 1)
    if (ring.d, ring.r) != (d, 1):
        raise ValueError("augmentation ideal lives in the r = 1 ring")
    top = SliceObject((d,))
    gens = []
    for i in range(2, d + 1):
        gi = ring.basis_element((i,)) - hom_count(top, SliceObject((i,))) * ring.basis_element((1,))
        gens.append(gi)
    return gens


class IdealImage:
    """A subgroup of the integers, by its nonnegative generator."""

    __slots__ = ("generator", "witnesses")

    def __init__(self, generator: int, witnesses):
        object.__setattr__(self, "generator", abs(int(generator)))
        object.__setattr__(self, "witnesses", tuple(witnesses))

    def __setattr__(self, name, value):
        raise AttributeError("IdealImage is immutable")

    def __repr__(self):
        return f"IdealImage({self.generator}Z)"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def ideal_image(d: int, k: int, p: int | None = None, *, allow_composite: bool = False,
                ring: BurnsideRing | None = None) -> IdealImage:
    """Generator of (p, Φ^[k](I(d))) ⊆ Z, or of the raw image when p is absent.

    The generators are closed under multiplication by basis elements before
    marking — redundant once marks are known to be ring maps, but kept so
    this computation does not lean on the property it helps to test.
    """
    if not (1 <= k <= d):
        raise ValueError(f"need 1 <= k <= d, got k={k}, d={d}")
    if p is not None and not is_prime(p) and not allow_composite:
        raise ValueError(
            f"p = {p} is not prime; pass allow_composite=True to explore composites"
        )
    if ring is None:
        ring = build_ring(d, 1)
    gens = augmentation_ideal(d, ring)
    uk = SliceObject((k,))
    values: list[int] = []
    for g in gens:
        values.append(mark(uk, g))
        for t in ring.basis_tuples:
            values.append(mark(uk, g * ring.basis_element(t)))
    g = 0 if p is None else p
    for v in values:
        g = math.gcd(g, v)
    return IdealImage(g, values)


class SegalRow:
    __slots__ = ("k", "computed", "raw", "expected", "ok")

    def __init__(self, k, computed, raw, expected, expect_raw_zero=False):
        self.k = k
        self.computed = computed
        self.raw = raw
        self.expected = expected
        self.ok = computed == expected and (not expect_raw_zero or raw == 0)

    def __repr__(self):
        flag = "ok" if self.ok else "MISMATCH"
        return f"k={self.k}: generator {self.computed} (raw {self.raw}), expected {self.expected} [{flag}]"


class SegalReport:
    """Per-degree ideal-image generators at a prime, plus divisibility witnesses."""

    def __init__(self, p: int, rows: list[SegalRow], divisibility: list[tuple[int, int]]):
        self.p = p
        self.rows = rows
        self.divisibility = divisibility  # (i, Surj(p, i)) for 2 <= i <= p
        self.passed = all(r.ok for r in rows) and all(
            s % p == 0 for _, s in divisibility
        )

    def __repr__(self):
        lines = [f"SegalReport(p={self.p}, {'pass' if self.passed else 'FAIL'})"]
        lines += [f"  {r}" for r in self.rows]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "passed": self.passed,
            "rows": [
                {"k": r.k, "generator": r.computed, "raw_generator": r.raw,
                 "expected": r.expected, "ok": r.ok}
                for r in self.rows
            ],
            "divisibility_witnesses": [
                {"i": i, "surjections": s, "divisible": s % self.p == 0}
                for i, s in self.divisibility
            ],
        }


def segal_report(p: int) -> SegalReport:
    """Verify the ideal-image case analysis at a prime p:

    the generator of (p, Φ^[k](I(p))) is p at k = 1, is 1 for 1 < k < p, and
    is p again at k = p because the raw image there is zero; alongside, p
    divides Surj(p, i) for every 2 ≤ i ≤ p.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    from .finset import surjection_count

    ring = build_ring(p, 1)
    rows = []
    for k in range(1, p + 1):
        computed = ideal_image(p, k, p, ring=ring).generator
        raw = ideal_image(p, k, None, ring=ring).generator
        expected = p if k == 1 or k == p else 1
        rows.append(SegalRow(k, computed, raw, expected, expect_raw_zero=(k == p)))
    div = [(i, surjection_count(p, i)) for i in range(2, p + 1)]
    return SegalReport(p, rows, div)
