"""Finite-coproduct completion of the truncated slice categories.

Objects are formal coproducts (multisets) of canonical connected objects;
maps send each source component onto a chosen target component.  Pullbacks
exist and are computed componentwise over the base: the pullback of a cospan
of connected objects is the coproduct of its *good subsets* — subsets of the
set-theoretic fiber product whose two projections are both surjective, of
size at most the truncation bound d.
"""

from __future__ import annotations

from functools import lru_cache

from .epi_cat import SliceMorphism, SliceObject, enumerate_objects, hom_set
from .finset import FinMap, compose


class FormalCoproduct:
    """A finite multiset of connected objects, kept in sorted canonical order."""

    __slots__ = ("components",)

    def __init__(self, components):
        components = tuple(
            sorted(components, key=lambda c: (c.total_size, c.fiber_tuple))
        )
        rs = {c.r for c in components}
        if len(rs) > 1:
            raise ValueError("components live over different bases")
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("FormalCoproduct is immutable")

    def __eq__(self, other):
        return isinstance(other, FormalCoproduct) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __repr__(self):
        return f"FormalCoproduct[{', '.join(str(c.fiber_tuple) for c in self.components)}]"

    def size_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.components:
            out[c.total_size] = out.get(c.total_size, 0) + 1
        return out


class CoprodMap:
    """A map of formal coproducts: each source component surjects onto one
    target component.  ``parts[i] = (j, m)`` sends source component i onto
    target component j via the SliceMorphism m."""

    __slots__ = ("source", "target", "parts")

    def __init__(self, source: FormalCoproduct, target: FormalCoproduct, parts):
        parts = tuple(parts)
        if len(parts) != len(source.components):
            raise ValueError("need one part per source component")
        for i, (j, m) in enumerate(parts):
            if not (0 <= j < len(target.components)):
                raise ValueError(f"part {i} targets missing component {j}")
            if m.source != source.components[i] or m.target != target.components[j]:
                raise ValueError(f"part {i} has wrong endpoints")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("CoprodMap is immutable")

    @staticmethod
    def from_connected(m: SliceMorphism) -> "CoprodMap":
        return CoprodMap(
            FormalCoproduct([m.source]), FormalCoproduct([m.target]), [(0, m)]
        )


def fiber_product_set(f: FinMap, g: FinMap) -> list[tuple[int, int]]:
    """The pairs {(a, b) : f(a) = g(b)}, sorted lexicographically."""
    if f.target_size != g.target_size:
        raise ValueError("cospan legs have different targets")
    return [
        (a, b)
        for a in range(1, f.source_size + 1)
        for b in range(1, g.source_size + 1)
        if f(a) == g(b)
    ]


class GoodSubset:
    """A subset of A ×_E B with both projections surjective and |U| ≤ d.

    ``elements`` is the sorted tuple of pairs; relabeling them 1..|U| in that
    order yields the canonical object ``as_object`` (the sort is by first
    coordinate, and A is canonical, so the induced structure map over [r] is
    automatically fiber-contiguous).
    """

    __slots__ = ("elements", "proj_a", "proj_b", "as_object")

    def __init__(self, elements, a_obj: SliceObject, b_obj: SliceObject):
        elements = tuple(sorted(elements))
        pa = FinMap(len(elements), a_obj.total_size, [a for a, _ in elements])
        pb = FinMap(len(elements), b_obj.total_size, [b for _, b in elements])
        struct = compose(a_obj.structure_map, pa)
        obj = SliceObject(struct.fiber_sizes())
        if obj.structure_map != struct:
            raise ValueError("good subset did not relabel to canonical form")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "proj_a", SliceMorphism(obj, a_obj, pa))
        object.__setattr__(self, "proj_b", SliceMorphism(obj, b_obj, pb))
        object.__setattr__(self, "as_object", obj)

    def __setattr__(self, name, value):
        raise AttributeError("GoodSubset is immutable")

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GoodSubset{self.elements}"


def good_subsets(f: SliceMorphism, g: SliceMorphism, d: int) -> list[GoodSubset]:
    """All good subsets of the fiber product of the cospan (f, g), |U| ≤ d.

    Ordered by (size, element tuple).  A depth-first search over the grid
    cells replaces the naive power-set scan: a partial subset is abandoned as
    soon as the size budget cannot cover the rows/columns still missing, or
    the untried cells cannot reach them.  The search is exhaustive — every
    subset satisfying the definition is produced exactly once.
    """
    if f.target != g.target:
        raise ValueError("cospan feet do not match")
    out = [
        GoodSubset(cells, f.source, g.source)
        for cells in good_subset_cells(f.map, g.map, d)
    ]
    out.sort(key=lambda u: (len(u.elements), u.elements))
    return out


def good_subset_cells(fm: FinMap, gm: FinMap, d: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Raw cell tuples of all good subsets of the cospan (fm, gm), |U| ≤ d.

    Row-by-row DFS: row a of the grid is the set of cells {(a, b) : fm(a) =
    gm(b)}; surjectivity onto A means every row contributes at least one
    cell, so the search picks one nonempty subset of each row's cells under
    the global size budget, pruning on column coverage.  Each result is
    lexicographically sorted by construction.  Results are cached: the same
    cospan is pulled back over and over by the ring and Mackey layers.
    """
    if fm.target_size != gm.target_size:
        raise ValueError("cospan feet do not match")
    return _cells_cached(fm.values, gm.values, d)


@lru_cache(maxsize=None)
def _cells_cached(fvalues, gvalues, d):
    na, nb = len(fvalues), len(gvalues)
    rows_cells: list[list[int]] = []
    for a in range(1, na + 1):
        fa = fvalues[a - 1]
        cols = [b for b in range(1, nb + 1) if gvalues[b - 1] == fa]
        if not cols:
            return ()  # row cannot be covered: no good subsets
        rows_cells.append(cols)

    full_cols = (1 << nb) - 1
    # column coverage still reachable from row index i onward
    suff_c = [0] * (na + 1)
    for i in range(na - 1, -1, -1):
        m = 0
        for b in rows_cells[i]:
            m |= 1 << (b - 1)
        suff_c[i] = suff_c[i + 1] | m

    # nonempty subsets of each row's cells, sorted by size so the search can
    # stop scanning a row as soon as the budget is exceeded
    row_subsets: list[list[tuple[int, int, tuple[int, ...]]]] = []
    for cols in rows_cells:
        t = len(cols)
        subs = []
        for mask in range(1, 1 << t):
            chosen = tuple(cols[j] for j in range(t) if mask >> j & 1)
            cm = 0
            for b in chosen:
                cm |= 1 << (b - 1)
            subs.append((len(chosen), cm, chosen))
        subs.sort(key=lambda s: (s[0], s[2]))
        row_subsets.append(subs)

    out: list[tuple[tuple[int, int], ...]] = []
    picked: list[tuple[int, ...]] = []

    def rec(i: int, size: int, cols: int) -> None:
        # every uncovered column and every remaining row needs a cell; a
        # single cell can serve one of each, hence the max
        need = (full_cols ^ cols).bit_count()
        rows_left = na - i
        if size + (need if need > rows_left else rows_left) > d:
            return
        if (cols | suff_c[i]) != full_cols:
            return
        if i == na:
            if need == 0:
                cells = tuple(
                    (a, b) for a, chosen in enumerate(picked, start=1) for b in chosen
                )
                out.append(cells)
            return
        budget = d - size - (na - i - 1)
        for sz, cm, chosen in row_subsets[i]:
            if sz > budget:
                break
            picked.append(chosen)
            rec(i + 1, size + sz, cols | cm)
            picked.pop()

    rec(0, 0, 0)
    return tuple(out)


def good_subset_classes(f: SliceMorphism, g: SliceMorphism, d: int) -> dict[tuple[int, ...], int]:
    """Iso classes of the good subsets, counted — no projection data built.

    The class of U is its fiber tuple over [r], read off by counting the
    structure values of the first coordinates.
    """
    if f.target != g.target:
        raise ValueError("cospan feet do not match")
    struct = f.source.structure_map.values
    r = f.source.r
    out: dict[tuple[int, ...], int] = {}
    for cells in good_subset_cells(f.map, g.map, d):
        counts = [0] * r
        for a, _ in cells:
            counts[struct[a - 1] - 1] += 1
        key = tuple(counts)
        out[key] = out.get(key, 0) + 1
    return out


class PullbackResult:
    """Componentwise pullback of a cospan of formal coproducts.

    ``value`` is the formal coproduct of all good subsets; ``to_a``/``to_b``
    are the projection CoprodMaps; ``pieces`` records, per (source component
    of A, source component of B) pair landing on a common E component, the
    list of GoodSubsets it contributed.
    """

    __slots__ = ("value", "to_a", "to_b", "pieces")

    def __init__(self, value, to_a, to_b, pieces):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "to_a", to_a)
        object.__setattr__(self, "to_b", to_b)
        object.__setattr__(self, "pieces", pieces)

    def __setattr__(self, name, value):
        raise AttributeError("PullbackResult is immutable")


def pullback(f: CoprodMap, g: CoprodMap, d: int) -> PullbackResult:
    """The pullback A ×_E B in the coproduct completion, truncated at d."""
    if f.target != g.target:
        raise ValueError("cospan targets do not match")
    pieces: list[tuple[int, int, list[GoodSubset]]] = []
    for ia, (ja, ma) in enumerate(f.parts):
        for ib, (jb, mb) in enumerate(g.parts):
            if ja != jb:
                continue
            pieces.append((ia, ib, good_subsets(ma, mb, d)))
    comps: list[SliceObject] = []
    parts_a: list[tuple[int, SliceMorphism]] = []
    parts_b: list[tuple[int, SliceMorphism]] = []
    for ia, ib, goods in pieces:
        for u in goods:
            comps.append(u.as_object)
            parts_a.append((ia, u.proj_a))
            parts_b.append((ib, u.proj_b))
    # FormalCoproduct sorts; keep parts aligned by sorting the same way
    order = sorted(
        range(len(comps)), key=lambda i: (comps[i].total_size, comps[i].fiber_tuple)
    )
    value = FormalCoproduct([comps[i] for i in order])
    to_a = CoprodMap(value, f.source, [parts_a[i] for i in order])
    to_b = CoprodMap(value, g.source, [parts_b[i] for i in order])
    return PullbackResult(value, to_a, to_b, pieces)


class UniversalPropertyReport:
    def __init__(self, passed, tested, failing=None, detail=None):
        self.passed = passed
        self.tested = tested
        self.failing = failing
        self.detail = detail

    def __repr__(self):
        if self.passed:
            return f"UniversalPropertyReport(pass, {self.tested} test objects)"
        return f"UniversalPropertyReport(FAIL at T={self.failing}: {self.detail})"


def _hom_into_coproduct(t: SliceObject, x: FormalCoproduct) -> list[tuple[int, SliceMorphism]]:
    """Maps from connected t into the coproduct: a component choice plus a map."""
    out = []
    for j, c in enumerate(x.components):
        for m in hom_set(t, c):
            out.append((j, m))
    return out


def verify_universal_property(f: CoprodMap, g: CoprodMap, d: int) -> UniversalPropertyReport:
    """Hom-counting oracle for the pullback.

    For every connected test object T of size ≤ d: maps T → P must biject
    with pairs (α: T → A, β: T → B) agreeing in Hom(T, E).  Counting both
    sides suffices for a pass/fail verdict (a bijection exists iff the counts
    agree, since the comparison map is injective by construction).
    """
    if f.target != g.target:
        raise ValueError("cospan targets do not match")
    pb = pullback(f, g, d)
    r = f.target.components[0].r if f.target.components else 1
    tested = 0
    for t in enumerate_objects(d, r):
        tested += 1
        lhs = len(_hom_into_coproduct(t, pb.value))
        rhs = 0
        homs_a = _hom_into_coproduct(t, f.source)
        homs_b = _hom_into_coproduct(t, g.source)
        for ja, alpha in homs_a:
            ea, ma = f.parts[ja]
            fa = compose(ma.map, alpha.map)
            for jb, beta in homs_b:
                eb, mb = g.parts[jb]
                if ea != eb:
                    continue
                if compose(mb.map, beta.map) == fa:
                    rhs += 1
        if lhs != rhs:
            return UniversalPropertyReport(
                False, tested, failing=t.fiber_tuple,
                detail=f"|Hom(T,P)| = {lhs} but fiber-product count = {rhs}",
            )
    return UniversalPropertyReport(True, tested)
