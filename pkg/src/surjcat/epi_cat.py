"""Truncated surjection categories sliced over a fixed base [r].

Objects are finite sets of size at most d equipped with a surjection onto
[r]; the size tuple of the fibers is a complete isomorphism invariant, so a
single canonical representative per tuple (fibers as contiguous intervals)
acts as the skeleton.  r = 1 recovers the un-sliced category.
"""

from __future__ import annotations

import itertools

from .finset import FinMap, compose, enumerate_surjections, surjection_count


class SliceObject:
    """Canonical object over [r]: fibers are the contiguous intervals.

    ``fiber_tuple = (k_1, ..., k_r)`` with all ``k_i >= 1``; elements
    ``1..k_1`` sit over 1, the next ``k_2`` over 2, and so on.
    """

    __slots__ = ("fiber_tuple", "total_size", "structure_map")

    def __init__(self, fiber_tuple):
        fiber_tuple = tuple(fiber_tuple)
        if not fiber_tuple or any(k < 1 for k in fiber_tuple):
            raise ValueError(f"fiber tuple must be nonempty with positive entries: {fiber_tuple}")
        total = sum(fiber_tuple)
        values = []
        for i, k in enumerate(fiber_tuple, start=1):
            values.extend([i] * k)
        object.__setattr__(self, "fiber_tuple", fiber_tuple)
        object.__setattr__(self, "total_size", total)
        object.__setattr__(self, "structure_map", FinMap(total, len(fiber_tuple), values))

    def __setattr__(self, name, value):
        raise AttributeError("SliceObject is immutable")

    @property
    def r(self) -> int:
        return len(self.fiber_tuple)

    def fiber_start(self, i: int) -> int:
        """1-based index of the first element of fiber i."""
        return 1 + sum(self.fiber_tuple[: i - 1])

    def __eq__(self, other):
        return isinstance(other, SliceObject) and self.fiber_tuple == other.fiber_tuple

    def __hash__(self):
        return hash(self.fiber_tuple)

    def __repr__(self):
        return f"SliceObject{self.fiber_tuple}"


class SliceMorphism:
    """A surjection between canonical objects commuting with the maps to [r]."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source: SliceObject, target: SliceObject, map: FinMap):
        if source.r != target.r:
            raise ValueError("source and target live over different bases")
        if map.source_size != source.total_size or map.target_size != target.total_size:
            raise ValueError("underlying map has the wrong sizes")
        if not map.is_surjective():
            raise ValueError("slice morphisms must be surjective")
        if compose(target.structure_map, map) != source.structure_map:
            raise ValueError("triangle over the base does not commute")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "map", map)

    def __setattr__(self, name, value):
        raise AttributeError("SliceMorphism is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SliceMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.map == other.map
        )

    def __hash__(self):
        return hash((self.source, self.target, self.map))

    def __repr__(self):
        return f"SliceMorphism({self.source.fiber_tuple}->{self.target.fiber_tuple}, {list(self.map.values)})"

    def is_iso(self) -> bool:
        return self.map.is_bijective()

    @staticmethod
    def identity(u: SliceObject) -> "SliceMorphism":
        return SliceMorphism(u, u, FinMap.identity(u.total_size))


def compose_slice(g: SliceMorphism, f: SliceMorphism) -> SliceMorphism:
    if f.target != g.source:
        raise ValueError("morphisms not composable")
    return SliceMorphism(f.source, g.target, compose(g.map, f.map))


def enumerate_objects(d: int, r: int) -> list[SliceObject]:
    """One canonical object per iso class, sorted by (total size, lex tuple)."""
    if not (1 <= r <= d):
        raise ValueError(f"need 1 <= r <= d, got r={r}, d={d}")
    tuples = []
    for total in range(r, d + 1):
        # compositions of `total` into r positive parts, lexicographically
        for cuts in itertools.combinations(range(1, total), r - 1):
            bounds = (0,) + cuts + (total,)
            tuples.append(tuple(bounds[i + 1] - bounds[i] for i in range(r)))
    tuples.sort(key=lambda t: (sum(t), t))
    return [SliceObject(t) for t in tuples]


def hom_set(u: SliceObject, v: SliceObject) -> list[SliceMorphism]:
    """All morphisms u -> v, in lexicographic order of global value tuples.

    A commuting surjection restricts to a surjection on each fiber, so the
    hom set is the product over i of the surjections [u.k_i] ↠ [v.k_i]; the
    itertools.product order below coincides with lex order on the assembled
    value tuples because fibers are contiguous.
    """
    if u.r != v.r:
        raise ValueError("objects live over different bases")
    per_fiber = [
        enumerate_surjections(ku, kv) for ku, kv in zip(u.fiber_tuple, v.fiber_tuple)
    ]
    out = []
    for choice in itertools.product(*per_fiber):
        values = []
        for i, s in enumerate(choice, start=1):
            off = v.fiber_start(i) - 1
            values.extend(off + val for val in s.values)
        out.append(SliceMorphism(u, v, FinMap(u.total_size, v.total_size, values)))
    return out


def hom_count(u: SliceObject, v: SliceObject) -> int:
    n = 1
    for ku, kv in zip(u.fiber_tuple, v.fiber_tuple):
        n *= surjection_count(ku, kv)
    return n


class OrbitalReport:
    """Result of check_atomic_orbital: pass/fail plus a counterexample."""

    def __init__(self, d, r, passed, endo_checked, retract_pairs_checked, num_classes, counterexample=None):
        self.d = d
        self.r = r
        self.passed = passed
        self.endo_checked = endo_checked
        self.retract_pairs_checked = retract_pairs_checked
        self.num_classes = num_classes
        self.counterexample = counterexample

    def __repr__(self):
        verdict = "pass" if self.passed else f"FAIL ({self.counterexample})"
        return (
            f"OrbitalReport(d={self.d}, r={self.r}, {verdict}, "
            f"{self.endo_checked} endos, {self.retract_pairs_checked} retract pairs, "
            f"{self.num_classes} classes)"
        )

    def to_dict(self):
        return {
            "d": self.d,
            "r": self.r,
            "passed": self.passed,
            "endomorphisms_checked": self.endo_checked,
            "retract_pairs_checked": self.retract_pairs_checked,
            "iso_classes": self.num_classes,
            "counterexample": self.counterexample,
        }


def check_atomic_orbital(d: int, r: int) -> OrbitalReport:
    """Mechanically verify the orbitality conditions for the slice at (d, r).

    (a) every endomorphism is an isomorphism;
    (b) for every pair f: u -> v, s: v -> u with s∘f an iso, both f and s are
        isos (retracts are equivalences);
    (c) there are finitely many iso classes (the skeleton enumeration).
    """
    objects = enumerate_objects(d, r)
    endo_checked = 0
    pairs_checked = 0
    for u in objects:
        for f in hom_set(u, u):
            endo_checked += 1
            if not f.is_iso():
                return OrbitalReport(d, r, False, endo_checked, pairs_checked,
                                     len(objects), ("endomorphism not iso", f))
    for u in objects:
        for v in objects:
            homs_uv = hom_set(u, v)
            if not homs_uv:
                continue
            homs_vu = hom_set(v, u)
            for f in homs_uv:
                for s in homs_vu:
                    pairs_checked += 1
                    if compose_slice(s, f).is_iso() and not (f.is_iso() and s.is_iso()):
                        return OrbitalReport(d, r, False, endo_checked, pairs_checked,
                                             len(objects), ("retract not iso", f, s))
    return OrbitalReport(d, r, True, endo_checked, pairs_checked, len(objects))
