"""Spans in the coproduct-completed slice categories and their composition.

A span between connected feet is stored as a list of connected components
(apex component plus its two legs); composition pulls the middle cospan back
and decomposes it into good subsets.  Iso classes are canonical keys obtained
by minimizing the leg value tuples over all relabelings of each apex
component; two spans get the same key exactly when an apex isomorphism
commutes with both legs.
"""

from __future__ import annotations

import itertools

from .epi_cat import SliceMorphism, SliceObject
from .fin_coprod import good_subsets
from .finset import FinMap
from .finset import compose as compose_maps


class ConnectedSpan:
    """left_foot ← apex → right_foot with both legs surjective over [r]."""

    __slots__ = ("left_foot", "right_foot", "apex", "left", "right")

    def __init__(self, left: SliceMorphism, right: SliceMorphism):
        if left.source != right.source:
            raise ValueError("legs start at different apexes")
        object.__setattr__(self, "apex", left.source)
        object.__setattr__(self, "left_foot", left.target)
        object.__setattr__(self, "right_foot", right.target)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, name, value):
        raise AttributeError("ConnectedSpan is immutable")

    def __repr__(self):
        return (
            f"ConnectedSpan({self.left_foot.fiber_tuple} <-{list(self.left.map.values)}- "
            f"{self.apex.fiber_tuple} -{list(self.right.map.values)}-> {self.right_foot.fiber_tuple})"
        )

    @staticmethod
    def identity(u: SliceObject) -> "ConnectedSpan":
        i = SliceMorphism.identity(u)
        return ConnectedSpan(i, i)


class Span:
    """A span with formal-coproduct apex: a bag of connected components."""

    __slots__ = ("left_foot", "right_foot", "components")

    def __init__(self, left_foot: SliceObject, right_foot: SliceObject, components):
        components = tuple(components)
        for c in components:
            if c.left_foot != left_foot or c.right_foot != right_foot:
                raise ValueError("component feet do not match the span feet")
        object.__setattr__(self, "left_foot", left_foot)
        object.__setattr__(self, "right_foot", right_foot)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("Span is immutable")

    @staticmethod
    def connected(c: ConnectedSpan) -> "Span":
        return Span(c.left_foot, c.right_foot, [c])

    @staticmethod
    def identity(u: SliceObject) -> "Span":
        return Span.connected(ConnectedSpan.identity(u))


def apex_automorphisms(apex: SliceObject) -> list[FinMap]:
    """All structure-preserving permutations: one permutation per fiber."""
    per_fiber = []
    for i, k in enumerate(apex.fiber_tuple, start=1):
        off = apex.fiber_start(i) - 1
        per_fiber.append(
            [tuple(off + p for p in perm) for perm in itertools.permutations(range(1, k + 1))]
        )
    out = []
    for choice in itertools.product(*per_fiber):
        values: list[int] = []
        for block in choice:
            values.extend(block)
        out.append(FinMap(apex.total_size, apex.total_size, values))
    return out


def _component_key(c: ConnectedSpan) -> tuple:
    """Canonical key of a connected span: (apex tuple, min over relabelings
    of the pair (left leg values, right leg values))."""
    best = None
    for sigma in apex_automorphisms(c.apex):
        cand = (compose_maps(c.left.map, sigma).values, compose_maps(c.right.map, sigma).values)
        if best is None or cand < best:
            best = cand
    return (c.apex.fiber_tuple, best[0], best[1])


class SpanIsoClass:
    """Canonical key of a span: feet plus the multiset of component keys."""

    __slots__ = ("left_foot", "right_foot", "components")

    def __init__(self, left_foot, right_foot, component_keys):
        object.__setattr__(self, "left_foot", left_foot)
        object.__setattr__(self, "right_foot", right_foot)
        object.__setattr__(self, "components", tuple(sorted(component_keys)))

    def __setattr__(self, name, value):
        raise AttributeError("SpanIsoClass is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, SpanIsoClass)
            and self.left_foot == other.left_foot
            and self.right_foot == other.right_foot
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.left_foot, self.right_foot, self.components))

    def __lt__(self, other):
        return (self.left_foot, self.right_foot, self.components) < (
            other.left_foot, other.right_foot, other.components,
        )

    def __repr__(self):
        comps = "; ".join(
            f"{apex}:{list(lv)}/{list(rv)}" for apex, lv, rv in self.components
        )
        return f"SpanIsoClass({self.left_foot} <- [{comps}] -> {self.right_foot})"


def canonicalize(s: Span | ConnectedSpan) -> SpanIsoClass:
    if isinstance(s, ConnectedSpan):
        s = Span.connected(s)
    return SpanIsoClass(
        s.left_foot.fiber_tuple,
        s.right_foot.fiber_tuple,
        [_component_key(c) for c in s.components],
    )


def compose_connected(s2: ConnectedSpan, s1: ConnectedSpan, d: int) -> dict[SpanIsoClass, int]:
    """Composite of v ← W → u after u ← V → t: pull back W → u ← V and sum
    the classes of the resulting good-subset spans v ← U → t."""
    if s2.right_foot != s1.left_foot:
        raise ValueError(
            f"middle feet differ: {s2.right_foot.fiber_tuple} vs {s1.left_foot.fiber_tuple}"
        )
    out: dict[SpanIsoClass, int] = {}
    for u in good_subsets(s2.right, s1.left, d):
        comp = ConnectedSpan(
            SliceMorphism(u.as_object, s2.left_foot, compose_maps(s2.left.map, u.proj_a.map)),
            SliceMorphism(u.as_object, s1.right_foot, compose_maps(s1.right.map, u.proj_b.map)),
        )
        key = canonicalize(comp)
        out[key] = out.get(key, 0) + 1
    return out


def compose(s2: Span, s1: Span, d: int) -> dict[SpanIsoClass, int]:
    """Bilinear extension of connected composition to formal coproducts."""
    if s2.right_foot != s1.left_foot:
        raise ValueError("middle feet differ")
    out: dict[SpanIsoClass, int] = {}
    for c2 in s2.components:
        for c1 in s1.components:
            for key, mult in compose_connected(c2, c1, d).items():
                out[key] = out.get(key, 0) + mult
    return out
