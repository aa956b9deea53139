"""Spans of slice objects: canonical forms and composition."""

import itertools

import pytest
from hypothesis import given, strategies as st

from surjcat.epi_cat import SliceObject, SliceMorphism, hom_set
from surjcat.finset import FinMap
from surjcat.span_cat import (
    ConnectedSpan, Span, canonicalize, compose, compose_connected,
)


def fold_span(n: int) -> ConnectedSpan:
    """The span point <- [n] -> point."""
    apex = SliceObject((n,))
    point = SliceObject((1,))
    leg = SliceMorphism(apex, point, FinMap(n, 1, [1] * n))
    return ConnectedSpan(leg, leg)


def test_connected_span_validation():
    apex = SliceObject((2,))
    point = SliceObject((1,))
    leg = SliceMorphism(apex, point, FinMap(2, 1, [1, 1]))
    other = SliceMorphism(SliceObject((3,)), point, FinMap(3, 1, [1, 1, 1]))
    with pytest.raises(ValueError):
        ConnectedSpan(leg, other)     # different apexes


def test_canonicalize_ignores_apex_relabeling():
    u = SliceObject((2,))
    v = SliceObject((2,))
    apex = SliceObject((3,))
    base = ConnectedSpan(
        SliceMorphism(apex, u, FinMap(3, 2, [1, 1, 2])),
        SliceMorphism(apex, v, FinMap(3, 2, [1, 2, 2])),
    )
    key = canonicalize(base)
    for perm in itertools.permutations(range(1, 4)):
        lvals = [0] * 3
        rvals = [0] * 3
        for x in range(1, 4):
            lvals[perm[x - 1] - 1] = base.left.map(x)
            rvals[perm[x - 1] - 1] = base.right.map(x)
        relabeled = ConnectedSpan(
            SliceMorphism(apex, u, FinMap(3, 2, lvals)),
            SliceMorphism(apex, v, FinMap(3, 2, rvals)),
        )
        assert canonicalize(relabeled) == key


def test_distinct_spans_have_distinct_keys():
    u = SliceObject((2,))
    apex = SliceObject((2,))
    ident = SliceMorphism(apex, u, FinMap(2, 2, [1, 2]))
    swap = SliceMorphism(apex, u, FinMap(2, 2, [2, 1]))
    diag = canonicalize(ConnectedSpan(ident, ident))
    cross = canonicalize(ConnectedSpan(ident, swap))
    # no apex iso can fix the left leg and also straighten the right one
    assert diag != cross
    # relabeling by the swap turns (id, swap) into (swap, id): same class
    assert cross == canonicalize(ConnectedSpan(swap, ident))
    fold = SliceMorphism(SliceObject((2,)), SliceObject((1,)), FinMap(2, 1, [1, 1]))
    assert canonicalize(ConnectedSpan(ident, ident)) != canonicalize(
        ConnectedSpan(
            SliceMorphism(apex, SliceObject((1,)), FinMap(2, 1, [1, 1])), ident
        )
    )


def test_self_composition_of_fold_span_frozen():
    s = fold_span(2)
    composite = compose_connected(s, s, 4)
    by_apex = {k.components[0][0]: n for k, n in composite.items()}
    assert by_apex == {(2,): 2, (3,): 4, (4,): 1}
    truncated = compose_connected(s, s, 2)
    assert {k.components[0][0]: n for k, n in truncated.items()} == {(2,): 2}


def test_identity_span_is_neutral():
    u = SliceObject((2,))
    ident_leg = SliceMorphism(u, u, FinMap(2, 2, [1, 2]))
    ident_span = ConnectedSpan(ident_leg, ident_leg)
    s = fold_span(2)
    # point <- [2] -> point needs feet to match: build a 2-foot span instead
    t = ConnectedSpan(
        SliceMorphism(u, u, FinMap(2, 2, [1, 2])),
        SliceMorphism(u, SliceObject((1,)), FinMap(2, 1, [1, 1])),
    )
    left_unit = compose_connected(ident_span, t, 4)
    assert left_unit == {canonicalize(t): 1}


def test_composition_middle_feet_must_match():
    s = fold_span(2)
    u = SliceObject((2,))
    t = ConnectedSpan(
        SliceMorphism(u, u, FinMap(2, 2, [1, 2])),
        SliceMorphism(u, u, FinMap(2, 2, [1, 2])),
    )
    with pytest.raises(ValueError):
        compose_connected(s, t, 4)


def test_composition_associative_small():
    s = fold_span(2)
    # ((s∘s)∘s) vs (s∘(s∘s)) as multiset sums over iso classes, d = 4
    left_first = compose_connected(s, s, 4)
    rhs: dict = {}
    for k, n in left_first.items():
        apex = SliceObject(k.components[0][0])
        piece = ConnectedSpan(
            SliceMorphism(apex, SliceObject((1,)), FinMap(apex.total_size, 1, k.components[0][1])),
            SliceMorphism(apex, SliceObject((1,)), FinMap(apex.total_size, 1, k.components[0][2])),
        )
        for kk, nn in compose_connected(piece, s, 4).items():
            rhs[kk] = rhs.get(kk, 0) + n * nn
    lhs: dict = {}
    for k, n in left_first.items():
        apex = SliceObject(k.components[0][0])
        piece = ConnectedSpan(
            SliceMorphism(apex, SliceObject((1,)), FinMap(apex.total_size, 1, k.components[0][1])),
            SliceMorphism(apex, SliceObject((1,)), FinMap(apex.total_size, 1, k.components[0][2])),
        )
        for kk, nn in compose_connected(s, piece, 4).items():
            lhs[kk] = lhs.get(kk, 0) + n * nn
    assert lhs == rhs


def test_disconnected_compose_is_bilinear():
    point = SliceObject((1,))
    two = Span(point, point, [fold_span(2), fold_span(2)])
    single = Span.connected(fold_span(2))
    out_single = compose(single, single, 4)
    out_double = compose(two, single, 4)
    assert out_double == {k: 2 * n for k, n in out_single.items()}
