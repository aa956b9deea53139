"""Formal coproducts, good subsets, pullbacks, and the universal property."""

import pytest

from surjcat.epi_cat import SliceObject, SliceMorphism, hom_set
from surjcat.fin_coprod import (
    CoprodMap, FormalCoproduct, fiber_product_set, good_subset_classes,
    good_subsets, pullback, verify_universal_property,
)
from surjcat.finset import FinMap

from oracles import brute_good_subsets


def fold(n: int) -> SliceMorphism:
    return SliceMorphism(
        SliceObject((n,)), SliceObject((1,)), FinMap(n, 1, [1] * n)
    )


def test_fiber_product_set():
    f = FinMap(2, 2, [1, 2])
    g = FinMap(3, 2, [1, 1, 2])
    assert fiber_product_set(f, g) == [(1, 1), (1, 2), (2, 3)]
    with pytest.raises(ValueError):
        fiber_product_set(f, FinMap(2, 3, [1, 2]))


def test_good_subsets_fold_fold_frozen():
    f, g = fold(2), fold(2)
    assert good_subset_classes(f, g, 4) == {(2,): 2, (3,): 4, (4,): 1}
    assert good_subset_classes(f, g, 2) == {(2,): 2}
    assert good_subset_classes(f, g, 3) == {(2,): 2, (3,): 4}


def test_good_subsets_against_powerset_oracle():
    cases = [
        (fold(2), fold(2), 4),
        (fold(3), fold(2), 4),
        (fold(2), fold(2), 2),
        (fold(4), fold(4), 3),
    ]
    u = SliceObject((2, 1))
    v = SliceObject((1, 1))
    m1 = SliceMorphism(u, v, FinMap(3, 2, [1, 1, 2]))
    cases.append((m1, m1, 4))
    for f, g, d in cases:
        got = {frozenset(s.elements) for s in good_subsets(f, g, d)}
        want = brute_good_subsets(f.map, g.map, d)
        assert got == want


def test_good_subsets_sorted_and_projections_surjective():
    subsets = good_subsets(fold(3), fold(2), 4)
    keys = [(len(s.elements), s.elements) for s in subsets]
    assert keys == sorted(keys)
    for s in subsets:
        assert s.proj_a.map.is_surjective()
        assert s.proj_b.map.is_surjective()
        assert len(s.elements) <= 4


def test_pullback_components_frozen():
    f = CoprodMap.from_connected(fold(2))
    g = CoprodMap.from_connected(fold(2))
    result = pullback(f, g, 3)
    assert [c.total_size for c in result.value.components] == [2, 2, 3, 3, 3, 3]
    # projections land where they should
    for (j, m), comp in zip(result.to_a.parts, result.value.components):
        assert m.source == comp
        assert m.map.is_surjective()


def test_pullback_cospan_mismatch():
    f = CoprodMap.from_connected(fold(2))
    g = CoprodMap.from_connected(
        SliceMorphism(SliceObject((2,)), SliceObject((2,)), FinMap(2, 2, [1, 2]))
    )
    with pytest.raises(ValueError):
        pullback(f, g, 3)


def test_universal_property_connected_cospans():
    # a couple of r = 1 cospans and one r = 2 cospan
    assert verify_universal_property(
        CoprodMap.from_connected(fold(2)), CoprodMap.from_connected(fold(3)), 4
    ).passed
    u = SliceObject((2, 2))
    e = SliceObject((1, 1))
    f = SliceMorphism(u, e, FinMap(4, 2, [1, 1, 2, 2]))
    v = SliceObject((2, 1))
    g = SliceMorphism(v, e, FinMap(3, 2, [1, 1, 2]))
    assert verify_universal_property(
        CoprodMap.from_connected(f), CoprodMap.from_connected(g), 4
    ).passed


def test_universal_property_on_disconnected_cospan():
    a = FormalCoproduct([SliceObject((2,)), SliceObject((1,))])
    e = FormalCoproduct([SliceObject((1,))])
    f = CoprodMap(a, e, [(0, fold(1)), (0, fold(2))])   # parts follow sorted components
    g = CoprodMap.from_connected(fold(2))
    assert verify_universal_property(f, g, 4).passed


def test_coprod_map_validation():
    a = FormalCoproduct([SliceObject((2,))])
    e = FormalCoproduct([SliceObject((1,))])
    with pytest.raises(ValueError):
        CoprodMap(a, e, [])                      # missing part
    with pytest.raises(ValueError):
        CoprodMap(a, e, [(1, fold(2))])          # component index out of range
