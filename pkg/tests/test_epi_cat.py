"""Slice objects over [r], their hom sets, and the orbitality checks."""

import pytest
from hypothesis import given, strategies as st

from surjcat.epi_cat import (
    SliceObject, SliceMorphism, check_atomic_orbital, compose_slice,
    enumerate_objects, hom_count, hom_set,
)
from surjcat.finset import FinMap

from oracles import brute_hom_values


def test_slice_object_validation():
    with pytest.raises(ValueError):
        SliceObject(())
    with pytest.raises(ValueError):
        SliceObject((2, 0))
    u = SliceObject((2, 1))
    assert u.total_size == 3
    assert u.structure_map.values == (1, 1, 2)
    assert u.fiber_start(2) == 3


def test_enumerate_objects_order():
    objs = [o.fiber_tuple for o in enumerate_objects(4, 2)]
    assert objs == [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)]
    assert [o.fiber_tuple for o in enumerate_objects(3, 1)] == [(1,), (2,), (3,)]
    assert len(enumerate_objects(6, 3)) == 20


def test_hom_sets_against_brute_filter():
    for d, r in [(4, 1), (4, 2), (5, 2)]:
        objs = enumerate_objects(d, r)
        for u in objs:
            for v in objs:
                brute = brute_hom_values(u, v)
                morphisms = hom_set(u, v)
                assert hom_count(u, v) == len(brute)
                assert sorted(m.map.values for m in morphisms) == sorted(brute)
                assert [m.map.values for m in morphisms] == sorted(m.map.values for m in morphisms)


def test_homs_to_final_and_self():
    final = SliceObject((1, 1))
    assert hom_count(SliceObject((2, 2)), final) == 1
    assert hom_count(final, SliceObject((2, 2))) == 0      # no maps up in size
    assert hom_count(SliceObject((2, 2)), SliceObject((2, 2))) == 4   # 2! * 2!


def test_identity_and_iso():
    u = SliceObject((2, 1))
    ident = SliceMorphism.identity(u)
    assert ident.is_iso()
    for m in hom_set(u, u):
        assert m.is_iso()
        assert compose_slice(m, ident).map.values == m.map.values
        assert compose_slice(ident, m).map.values == m.map.values


@given(st.data())
def test_composition_associative(data):
    objs = enumerate_objects(4, data.draw(st.integers(1, 2)))
    chains = [
        (a, b, c)
        for a in objs for b in objs for c in objs
        if hom_count(a, b) and hom_count(b, c)
    ]
    a, b, c = chains[data.draw(st.integers(0, len(chains) - 1))]
    f = data.draw(st.sampled_from(hom_set(a, b)))
    g = data.draw(st.sampled_from(hom_set(b, c)))
    d_objs = [o for o in objs if hom_count(c, o)]
    h_target = data.draw(st.sampled_from(d_objs))
    h = data.draw(st.sampled_from(hom_set(c, h_target)))
    lhs = compose_slice(h, compose_slice(g, f))
    rhs = compose_slice(compose_slice(h, g), f)
    assert lhs.map.values == rhs.map.values


def test_orbital_reports_frozen():
    rep = check_atomic_orbital(4, 1)
    assert rep.passed
    assert (rep.endo_checked, rep.retract_pairs_checked, rep.num_classes) == (33, 617, 4)
    rep = check_atomic_orbital(5, 2)
    assert rep.passed
    assert (rep.endo_checked, rep.retract_pairs_checked, rep.num_classes) == (93, 1537, 10)


def test_orbital_all_small():
    for d in range(1, 5):
        for r in range(1, d + 1):
            assert check_atomic_orbital(d, r).passed
