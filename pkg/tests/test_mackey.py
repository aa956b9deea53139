"""Restriction/transfer systems: axioms, representables, the C2-like sanity case."""

import pytest

from surjcat.burnside import build_ring
from surjcat.epi_cat import SliceObject, enumerate_objects
from surjcat.linalg import Mat
from surjcat.mackey import (
    MackeyData, check_axioms, endomorphism_ring_of_unit, from_json,
    representable, restrict_to_cosieve, vanishing_locus,
)


def test_representable_c2_frozen():
    m = representable(2, 1, (1,))
    assert dict(sorted(m.ranks.items())) == {(1,): 2, (2,): 1}
    pi = ((2,), (1,), 0)
    assert m.restrictions[pi] == Mat(1, 2, [[1, 2]])
    assert m.transfers[pi] == Mat(2, 1, [[0], [1]])
    # res after tr is multiplication by 2 on the level-2 value
    assert m.restrictions[pi] @ m.transfers[pi] == Mat(1, 1, [[2]])
    assert check_axioms(m).passed


def test_representable_ranks_frozen():
    m = representable(4, 1, (1,))
    assert [m.ranks[(k,)] for k in (1, 2, 3, 4)] == [4, 6, 4, 1]


def test_axioms_pass_on_representables():
    for d, r in [(3, 1), (2, 2), (3, 2)]:
        for v in enumerate_objects(d, r):
            rep = check_axioms(representable(d, r, v.fiber_tuple))
            assert rep.passed, (d, r, v.fiber_tuple, rep.failures[:1])
            assert rep.cospans_checked > 0


def test_checker_detects_corruption():
    m = representable(2, 1, (1,))
    pi = ((2,), (1,), 0)
    bad_transfers = dict(m.transfers)
    bad_transfers[pi] = Mat(2, 1, [[1], [1]])
    corrupted = MackeyData(2, 1, m.ranks, m.restrictions, bad_transfers)
    rep = check_axioms(corrupted)
    assert not rep.passed
    assert any(f["kind"] == "double-coset" for f in rep.failures)


def test_restrict_to_cosieve_at_full_bound_is_identity():
    m = representable(3, 1, (1,))
    assert restrict_to_cosieve(m, 3) == m


def test_restrict_to_cosieve_detected_failure_frozen():
    m = representable(4, 1, (1,))
    small = restrict_to_cosieve(m, 2)
    assert dict(sorted(small.ranks.items())) == {(1,): 4, (2,): 6}
    rep = check_axioms(small)
    assert not rep.passed
    first = rep.failures[0]
    assert first["kind"] == "double-coset"
    assert first["cospan"] == ((2,), (1,), (2,))


def test_vanishing_locus():
    m = representable(3, 1, (1,))
    assert vanishing_locus(m) == set()
    zero = MackeyData(
        1, 1, {(1,): 0},
        {((1,), (1,), 0): Mat(0, 0, [])},
        {((1,), (1,), 0): Mat(0, 0, [])},
    )
    assert vanishing_locus(zero) == {(1,)}


def test_json_round_trip():
    m = representable(3, 1, (2,))
    again = from_json(m.to_json())
    assert again == m
    assert again.to_json() == m.to_json()


def test_endomorphism_ring_matches_direct_construction():
    for d, r in [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)]:
        ring = endomorphism_ring_of_unit(d, r)
        direct = build_ring(d, r)
        assert ring.basis_tuples == direct.basis_tuples
        assert ring.sc == direct.sc


def test_mackey_data_validation():
    m = representable(2, 1, (1,))
    with pytest.raises(ValueError):
        MackeyData(2, 1, {(1,): 2}, m.restrictions, m.transfers)   # missing rank
    bad = dict(m.restrictions)
    bad[((2,), (1,), 0)] = Mat(2, 2, [[1, 0], [0, 1]])             # wrong shape
    with pytest.raises(ValueError):
        MackeyData(2, 1, m.ranks, bad, m.transfers)
