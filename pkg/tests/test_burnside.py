"""The ring of iso classes: structure constants, marks, ideals, the prime table."""

from math import factorial

import pytest

from surjcat.burnside import (
    BurnsideRing, RingConsistencyError, augmentation_ideal, build_ring,
    ideal_image, is_prime, mark, marks_matrix, segal_report,
)
from surjcat.epi_cat import SliceObject, enumerate_objects


def test_trivial_ring():
    ring = build_ring(1, 1)
    assert ring.basis_tuples == ((1,),)
    one = ring.basis_element((1,))
    assert (one * one).coeffs == (1,)


def test_a41_squares_frozen():
    ring = build_ring(4, 1)
    two = ring.basis_element((2,))
    assert (two * two).coeffs == (0, 2, 4, 1)
    three = ring.basis_element((3,))
    assert (two * three).coeffs == (0, 0, 6, 12)
    assert (three * three).coeffs == (0, 0, 6, 45)


def test_a32_table_frozen():
    ring = build_ring(3, 2)
    assert ring.basis_tuples == ((1, 1), (1, 2), (2, 1))
    x = ring.basis_element((1, 2))
    y = ring.basis_element((2, 1))
    assert (x * x).coeffs == (0, 2, 0)
    assert (y * y).coeffs == (0, 0, 2)
    assert (x * y).coeffs == (0, 0, 0)     # no common refinement fits in size 3


def test_unit_commutativity_associativity():
    for d, r in [(3, 1), (4, 1), (3, 2), (4, 2)]:
        ring = build_ring(d, r)
        unit = ring.basis_element(ring.basis_tuples[0])
        elems = [ring.basis_element(t) for t in ring.basis_tuples]
        for x in elems:
            assert (unit * x).coeffs == x.coeffs
            for y in elems:
                assert (x * y).coeffs == (y * x).coeffs
                for z in elems:
                    assert ((x * y) * z).coeffs == (x * (y * z)).coeffs


def test_marks_frozen_values():
    r41 = build_ring(4, 1)
    two = r41.basis_element((2,))
    assert mark(SliceObject((3,)), two) == 6
    assert mark(SliceObject((2,)), two) == 2
    assert mark(SliceObject((4,)), two * two) == 196   # 14^2: multiplicative
    assert marks_matrix(3, 1) == [[1, 0, 0], [1, 2, 0], [1, 6, 6]]


def test_marks_are_ring_homomorphisms_small():
    for d, r in [(4, 1), (3, 2)]:
        ring = build_ring(d, r)
        elems = [ring.basis_element(t) for t in ring.basis_tuples]
        for u in ring.basis:
            for x in elems:
                for y in elems:
                    assert mark(u, x * y) == mark(u, x) * mark(u, y)


def test_marks_matrix_triangular_with_factorial_diagonal():
    for d, r in [(5, 1), (4, 2), (4, 3)]:
        basis = enumerate_objects(d, r)
        m = marks_matrix(d, r)
        for i, u in enumerate(basis):
            diag = 1
            for k in u.fiber_tuple:
                diag *= factorial(k)
            assert m[i][i] == diag
            for j in range(i + 1, len(basis)):
                assert m[i][j] == 0


def test_augmentation_ideal_frozen():
    gens = augmentation_ideal(3)
    assert [g.coeffs for g in gens] == [(-6, 1, 0), (-6, 0, 1)]
    top = SliceObject((3,))
    for g in gens:
        assert mark(top, g) == 0


def test_ideal_images_frozen():
    assert ideal_image(3, 1, 3).generator == 3
    assert ideal_image(3, 2, 3).generator == 1
    assert ideal_image(3, 3, None).generator == 0      # raw image vanishes on top
    assert ideal_image(3, 3, 3).generator == 3


def test_ideal_rejects_composites():
    with pytest.raises(ValueError):
        ideal_image(4, 2, 4)
    assert ideal_image(4, 2, 4, allow_composite=True).generator in (1, 2, 4)


def test_is_prime():
    assert [n for n in range(2, 20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert not is_prime(1)


def test_segal_report_frozen_rows():
    rep = segal_report(5)
    assert rep.passed
    assert [(r.k, r.computed, r.raw) for r in rep.rows] == [
        (1, 5, 30), (2, 1, 2), (3, 1, 24), (4, 1, 2), (5, 5, 0),
    ]
    rep3 = segal_report(3)
    assert rep3.passed
    assert [(r.k, r.computed, r.raw) for r in rep3.rows] == [
        (1, 3, 6), (2, 1, 2), (3, 3, 0),
    ]
    with pytest.raises(ValueError):
        segal_report(6)


def test_ring_json_round_trip():
    ring = build_ring(4, 1)
    data = ring.to_dict()
    assert data["basis"] == [[1], [2], [3], [4]]
    assert {tuple(c["w"]): c["c"] for c in data["structure_constants"]
            if c["u"] == [2] and c["v"] == [2]} == {(2,): 2, (3,): 4, (4,): 1}
