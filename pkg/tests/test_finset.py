"""Maps of finite sets: validation, composition, surjection counting."""

import itertools
from math import factorial

import pytest
from hypothesis import given, strategies as st

from surjcat.finset import (
    FinMap, compose, elementary_factorization, enumerate_surjections,
    surjection_count,
)

from oracles import brute_surjection_values, stirling_surjection_count


def test_finmap_validation():
    with pytest.raises(ValueError):
        FinMap(2, 2, [1, 3])          # value out of range
    with pytest.raises(ValueError):
        FinMap(2, 2, [1])             # wrong length
    with pytest.raises(ValueError):
        FinMap(0, 1, [])              # empty source
    f = FinMap(3, 2, [2, 1, 2])
    assert f(1) == 2 and f(3) == 2
    assert f.fibers() == [(2,), (1, 3)]
    assert f.fiber_sizes() == (1, 2)
    assert f.is_surjective()
    assert not FinMap(3, 3, [1, 1, 2]).is_surjective()


def test_compose():
    f = FinMap(3, 2, [1, 2, 2])
    g = FinMap(2, 2, [2, 1])
    assert compose(g, f).values == (2, 1, 1)
    with pytest.raises(ValueError):
        compose(f, g)                 # middle sizes disagree


def test_identity_count_is_factorial():
    for k in range(1, 8):
        assert surjection_count(k, k) == factorial(k)


def test_counts_against_brute_filter():
    for k in range(1, 6):
        for i in range(1, 7):
            brute = brute_surjection_values(k, i)
            assert surjection_count(k, i) == len(brute)
            assert sorted(m.values for m in enumerate_surjections(k, i)) == sorted(brute)


def test_counts_against_stirling_recurrence():
    for k in range(1, 11):
        for i in range(1, k + 1):
            assert surjection_count(k, i) == stirling_surjection_count(k, i)


def test_divisibility_at_primes():
    for p in (2, 3, 5, 7):
        for i in range(2, p + 1):
            assert surjection_count(p, i) % p == 0


def test_enumeration_is_sorted_and_duplicate_free():
    seen = list(enumerate_surjections(4, 2))
    values = [m.values for m in seen]
    assert values == sorted(set(values))


@given(st.integers(1, 5), st.data())
def test_factorization_recomposes(k, data):
    i = data.draw(st.integers(1, k))
    maps = list(enumerate_surjections(k, i))
    f = maps[data.draw(st.integers(0, len(maps) - 1))]
    if i == k and f.values != tuple(range(1, k + 1)):
        with pytest.raises(ValueError):
            elementary_factorization(f)   # proper bijections have no such chain
        return
    steps = elementary_factorization(f)
    acc = None
    for step in steps:
        acc = step if acc is None else compose(step, acc)
    if acc is None:                   # identity factorization is empty
        assert f.values == tuple(range(1, k + 1))
    else:
        assert acc.values == f.values
    for step in steps:                # each step merges exactly one element
        assert step.source_size == step.target_size + 1
        assert step.is_surjective()
