"""Exact dense matrices: the integer-cored elimination versus pure rref."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from surjcat.linalg import (
    Mat, block_matrix, is_invertible, nullspace, rank, rref, solve,
)

from oracles import rref_nullspace


entries = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


@st.composite
def matrices(draw, max_dim=4):
    m = draw(st.integers(0, max_dim))
    n = draw(st.integers(0, max_dim))
    rows = [[draw(entries) for _ in range(n)] for _ in range(m)]
    return Mat(m, n, rows)


def test_mat_basics():
    a = Mat(2, 2, [[1, 2], [3, 4]])
    b = Mat.identity(2)
    assert a @ b == a
    assert (a - a).is_zero()
    assert a.transpose() == Mat(2, 2, [[1, 3], [2, 4]])
    assert a.scale(2) == Mat(2, 2, [[2, 4], [6, 8]])
    with pytest.raises(ValueError):
        Mat(2, 2, [[1, 2]])
    with pytest.raises(ValueError):
        a @ Mat(3, 3, [[0] * 3] * 3)


def test_rref_known():
    a = Mat(2, 3, [[1, 2, 3], [2, 4, 6]])
    red, pivots = rref(a)
    assert red == Mat(2, 3, [[1, 2, 3], [0, 0, 0]])
    assert pivots == (0,)
    assert rank(a) == 1
    k = nullspace(a)
    assert k.n == 2
    assert (a @ k).is_zero()


def test_degenerate_shapes():
    z = Mat(0, 3, [])
    assert rank(z) == 0
    assert nullspace(z) == Mat.identity(3)
    assert nullspace(Mat(0, 0, [])).n == 0
    assert is_invertible(Mat(0, 0, []))
    assert solve(Mat(0, 0, []), Mat(0, 2, [])) == Mat(0, 2, [])


@settings(max_examples=150)
@given(matrices())
def test_rank_and_kernel_match_rref_oracle(a):
    k = nullspace(a)
    oracle = rref_nullspace(a)
    assert k.n == oracle.n
    assert rank(a) + k.n == a.n
    assert (a @ k).is_zero()
    assert rank(k) == k.n            # columns independent


@settings(max_examples=100)
@given(matrices(), st.data())
def test_solve_solves(a, data):
    # build a guaranteed-consistent right-hand side
    w = data.draw(st.integers(0, 3))
    x = Mat(a.n, w, [[data.draw(entries) for _ in range(w)] for _ in range(a.n)])
    b = a @ x
    got = solve(a, b)
    assert got is not None
    assert a @ got == b


@settings(max_examples=100)
@given(matrices())
def test_solve_detects_inconsistency(a):
    if rank(a) == a.m:               # full row rank: everything is consistent
        return
    # pick a target outside the column span: extend a basis computation
    probe = Mat(a.m, 1, [[1 if i == 0 else 0] for i in range(a.m)])
    got = solve(a, probe)
    if got is not None:
        assert a @ got == probe


def test_block_matrix():
    eye = Mat.identity(2)
    blocks = {(0, 0): eye, (1, 1): Mat(1, 1, [[5]])}
    m = block_matrix(blocks, [2, 1], [2, 1])
    assert m == Mat(3, 3, [[1, 0, 0], [0, 1, 0], [0, 0, 5]])
    with pytest.raises(ValueError):
        block_matrix({(0, 0): Mat(1, 1, [[1]])}, [2], [1])


def test_invertibility():
    assert is_invertible(Mat(2, 2, [[2, 1], [1, 1]]))
    assert not is_invertible(Mat(2, 2, [[1, 1], [2, 2]]))
    assert not is_invertible(Mat(2, 3, [[1, 0, 0], [0, 1, 0]]))


def test_fraction_entries_survive():
    a = Mat(2, 2, [[Fraction(1, 2), 0], [0, 2]])
    inv = solve(a, Mat.identity(2))
    assert inv == Mat(2, 2, [[2, 0], [0, Fraction(1, 2)]])
