from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from nccalc import GF, QQ
from nccalc.linalg import (ChainError, SparseMatrix, compute_homology, rank, rank_kernel,
                           set_dense_threshold, solve)
import nccalc.linalg as linalg

small = st.integers(min_value=-3, max_value=3)


def matrices(max_rows=7, max_cols=7):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def oracle_rank(dense, p=None):
    rows = [{j: x for j, x in enumerate(row) if x} for row in dense]
    return oracles.rank(rows, oracles.Arith(p))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_oracle(dense):
    M = SparseMatrix.from_dense(QQ, dense)
    assert rank(M) == oracle_rank(dense)
    r, ker = rank_kernel(M)
    assert r == oracle_rank(dense)
    assert ker.dim == M.ncols - r
    for v in ker.vectors:
        assert not M.apply(v)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_mod_7_matches_oracle(dense):
    M = SparseMatrix.from_dense(GF(7), dense)
    assert rank(M) == oracle_rank(dense, 7)


@settings(max_examples=40, deadline=None)
@given(matrices(9, 9))
def test_dense_and_sparse_paths_agree(dense):
    M = SparseMatrix.from_dense(QQ, dense)
    r1, k1 = rank_kernel(M, dense_threshold=100)
    r2, k2 = rank_kernel(M, dense_threshold=0)
    assert r1 == r2
    assert k1.vectors == k2.vectors
    assert k1.pivots == k2.pivots


def test_dense_threshold_setter_round_trip():
    old = linalg.DENSE_THRESHOLD
    try:
        set_dense_threshold(0)
        assert linalg.DENSE_THRESHOLD == 0
        M = SparseMatrix.from_dense(QQ, [[1, 2], [2, 4]])
        assert rank(M) == 1
    finally:
        set_dense_threshold(old)


def test_matrix_arithmetic():
    A = SparseMatrix.from_dense(QQ, [[1, 2], [3, 4]])
    B = SparseMatrix.from_dense(QQ, [[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [4, 3]]
    assert (A - A).is_zero()
    assert A.transpose().to_dense() == [[1, 3], [2, 4]]
    assert A.scale(Fraction(1, 2)).to_dense() == [[Fraction(1, 2), 1], [Fraction(3, 2), 2]]
    assert SparseMatrix.identity(QQ, 2) @ A == A
    with pytest.raises(ValueError):
        A @ SparseMatrix.zero(QQ, 3, 1)


def test_solve():
    A = SparseMatrix.from_dense(QQ, [[1, 1], [0, 2]])
    x = solve(A, {0: Fraction(3), 1: Fraction(4)})
    assert A.apply(x) == {0: 3, 1: 4}
    assert solve(SparseMatrix.from_dense(QQ, [[1], [1]]), {0: Fraction(1)}) is None


def test_homology_of_a_circle():
    # the simplicial circle with 3 vertices and 3 edges
    d1 = SparseMatrix.from_dense(QQ, [[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    z = SparseMatrix.zero(QQ, 0, 3)
    H0 = compute_homology(d1, z)
    H1 = compute_homology(SparseMatrix.zero(QQ, 3, 0), d1)
    assert (H0.dim, H1.dim) == (1, 1)
    cyc = H1.representatives.vectors[0]
    assert H1.express(cyc) == [1]
    with pytest.raises(ChainError):
        H1.express({0: Fraction(1)})


def test_homology_rejects_non_complex():
    d = SparseMatrix.identity(QQ, 2)
    with pytest.raises(ChainError):
        compute_homology(d, d)
