import pytest

from nccalc import QQ
from nccalc.complexes import (Bicomplex, ChainComplex, ChainMap, kron, tensor_complex,
                              total_complex, truncate)
from nccalc.linalg import ChainError, SparseMatrix


def circle():
    d1 = SparseMatrix.from_dense(QQ, [[-1, 0, 1], [1, -1, 0], [0, 1, -1]])
    return ChainComplex(QQ, {0: 3, 1: 3}, {1: d1}, labels={0: ["u", "v", "w"], 1: ["a", "b", "c"]})


def test_bad_complex_is_rejected():
    d = SparseMatrix.identity(QQ, 1)
    with pytest.raises(ChainError):
        ChainComplex(QQ, {0: 1, 1: 1, 2: 1}, {1: d, 2: d})
    with pytest.raises(ValueError):
        ChainComplex(QQ, {0: 1, 1: 2}, {1: d})


def test_circle_betti_and_summary():
    X = circle()
    assert X.betti() == {0: 1, 1: 1}
    recs = X.summary_records()
    assert [r["homology"] for r in recs] == [1, 1]
    assert "rank d" in X.summary_text()


def test_truncation_flags_top_degree():
    X = circle()
    T = truncate(X, 0)
    assert T.provisional == 0
    assert [r["provisional"] for r in T.summary_records()] == [True, True]


def test_tensor_of_circles_is_a_torus():
    X = circle()
    T = tensor_complex(X, X)
    assert T.betti() == {0: 1, 1: 2, 2: 1}


def test_total_complex_of_tensor_bicomplex():
    X = circle()
    dims = {(i, j): X.dim(i) * X.dim(j) for i in (0, 1) for j in (0, 1)}
    I3 = SparseMatrix.identity(QQ, 3)
    dh = {(1, j): kron(X.d(1), I3) for j in (0, 1)}
    dv = {(i, 1): kron(I3, X.d(1)) for i in (0, 1)}
    Tot = total_complex(Bicomplex(QQ, dims, dh, dv))
    assert Tot.betti() == {0: 1, 1: 2, 2: 1}


def test_chain_map_on_homology():
    X = circle()
    ident = ChainMap(X, X, {0: SparseMatrix.identity(QQ, 3), 1: SparseMatrix.identity(QQ, 3)})
    assert ident.is_chain_map()
    assert ident.on_homology(1) == [[1]]
    neg = ChainMap(X, X, {0: SparseMatrix.identity(QQ, 3).scale(-1), 1: SparseMatrix.identity(QQ, 3)})
    assert not neg.is_chain_map()
