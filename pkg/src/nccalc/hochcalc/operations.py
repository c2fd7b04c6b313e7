"""Calculus operations: Connes B, contraction, cup, Gerstenhaber bracket, Lie derivative.

Conventions (all pinned by the identity suite in the tests):

* contraction ``i_f(a_0..a_n) = a_0 f(a_1..a_m) (x) a_{m+1}..a_n`` with no sign;
  then ``b i_f - (-1)^m i_f b = (-1)^{m+1} i_{delta f}``.
* cup ``(f u g)(a_1..a_{m+n}) = f(a_1..a_m) g(a_{m+1}..)``; at chain level
  ``i_f i_g = i_{g u f}``, so on homology ``i_{f u g} = (-1)^{mn} i_f i_g``.
* pre-Lie ``f o g = sum_i (-1)^{i(n-1)} f(a_1..a_i, g(..), ..)`` and
  ``[f, g] = f o g - (-1)^{(m-1)(n-1)} g o f``; then ``delta f = -[f, mu]``.
* the Lie derivative is the insertion formula below; on homology it equals
  ``B i_f - (-1)^m i_f B``.
"""
from __future__ import annotations

from ..complexes import ChainMap, induced_matrix
from ..linalg import SparseMatrix, _axpy
from .chains import HochschildChains
from .cochains import Cochain, CochainError, as_unnormalized, differential
from .tensors import TensorBasis


def _sign(fld, e: int):
    return fld.one if e % 2 == 0 else fld.neg(fld.one)


def _basis_vec(fld, i: int) -> dict:
    return {i: fld.one}


def _compatible(f: Cochain, X: HochschildChains) -> Cochain:
    if f.algebra != X.algebra:
        raise CochainError("cochain and chains belong to different algebras")
    if X.basis.normalized and not f.normalized:
        raise CochainError("an unnormalized cochain does not act on normalized chains")
    return f


def _map_from_columns(X: HochschildChains, shift: int, column_fn, degrees) -> ChainMap:
    maps = {}
    for n in degrees:
        tgt = n + shift
        if tgt < 0 or tgt > X.top:
            continue
        cols = [column_fn(n, t) for t in X.basis.chain_tuples(n)]
        maps[n] = SparseMatrix.from_columns(X.field, X.dim(tgt), cols)
    return ChainMap(X.complex, X.complex, maps, shift)


# ---------------------------------------------------------------- Connes B

def connes_B(X: HochschildChains) -> ChainMap:
    """Connes' operator ``C_n -> C_{n+1}``.

    Normalized: ``B(a_0..a_n) = sum_i (-1)^{ni} 1 (x) a_i..a_n (x) a_0..a_{i-1}``.
    Unnormalized: ``B = (1 - t) s N`` with ``t`` the signed cyclic operator,
    ``N = sum_i t^i`` and ``s(a_0..a_n) = 1 (x) a_0..a_n``.
    """
    fld = X.field
    A = X.algebra
    if X.basis.normalized:
        def col(n, t):
            out: dict = {}
            for i in range(n + 1):
                rot = t[i:] + t[:i]
                v = X.vector([dict(A.unit)] + [_basis_vec(fld, x) for x in rot])
                _axpy(fld, out, _sign(fld, n * i), v)
            return out
        return _map_from_columns(X, 1, col, range(X.top))
    maps = {}
    V = X.module
    for n in range(X.top):
        norm = SparseMatrix.zero(fld, X.dim(n), X.dim(n))
        power = SparseMatrix.identity(fld, X.dim(n))
        t = V.t(n)
        for _ in range(n + 1):
            norm = norm + power
            power = t @ power
        s = extra_degeneracy(X, n)
        maps[n] = (SparseMatrix.identity(fld, X.dim(n + 1)) - V.t(n + 1)) @ s @ norm
    return ChainMap(X.complex, X.complex, maps, 1)


def extra_degeneracy(X: HochschildChains, n: int) -> SparseMatrix:
    """``s(a_0..a_n) = 1 (x) a_0 .. a_n`` on the unnormalized complex."""
    fld = X.field
    cols = [X.vector([dict(X.algebra.unit)] + [_basis_vec(fld, x) for x in t]) for t in X.basis.chain_tuples(n)]
    return SparseMatrix.from_columns(fld, X.dim(n + 1), cols)


# ---------------------------------------------------------------- contraction

def contraction(f: Cochain, X: HochschildChains) -> ChainMap:
    """``i_f: C_n -> C_{n-m}``; components below degree ``m`` are zero."""
    _compatible(f, X)
    fld = X.field
    A = X.algebra
    m = f.degree

    def col(n, t):
        head = A.mul(_basis_vec(fld, t[0]), f.on_basis(t[1:m + 1]))
        return X.vector([head] + [_basis_vec(fld, x) for x in t[m + 1:]])
    return _map_from_columns(X, -m, col, range(m, X.top + 1))


# ---------------------------------------------------------------- cup and bracket

def _result_basis(f: Cochain, g: Cochain) -> TensorBasis:
    if f.algebra != g.algebra:
        raise CochainError("cochains over different algebras")
    if f.normalized and g.normalized:
        return f.basis
    return g.basis if not g.normalized else f.basis


def cup(f: Cochain, g: Cochain) -> Cochain:
    """``(f u g)(a_1..a_{m+n}) = f(a_1..a_m) g(a_{m+1}..a_{m+n})``."""
    tb = _result_basis(f, g)
    if tb is not f.basis:
        f = as_unnormalized(f)
    if tb is not g.basis:
        g = as_unnormalized(g)
    A = tb.algebra
    vals = {}
    for wf, vf in f.values.items():
        for wg, vg in g.values.items():
            p = A.mul(vf, vg)
            if p:
                vals[wf + wg] = p
    return Cochain(tb, f.degree + g.degree, vals)


def pre_lie(f: Cochain, g: Cochain) -> Cochain:
    """``f o g = sum_{i=0}^{m-1} (-1)^{i(n-1)} f(a_1..a_i, g(a_{i+1}..a_{i+n}), ..)``."""
    tb = _result_basis(f, g)
    fld = tb.field
    m, n = f.degree, g.degree
    deg = m + n - 1
    if deg < 0:
        raise CochainError("the composition of two 0-cochains has degree -1")
    if m == 0:
        return Cochain(tb, deg, {})
    vals = {}
    for w in tb.words(deg):
        e = [_basis_vec(fld, x) for x in w]
        out: dict = {}
        for i in range(m):
            inner = g(*e[i:i + n])
            if not inner:
                continue
            _axpy(fld, out, _sign(fld, i * (n - 1)), f(*(e[:i] + [inner] + e[i + n:])))
        if out:
            vals[w] = out
    return Cochain(tb, deg, vals)


def gerstenhaber_bracket(f: Cochain, g: Cochain) -> Cochain:
    """``[f, g] = f o g - (-1)^{(m-1)(n-1)} g o f``."""
    m, n = f.degree, g.degree
    if m + n == 0:
        raise CochainError("the bracket of two 0-cochains has degree -1")
    a = pre_lie(f, g)
    b = pre_lie(g, f)
    if a.basis is not b.basis:
        a, b = as_unnormalized(a), as_unnormalized(b)
    return a - b.scale(_sign(a.field, (m - 1) * (n - 1)))


# ---------------------------------------------------------------- Lie derivative

def insertion_operator(f: Cochain, X: HochschildChains) -> ChainMap:
    """Cyclic insertion of ``f`` into chains, ``C_n -> C_{n+1-m}``.

    ``I_f(a_0..a_n) = sum_{k=0}^{n-m} (-1)^{(k+1)(m-1)} a_0..a_k (x) f(a_{k+1}..a_{k+m}) (x) ..a_n
    + sum_{k=n+1-m}^{n} (-1)^{n(k+1)} f(a_{k+1}..a_n, a_0, ..) (x) a_{k+m-n} .. a_k``.

    With these signs ``I_mu = b`` for the multiplication ``mu`` and
    ``[I_f, I_g] = I_{[f, g]}``.
    """
    _compatible(f, X)
    fld = X.field
    m = f.degree

    def col(n, t):
        e = [_basis_vec(fld, x) for x in t]
        out: dict = {}
        for k in range(0, n - m + 1):
            val = f(*e[k + 1:k + m + 1])
            if val:
                _axpy(fld, out, _sign(fld, (k + 1) * (m - 1)), X.vector(e[:k + 1] + [val] + e[k + m + 1:]))
        for k in range(max(n + 1 - m, 0), n + 1):
            args = e[k + 1:] + e[:k + m - n]
            val = f(*args)
            if val:
                _axpy(fld, out, _sign(fld, n * (k + 1)), X.vector([val] + e[k + m - n:k + 1]))
        return out
    return _map_from_columns(X, 1 - m, col, range(max(m - 1, 0), X.top + 1))


def lie_derivative_chain(f: Cochain, X: HochschildChains) -> ChainMap:
    """Chain-level Lie derivative: ``(-1)^{(n+1)(m+1)} I_f`` on ``C_n``.

    The degree twist makes the Cartan formula read ``L_f = B i_f - (-1)^m i_f B``
    on homology with the classical ``B`` and the unsigned contraction.
    """
    I = insertion_operator(f, X)
    m = f.degree
    maps = {n: (M.scale(-1) if (n + 1) * (m + 1) % 2 else M) for n, M in I.maps.items()}
    return ChainMap(I.source, I.target, maps, I.shift)


def lie_derivative(f: Cochain, X: HochschildChains, degrees=None) -> dict:
    """``{n: matrix of L_f on H_n}``; ``f`` must be a cocycle."""
    if not differential(f).is_zero():
        raise CochainError("the Lie derivative on homology needs a cocycle")
    L = lie_derivative_chain(f, X)
    degrees = range(max(f.degree - 1, 0), X.N) if degrees is None else degrees
    return {n: on_homology(L, n) for n in degrees if 0 <= n + L.shift <= X.top}


# ---------------------------------------------------------------- homology matrices

def on_homology(F: ChainMap, n: int) -> list:
    """Matrix of ``F`` from ``H_n`` to ``H_{n+shift}`` in the deterministic bases."""
    X = F.source
    return induced_matrix(F[n], X.homology(n), F.target.homology(n + F.shift))


def cartan_rhs(f: Cochain, X: HochschildChains, B: ChainMap | None = None) -> ChainMap:
    """``B i_f - (-1)^m i_f B`` as a chain map of degree ``1 - m``."""
    B = connes_B(X) if B is None else B
    i_f = contraction(f, X)
    m = f.degree
    fld = X.field
    maps = {}
    for n in range(max(m - 1, 0), X.top + 1):
        tgt = n + 1 - m
        if tgt < 0 or tgt > X.top or n + 1 > X.top:
            continue
        lhs = B[n - m] @ i_f[n] if n - m >= 0 else SparseMatrix.zero(fld, X.dim(tgt), X.dim(n))
        rhs = i_f[n + 1] @ B[n]
        maps[n] = lhs - rhs.scale(_sign(fld, m))
    return ChainMap(X.complex, X.complex, maps, 1 - m)
