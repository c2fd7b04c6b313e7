"""Two-sided bar resolution and the contraction computed through it.

``Bar_p = A (x) A^{(x) p} (x) A`` with basis tuples ``(x_0, y_1..y_p, x')`` and

    b'(x_0 (x) y (x) x') = x_0 y_1 (x) .. + sum_i (-1)^i .. y_i y_{i+1} .. + (-1)^p .. (x) y_p x'.

It is a complex of ``A``-bimodules (right ``A^e``-modules), free in degree
``p`` on the generators ``1 (x) y (x) 1``, and the multiplication ``Bar_0 -> A``
is a quasi-isomorphism.  Two identifications are checked explicitly:

* ``Bar_p (x)_{A^e} A  ~  A (x) A^{(x) p}`` via ``(x_0 (x) y (x) x') (x) m -> x' m x_0 (x) y``;
* ``Hom_{A^e}(Bar_p, A)  ~  Hom(A^{(x) p}, A)`` via ``phi -> phi(1 (x) - (x) 1)``.

A cocycle ``f`` becomes a bimodule map ``phi: Bar_m -> A``; lifting it along the
augmentation with the contracting homotopy ``h(x) = 1 (x) x`` gives a chain map
``Phi: Bar -> Bar`` of degree ``-m``, and ``Phi (x)_{A^e} A`` is the contraction
by ``f`` on Hochschild chains.
"""
from __future__ import annotations

import itertools

from ..algebra import FiniteAlgebra
from ..complexes import HOMOLOGICAL, ChainComplex, induced_matrix
from ..linalg import SparseMatrix, _axpy, rank, rank_kernel
from .chains import HochschildChains
from .cochains import Cochain, HochschildCochains
from .tensors import UNNORMALIZED, TensorBasis


def _index(t: tuple, d: int) -> int:
    i = 0
    for x in t:
        i = i * d + x
    return i


class BarResolution:
    """The bar complex in degrees ``0 .. N+1`` with its augmentation."""

    def __init__(self, A: FiniteAlgebra, N: int):
        if N < 1:
            raise ValueError("the bar model needs N >= 1")
        self.algebra = A
        self.field = A.field
        self.N = N
        self.top = N + 1
        d = A.dim
        self.generators = {p: TensorBasis(A, "normalized").words(p) for p in range(self.top + 1)}
        dims = {p: d ** (p + 2) for p in range(self.top + 1)}
        diffs = {p: self.bprime(p) for p in range(1, self.top + 1)}
        self.complex = ChainComplex(self.field, dims, diffs, HOMOLOGICAL, provisional=N,
                                    name=f"Bar({A.name or 'A'})")

    def dim(self, p: int) -> int:
        return self.algebra.dim ** (p + 2)

    def basis(self, p: int) -> list:
        return list(itertools.product(range(self.algebra.dim), repeat=p + 2))

    def index(self, t: tuple) -> int:
        return _index(t, self.algebra.dim)

    # -- vectors are dicts keyed by basis tuples while building maps
    def _tensor(self, vecs: list) -> dict:
        fld = self.field
        out: dict = {}
        if any(not v for v in vecs):
            return out
        for combo in itertools.product(*(v.items() for v in vecs)):
            c = fld.one
            for _, x in combo:
                c = fld.mul(c, x)
            _axpy(fld, out, c, {tuple(i for i, _ in combo): fld.one})
        return out

    def bprime_tuple(self, t: tuple) -> dict:
        """``b'`` of a basis tensor, keyed by tuples."""
        A = self.algebra
        fld = self.field
        out: dict = {}
        p = len(t) - 2
        for i in range(p + 1):
            prod = A.basis_product(t[i], t[i + 1])
            vecs = [{x: fld.one} for x in t[:i]] + [prod] + [{x: fld.one} for x in t[i + 2:]]
            _axpy(fld, out, fld.one if i % 2 == 0 else fld.neg(fld.one), self._tensor(vecs))
        return out

    def bprime(self, p: int) -> SparseMatrix:
        cols = []
        for t in self.basis(p):
            cols.append({self.index(k): v for k, v in self.bprime_tuple(t).items()})
        return SparseMatrix.from_columns(self.field, self.dim(p - 1), cols)

    def augmentation(self) -> SparseMatrix:
        """Multiplication ``Bar_0 = A (x) A -> A``."""
        A = self.algebra
        cols = [A.basis_product(i, j) for i, j in self.basis(0)]
        return SparseMatrix.from_columns(self.field, A.dim, cols)

    def augmented_complex(self) -> ChainComplex:
        """``.. -> Bar_1 -> Bar_0 -> A`` with ``A`` in degree ``-1`` (the cone of the augmentation, shifted)."""
        dims = {-1: self.algebra.dim}
        dims.update({p: self.dim(p) for p in range(self.top + 1)})
        diffs = {0: self.augmentation()}
        diffs.update({p: self.complex.d(p) for p in range(1, self.top + 1)})
        return ChainComplex(self.field, dims, diffs, HOMOLOGICAL, provisional=self.N, name="cone")

    def cone_is_acyclic(self, upto: int | None = None) -> bool:
        upto = self.N - 1 if upto is None else upto
        C = self.augmented_complex()
        return all(C.homology(n).dim == 0 for n in range(-1, upto + 1))

    # -- bimodule structure
    def act(self, a: dict, v: dict, b: dict) -> dict:
        """``a . v . b`` for algebra vectors ``a, b`` and a tuple-keyed bar vector ``v``."""
        A = self.algebra
        fld = self.field
        out: dict = {}
        for t, c in v.items():
            left = A.mul(a, {t[0]: fld.one})
            right = A.mul({t[-1]: fld.one}, b)
            for i, x in left.items():
                for j, y in right.items():
                    _axpy(fld, out, fld.mul(c, fld.mul(x, y)), {(i,) + t[1:-1] + (j,): fld.one})
        return out

    def h(self, v: dict) -> dict:
        """Contracting homotopy ``x -> 1 (x) x``."""
        fld = self.field
        out: dict = {}
        for i, u in self.algebra.unit.items():
            for t, c in v.items():
                _axpy(fld, out, fld.mul(u, c), {(i,) + t: fld.one})
        return out

    # -- filtration by the normalized generators
    def degenerate_rank(self, p: int) -> int:
        """Rank of the span of ``x_0 (x) y (x) x'`` with some ``y_i = 1``."""
        A = self.algebra
        fld = self.field
        unit = dict(A.unit)
        vecs = []
        for i in range(p):
            for t in itertools.product(range(A.dim), repeat=p + 1):
                parts = [{x: fld.one} for x in t]
                parts.insert(i + 1, unit)
                vecs.append({self.index(k): c for k, c in self._tensor(parts).items()})
        if not vecs:
            return 0
        return rank(SparseMatrix.from_columns(fld, self.dim(p), vecs))

    def filtration_quotient_dim(self, p: int) -> int:
        return self.dim(p) - self.degenerate_rank(p)

    # -- the two identifications
    def evaluation(self, p: int) -> SparseMatrix:
        """``Bar_p (x) A -> C_p``, ``(x_0 (x) y (x) x') (x) m -> x' m x_0 (x) y`` (unnormalized chains)."""
        A = self.algebra
        fld = self.field
        d = A.dim
        cols = []
        for t in self.basis(p):
            for m in range(d):
                head = A.mul(A.mul({t[-1]: fld.one}, {m: fld.one}), {t[0]: fld.one})
                col = {}
                for k, c in head.items():
                    col[_index((k,) + t[1:-1], d)] = c
                cols.append(col)
        return SparseMatrix.from_columns(fld, d ** (p + 1), cols)

    def balanced_relations(self, p: int) -> SparseMatrix:
        """Relations ``(a.beta) (x) m - beta (x) m a`` and ``(beta.a) (x) m - beta (x) a m`` in ``Bar_p (x) A``."""
        A = self.algebra
        fld = self.field
        d = A.dim
        cols = []
        for t in self.basis(p):
            for m in range(d):
                for a in range(d):
                    ea = {a: fld.one}
                    col: dict = {}
                    for s, c in self.act(ea, {t: fld.one}, dict(A.unit)).items():
                        _axpy(fld, col, c, {self.index(s) * d + m: fld.one})
                    for k, c in A.mul({m: fld.one}, ea).items():
                        _axpy(fld, col, fld.neg(c), {self.index(t) * d + k: fld.one})
                    cols.append(col)
                    col = {}
                    for s, c in self.act(dict(A.unit), {t: fld.one}, ea).items():
                        _axpy(fld, col, c, {self.index(s) * d + m: fld.one})
                    for k, c in A.mul(ea, {m: fld.one}).items():
                        _axpy(fld, col, fld.neg(c), {self.index(t) * d + k: fld.one})
                    cols.append(col)
        return SparseMatrix.from_columns(fld, self.dim(p) * d, cols)

    def check_tensor_identification(self, p: int) -> dict:
        """Evaluation kills the relations, is onto, and the quotient has dimension ``d^{p+1}``."""
        R = self.balanced_relations(p)
        E = self.evaluation(p)
        quotient = self.dim(p) * self.algebra.dim - rank(R)
        target = self.algebra.dim ** (p + 1)
        return {"degree": p, "quotient_dim": quotient, "chain_dim": target,
                "kills_relations": (E @ R).is_zero(), "onto": rank(E) == target,
                "ok": quotient == target and (E @ R).is_zero() and rank(E) == target}

    def bimodule_hom_constraints(self, p: int) -> SparseMatrix:
        """Linear conditions on ``phi in Hom_k(Bar_p, A)`` for bimodule linearity.

        Unknowns are indexed ``index(t) * d + k`` (the ``e_k`` coordinate of ``phi(t)``).
        """
        A = self.algebra
        fld = self.field
        d = A.dim
        rows = []
        for t in self.basis(p):
            for a in range(d):
                ea = {a: fld.one}
                # phi(a.t) - a phi(t) = 0 and phi(t.a) - phi(t) a = 0, one row per output coordinate
                for side in (0, 1):
                    moved = self.act(ea, {t: fld.one}, dict(A.unit)) if side == 0 else \
                        self.act(dict(A.unit), {t: fld.one}, ea)
                    per_k: dict = {}
                    for s, c in moved.items():
                        for k in range(d):
                            per_k.setdefault(k, {})
                            _axpy(fld, per_k[k], c, {self.index(s) * d + k: fld.one})
                    for k0 in range(d):
                        prod = A.mul(ea, {k0: fld.one}) if side == 0 else A.mul({k0: fld.one}, ea)
                        for k, c in prod.items():
                            per_k.setdefault(k, {})
                            _axpy(fld, per_k[k], fld.neg(c), {self.index(t) * d + k0: fld.one})
                    rows.extend(v for v in per_k.values() if v)
        return SparseMatrix.from_columns(fld, self.dim(p) * d, rows).transpose()

    def check_hom_identification(self, p: int) -> dict:
        """``Hom_{A^e}(Bar_p, A)`` has dimension ``d^{p+1}`` and restriction to generators is injective on it."""
        A = self.algebra
        d = A.dim
        _, ker = rank_kernel(self.bimodule_hom_constraints(p))
        gens = [self.index((self._unit_index(),) + y + (self._unit_index(),)) for y in
                itertools.product(range(d), repeat=p)] if self._unit_is_basis() else None
        ok_restrict = True
        if gens is not None:
            cols = []
            for v in ker.vectors:
                col = {}
                for gi, g in enumerate(gens):
                    for k in range(d):
                        x = v.get(g * d + k)
                        if x:
                            col[gi * d + k] = x
                cols.append(col)
            ok_restrict = rank(SparseMatrix.from_columns(self.field, d ** (p + 1), cols)) == len(ker)
        target = d ** (p + 1)
        return {"degree": p, "hom_dim": len(ker), "cochain_dim": target,
                "ok": len(ker) == target and ok_restrict}

    def _unit_is_basis(self) -> bool:
        u = self.algebra.unit
        return len(u) == 1 and next(iter(u.values())) == self.field.one

    def _unit_index(self) -> int:
        return next(iter(self.algebra.unit))

    # -- lifting cocycles
    def lift(self, f: Cochain) -> dict:
        """Generator values ``{y: Phi_p(1 (x) y (x) 1)}`` of the lift of ``f`` for ``p <= top``."""
        A = self.algebra
        fld = self.field
        m = f.degree
        sgn = fld.one if m % 2 == 0 else fld.neg(fld.one)
        unit = dict(A.unit)
        gen: dict = {}
        for y in itertools.product(range(A.dim), repeat=m):
            val = f(*[{x: fld.one} for x in y])
            gen[y] = self._tensor([unit, val])
        cache = dict(gen)

        def phi(v: dict) -> dict:
            out: dict = {}
            for t, c in v.items():
                base = cache[t[1:-1]]
                moved = self.act({t[0]: fld.one}, base, {t[-1]: fld.one})
                _axpy(fld, out, c, moved)
            return out

        for p in range(m + 1, self.top + 1):
            for y in itertools.product(range(A.dim), repeat=p):
                bv = self._bprime_generator(y)
                val = self.h(phi(bv))
                cache[y] = {k: fld.mul(sgn, c) for k, c in val.items()}
        return cache

    def _bprime_generator(self, y: tuple) -> dict:
        """``b'(1 (x) y (x) 1)`` keyed by tuples."""
        A = self.algebra
        fld = self.field
        out: dict = {}
        for i, u in A.unit.items():
            for j, w in A.unit.items():
                for k, c in self.bprime_tuple((i,) + y + (j,)).items():
                    _axpy(fld, out, fld.mul(fld.mul(u, w), c), {k: fld.one})
        return out


def bar_resolution(A: FiniteAlgebra, N: int) -> BarResolution:
    return BarResolution(A, N)


def bar_contraction_chain(f: Cochain, R: BarResolution, X: HochschildChains) -> dict:
    """``{n: matrix C_n -> C_{n-m}}`` of ``Phi (x)_{A^e} A`` on unnormalized chains."""
    if X.variant != UNNORMALIZED:
        raise ValueError("the bar model is compared on unnormalized chains")
    A = R.algebra
    fld = R.field
    d = A.dim
    m = f.degree
    gens = R.lift(f)
    maps = {}
    for n in range(m, min(R.top, X.top) + 1):
        cols = []
        for t in X.basis.chain_tuples(n):
            a0, y = t[0], t[1:]
            col: dict = {}
            for s, c in gens[y].items():
                head = A.mul(A.mul({s[-1]: fld.one}, {a0: fld.one}), {s[0]: fld.one})
                for k, x in head.items():
                    _axpy(fld, col, fld.mul(c, x), {_index((k,) + s[1:-1], d): fld.one})
            cols.append(col)
        maps[n] = SparseMatrix.from_columns(fld, X.dim(n - m), cols)
    return maps


def contraction_via_bar(A: FiniteAlgebra, N: int, f: Cochain, X: HochschildChains | None = None,
                        R: BarResolution | None = None) -> dict:
    """``{n: matrix on H_n -> H_{n-m}}`` of the bar-model contraction by the cocycle ``f``."""
    X = HochschildChains(A, N, UNNORMALIZED) if X is None else X
    R = BarResolution(A, N) if R is None else R
    maps = bar_contraction_chain(f, R, X)
    out = {}
    for n, M in maps.items():
        if n > N - 1 + f.degree and n > X.N:
            continue
        out[n] = induced_matrix(M, X.homology(n), X.homology(n - f.degree))
    return out


def cochain_space_check(A: FiniteAlgebra, N: int) -> dict:
    """``phi -> phi o b'`` matches ``delta`` under the generator identification."""
    Y = HochschildCochains(A, N, UNNORMALIZED)
    R = BarResolution(A, N)
    fld = A.field
    ok = True
    for n in range(N):
        for w, k in Y.basis.cochain_labels(n):
            f = Y.cochain(n, {Y.basis.cochain_index(w, k): fld.one})
            gens = {}
            for y in itertools.product(range(A.dim), repeat=n + 1):
                # (phi o b')(1 (x) y (x) 1) with phi the bimodule extension of f
                val: dict = {}
                for t, c in R._bprime_generator(y).items():
                    inner = f(*[{x: fld.one} for x in t[1:-1]])
                    _axpy(fld, val, c, A.mul(A.mul({t[0]: fld.one}, inner), {t[-1]: fld.one}))
                gens[y] = val
            expected = Y.delta(n).apply(Y.vector(f))
            got = {}
            for y, v in gens.items():
                for kk, c in v.items():
                    got[Y.basis.cochain_index(y, kk)] = c
            if got != expected:
                ok = False
    return {"ok": ok}
