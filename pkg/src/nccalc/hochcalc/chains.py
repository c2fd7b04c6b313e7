"""Hochschild chains ``C_p = A (x) A^{(x) p}`` and their normalized quotient."""
from __future__ import annotations

from ..algebra import FiniteAlgebra
from ..complexes import HOMOLOGICAL, ChainComplex
from ..cyclic import cyclic_module_of, face
from ..linalg import SparseMatrix
from .tensors import NORMALIZED, TensorBasis, check_variant


class HochschildChains:
    """Hochschild chain complex of ``A`` in degrees ``0 .. N+1``.

    ``b = sum_i (-1)^i d_i`` with the faces taken from the cyclic module of
    ``A``.  In the normalized variant each face is followed by the projection
    onto ``A (x) Abar^{(x) p-1}``.  Homology is reliable through ``N - 1`` and
    degree ``N`` is reported as provisional.
    """

    def __init__(self, A: FiniteAlgebra, N: int, variant: str = NORMALIZED):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.algebra = A
        self.field = A.field
        self.N = N
        self.variant = check_variant(variant)
        self.basis = TensorBasis(A, variant)
        self.module = cyclic_module_of(A)
        self.top = N + 1
        self._faces: dict = {}
        dims = {p: self.basis.chain_dim(p) for p in range(self.top + 1)}
        diffs = {p: self.b(p) for p in range(1, self.top + 1)}
        labels = {p: self.labels(p) for p in range(self.top + 1)}
        self.complex = ChainComplex(self.field, dims, diffs, HOMOLOGICAL, labels,
                                    provisional=N, name=f"C({A.name or 'A'}) {variant}")

    def labels(self, p: int) -> list:
        lab = self.algebra.labels
        return [tuple(lab[i] for i in t) for t in self.basis.chain_tuples(p)]

    def dim(self, p: int) -> int:
        return self.basis.chain_dim(p)

    def face(self, p: int, i: int) -> SparseMatrix:
        key = (p, i)
        m = self._faces.get(key)
        if m is None:
            f = face(p, i)
            tb = self.basis
            if tb.normalized:
                cols = []
                for t in tb.chain_tuples(p):
                    cols.append(tb.chain_vector(self.module.factors(f, t)))
                m = SparseMatrix.from_columns(self.field, self.dim(p - 1), cols)
            else:
                m = self.module.d(p, i)
            self._faces[key] = m
        return m

    def b(self, p: int) -> SparseMatrix:
        """Hochschild boundary ``C_p -> C_{p-1}``."""
        out = SparseMatrix.zero(self.field, self.dim(p - 1) if p >= 1 else 0, self.dim(p))
        for i in range(p + 1 if p >= 1 else 0):
            out = out + self.face(p, i) if i % 2 == 0 else out - self.face(p, i)
        return out

    def vector(self, factors: list) -> dict:
        """Chain of degree ``len(factors) - 1`` from algebra vectors (projected if normalized)."""
        return self.basis.chain_vector(factors)

    def homology(self, n: int):
        return self.complex.homology(n)

    def betti(self, upto: int | None = None) -> list:
        upto = self.N if upto is None else upto
        return [self.complex.homology(n).dim for n in range(upto + 1)]


def chains(A: FiniteAlgebra, N: int, variant: str = NORMALIZED) -> HochschildChains:
    return HochschildChains(A, N, variant)
