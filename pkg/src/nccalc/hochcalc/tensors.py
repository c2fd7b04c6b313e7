"""Bases of tensor powers of an algebra, full or with the unit line removed.

The normalized variants replace ``A`` by ``Abar = A / k.1`` in every slot but
the first.  ``Abar`` is realized inside ``A`` as the span of the basis vectors
other than the *unit pivot* (the first basis index where the unit has a
nonzero coordinate); the projection ``P: A -> Abar`` subtracts the right
multiple of the unit to kill that coordinate.
"""
from __future__ import annotations

import itertools
from functools import reduce

from ..algebra import FiniteAlgebra
from ..linalg import _axpy

NORMALIZED = "normalized"
UNNORMALIZED = "unnormalized"
VARIANTS = (NORMALIZED, UNNORMALIZED)


def check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    return variant


class TensorBasis:
    def __init__(self, A: FiniteAlgebra, variant: str = NORMALIZED):
        self.algebra = A
        self.field = A.field
        self.variant = check_variant(variant)
        self.normalized = variant == NORMALIZED
        d = A.dim
        if self.normalized:
            self.pivot = min(A.unit)
            self.bar = [i for i in range(d) if i != self.pivot]
        else:
            self.pivot = None
            self.bar = list(range(d))
        self.pos = {i: r for r, i in enumerate(self.bar)}
        self._proj: dict = {}

    @property
    def m(self) -> int:
        return len(self.bar)

    # -- projection onto Abar (identity in the unnormalized case)
    def proj(self, v: dict) -> dict:
        if not self.normalized:
            return v
        fld = self.field
        c = v.get(self.pivot)
        if not c:
            return v
        out = {k: x for k, x in v.items() if k != self.pivot}
        u = self.algebra.unit
        _axpy(fld, out, fld.neg(fld.div(c, u[self.pivot])), {k: x for k, x in u.items() if k != self.pivot})
        return out

    def proj_basis(self, i: int) -> dict:
        v = self._proj.get(i)
        if v is None:
            v = self.proj({i: self.field.one})
            self._proj[i] = v
        return v

    # -- words Abar^{(x) n}
    def words(self, n: int) -> list:
        return list(itertools.product(self.bar, repeat=n))

    def word_index(self, w: tuple) -> int:
        i = 0
        m = self.m
        for x in w:
            i = i * m + self.pos[x]
        return i

    # -- chains A (x) Abar^{(x) n}
    def chain_tuples(self, n: int) -> list:
        return [(a,) + w for a in range(self.algebra.dim) for w in self.words(n)]

    def chain_dim(self, n: int) -> int:
        return self.algebra.dim * self.m ** n

    def chain_index(self, t: tuple) -> int:
        return t[0] * self.m ** (len(t) - 1) + self.word_index(t[1:])

    # -- cochains Hom(Abar^{(x) n}, A): basis (word, output index)
    def cochain_dim(self, n: int) -> int:
        return self.m ** n * self.algebra.dim

    def cochain_index(self, w: tuple, k: int) -> int:
        return self.word_index(w) * self.algebra.dim + k

    def cochain_labels(self, n: int) -> list:
        return [(w, k) for w in self.words(n) for k in range(self.algebra.dim)]

    def chain_vector(self, factors: list) -> dict:
        """Chain built from a list of A-vectors, projecting every slot after the first."""
        fld = self.field
        facs = [factors[0]] + [self.proj(v) for v in factors[1:]]
        out: dict = {}
        if any(not v for v in facs):
            return out
        for combo in itertools.product(*(v.items() for v in facs)):
            idx = self.chain_index(tuple(i for i, _ in combo))
            c = reduce(fld.mul, (x for _, x in combo))
            _axpy(fld, out, c, {idx: fld.one})
        return out


def expand(field, vectors: list):
    """Multilinear expansion of a tensor of vectors into ``(index tuple, coefficient)`` pairs."""
    if any(not v for v in vectors):
        return
    for combo in itertools.product(*(v.items() for v in vectors)):
        yield tuple(i for i, _ in combo), reduce(field.mul, (x for _, x in combo), field.one)
