"""Hochschild cochains ``C^n = Hom(Abar^{(x) n}, A)`` and cochain values.

A :class:`Cochain` stores its values on words of basis indices.  A normalized
cochain is defined on words over the ``Abar`` basis and is extended to all of
``A^{(x) n}`` by precomposing with the projection, so it vanishes whenever an
argument is the unit.  An unnormalized cochain (such as the multiplication
``mu``) is stored on all words.
"""
from __future__ import annotations

import itertools

from ..algebra import FiniteAlgebra
from ..complexes import COHOMOLOGICAL, ChainComplex
from ..linalg import SparseMatrix, _axpy
from .tensors import NORMALIZED, TensorBasis, check_variant, expand


class CochainError(ValueError):
    pass


class Cochain:
    """An ``n``-cochain ``A^{(x) n} -> A`` given by its values on basis words."""

    __slots__ = ("basis", "degree", "values")

    def __init__(self, basis: TensorBasis, degree: int, values: dict):
        self.basis = basis
        self.degree = degree
        allowed = set(basis.bar)
        clean = {}
        for w, v in values.items():
            w = tuple(w)
            if len(w) != degree or any(x not in allowed for x in w):
                raise CochainError(f"word {w} is not a basis word of degree {degree}")
            if v:
                clean[w] = dict(v)
        self.values = clean

    @property
    def algebra(self) -> FiniteAlgebra:
        return self.basis.algebra

    @property
    def field(self):
        return self.basis.field

    @property
    def normalized(self) -> bool:
        return self.basis.normalized

    def __call__(self, *args) -> dict:
        """Evaluate on algebra vectors (dicts) or basis indices (ints)."""
        if len(args) != self.degree:
            raise CochainError(f"{self.degree}-cochain evaluated on {len(args)} arguments")
        fld = self.field
        vecs = [{a: fld.one} if isinstance(a, int) else a for a in args]
        vecs = [self.basis.proj(v) for v in vecs]
        out: dict = {}
        for w, c in expand(fld, vecs):
            val = self.values.get(w)
            if val:
                _axpy(fld, out, c, val)
        return out

    def on_basis(self, w: tuple) -> dict:
        """Value on a word of *algebra* basis indices (projected if normalized)."""
        if not self.basis.normalized:
            return self.values.get(tuple(w), {})
        return self(*w)

    # -- linear structure
    def _same(self, other: "Cochain"):
        if self.basis is not other.basis and (self.algebra is not other.algebra or self.basis.variant != other.basis.variant):
            raise CochainError("cochains live on different cochain spaces")
        if self.degree != other.degree:
            raise CochainError(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        vals = {w: dict(v) for w, v in self.values.items()}
        for w, v in other.values.items():
            acc = vals.setdefault(w, {})
            _axpy(self.field, acc, self.field.one, v)
        return Cochain(self.basis, self.degree, vals)

    def scale(self, a) -> "Cochain":
        fld = self.field
        a = fld.coerce(a)
        return Cochain(self.basis, self.degree,
                       {w: {k: fld.mul(a, x) for k, x in v.items()} for w, v in self.values.items()} if a else {})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.algebra == other.algebra
                and self.basis.variant == other.basis.variant and self.values == other.values)

    def is_zero(self) -> bool:
        return not self.values

    def __repr__(self):
        return f"Cochain(degree={self.degree}, {self.basis.variant}, support={len(self.values)})"


def differential(f: Cochain) -> Cochain:
    """``(delta f)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_i (-1)^i f(..a_i a_{i+1}..) + (-1)^{n+1} f(..) a_{n+1}``."""
    tb = f.basis
    A = tb.algebra
    fld = f.field
    n = f.degree
    vals = {}
    for w in tb.words(n + 1):
        e = [{x: fld.one} for x in w]
        out = A.mul(e[0], f(*e[1:]))
        for i in range(1, n + 1):
            prod = A.mul(e[i - 1], e[i])
            term = f(*(e[:i - 1] + [prod] + e[i + 1:]))
            _axpy(fld, out, fld.one if i % 2 == 0 else fld.neg(fld.one), term)
        last = A.mul(f(*e[:n]), e[n])
        _axpy(fld, out, fld.one if (n + 1) % 2 == 0 else fld.neg(fld.one), last)
        if out:
            vals[w] = out
    return Cochain(tb, n + 1, vals)


class HochschildCochains:
    """Hochschild cochain complex in degrees ``0 .. N+1`` (cohomological).

    Basis of ``C^n``: pairs ``(word, k)`` meaning the cochain sending the basis
    word to ``e_k`` and every other word to zero, ordered by word then ``k``.
    """

    def __init__(self, A: FiniteAlgebra, N: int, variant: str = NORMALIZED):
        if N < 0:
            raise ValueError("truncation degree must be nonnegative")
        self.algebra = A
        self.field = A.field
        self.N = N
        self.variant = check_variant(variant)
        self.basis = TensorBasis(A, variant)
        self.top = N + 1
        dims = {n: self.basis.cochain_dim(n) for n in range(self.top + 1)}
        diffs = {n: self.delta(n) for n in range(self.top)}
        labels = {n: self.basis.cochain_labels(n) for n in range(self.top + 1)}
        self.complex = ChainComplex(self.field, dims, diffs, COHOMOLOGICAL, labels,
                                    provisional=N, name=f"C^({A.name or 'A'}) {variant}")

    def dim(self, n: int) -> int:
        return self.basis.cochain_dim(n)

    def delta(self, n: int) -> SparseMatrix:
        """Matrix of ``delta: C^n -> C^{n+1}``, built column by column from the support.

        :func:`differential` is the slow reference used by the tests.
        """
        tb = self.basis
        A = self.algebra
        fld = self.field
        d = A.dim
        one, mone = fld.one, fld.neg(fld.one)
        # products x*y projected to Abar, inverted: z -> [(x, y, coeff)]
        preimage: dict = {}
        for x in tb.bar:
            for y in tb.bar:
                for z, c in tb.proj(A.basis_product(x, y)).items():
                    preimage.setdefault(z, []).append((x, y, c))
        entries = []
        for w in tb.words(n):
            for k in range(d):
                col = tb.cochain_index(w, k)
                for x in tb.bar:
                    for kk, c in A.basis_product(x, k).items():
                        entries.append((tb.cochain_index((x,) + w, kk), col, c))
                    for kk, c in A.basis_product(k, x).items():
                        entries.append((tb.cochain_index(w + (x,), kk), col, c if (n + 1) % 2 == 0 else fld.neg(c)))
                for i in range(1, n + 1):
                    sgn = one if i % 2 == 0 else mone
                    for x, y, c in preimage.get(w[i - 1], ()):
                        entries.append((tb.cochain_index(w[:i - 1] + (x, y) + w[i:], k), col, fld.mul(sgn, c)))
        return SparseMatrix.from_entries(fld, self.dim(n + 1), self.dim(n), entries)

    # -- conversions between cochains and coordinate vectors
    def vector(self, f: Cochain) -> dict:
        if f.basis.variant != self.variant or f.algebra is not self.algebra and f.algebra != self.algebra:
            raise CochainError("cochain belongs to a different cochain space")
        out = {}
        for w, v in f.values.items():
            base = self.basis.word_index(w) * self.algebra.dim
            for k, x in v.items():
                out[base + k] = x
        return out

    def cochain(self, n: int, vec: dict) -> Cochain:
        d = self.algebra.dim
        words = self.basis.words(n)
        vals: dict = {}
        for idx, x in vec.items():
            wi, k = divmod(idx, d)
            vals.setdefault(words[wi], {})[k] = x
        return Cochain(self.basis, n, vals)

    def homology(self, n: int):
        return self.complex.homology(n)

    def betti(self, upto: int | None = None) -> list:
        upto = self.N if upto is None else upto
        return [self.complex.homology(n).dim for n in range(upto + 1)]

    def cocycle_classes(self, n: int) -> list:
        """Cochains representing the deterministic basis of ``HH^n``."""
        return [self.cochain(n, z) for z in self.homology(n).representatives.vectors]

    def express(self, f: Cochain) -> list:
        return self.homology(f.degree).express(self.vector(f))


def cochains(A: FiniteAlgebra, N: int, variant: str = NORMALIZED) -> HochschildCochains:
    return HochschildCochains(A, N, variant)


def cochain_from_function(A: FiniteAlgebra, n: int, fn, variant: str = NORMALIZED) -> Cochain:
    """Cochain whose value on basis word ``w`` is ``fn(w)`` (an algebra vector)."""
    tb = TensorBasis(A, variant)
    vals = {w: fn(w) for w in tb.words(n)}
    return Cochain(tb, n, {w: {k: A.field.coerce(x) for k, x in v.items()} for w, v in vals.items()})


def unit_cochain(A: FiniteAlgebra, variant: str = NORMALIZED) -> Cochain:
    """The 0-cochain with value ``1``."""
    return Cochain(TensorBasis(A, variant), 0, {(): dict(A.unit)})


def multiplication_cochain(A: FiniteAlgebra) -> Cochain:
    """``mu(a, b) = ab`` as an unnormalized 2-cochain."""
    tb = TensorBasis(A, "unnormalized")
    return Cochain(tb, 2, {(i, j): A.basis_product(i, j) for i, j in itertools.product(range(A.dim), repeat=2)})


def as_unnormalized(f: Cochain) -> Cochain:
    """Extend a normalized cochain to all words (it then vanishes on degenerate words)."""
    if not f.normalized:
        return f
    tb = TensorBasis(f.algebra, "unnormalized")
    return Cochain(tb, f.degree, {w: f(*w) for w in tb.words(f.degree)})


def as_normalized(f: Cochain, check: bool = True) -> Cochain:
    """Restrict an unnormalized cochain to ``Abar`` words.

    With ``check`` the cochain must vanish whenever an argument is the unit.
    """
    if f.normalized:
        return f
    A = f.algebra
    tb = TensorBasis(A, NORMALIZED)
    if check and f.degree:
        for i in range(f.degree):
            for w in itertools.product(range(A.dim), repeat=f.degree - 1):
                args = [{x: A.field.one} for x in w]
                args.insert(i, dict(A.unit))
                if f(*args):
                    raise CochainError("cochain does not vanish on the unit; it is not normalized")
    return Cochain(tb, f.degree, {w: v for w, v in f.values.items() if all(x in tb.pos for x in w)})
