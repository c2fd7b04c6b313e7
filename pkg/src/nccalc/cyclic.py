"""Connes' cyclic category, its paracyclic cover, and cyclic modules.

A morphism ``(p) -> (q)`` of the paracyclic category is a nondecreasing map
``f: Z -> Z`` with ``f(i + p + 1) = f(i) + q + 1``; only the window
``f(0), ..., f(p)`` is stored.  Shifting every value by ``q + 1`` gives the same
morphism of the cyclic category, so the normal form has ``0 <= f(0) <= q``.

Think of ``(p)`` as the circle with ``p + 1`` marked points; the arc ``k``
runs from point ``k`` to point ``k + 1``.  A morphism sends arc ``k`` of the
source over the target arcs ``f(k), ..., f(k+1) - 1``.  A cyclic module is
contravariant: the factor sitting on source arc ``k`` is the ordered product
of the target factors on those arcs (the unit if there are none).  With this
rule the faces multiply neighbours, the degeneracies insert units and the
rotation permutes tensor factors cyclically.
"""
from __future__ import annotations

import itertools
import re
import threading
from dataclasses import dataclass
from functools import reduce

from .algebra import FiniteAlgebra, LinearCategory, category_hh_input
from .linalg import SparseMatrix, _axpy


class MorphismError(ValueError):
    pass


@dataclass(frozen=True)
class ParacyclicMorphism:
    source: int
    target: int
    values: tuple

    def __post_init__(self):
        p, q, f = self.source, self.target, tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", f)
        if p < 0 or q < 0:
            raise MorphismError("objects are nonnegative integers")
        if len(f) != p + 1:
            raise MorphismError(f"window of length {len(f)} for source ({p})")
        if any(f[i] > f[i + 1] for i in range(p)):
            raise MorphismError(f"window {f} is not nondecreasing")
        if f[p] > f[0] + q + 1:
            raise MorphismError(f"window {f} winds more than once around ({q})")

    def __call__(self, i: int) -> int:
        k, r = divmod(i, self.source + 1)
        return self.values[r] + k * (self.target + 1)

    def normalize(self) -> "CyclicMorphism":
        k = self.values[0] // (self.target + 1)
        shift = k * (self.target + 1)
        return CyclicMorphism(self.source, self.target, tuple(v - shift for v in self.values))

    def __str__(self):
        return f"{self.source}->{self.target}:[{','.join(map(str, self.values))}]"


@dataclass(frozen=True)
class CyclicMorphism(ParacyclicMorphism):
    def __post_init__(self):
        super().__post_init__()
        if not 0 <= self.values[0] <= self.target:
            raise MorphismError(f"{self} is not in normal form; use ParacyclicMorphism(...).normalize()")


_LIT = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*:\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]\s*$")


def parse_morphism(text: str, normalize: bool = True):
    """Parse ``"p->q:[f0,...,fp]"``."""
    m = _LIT.match(text)
    if not m:
        raise MorphismError(f"not a morphism literal: {text!r}")
    vals = tuple(int(v) for v in m.group(3).split(","))
    f = ParacyclicMorphism(int(m.group(1)), int(m.group(2)), vals)
    return f.normalize() if normalize else f


def compose(g: ParacyclicMorphism, f: ParacyclicMorphism):
    """``g o f``; normalized when both inputs are cyclic morphisms."""
    if f.target != g.source:
        raise MorphismError(f"cannot compose {g} after {f}: ({f.target}) != ({g.source})")
    h = ParacyclicMorphism(f.source, g.target, tuple(g(v) for v in f.values))
    if isinstance(f, CyclicMorphism) or isinstance(g, CyclicMorphism):
        return h.normalize()
    return h


def identity(p: int) -> CyclicMorphism:
    return CyclicMorphism(p, p, tuple(range(p + 1)))


def face(p: int, i: int) -> CyclicMorphism:
    """Morphism ``(p-1) -> (p)`` acting on modules as the face ``d_i: V_p -> V_{p-1}``.

    ``d_i`` multiplies factors ``i`` and ``i+1``; ``d_p`` multiplies the last
    factor into the first.
    """
    if p < 1 or not 0 <= i <= p:
        raise MorphismError(f"no face d_{i} in degree {p}")
    if i < p:
        return CyclicMorphism(p - 1, p, tuple(k if k <= i else k + 1 for k in range(p)))
    return ParacyclicMorphism(p - 1, p, (-1,) + tuple(range(1, p))).normalize()


def degeneracy(p: int, i: int) -> CyclicMorphism:
    """Morphism ``(p+1) -> (p)`` acting as ``s_i: V_p -> V_{p+1}`` (unit after factor ``i``)."""
    if p < 0 or not 0 <= i <= p:
        raise MorphismError(f"no degeneracy s_{i} in degree {p}")
    return CyclicMorphism(p + 1, p, tuple(k if k <= i + 1 else k - 1 for k in range(p + 2)))


def rotation(p: int) -> CyclicMorphism:
    """Morphism ``(p) -> (p)`` acting as ``(a_0..a_p) -> (a_p, a_0, .., a_{p-1})``."""
    return ParacyclicMorphism(p, p, tuple(k - 1 for k in range(p + 1))).normalize()


def power(f: CyclicMorphism, n: int) -> CyclicMorphism:
    if f.source != f.target:
        raise MorphismError("powers need an endomorphism")
    out = identity(f.source)
    for _ in range(n):
        out = compose(f, out)
    return out


def generators(p: int) -> dict:
    """Faces, degeneracies and rotation in degree ``p`` (as morphisms of the cyclic category)."""
    return {
        "faces": [face(p, i) for i in range(p + 1)] if p >= 1 else [],
        "degeneracies": [degeneracy(p, i) for i in range(p + 1)],
        "rotation": rotation(p),
    }


def hom_set(p: int, q: int) -> list:
    """All normal-form morphisms ``(p) -> (q)``."""
    out = []
    for f0 in range(q + 1):
        for rest in itertools.combinations_with_replacement(range(f0, f0 + q + 2), p):
            out.append(CyclicMorphism(p, q, (f0,) + rest))
    return out


def is_simplicial(f: ParacyclicMorphism) -> bool:
    """Whether the window is a morphism of the simplex category (values in ``[0, q]``)."""
    return f.values[0] >= 0 and f.values[-1] <= f.target


def factorize(f: CyclicMorphism):
    """Canonical factorization ``f = delta o sigma o rot^k``.

    Returns ``(k, cofaces, codegeneracies)``: ``rot^k`` is the ``k``-th power of
    :func:`rotation` on the source, ``codegeneracies`` and ``cofaces`` are
    elementary simplex-category morphisms listed in the order they are applied.
    On modules this reads ``M_f = M_rot^k o M_sigma o M_delta``.
    """
    p, q = f.source, f.target
    rot = rotation(p)
    for k in range(p + 1):
        # f = phi o rot^k  <=>  phi = f o rot^(-k)
        phi = compose(f, power(rot, (p + 1 - k) % (p + 1)))
        if is_simplicial(phi):
            break
    else:  # pragma: no cover - excluded by the structure of the cyclic category
        raise MorphismError(f"no simplicial factor for {f}")
    # peel repeated values from the top; each step is an elementary codegeneracy
    seq = list(phi.values)
    codeg = []
    n = p
    while len(set(seq)) < len(seq):
        j = max(i for i in range(len(seq) - 1) if seq[i] == seq[i + 1])
        codeg.append(CyclicMorphism(n, n - 1, tuple(i if i <= j else i - 1 for i in range(n + 1))))
        seq.pop(j + 1)
        n -= 1
    # open the gaps in increasing order; earlier gaps are already in place
    cofaces = []
    present = set(seq)
    for j in range(q + 1):
        if j not in present:
            cofaces.append(CyclicMorphism(n, n + 1, tuple(i if i < j else i + 1 for i in range(n + 1))))
            n += 1
    return k, cofaces, codeg


def compose_word(morphisms: list, p: int) -> CyclicMorphism:
    """Compose morphisms listed in application order, starting from ``(p)``."""
    return reduce(lambda acc, g: compose(g, acc), morphisms, identity(p))


# ---------------------------------------------------------------- cyclic modules

class CyclicModule:
    """Functor from the opposite of the cyclic category to based vector spaces.

    ``action(f)`` for ``f: (p) -> (q)`` is a matrix ``V_q -> V_p`` and
    ``action(g o f) = action(f) @ action(g)``.  Results are memoized behind a
    lock so concurrent readers are safe.
    """

    def __init__(self, field):
        self.field = field
        self._cache: dict = {}
        self._lock = threading.Lock()

    def dim(self, p: int) -> int:
        raise NotImplementedError

    def basis(self, p: int) -> list:
        raise NotImplementedError

    def _compute_action(self, f: CyclicMorphism) -> SparseMatrix:
        raise NotImplementedError

    def action(self, f: ParacyclicMorphism) -> SparseMatrix:
        if not isinstance(f, CyclicMorphism):
            f = f.normalize()
        m = self._cache.get(f)
        if m is None:
            m = self._compute_action(f)
            with self._lock:
                m = self._cache.setdefault(f, m)
        return m

    def d(self, p: int, i: int) -> SparseMatrix:
        return self.action(face(p, i))

    def s(self, p: int, i: int) -> SparseMatrix:
        return self.action(degeneracy(p, i))

    def tau(self, p: int) -> SparseMatrix:
        """Unsigned cyclic permutation of factors."""
        return self.action(rotation(p))

    def t(self, p: int) -> SparseMatrix:
        """Signed cyclic operator ``(-1)^p tau`` used in the Hochschild and Connes complexes."""
        m = self.tau(p)
        return m.scale(-1) if p % 2 else m

    def action_via_factorization(self, f: CyclicMorphism) -> SparseMatrix:
        k, cofaces, codeg = factorize(f)
        p, q = f.source, f.target
        m = SparseMatrix.identity(self.field, self.dim(q))
        for g in reversed(cofaces):
            m = self.action(g) @ m
        for g in reversed(codeg):
            m = self.action(g) @ m
        rot = self.tau(p)
        for _ in range(k):
            m = rot @ m
        return m


def _runs(f: CyclicMorphism):
    """For each source arc, the target arc positions it covers (integers, in order)."""
    p = f.source
    return [range(f(k), f(k + 1)) for k in range(p + 1)]


class AlgebraCyclicModule(CyclicModule):
    """``V_p = A^{(x) p+1}`` with basis tuples in lexicographic order."""

    def __init__(self, A: FiniteAlgebra):
        super().__init__(A.field)
        self.algebra = A
        self._prod_cache: dict = {}

    def dim(self, p: int) -> int:
        return self.algebra.dim ** (p + 1)

    def basis(self, p: int) -> list:
        return list(itertools.product(range(self.algebra.dim), repeat=p + 1))

    def index(self, t: tuple) -> int:
        d = self.algebra.dim
        i = 0
        for x in t:
            i = i * d + x
        return i

    def word_product(self, word: tuple) -> dict:
        v = self._prod_cache.get(word)
        if v is None:
            A = self.algebra
            if not word:
                v = dict(A.unit)
            elif len(word) == 1:
                v = {word[0]: A.field.one}
            else:
                v = A.mul(self.word_product(word[:-1]), {word[-1]: A.field.one})
            self._prod_cache[word] = v
        return v

    def factors(self, f: CyclicMorphism, t: tuple) -> list:
        """The factors ``b_0..b_p`` (as algebra vectors) of ``f`` applied to the basis tensor ``t``."""
        q1 = f.target + 1
        return [self.word_product(tuple(t[j % q1] for j in r)) for r in _runs(f)]

    def apply_to_basis(self, f: CyclicMorphism, t: tuple) -> dict:
        fld = self.field
        out: dict = {}
        facs = self.factors(f, t)
        if any(not v for v in facs):
            return out
        for combo in itertools.product(*(fac.items() for fac in facs)):
            idx = self.index(tuple(i for i, _ in combo))
            _axpy(fld, out, reduce(fld.mul, (v for _, v in combo)), {idx: fld.one})
        return out

    def _compute_action(self, f: CyclicMorphism) -> SparseMatrix:
        cols = [self.apply_to_basis(f, t) for t in self.basis(f.target)]
        return SparseMatrix.from_columns(self.field, self.dim(f.source), cols)


def cyclic_module_of(A: FiniteAlgebra) -> AlgebraCyclicModule:
    return AlgebraCyclicModule(A)


class MitchellCyclicModule(CyclicModule):
    """Hochschild--Mitchell cyclic module of a linear category.

    Degree ``p`` is spanned by ``(X_0..X_p; a_0..a_p)`` with
    ``a_i: X_{i+1} -> X_i``; see :func:`nccalc.algebra.category_hh_input`.
    A morphism sends the object sequence to ``X'_k = X_{f(k)}``.
    """

    def __init__(self, C: LinearCategory):
        super().__init__(C.field)
        self.category = C
        self._basis: dict = {}
        self._index: dict = {}

    def basis(self, p: int) -> list:
        b = self._basis.get(p)
        if b is None:
            b = category_hh_input(self.category, p)
            self._basis[p] = b
            self._index[p] = {x: i for i, x in enumerate(b)}
        return b

    def dim(self, p: int) -> int:
        return len(self.basis(p))

    def _chain_product(self, objs, arrows, run) -> dict:
        """Composite ``a_r o a_{r+1} o ... `` along a run of target arcs."""
        C = self.category
        fld = self.field
        q1 = len(objs)
        run = list(run)
        if not run:
            raise AssertionError("empty run handled by caller")
        j0 = run[0] % q1
        acc = {arrows[j0]: fld.one}
        src = objs[(j0 + 1) % q1]
        tgt = objs[j0]
        for j in run[1:]:
            jj = j % q1
            nxt_src = objs[(jj + 1) % q1]
            # acc: src -> tgt, arrow a_jj: nxt_src -> src
            acc = C.compose(nxt_src, src, tgt, acc, {arrows[jj]: fld.one})
            src = nxt_src
            if not acc:
                break
        return acc

    def _compute_action(self, f: CyclicMorphism) -> SparseMatrix:
        C = self.category
        fld = self.field
        p, q = f.source, f.target
        runs = _runs(f)
        self.basis(p)
        index = self._index[p]
        rows: dict = {}
        for col, (objs, arrows) in enumerate(self.basis(q)):
            new_objs = tuple(objs[f(k) % (q + 1)] for k in range(p + 1))
            factors = []
            for k, r in enumerate(runs):
                if len(r) == 0:
                    factors.append(dict(C.ident[new_objs[k]]))
                else:
                    factors.append(self._chain_product(objs, arrows, r))
            if any(not v for v in factors):
                continue
            for combo in itertools.product(*(fac.items() for fac in factors)):
                idx = index[(new_objs, tuple(i for i, _ in combo))]
                c = reduce(fld.mul, (v for _, v in combo))
                row = rows.setdefault(idx, {})
                _axpy(fld, row, c, {col: fld.one})
                if not row:
                    del rows[idx]
        return SparseMatrix(fld, self.dim(p), self.dim(q), rows)


def mitchell_cyclic_module_of(C: LinearCategory) -> MitchellCyclicModule:
    return MitchellCyclicModule(C)
