"""Finite-dimensional unital associative algebras and small linear categories.

An algebra is given by structure constants ``e_i e_j = sum_k c[i,j][k] e_k``
stored sparsely as ``{(i, j): {k: c}}`` with raw field values.  Vectors are
dicts ``index -> raw value`` as in :mod:`nccalc.linalg`.
"""
from __future__ import annotations

import itertools

from .exactfield import Field, FieldMismatchError, QQ, field_from_tag
from .linalg import SparseMatrix, _axpy, rank_kernel


class AlgebraError(ValueError):
    """Structure constants that do not define a unital associative algebra.

    ``detail`` is ``("unit", i)`` or ``("assoc", i, j, l)`` with 1-based indices.
    """

    def __init__(self, message: str, detail: tuple | None = None):
        super().__init__(message)
        self.detail = detail


class FiniteAlgebra:
    def __init__(self, field: Field, dim: int, unit, constants: dict, labels=None,
                 name: str = "", validate: bool = True):
        self.field = field
        self.dim = int(dim)
        self.labels = list(labels) if labels is not None else [f"e{i + 1}" for i in range(dim)]
        if len(self.labels) != self.dim:
            raise AlgebraError(f"{len(self.labels)} labels for dimension {dim}")
        if isinstance(unit, dict):
            self.unit = {k: field.coerce(v) for k, v in unit.items() if field.coerce(v)}
        else:
            unit = list(unit)
            if len(unit) != self.dim:
                raise AlgebraError(f"unit vector has length {len(unit)}, expected {dim}")
            self.unit = {k: field.coerce(v) for k, v in enumerate(unit) if field.coerce(v)}
        self.table: dict = {}
        for (i, j), out in constants.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"structure constant index ({i},{j}) out of range")
            vec = {}
            for k, v in out.items():
                if not 0 <= k < dim:
                    raise AlgebraError(f"structure constant output index {k} out of range")
                v = field.coerce(v)
                if v:
                    vec[k] = v
            if vec:
                self.table[(i, j)] = vec
        self.name = name
        if validate:
            self.validate()

    # -- arithmetic
    def basis_product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def mul(self, u: dict, v: dict) -> dict:
        f = self.field
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.table.get((i, j))
                if prod:
                    _axpy(f, out, f.mul(a, b), prod)
        return out

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one}

    def left_mult_matrix(self, u: dict) -> SparseMatrix:
        cols = [self.mul(u, {j: self.field.one}) for j in range(self.dim)]
        return SparseMatrix.from_columns(self.field, self.dim, cols)

    def right_mult_matrix(self, u: dict) -> SparseMatrix:
        cols = [self.mul({j: self.field.one}, u) for j in range(self.dim)]
        return SparseMatrix.from_columns(self.field, self.dim, cols)

    # -- validation
    def validate(self) -> None:
        """Raise :class:`AlgebraError` at the first failing axiom instance."""
        d = self.dim
        one = self.field.one
        for i in range(d):
            ei = {i: one}
            if self.mul(self.unit, ei) != ei or self.mul(ei, self.unit) != ei:
                raise AlgebraError(f"unit failure at i={i + 1}", ("unit", i + 1))
        for i in range(d):
            for j in range(d):
                eij = self.basis_product(i, j)
                for l in range(d):
                    left = self.mul(eij, {l: one})
                    right = self.mul({i: one}, self.basis_product(j, l))
                    if left != right:
                        raise AlgebraError(f"associativity failure at (i,j,l)=({i + 1},{j + 1},{l + 1})",
                                           ("assoc", i + 1, j + 1, l + 1))

    def is_commutative(self) -> bool:
        return all(self.basis_product(i, j) == self.basis_product(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def center_basis(self) -> list:
        """Basis of ``{z : z e_i = e_i z for all i}``."""
        f = self.field
        d = self.dim
        entries = []
        for i in range(d):
            ei = {i: f.one}
            for j in range(d):
                diff = dict(self.mul({j: f.one}, ei))
                _axpy(f, diff, f.neg(f.one), self.mul(ei, {j: f.one}))
                for k, v in diff.items():
                    entries.append((i * d + k, j, v))
        M = SparseMatrix.from_entries(f, d * d, d, entries)
        _, ker = rank_kernel(M)
        return ker.vectors

    def commutator_span_dim(self) -> int:
        f = self.field
        vecs = []
        for i in range(self.dim):
            for j in range(self.dim):
                v = dict(self.basis_product(i, j))
                _axpy(f, v, f.neg(f.one), self.basis_product(j, i))
                vecs.append(v)
        M = SparseMatrix.from_columns(f, self.dim, vecs)
        r, _ = rank_kernel(M.transpose())
        return r

    def __eq__(self, other):
        return (isinstance(other, FiniteAlgebra) and self.field == other.field and self.dim == other.dim
                and self.unit == other.unit and self.table == other.table)

    def __hash__(self):
        return hash((self.field, self.dim, tuple(sorted(self.table))))

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"FiniteAlgebra{nm}(dim={self.dim}, {self.field})"

    def dump(self) -> str:
        """Canonical ``.alg`` text: header, unit and one ``c i j k value`` row per constant (1-based)."""
        f = self.field
        lines = [f"name: {self.name}", f"field: {f.tag}", f"dim: {self.dim}",
                 "basis: " + " ".join(str(l) for l in self.labels),
                 "unit: " + " ".join(f.render(self.unit.get(i, f.zero)) for i in range(self.dim))]
        for (i, j) in sorted(self.table):
            for k in sorted(self.table[(i, j)]):
                lines.append(f"c {i + 1} {j + 1} {k + 1} {f.render(self.table[(i, j)][k])}")
        return "\n".join(lines)


def from_structure_constants(field: Field, dim: int, unit, constants, labels=None, name: str = "") -> FiniteAlgebra:
    """Validated algebra.  ``constants`` is ``{(i,j): {k: c}}`` or ``[(i, j, k, c), ...]`` (0-based)."""
    if not isinstance(constants, dict):
        table: dict = {}
        for i, j, k, c in constants:
            slot = table.setdefault((int(i), int(j)), {})
            c = field.coerce(c)
            slot[int(k)] = field.add(slot.get(int(k), field.zero), c)
        constants = table
    return FiniteAlgebra(field, dim, unit, constants, labels=labels, name=name)


# ---------------------------------------------------------------- constructions

def opposite(A: FiniteAlgebra) -> FiniteAlgebra:
    table = {(j, i): dict(v) for (i, j), v in A.table.items()}
    return FiniteAlgebra(A.field, A.dim, dict(A.unit), table, labels=A.labels,
                         name=f"{A.name}^op" if A.name else "", validate=False)


def tensor(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """``A (x) B`` with basis index ``i * dim(B) + j`` and labels ``(a, b)``."""
    if A.field != B.field:
        raise FieldMismatchError("tensor of algebras over different fields")
    f = A.field
    dB = B.dim
    table: dict = {}
    for (i1, i2), va in A.table.items():
        for (j1, j2), vb in B.table.items():
            out = {}
            for ka, ca in va.items():
                for kb, cb in vb.items():
                    out[ka * dB + kb] = f.mul(ca, cb)
            table[(i1 * dB + j1, i2 * dB + j2)] = out
    unit = {ka * dB + kb: f.mul(ca, cb) for ka, ca in A.unit.items() for kb, cb in B.unit.items()}
    labels = [(a, b) for a in A.labels for b in B.labels]
    name = f"({A.name} x {B.name})" if A.name and B.name else ""
    return FiniteAlgebra(f, A.dim * B.dim, unit, table, labels=labels, name=name, validate=False)


def enveloping(A: FiniteAlgebra) -> FiniteAlgebra:
    """``A^e = A^op (x) A``."""
    Ae = tensor(opposite(A), A)
    Ae.name = f"{A.name}^e" if A.name else ""
    return Ae


def matrix_algebra(A: FiniteAlgebra, r: int) -> FiniteAlgebra:
    """``M_r(A) = M_r(k) (x) A`` so that ``(M(x)a)(N(x)b) = MN (x) ab``."""
    M = preset("matrix", r, field=A.field)
    out = tensor(M, A)
    out.name = f"M{r}({A.name})" if A.name else f"M{r}"
    return out


# ---------------------------------------------------------------- presets

PRESETS = ("ground_field", "truncated_polynomial", "group_algebra_cyclic", "matrix", "upper_triangular")


def preset(name: str, *params, field: Field = QQ) -> FiniteAlgebra:
    """Named test algebras.

    ``truncated_polynomial n`` is ``k[x]/(x^n)``; ``group_algebra_cyclic m`` is
    ``k[Z/m]``; ``matrix r`` is ``M_r(k)``; ``upper_triangular r`` is the
    algebra of upper triangular ``r x r`` matrices.
    """
    if isinstance(field, str):
        field = field_from_tag(field)
    one = field.one
    if name == "ground_field":
        return FiniteAlgebra(field, 1, [1], {(0, 0): {0: one}}, labels=["1"], name=f"{field.tag}")
    if name == "truncated_polynomial":
        (n,) = params or (2,)
        n = int(n)
        if n < 1:
            raise ValueError("truncated_polynomial needs n >= 1")
        table = {(i, j): {i + j: one} for i in range(n) for j in range(n) if i + j < n}
        labels = ["1"] + ["x" if i == 1 else f"x^{i}" for i in range(1, n)]
        return FiniteAlgebra(field, n, [1] + [0] * (n - 1), table, labels=labels,
                             name=f"{field.tag}[x]/(x^{n})")
    if name == "group_algebra_cyclic":
        (m,) = params or (2,)
        m = int(m)
        if m < 1:
            raise ValueError("group_algebra_cyclic needs m >= 1")
        table = {(i, j): {(i + j) % m: one} for i in range(m) for j in range(m)}
        labels = ["1"] + ["g" if i == 1 else f"g^{i}" for i in range(1, m)]
        return FiniteAlgebra(field, m, [1] + [0] * (m - 1), table, labels=labels,
                             name=f"{field.tag}[Z/{m}]")
    if name == "matrix":
        (r,) = params or (2,)
        r = int(r)
        idx = {(a, b): a * r + b for a in range(r) for b in range(r)}
        table = {(idx[a, b], idx[b, c]): {idx[a, c]: one} for a in range(r) for b in range(r) for c in range(r)}
        unit = [1 if a == b else 0 for a in range(r) for b in range(r)]
        labels = [f"E{a + 1}{b + 1}" for a in range(r) for b in range(r)]
        return FiniteAlgebra(field, r * r, unit, table, labels=labels, name=f"M{r}({field.tag})")
    if name == "upper_triangular":
        (r,) = params or (2,)
        r = int(r)
        pairs = [(a, b) for a in range(r) for b in range(a, r)]
        idx = {p: k for k, p in enumerate(pairs)}
        table = {}
        for (a, b) in pairs:
            for (b2, c) in pairs:
                if b == b2:
                    table[(idx[a, b], idx[b2, c])] = {idx[a, c]: one}
        unit = [1 if a == b else 0 for a, b in pairs]
        labels = [f"E{a + 1}{b + 1}" for a, b in pairs]
        return FiniteAlgebra(field, len(pairs), unit, table, labels=labels, name=f"T{r}({field.tag})")
    raise ValueError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")


# ---------------------------------------------------------------- linear categories

class LinearCategory:
    """Finitely many objects with based hom spaces and bilinear composition.

    ``hom[(X, Y)]`` lists basis labels of maps ``X -> Y``.
    ``comp[(X, Y, Z)][(g, f)]`` is the vector ``g o f`` in ``hom[(X, Z)]`` for
    basis indices ``g`` of ``hom[(Y, Z)]`` and ``f`` of ``hom[(X, Y)]``.
    ``ident[X]`` is the identity as a vector of ``hom[(X, X)]``.
    """

    def __init__(self, field: Field, objects, hom: dict, comp: dict, ident: dict, validate: bool = True):
        self.field = field
        self.objects = list(objects)
        self.hom = {k: list(v) for k, v in hom.items()}
        for X in self.objects:
            for Y in self.objects:
                self.hom.setdefault((X, Y), [])
        self.comp = comp
        self.ident = ident
        if validate:
            self.validate()

    def homdim(self, X, Y) -> int:
        return len(self.hom[(X, Y)])

    def compose(self, X, Y, Z, g: dict, f: dict) -> dict:
        """``g o f`` for vectors ``g`` in hom(Y,Z), ``f`` in hom(X,Y)."""
        fld = self.field
        table = self.comp.get((X, Y, Z), {})
        out: dict = {}
        for gi, a in g.items():
            for fi, b in f.items():
                v = table.get((gi, fi))
                if v:
                    _axpy(fld, out, fld.mul(a, b), v)
        return out

    def validate(self) -> None:
        one = self.field.one
        obs = self.objects
        for X, Y in itertools.product(obs, obs):
            for i in range(self.homdim(X, Y)):
                e = {i: one}
                if self.compose(X, Y, Y, self.ident[Y], e) != e or self.compose(X, X, Y, e, self.ident[X]) != e:
                    raise AlgebraError(f"identity failure on hom({X},{Y}) basis element {i}")
        for W, X, Y, Z in itertools.product(obs, repeat=4):
            for h in range(self.homdim(Y, Z)):
                for g in range(self.homdim(X, Y)):
                    hg = self.compose(X, Y, Z, {h: one}, {g: one})
                    for f in range(self.homdim(W, X)):
                        left = self.compose(W, X, Z, hg, {f: one})
                        right = self.compose(W, Y, Z, {h: one}, self.compose(W, X, Y, {g: one}, {f: one}))
                        if left != right:
                            raise AlgebraError(f"associativity failure at objects {(W, X, Y, Z)}, "
                                               f"basis {(h, g, f)}")


def one_object_category(A: FiniteAlgebra) -> LinearCategory:
    """``BA``: one object ``*`` with endomorphisms ``A``; ``g o f = g * f``."""
    comp = {("*", "*", "*"): {(i, j): dict(v) for (i, j), v in A.table.items()}}
    return LinearCategory(A.field, ["*"], {("*", "*"): A.labels}, comp, {"*": dict(A.unit)}, validate=False)


def chaotic_category(field: Field, n: int) -> LinearCategory:
    """``n`` objects, every hom space ``k`` spanned by a single arrow, composition = product."""
    obs = list(range(n))
    hom = {(X, Y): [f"{X}->{Y}"] for X in obs for Y in obs}
    comp = {(X, Y, Z): {(0, 0): {0: field.one}} for X in obs for Y in obs for Z in obs}
    ident = {X: {0: field.one} for X in obs}
    return LinearCategory(field, obs, hom, comp, ident)


def category_hh_input(C: LinearCategory, p: int) -> list:
    """Basis of the degree-``p`` Hochschild--Mitchell space.

    Elements are ``(objects, arrows)`` with ``objects = (X_0..X_p)`` and
    ``arrows[i]`` a basis index of ``hom(X_{i+1}, X_i)`` (indices mod p+1), so
    that adjacent factors compose as ``a_i o a_{i+1}``.
    """
    out = []
    for seq in itertools.product(range(len(C.objects)), repeat=p + 1):
        obs = tuple(C.objects[s] for s in seq)
        ranges = [range(C.homdim(obs[(i + 1) % (p + 1)], obs[i])) for i in range(p + 1)]
        for arrows in itertools.product(*ranges):
            out.append((obs, arrows))
    return out
