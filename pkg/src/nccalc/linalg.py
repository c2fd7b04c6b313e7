"""Sparse exact linear algebra: rank, kernels, homology and quotient coordinates.

Vectors are plain ``dict`` objects mapping index -> nonzero raw field value.
Matrices store a dict of rows.  Everything is exact; pivoting is fully
deterministic (leading index of the reduced residual), so homology
representatives are reproducible run to run.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable

from .exactfield import Field, FieldMismatchError, PrimeField, QQ, ExactScalar


class ChainError(ValueError):
    """A differential does not square to zero, or a vector is not a cycle."""


class SpanError(ValueError):
    """A vector that should lie in a span does not."""


# Matrices with both dimensions at most this size go through the dense path.
DENSE_THRESHOLD = 64


def set_dense_threshold(n: int) -> None:
    global DENSE_THRESHOLD
    DENSE_THRESHOLD = int(n)


# ---------------------------------------------------------------- vectors

def _axpy(field: Field, y: dict, a, x: dict) -> None:
    """In place ``y += a*x``, dropping zeros."""
    if isinstance(field, PrimeField):
        p = field.p
        for k, xv in x.items():
            v = (y.get(k, 0) + a * xv) % p
            if v:
                y[k] = v
            else:
                y.pop(k, None)
    else:
        for k, xv in x.items():
            v = y.get(k, 0) + a * xv
            if v:
                y[k] = v
            else:
                y.pop(k, None)


def vec_add(field: Field, x: dict, y: dict, a=1) -> dict:
    out = dict(x)
    _axpy(field, out, field.coerce(a), y)
    return out


def vec_scale(field: Field, x: dict, a) -> dict:
    a = field.coerce(a)
    if not a:
        return {}
    return {k: field.mul(a, v) for k, v in x.items()}


def vec_from_list(field: Field, values) -> dict:
    out = {}
    for i, v in enumerate(values):
        v = field.coerce(v)
        if v:
            out[i] = v
    return out


def vec_to_list(field: Field, v: dict, n: int) -> list:
    out = [field.zero] * n
    for k, x in v.items():
        out[k] = x
    return out


# ---------------------------------------------------------------- matrices

class SparseMatrix:
    """Immutable sparse matrix over an exact field."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_cols")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: dict | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows if rows is not None else {}
        self._cols = None

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int, entries: Iterable) -> "SparseMatrix":
        """Build from ``(row, col, value)`` triples; repeated positions are summed."""
        rows: dict = {}
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r},{c}) outside {nrows}x{ncols}")
            v = field.coerce(v)
            if not v:
                continue
            row = rows.setdefault(r, {})
            _axpy(field, row, field.one, {c: v})
            if not row:
                del rows[r]
        return cls(field, nrows, ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: list) -> "SparseMatrix":
        rows: dict = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def from_dense(cls, field: Field, data) -> "SparseMatrix":
        data = [list(r) for r in data]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return cls.from_entries(field, nrows, ncols,
                                ((i, j, v) for i, r in enumerate(data) for j, v in enumerate(r)))

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(field, nrows, ncols, {})

    @classmethod
    def identity(cls, field: Field, n: int) -> "SparseMatrix":
        return cls(field, n, n, {i: {i: field.one} for i in range(n)})

    # -- access
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, r: int) -> dict:
        return self._rows.get(r, {})

    def rows(self) -> list:
        return [self._rows.get(r, {}) for r in range(self.nrows)]

    def col(self, c: int) -> dict:
        return self._col_dict().get(c, {})

    def columns(self) -> list:
        cols = self._col_dict()
        return [cols.get(c, {}) for c in range(self.ncols)]

    def _col_dict(self) -> dict:
        if self._cols is None:
            cols: dict = {}
            for r, row in self._rows.items():
                for c, v in row.items():
                    cols.setdefault(c, {})[r] = v
            self._cols = cols
        return self._cols

    def __getitem__(self, rc):
        r, c = rc
        return self._rows.get(r, {}).get(c, self.field.zero)

    def entries(self) -> list:
        """Sorted ``(row, col, raw value)`` triples of nonzero entries."""
        return [(r, c, self._rows[r][c]) for r in sorted(self._rows) for c in sorted(self._rows[r])]

    def scalar_entries(self) -> list:
        return [(r, c, ExactScalar(self.field, v)) for r, c, v in self.entries()]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> list:
        out = [[self.field.zero] * self.ncols for _ in range(self.nrows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    # -- algebra
    def _check(self, other: "SparseMatrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def apply(self, v: dict) -> dict:
        """Matrix times column vector (dict form)."""
        out: dict = {}
        cols = self._col_dict()
        for c, x in v.items():
            col = cols.get(c)
            if col:
                _axpy(self.field, out, x, col)
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = {}
        orows = other._rows
        for r, row in self._rows.items():
            acc: dict = {}
            for k, a in row.items():
                orow = orows.get(k)
                if orow:
                    _axpy(self.field, acc, a, orow)
            if acc:
                rows[r] = acc
        return SparseMatrix(self.field, self.nrows, other.ncols, rows)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._lincomb(other, self.field.one)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self._lincomb(other, self.field.neg(self.field.one))

    def _lincomb(self, other, a):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, orow in other._rows.items():
            acc = rows.setdefault(r, {})
            _axpy(self.field, acc, a, orow)
            if not acc:
                del rows[r]
        return SparseMatrix(self.field, self.nrows, self.ncols, rows)

    def scale(self, a) -> "SparseMatrix":
        a = self.field.coerce(a)
        if not a:
            return SparseMatrix.zero(self.field, self.nrows, self.ncols)
        return SparseMatrix(self.field, self.nrows, self.ncols,
                            {r: {c: self.field.mul(a, v) for c, v in row.items()}
                             for r, row in self._rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.field, self.ncols, self.nrows,
                            {c: dict(col) for c, col in self._col_dict().items()})

    @property
    def T(self):
        return self.transpose()

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz}, {self.field})"

    def dump(self) -> str:
        """Coordinate-list text: a header line then ``row col value`` per entry."""
        lines = [f"% {self.nrows} {self.ncols} {self.nnz} {self.field.tag}"]
        for r, c, v in self.entries():
            lines.append(f"{r} {c} {self.field.render(v)}")
        return "\n".join(lines)


def block_matrix(field: Field, blocks: dict, row_sizes: list, col_sizes: list) -> SparseMatrix:
    """Assemble from ``{(bi, bj): SparseMatrix}`` with the given block sizes."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    rows: dict = {}
    for (bi, bj), m in blocks.items():
        if m.shape != (row_sizes[bi], col_sizes[bj]):
            raise ValueError(f"block {(bi, bj)} has shape {m.shape}")
        for r, row in m._rows.items():
            tgt = rows.setdefault(r + roff[bi], {})
            for c, v in row.items():
                tgt[c + coff[bj]] = v
    return SparseMatrix(field, roff[-1], coff[-1], rows)


# ---------------------------------------------------------------- echelon forms

class EchelonBasis:
    """Incremental Gauss-Jordan basis of a subspace of ``field^dim``.

    Every stored row has a 1 at its pivot and zeros at all other pivots.
    Optionally each row carries a *tag* vector recording which combination of
    tagged input vectors it is, which is how quotient coordinates are read off.
    """

    def __init__(self, field: Field, dim: int, track: bool = False):
        self.field = field
        self.dim = dim
        self.track = track
        self.rows: dict = {}
        self.tags: dict = {}
        self._colidx: dict = {}

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list:
        return sorted(self.rows)

    def reduce(self, v: dict, tag: dict | None = None):
        """Return ``(residual, tag)`` after subtracting the span's components."""
        field = self.field
        res = dict(v)
        acc = dict(tag) if (self.track and tag) else {}
        for c in [c for c in v if c in self.rows]:
            a = res.get(c)
            if not a:
                continue
            na = field.neg(a)
            _axpy(field, res, na, self.rows[c])
            if self.track:
                _axpy(field, acc, na, self.tags[c])
        return res, acc

    def coordinates(self, v: dict):
        """Tag combination of ``v`` if it lies in the span, else ``None``."""
        field = self.field
        res = dict(v)
        acc: dict = {}
        for c in [c for c in v if c in self.rows]:
            a = res.get(c)
            if not a:
                continue
            _axpy(field, res, field.neg(a), self.rows[c])
            if self.track:
                _axpy(field, acc, a, self.tags[c])
        if res:
            return None
        return acc

    def contains(self, v: dict) -> bool:
        res, _ = self.reduce(v)
        return not res

    def insert(self, v: dict, tag: dict | None = None) -> bool:
        """Add ``v``; returns True iff it was independent of the current span."""
        field = self.field
        res, acc = self.reduce(v, tag)
        if not res:
            return False
        piv = min(res)
        inv = field.inv(res[piv])
        if inv != field.one:
            res = {k: field.mul(inv, x) for k, x in res.items()}
            if self.track:
                acc = {k: field.mul(inv, x) for k, x in acc.items()}
        # clear the new pivot column from existing rows
        for q in list(self._colidx.get(piv, ())):
            row = self.rows[q]
            a = row.get(piv)
            if not a:
                continue
            before = set(row)
            na = field.neg(a)
            _axpy(field, row, na, res)
            if self.track:
                _axpy(field, self.tags[q], na, acc)
            after = set(row)
            for c in before - after:
                s = self._colidx.get(c)
                if s is not None:
                    s.discard(q)
            for c in after - before:
                self._colidx.setdefault(c, set()).add(q)
        self._colidx.pop(piv, None)
        self.rows[piv] = res
        if self.track:
            self.tags[piv] = acc
        for c in res:
            if c != piv:
                self._colidx.setdefault(c, set()).add(piv)
        return True

    def kernel_vectors(self) -> list:
        """Null space basis of the matrix whose rows were inserted, one vector per free column."""
        field = self.field
        neg_one = field.neg(field.one)
        out = []
        for j in range(self.dim):
            if j in self.rows:
                continue
            v = {j: field.one}
            for q in self._colidx.get(j, ()):
                x = self.rows[q].get(j)
                if x:
                    v[q] = field.mul(neg_one, x)
            out.append((j, v))
        return out


def _dense_rref(field: Field, rows: list, ncols: int):
    """Plain dense Gauss-Jordan; returns ``{pivot_col: row_list}``."""
    m = [list(r) for r in rows]
    pivots: dict = {}
    r = 0
    nrows = len(m)
    for c in range(ncols):
        sel = None
        for i in range(r, nrows):
            if m[i][c]:
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                a = m[i][c]
                m[i] = [field.sub(x, field.mul(a, y)) for x, y in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
        if r == nrows:
            break
    return {c: m[i] for c, i in pivots.items()}


@dataclass
class SubspaceBasis:
    """Basis of a subspace, with a distinguished pivot coordinate per vector.

    Each vector has coefficient 1 at its pivot and every other vector has 0
    there, so the vectors are independent by construction.
    """

    field: Field
    ambient: int
    vectors: list
    pivots: list = dc_field(default_factory=list)

    def __len__(self):
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_matrix(self) -> SparseMatrix:
        return SparseMatrix.from_columns(self.field, self.ambient, self.vectors)


def rank_kernel(M: SparseMatrix, dense_threshold: int | None = None):
    """Return ``(rank, kernel)`` of ``M`` with the kernel as a :class:`SubspaceBasis`.

    The kernel basis is read from the reduced row echelon form, which is
    unique, so the dense and sparse paths agree exactly.
    """
    thr = DENSE_THRESHOLD if dense_threshold is None else dense_threshold
    field = M.field
    if max(M.nrows, M.ncols) <= thr:
        piv = _dense_rref(field, M.to_dense(), M.ncols)
        vecs, pivs = [], []
        for j in range(M.ncols):
            if j in piv:
                continue
            v = {j: field.one}
            for c, row in piv.items():
                if row[j]:
                    v[c] = field.neg(row[j])
            vecs.append(v)
            pivs.append(j)
        return len(piv), SubspaceBasis(field, M.ncols, vecs, pivs)
    eb = EchelonBasis(field, M.ncols)
    for r in sorted(M._rows):
        eb.insert(M._rows[r])
    kv = eb.kernel_vectors()
    return len(eb), SubspaceBasis(field, M.ncols, [v for _, v in kv], [j for j, _ in kv])


def rank(M: SparseMatrix) -> int:
    """Rank via column insertion when that is the smaller side."""
    if M.nrows == 0 or M.ncols == 0 or M.is_zero():
        return 0
    if max(M.nrows, M.ncols) <= DENSE_THRESHOLD:
        return len(_dense_rref(M.field, M.to_dense(), M.ncols))
    if M.ncols < M.nrows:
        vecs, dim = M.columns(), M.nrows
    else:
        vecs, dim = M.rows(), M.ncols
    eb = EchelonBasis(M.field, dim)
    n = 0
    for v in vecs:
        if v and eb.insert(v):
            n += 1
    return n


def column_space(M: SparseMatrix) -> SubspaceBasis:
    eb = EchelonBasis(M.field, M.nrows)
    for v in M.columns():
        if v:
            eb.insert(v)
    piv = eb.pivots
    return SubspaceBasis(M.field, M.nrows, [eb.rows[p] for p in piv], piv)


class QuotientSolver:
    """Coordinates in ``cycles / boundaries`` with respect to fixed representatives."""

    def __init__(self, field: Field, ambient: int, representatives: list, boundaries: list):
        self.field = field
        self.ambient = ambient
        self.k = len(representatives)
        self._eb = EchelonBasis(field, ambient, track=True)
        for b in boundaries:
            if b:
                self._eb.insert(b)
        for i, z in enumerate(representatives):
            if not self._eb.insert(z, {i: field.one}):
                raise SpanError(f"representative {i} is dependent modulo boundaries")

    def express(self, v: dict) -> list:
        coords = self._eb.coordinates(v)
        if coords is None:
            raise SpanError("vector does not lie in cycles = boundaries + span(representatives)")
        return vec_to_list(self.field, coords, self.k)


@dataclass
class Homology:
    """Homology at one spot ``V_n`` of a complex, with a fixed basis of representatives."""

    field: Field
    ambient: int
    dim: int
    representatives: SubspaceBasis
    boundaries: SubspaceBasis
    cycle_dim: int
    d_out: SparseMatrix | None = None
    _solver: QuotientSolver | None = None

    def solver(self) -> QuotientSolver:
        if self._solver is None:
            self._solver = QuotientSolver(self.field, self.ambient,
                                          self.representatives.vectors, self.boundaries.vectors)
        return self._solver

    def express(self, v: dict) -> list:
        if self.d_out is not None and self.d_out.apply(v):
            raise ChainError("vector is not a cycle")
        return self.solver().express(v)

    def is_boundary(self, v: dict) -> bool:
        return all(not x for x in self.express(v))


def compute_homology(d_in: SparseMatrix, d_out: SparseMatrix, check: bool = True) -> Homology:
    """Homology of ``V_{n+1} --d_in--> V_n --d_out--> V_{n-1}``."""
    field = d_out.field
    if d_in.field != field:
        raise FieldMismatchError("differentials over different fields")
    if d_in.nrows != d_out.ncols:
        raise ValueError(f"incompatible shapes {d_in.shape} into {d_out.shape}")
    if check and not (d_out @ d_in).is_zero():
        raise ChainError("d_out o d_in is not zero")
    n = d_out.ncols
    _, ker = rank_kernel(d_out)
    beb = EchelonBasis(field, n)
    for v in d_in.columns():
        if v:
            beb.insert(v)
    bpiv = beb.pivots
    boundaries = SubspaceBasis(field, n, [dict(beb.rows[p]) for p in bpiv], bpiv)
    reps, rpiv = [], []
    for j, z in zip(ker.pivots, ker.vectors):
        if beb.insert(z):
            reps.append(z)
            rpiv.append(j)
    h = Homology(field, n, len(reps), SubspaceBasis(field, n, reps, rpiv), boundaries,
                 cycle_dim=len(ker), d_out=d_out)
    if h.dim != len(ker) - len(boundaries):
        raise ChainError("boundaries are not contained in cycles")
    return h


def homology_dimension(d_in: SparseMatrix, d_out: SparseMatrix):
    """``(dim, representatives)`` of ``ker(d_out) / im(d_in)``."""
    h = compute_homology(d_in, d_out)
    return h.dim, h.representatives


def express_in_quotient(v: dict, cycles: SubspaceBasis, boundaries: SubspaceBasis,
                        d_out: SparseMatrix | None = None) -> list:
    """Coordinates of ``[v]`` in the basis ``cycles`` modulo ``boundaries``."""
    if d_out is not None and d_out.apply(v):
        raise ChainError("vector is not a cycle")
    solver = QuotientSolver(cycles.field, cycles.ambient, cycles.vectors, boundaries.vectors)
    return solver.express(v)


def solve(M: SparseMatrix, b: dict):
    """One solution ``x`` of ``M x = b`` (dict form) or ``None``."""
    field = M.field
    eb = EchelonBasis(field, M.nrows, track=True)
    for j, col in enumerate(M.columns()):
        if col:
            eb.insert(col, {j: field.one})
    return eb.coordinates(b)
