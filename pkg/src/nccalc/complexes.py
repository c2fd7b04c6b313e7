"""Chain and cochain complexes of finite-dimensional based vector spaces.

Homological complexes have differentials ``d_n: V_n -> V_{n-1}``;
cohomological ones ``d^n: V^n -> V^{n+1}``.  Signs follow the Koszul rule:
on a tensor product the differential of the right factor picks up
``(-1)^i`` where ``i`` is the degree of the left factor.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exactfield import Field, FieldMismatchError
from .linalg import ChainError, Homology, SparseMatrix, compute_homology, block_matrix, rank

HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"


class ChainComplex:
    """A bounded complex ``V_lo .. V_hi`` with exact differentials.

    ``d_squared_zero`` is checked at construction; a failure raises
    :class:`ChainError` naming the first bad degree.
    """

    def __init__(self, field: Field, dims: dict, differentials: dict | None = None,
                 direction: str = HOMOLOGICAL, labels: dict | None = None,
                 check: bool = True, provisional: int | None = None, name: str = ""):
        if direction not in (HOMOLOGICAL, COHOMOLOGICAL):
            raise ValueError(f"unknown direction {direction!r}")
        if not dims:
            raise ValueError("a complex needs at least one degree")
        self.field = field
        self.direction = direction
        self.dims = {int(k): int(v) for k, v in dims.items()}
        self.lo = min(self.dims)
        self.hi = max(self.dims)
        for n in range(self.lo, self.hi + 1):
            self.dims.setdefault(n, 0)
        self.labels = labels or {}
        self.provisional = provisional
        self.name = name
        self._d: dict = {}
        self._homology: dict = {}
        step = -1 if direction == HOMOLOGICAL else 1
        self.step = step
        for n, m in (differentials or {}).items():
            if m.field != field:
                raise FieldMismatchError(f"differential {n} over {m.field}, complex over {field}")
            tgt = n + step
            if n not in self.dims or tgt not in self.dims:
                if m.is_zero():
                    continue
                raise ValueError(f"differential at degree {n} leaves the range [{self.lo},{self.hi}]")
            if m.shape != (self.dims[tgt], self.dims[n]):
                raise ValueError(f"differential at degree {n} has shape {m.shape}, "
                                 f"expected {(self.dims[tgt], self.dims[n])}")
            self._d[n] = m
        if check:
            self.verify()

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> SparseMatrix:
        """Differential leaving degree ``n``."""
        m = self._d.get(n)
        if m is None:
            return SparseMatrix.zero(self.field, self.dim(n + self.step), self.dim(n))
        return m

    def d_out(self, n: int) -> SparseMatrix:
        return self.d(n)

    def d_in(self, n: int) -> SparseMatrix:
        return self.d(n - self.step)

    def verify(self) -> None:
        for n in self.degrees():
            if n + self.step not in self.dims:
                continue
            comp = self.d(n + self.step) @ self.d(n)
            if not comp.is_zero():
                raise ChainError(f"d o d != 0 starting in degree {n}")

    def homology(self, n: int) -> Homology:
        h = self._homology.get(n)
        if h is None:
            h = compute_homology(self.d_in(n), self.d_out(n), check=False)
            self._homology[n] = h
        return h

    def betti(self, degrees=None) -> dict:
        degrees = self.degrees() if degrees is None else degrees
        return {n: self.homology(n).dim for n in degrees}

    def rank_of_d(self, n: int) -> int:
        return rank(self.d(n))

    def truncate(self, N: int) -> "ChainComplex":
        return truncate(self, N)

    def summary_records(self) -> list:
        out = []
        for n in self.degrees():
            out.append({"degree": n, "dim": self.dim(n), "rank_d": self.rank_of_d(n),
                        "homology": self.homology(n).dim,
                        "provisional": self.provisional is not None and n >= self.provisional})
        return out

    def summary_text(self) -> str:
        recs = self.summary_records()
        head = f"{'deg':>4} {'dim':>8} {'rank d':>8} {'H':>5}"
        lines = [head]
        for r in recs:
            flag = "  (provisional)" if r["provisional"] else ""
            lines.append(f"{r['degree']:>4} {r['dim']:>8} {r['rank_d']:>8} {r['homology']:>5}{flag}")
        return "\n".join(lines)

    def __repr__(self):
        dims = " ".join(str(self.dim(n)) for n in self.degrees())
        return f"ChainComplex({self.direction}, [{self.lo},{self.hi}], dims {dims})"


def truncate(X: ChainComplex, N: int) -> ChainComplex:
    """Keep degrees ``<= N + 1``.

    Homology is reliable through ``N - 1``; degree ``N`` is flagged provisional.
    """
    if N < X.lo:
        raise ValueError(f"truncation degree {N} below the complex's lowest degree {X.lo}")
    top = min(X.hi, N + 1)
    dims = {n: X.dim(n) for n in range(X.lo, top + 1)}
    diffs = {n: X.d(n) for n in dims if n + X.step in dims}
    labels = {n: X.labels[n] for n in dims if n in X.labels}
    prov = N if N < X.hi else X.provisional
    return ChainComplex(X.field, dims, diffs, X.direction, labels, check=False,
                        provisional=prov, name=X.name)


def _kron(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    rows: dict = {}
    f = A.field
    for ra, rowa in A._rows.items():
        for rb, rowb in B._rows.items():
            out = rows.setdefault(ra * B.nrows + rb, {})
            for ca, va in rowa.items():
                for cb, vb in rowb.items():
                    out[ca * B.ncols + cb] = f.mul(va, vb)
    return SparseMatrix(f, A.nrows * B.nrows, A.ncols * B.ncols, rows)


def kron(A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    if A.field != B.field:
        raise FieldMismatchError("kron over different fields")
    return _kron(A, B)


def tensor_complex(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """Total complex of ``X (x) Y`` with ``d(x(x)y) = dx(x)y + (-1)^|x| x(x)dy``.

    Degree ``n`` is the direct sum over ``i + j = n`` ordered by ascending
    ``i``; within a block the basis is ``x * dim(Y_j) + y``.
    """
    if X.field != Y.field:
        raise FieldMismatchError("tensor of complexes over different fields")
    if X.direction != Y.direction:
        raise ValueError("tensor of complexes with different directions")
    field = X.field
    step = X.step
    lo, hi = X.lo + Y.lo, X.hi + Y.hi
    blocks = {n: [(i, n - i) for i in X.degrees() if Y.lo <= n - i <= Y.hi] for n in range(lo, hi + 1)}
    dims = {n: sum(X.dim(i) * Y.dim(j) for i, j in blocks[n]) for n in blocks}
    labels = {}
    for n, bl in blocks.items():
        lab = []
        for i, j in bl:
            xl = X.labels.get(i) or list(range(X.dim(i)))
            yl = Y.labels.get(j) or list(range(Y.dim(j)))
            lab.extend((a, b) for a in xl for b in yl)
        labels[n] = lab
    diffs = {}
    for n, src in blocks.items():
        tgt_n = n + step
        if tgt_n not in blocks:
            continue
        tgt = blocks[tgt_n]
        tidx = {b: k for k, b in enumerate(tgt)}
        parts = {}
        for sk, (i, j) in enumerate(src):
            if (i + step, j) in tidx and X.dim(i + step) and Y.dim(j):
                parts[(tidx[(i + step, j)], sk)] = _kron(X.d(i), SparseMatrix.identity(field, Y.dim(j)))
            if (i, j + step) in tidx and X.dim(i) and Y.dim(j + step):
                m = _kron(SparseMatrix.identity(field, X.dim(i)), Y.d(j))
                parts[(tidx[(i, j + step)], sk)] = m.scale(-1) if i % 2 else m
        diffs[n] = block_matrix(field, parts,
                                [X.dim(i) * Y.dim(j) for i, j in tgt],
                                [X.dim(i) * Y.dim(j) for i, j in src])
    return ChainComplex(field, dims, diffs, X.direction, labels)


@dataclass
class Bicomplex:
    """Grid of spaces with commuting horizontal and vertical differentials.

    ``dh[(i, j)]: (i, j) -> (i-1, j)`` and ``dv[(i, j)]: (i, j) -> (i, j-1)``
    (homological direction).  Total degree is ``i + j``.
    """

    field: Field
    dims: dict
    dh: dict
    dv: dict

    def h(self, i, j):
        m = self.dh.get((i, j))
        return m if m is not None else SparseMatrix.zero(self.field, self.dims.get((i - 1, j), 0),
                                                          self.dims.get((i, j), 0))

    def v(self, i, j):
        m = self.dv.get((i, j))
        return m if m is not None else SparseMatrix.zero(self.field, self.dims.get((i, j - 1), 0),
                                                          self.dims.get((i, j), 0))


def total_complex(B: Bicomplex) -> ChainComplex:
    """Total complex with differential ``d_h + (-1)^i d_v``."""
    field = B.field
    for (i, j) in B.dims:
        if not (B.h(i - 1, j) @ B.h(i, j)).is_zero():
            raise ChainError(f"horizontal d^2 != 0 at {(i, j)}")
        if not (B.v(i, j - 1) @ B.v(i, j)).is_zero():
            raise ChainError(f"vertical d^2 != 0 at {(i, j)}")
        if not (B.h(i, j - 1) @ B.v(i, j) - B.v(i - 1, j) @ B.h(i, j)).is_zero():
            raise ChainError(f"horizontal and vertical differentials do not commute at {(i, j)}")
    cells = sorted(B.dims)
    degs = sorted({i + j for i, j in cells})
    blocks = {n: [c for c in cells if sum(c) == n] for n in range(degs[0], degs[-1] + 1)}
    dims = {n: sum(B.dims[c] for c in bl) for n, bl in blocks.items()}
    labels = {n: [(c, k) for c in bl for k in range(B.dims[c])] for n, bl in blocks.items()}
    diffs = {}
    for n, src in blocks.items():
        if n - 1 not in blocks:
            continue
        tgt = blocks[n - 1]
        tidx = {c: k for k, c in enumerate(tgt)}
        parts = {}
        for sk, (i, j) in enumerate(src):
            if (i - 1, j) in tidx:
                parts[(tidx[(i - 1, j)], sk)] = B.h(i, j)
            if (i, j - 1) in tidx:
                m = B.v(i, j)
                parts[(tidx[(i, j - 1)], sk)] = m.scale(-1) if i % 2 else m
        diffs[n] = block_matrix(field, parts, [B.dims[c] for c in tgt], [B.dims[c] for c in src])
    return ChainComplex(field, dims, diffs, HOMOLOGICAL, labels)


class ChainMap:
    """Degreewise maps ``V_n -> W_{n+shift}`` (homological indexing).

    The chain condition is ``d_W f = (-1)^shift f d_V``.
    """

    def __init__(self, source: ChainComplex, target: ChainComplex, maps: dict, shift: int = 0):
        if source.field != target.field:
            raise FieldMismatchError("chain map between complexes over different fields")
        self.source = source
        self.target = target
        self.shift = shift
        self.maps = {}
        for n, m in maps.items():
            exp = (target.dim(n + shift), source.dim(n))
            if m.shape != exp:
                raise ValueError(f"component at degree {n} has shape {m.shape}, expected {exp}")
            self.maps[n] = m

    def __getitem__(self, n: int) -> SparseMatrix:
        m = self.maps.get(n)
        if m is None:
            return SparseMatrix.zero(self.source.field, self.target.dim(n + self.shift), self.source.dim(n))
        return m

    def commutator_defect(self, n: int) -> SparseMatrix:
        """``d f - (-1)^shift f d`` on degree ``n``; zero iff the chain condition holds there."""
        sgn = -1 if self.shift % 2 else 1
        lhs = self.target.d(n + self.shift) @ self[n]
        rhs = self[n + self.source.step] @ self.source.d(n)
        return lhs - rhs.scale(sgn)

    def is_chain_map(self, degrees=None) -> bool:
        degrees = self.maps.keys() if degrees is None else degrees
        for n in degrees:
            lower = n + self.source.step
            if lower in self.source.dims and lower not in self.maps:
                continue  # the lower component lies outside the computed window
            if not self.commutator_defect(n).is_zero():
                return False
        return True

    def on_homology(self, n: int) -> list:
        """Matrix (list of rows) of the induced map ``H_n(V) -> H_{n+shift}(W)``."""
        hs = self.source.homology(n)
        ht = self.target.homology(n + self.shift)
        return induced_matrix(self[n], hs, ht)


def induced_matrix(f: SparseMatrix, hs: Homology, ht: Homology) -> list:
    """Matrix of the map on homology, columns indexed by source representatives."""
    cols = [ht.express(f.apply(z)) for z in hs.representatives.vectors]
    return [[cols[j][i] for j in range(len(cols))] for i in range(ht.dim)]
