"""Independent brute-force oracles.

Nothing here imports the linear algebra or complex machinery of the package.
Algebras are read only through their raw structure constants, chain and cochain
spaces are indexed by plain tuples built straight from the textbook formulas,
and ranks come from a separate dense elimination.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


class Arith:
    """Scalars as Fraction (p is None) or as ints mod p."""

    def __init__(self, p=None):
        self.p = p

    def norm(self, x):
        if self.p is None:
            return Fraction(x)
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), self.p - 2, self.p)


def arith_of(A) -> Arith:
    tag = A.field.tag
    return Arith(None) if tag == "Q" else Arith(int(tag.lstrip("FpG")))


def rank(rows, ar: Arith) -> int:
    """Rank of a matrix given as a list of {col: value} rows, by plain elimination."""
    pivots: dict = {}
    r = 0
    for row in rows:
        v = {k: ar.norm(x) for k, x in row.items() if ar.norm(x)}
        while v:
            c = min(v)
            if c not in pivots:
                lead = ar.inv(v[c])
                pivots[c] = {k: ar.norm(x * lead) for k, x in v.items()}
                r += 1
                break
            piv = pivots[c]
            a = v[c]
            for k, x in piv.items():
                nv = ar.norm(v.get(k, 0) - a * x)
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return r


def structure(A):
    """``mult[i][j] = {k: c}`` copied from the raw table."""
    d = A.dim
    return [[dict(A.table.get((i, j), {})) for j in range(d)] for i in range(d)]


def hochschild_boundary_rows(A, n: int):
    """Images of the basis tuples under ``b: A^{n+1} -> A^{n}``, unnormalized, from the formula."""
    ar = arith_of(A)
    d = A.dim
    mult = structure(A)
    cols = {}
    for t in itertools.product(range(d), repeat=n + 1):
        img: dict = {}
        for i in range(n + 1):
            if i < n:
                left, right = t[i], t[i + 1]
                prod = mult[left][right]
                for k, c in prod.items():
                    s = t[:i] + (k,) + t[i + 2:]
                    img[s] = ar.norm(img.get(s, 0) + (-1) ** i * c)
            else:
                prod = mult[t[n]][t[0]]
                for k, c in prod.items():
                    s = (k,) + t[1:n]
                    img[s] = ar.norm(img.get(s, 0) + (-1) ** n * c)
        cols[t] = img
    # the images are the columns; column rank = row rank
    return [{s: c for s, c in img.items() if c} for img in cols.values()]


def hochschild_dims(A, upto: int) -> list:
    """``dim HH_n`` for ``n <= upto`` from the unnormalized complex."""
    ar = arith_of(A)
    d = A.dim
    ranks = {}
    for n in range(1, upto + 2):
        ranks[n] = rank(hochschild_boundary_rows(A, n), ar)
    out = []
    for n in range(upto + 1):
        out.append(d ** (n + 1) - ranks.get(n, 0) - ranks[n + 1])
    return out


def cochain_differential_rows(A, n: int):
    """``delta: Hom(A^n, A) -> Hom(A^{n+1}, A)`` as the images of the basis maps ``e_w -> e_k``."""
    ar = arith_of(A)
    d = A.dim
    mult = structure(A)
    vecs = []
    for w in itertools.product(range(d), repeat=n):
        for k in range(d):
            # f sends the basis word w to e_k and every other basis word to 0
            img: dict = {}
            for a in itertools.product(range(d), repeat=n + 1):
                val: dict = {}
                if a[1:] == w:
                    for kk, c in mult[a[0]][k].items():
                        val[kk] = val.get(kk, 0) + c
                for i in range(n):
                    for kk, c in mult[a[i]][a[i + 1]].items():
                        if a[:i] + (kk,) + a[i + 2:] == w:
                            val[k] = val.get(k, 0) + (-1) ** (i + 1) * c
                if a[:n] == w:
                    for kk, c in mult[k][a[n]].items():
                        val[kk] = val.get(kk, 0) + (-1) ** (n + 1) * c
                for kk, c in val.items():
                    c = ar.norm(c)
                    if c:
                        img[(a, kk)] = c
            vecs.append(img)
    return vecs


def cohochschild_dims(A, upto: int) -> list:
    """``dim HH^n`` for ``n <= upto`` from the unnormalized cochain complex."""
    ar = arith_of(A)
    d = A.dim
    ranks = {-1: 0}
    for n in range(upto + 1):
        ranks[n] = rank(cochain_differential_rows(A, n), ar)
    return [d ** (n + 1) - ranks[n] - ranks[n - 1] for n in range(upto + 1)]


def center_dim(A) -> int:
    """``dim {z : z e_j = e_j z}`` by elimination on the commutator equations."""
    ar = arith_of(A)
    d = A.dim
    mult = structure(A)
    # equations indexed by (j, k): sum_i z_i (c_{ij}^k - c_{ji}^k) = 0
    rows = []
    for j in range(d):
        for k in range(d):
            rows.append({i: ar.norm(mult[i][j].get(k, 0) - mult[j][i].get(k, 0)) for i in range(d)})
    return d - rank(rows, ar)


def commutator_quotient_dim(A) -> int:
    ar = arith_of(A)
    d = A.dim
    mult = structure(A)
    rows = []
    for i in range(d):
        for j in range(d):
            v = {}
            for k in range(d):
                x = ar.norm(mult[i][j].get(k, 0) - mult[j][i].get(k, 0))
                if x:
                    v[k] = x
            rows.append(v)
    return d - rank(rows, ar)


def convolution(a: list, b: list) -> list:
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


# ---------------------------------------------------------------- operad emptiness, transcribed separately

_INTERVAL_COLORS = {"D1", "M"}


def operad_word_nonempty(inputs, output) -> bool:
    """Emptiness of Mult(inputs; output), written from the geometric description.

    * intervals cannot be embedded in squares or cylinders and vice versa;
    * an interval with module boundary needs exactly one module input pinned at 0,
      a plain interval admits none;
    * a square has no room for a cylinder (it would have to wrap around);
    * a plain cylinder admits no module cylinder, a module cylinder needs exactly one.
    """
    ins = list(inputs)
    if output in _INTERVAL_COLORS:
        if any(c not in _INTERVAL_COLORS for c in ins):
            return False
        k = ins.count("M")
        return k == (1 if output == "M" else 0)
    if any(c in _INTERVAL_COLORS for c in ins):
        return False
    if output == "D":
        return all(c == "D" for c in ins)
    k = ins.count("C_M")
    return k == (1 if output == "C_M" else 0)
