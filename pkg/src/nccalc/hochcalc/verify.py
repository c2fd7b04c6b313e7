"""Identity suite, Morita/Kunneth verifiers and report records.

Every check returns plain records (dicts of str/int/bool/lists) so reports can
be dumped as JSON and compared byte for byte.
"""
from __future__ import annotations

import random

from ..algebra import FiniteAlgebra, matrix_algebra, tensor
from ..complexes import induced_matrix
from .bar import BarResolution, bar_contraction_chain
from .chains import HochschildChains
from .cochains import (HochschildCochains, as_unnormalized, differential,
                       multiplication_cochain)
from .operations import (cartan_rhs, connes_B, contraction, cup, gerstenhaber_bracket,
                         lie_derivative_chain, on_homology)
from .tensors import NORMALIZED, UNNORMALIZED


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, reached: int):
        super().__init__(message)
        self.reached = reached


def render_matrix(field, M: list) -> list:
    return [[field.render(x) for x in row] for row in M]


def _rec(check: str, ok: bool, **detail) -> dict:
    out = {"check": check, "ok": bool(ok)}
    out.update(detail)
    return out


def _scale_rows(field, M: list, s: int) -> list:
    return M if s == 1 else [[field.neg(x) for x in row] for row in M]


def _matmul(field, P: list, Q: list, inner: int) -> list:
    cols = len(Q[0]) if Q else 0
    out = []
    for i in range(len(P)):
        row = []
        for j in range(cols):
            acc = field.zero
            for k in range(inner):
                acc = field.add(acc, field.mul(P[i][k], Q[k][j]))
            row.append(acc)
        out.append(row)
    return out


def algebra_id(A: FiniteAlgebra) -> str:
    return f"{A.name or 'algebra'}/{A.field.tag}/dim{A.dim}"


def class_list(Y: HochschildCochains, max_degree: int) -> list:
    """``(degree, index, cocycle)`` for the deterministic cohomology bases."""
    out = []
    for m in range(min(max_degree, Y.N) + 1):
        for i, f in enumerate(Y.cocycle_classes(m)):
            out.append((m, i, f))
    return out


# ---------------------------------------------------------------- exact identities

def differential_identities(A: FiniteAlgebra, N: int, variant: str = NORMALIZED) -> list:
    """``b^2 = 0``, ``delta^2 = 0``, ``B^2 = 0``, ``bB + Bb = 0`` as exact matrix identities."""
    X = HochschildChains(A, N, variant)
    Y = HochschildCochains(A, N, variant)
    B = connes_B(X)
    recs = []
    for n in range(2, X.top + 1):
        recs.append(_rec("b^2=0", (X.complex.d(n - 1) @ X.complex.d(n)).is_zero(), degree=n, variant=variant))
    for n in range(Y.top - 1):
        recs.append(_rec("delta^2=0", (Y.complex.d(n + 1) @ Y.complex.d(n)).is_zero(), degree=n, variant=variant))
    for n in range(X.top - 1):
        recs.append(_rec("B^2=0", (B[n + 1] @ B[n]).is_zero(), degree=n, variant=variant))
    for n in range(X.top):
        lhs = X.complex.d(n + 1) @ B[n]
        if n >= 1:
            lhs = lhs + B[n - 1] @ X.complex.d(n)
        recs.append(_rec("bB+Bb=0", lhs.is_zero(), degree=n, variant=variant))
    return recs


def variant_agreement(A: FiniteAlgebra, N: int) -> list:
    a = HochschildChains(A, N, NORMALIZED).betti(N - 1)
    b = HochschildChains(A, N, UNNORMALIZED).betti(N - 1)
    return [_rec("normalized=unnormalized", a == b, normalized=a, unnormalized=b)]


def center_check(A: FiniteAlgebra) -> list:
    Y = HochschildCochains(A, 1)
    h0 = Y.homology(0).dim
    z = len(A.center_basis())
    X = HochschildChains(A, 1)
    h0c = X.homology(0).dim
    comm = A.dim - A.commutator_span_dim()
    return [_rec("H^0=center", h0 == z, cohomology=h0, center=z),
            _rec("H_0=A/[A,A]", h0c == comm, homology=h0c, quotient=comm)]


def cochain_identities(A: FiniteAlgebra, N: int, seed: int = 0) -> list:
    """Chain-level cochain identities on random cochains."""
    rng = random.Random(seed)
    Y = HochschildCochains(A, N)
    mu = multiplication_cochain(A)
    fld = A.field
    recs = []

    def rnd(n):
        return Y.cochain(n, {i: fld.coerce(rng.randint(-3, 3)) for i in range(Y.dim(n))})
    recs.append(_rec("[mu,mu]=0", gerstenhaber_bracket(mu, mu).is_zero()))
    for n in range(min(N, 3)):
        f = rnd(n)
        recs.append(_rec("delta f=-[f,mu]", (as_unnormalized(differential(f)) + gerstenhaber_bracket(f, mu)).is_zero(),
                         degree=n))
    for m in range(min(N, 3)):
        for k in range(min(N, 3) - m):
            f, g = rnd(m), rnd(k)
            lhs = differential(cup(f, g))
            rhs = cup(differential(f), g) + cup(f, differential(g)).scale(-1 if m % 2 else 1)
            recs.append(_rec("delta(f u g)=delta f u g+(-1)^m f u delta g", lhs == rhs, degrees=[m, k]))
    return recs


def contraction_identities(A: FiniteAlgebra, N: int, seed: int = 0) -> list:
    """``b i_f - (-1)^m i_f b = (-1)^{m+1} i_{delta f}`` and ``i_f i_g = i_{g u f}`` on chains."""
    rng = random.Random(seed)
    X = HochschildChains(A, N)
    Y = HochschildCochains(A, N)
    fld = A.field
    recs = []

    def rnd(n):
        return Y.cochain(n, {i: fld.coerce(rng.randint(-3, 3)) for i in range(Y.dim(n))})
    for m in range(min(N, 3)):
        f = rnd(m)
        i_f, i_df = contraction(f, X), contraction(differential(f), X)
        ok = True
        for n in range(m + 1, X.top + 1):
            lhs = X.complex.d(n - m) @ i_f[n] - (i_f[n - 1] @ X.complex.d(n)).scale(-1 if m % 2 else 1)
            if lhs != i_df[n].scale(-1 if (m + 1) % 2 else 1):
                ok = False
        recs.append(_rec("b i_f-(-1)^m i_f b=(-1)^(m+1) i_(delta f)", ok, degree=m))
        g = rnd(1)
        i_g, i_gf = contraction(g, X), contraction(cup(g, f), X)
        ok = all(i_f[n - 1] @ i_g[n] == i_gf[n] for n in range(m + 1, X.top + 1))
        recs.append(_rec("i_f i_g=i_(g u f)", ok, degrees=[m, 1]))
    return recs


# ---------------------------------------------------------------- homology-level identities

def cartan_check(A: FiniteAlgebra, N: int = 4, max_class: int = 2, max_degree: int = 3,
                 seed: int = 0, X: HochschildChains | None = None, Y: HochschildCochains | None = None) -> list:
    """``L_f = B i_f - (-1)^m i_f B`` on homology, plus representative independence."""
    rng = random.Random(seed)
    X = HochschildChains(A, N) if X is None else X
    Y = HochschildCochains(A, N) if Y is None else Y
    fld = A.field
    B = connes_B(X)
    recs = []
    for m, idx, f in class_list(Y, max_class):
        L = lie_derivative_chain(f, X)
        R = cartan_rhs(f, X, B)
        # a cohomologous representative
        if m >= 1:
            h = Y.cochain(m - 1, {i: fld.coerce(rng.randint(-2, 2)) for i in range(Y.dim(m - 1))})
            f2 = f + differential(h)
        else:
            f2 = f
        L2 = lie_derivative_chain(f2, X)
        for n in range(max(m - 1, 0), max_degree + 1):
            tgt = n + 1 - m
            if tgt < 0 or tgt > X.top or n + 1 > X.top:
                continue
            a, b = on_homology(L, n), on_homology(R, n)
            c = on_homology(L2, n)
            # representative independence on the chain side
            Hs = X.homology(n)
            Ht = X.homology(tgt)
            ok_rep = True
            for z in Hs.representatives.vectors:
                w = {i: fld.coerce(rng.randint(-2, 2)) for i in range(X.dim(n + 1))}
                zz = dict(z)
                for k, v in X.complex.d(n + 1).apply(w).items():
                    zz[k] = fld.add(zz.get(k, fld.zero), v)
                zz = {k: v for k, v in zz.items() if v}
                if Ht.express(L[n].apply(zz)) != Ht.express(L[n].apply(z)):
                    ok_rep = False
            recs.append(_rec("cartan", a == b and a == c and ok_rep, class_degree=m, class_index=idx,
                             degree=n, L=render_matrix(fld, a), rhs=render_matrix(fld, b),
                             other_representative=a == c, boundary_perturbation=ok_rep))
    return recs


def module_axiom_check(A: FiniteAlgebra, N: int = 4, max_class: int = 2, max_degree: int = 3,
                       X: HochschildChains | None = None, Y: HochschildCochains | None = None) -> list:
    """``i_{f u g} = (-1)^{mn} i_f i_g`` on homology."""
    X = HochschildChains(A, N) if X is None else X
    Y = HochschildCochains(A, N) if Y is None else Y
    fld = A.field
    recs = []
    classes = class_list(Y, max_class)
    for m, i, f in classes:
        for k, j, g in classes:
            if m + k > Y.top:
                continue
            fg = cup(f, g)
            I_f, I_g, I_fg = contraction(f, X), contraction(g, X), contraction(fg, X)
            for n in range(m + k, max_degree + 1):
                lhs = on_homology(I_fg, n)
                mid = induced_matrix(I_g[n], X.homology(n), X.homology(n - k))
                right = induced_matrix(I_f[n - k], X.homology(n - k), X.homology(n - m - k))
                rhs = _scale_rows(fld, _matmul(fld, right, mid, X.homology(n - k).dim), -1 if (m * k) % 2 else 1)
                recs.append(_rec("i_(f u g)=(-1)^(mn) i_f i_g", lhs == rhs, classes=[[m, i], [k, j]], degree=n))
    return recs


def cup_commutativity_check(A: FiniteAlgebra, N: int = 4, max_class: int = 2,
                            Y: HochschildCochains | None = None) -> list:
    Y = HochschildCochains(A, N) if Y is None else Y
    recs = []
    classes = class_list(Y, max_class)
    for m, i, f in classes:
        for k, j, g in classes:
            if m + k > Y.N:
                continue
            a = Y.express(cup(f, g))
            b = Y.express(cup(g, f))
            if (m * k) % 2:
                b = [A.field.neg(x) for x in b]
            recs.append(_rec("[f u g]=(-1)^(mn)[g u f]", a == b, classes=[[m, i], [k, j]]))
    return recs


def bracket_check(A: FiniteAlgebra, N: int = 4, max_class: int = 2, max_degree: int = 3,
                  X: HochschildChains | None = None, Y: HochschildCochains | None = None) -> list:
    """``L_f L_g - (-1)^{(m-1)(n-1)} L_g L_f = L_{[f,g]}`` on homology, and graded Jacobi on cohomology."""
    X = HochschildChains(A, N) if X is None else X
    Y = HochschildCochains(A, N) if Y is None else Y
    fld = A.field
    recs = []
    classes = class_list(Y, max_class)
    for m, i, f in classes:
        for k, j, g in classes:
            if m + k == 0:
                continue
            h = gerstenhaber_bracket(f, g)
            if h.degree > Y.top:
                continue
            Lf, Lg, Lh = lie_derivative_chain(f, X), lie_derivative_chain(g, X), lie_derivative_chain(h, X)
            s = -1 if ((m - 1) * (k - 1)) % 2 else 1
            for n in range(0, max_degree + 1):
                a, a2 = n + 1 - k, n + 1 - m
                b = a + 1 - m
                if min(a, a2, b) < 0 or max(a, a2, b) > X.top:
                    continue
                lhs = Lf[a] @ Lg[n] - (Lg[a2] @ Lf[n]).scale(s)
                ok = induced_matrix(lhs, X.homology(n), X.homology(b)) == \
                    induced_matrix(Lh[n], X.homology(n), X.homology(b))
                recs.append(_rec("[L_f,L_g]=L_[f,g]", ok, classes=[[m, i], [k, j]], degree=n))
            if h.degree <= Y.N:
                recs.append(_rec("[f,g] is a cocycle", differential(h).is_zero(), classes=[[m, i], [k, j]]))
    # graded Jacobi, exact at chain level for the classes
    for m, i, f in classes:
        for k, j, g in classes:
            for l, q, e in classes:
                if m + k + l - 2 > Y.top or min(m + k, k + l, m + l) == 0 or m + k + l - 1 <= 0:
                    continue
                t1 = gerstenhaber_bracket(f, gerstenhaber_bracket(g, e))
                t2 = gerstenhaber_bracket(gerstenhaber_bracket(f, g), e)
                t3 = gerstenhaber_bracket(g, gerstenhaber_bracket(f, e))
                sgn = -1 if ((m - 1) * (k - 1)) % 2 else 1
                recs.append(_rec("graded Jacobi", t1 == t2 + t3.scale(sgn), classes=[[m, i], [k, j], [l, q]]))
    return recs


def bar_model_check(A: FiniteAlgebra, N: int = 4, max_class: int = 2, max_degree: int = 3) -> list:
    """Bar-model contraction equals the standard contraction on homology."""
    X = HochschildChains(A, N, UNNORMALIZED)
    Y = HochschildCochains(A, N)
    R = BarResolution(A, N)
    fld = A.field
    recs = [_rec("augmentation quasi-isomorphism", R.cone_is_acyclic(min(N - 1, max_degree)))]
    for p in range(min(N, max_degree) + 1):
        t = R.check_tensor_identification(p)
        recs.append(_rec("Bar (x)_Ae A = C", t["ok"], degree=p))
        hrec = R.check_hom_identification(p)
        recs.append(_rec("Hom_Ae(Bar, A) = C^", hrec["ok"], degree=p))
        m = A.dim - 1
        recs.append(_rec("filtration quotient free", R.filtration_quotient_dim(p) == A.dim ** 2 * m ** p,
                         degree=p, quotient_dim=R.filtration_quotient_dim(p)))
    for m, idx, f in class_list(Y, max_class):
        maps = bar_contraction_chain(f, R, X)
        I = contraction(f, X)
        for n in range(m, max_degree + 1):
            a = induced_matrix(maps[n], X.homology(n), X.homology(n - m))
            b = on_homology(I, n)
            recs.append(_rec("bar contraction=contraction", a == b, class_degree=m, class_index=idx,
                             degree=n, bar=render_matrix(fld, a), standard=render_matrix(fld, b)))
    return recs


# ---------------------------------------------------------------- Morita and Kunneth

def _budgeted_betti(A: FiniteAlgebra, N: int, budget: int | None) -> tuple:
    """Betti numbers through ``N-1``, lowering ``N`` if the chain spaces would exceed ``budget``."""
    d = A.dim
    reached = N
    if budget is not None:
        while reached >= 1 and d * (d - 1) ** (reached + 1) > budget:
            reached -= 1
    if reached < 1:
        raise BudgetExceeded(f"chain spaces of {algebra_id(A)} exceed the budget {budget}", -1)
    X = HochschildChains(A, reached)
    return X.betti(reached - 1), reached


def verify_morita(A: FiniteAlgebra, r: int, N: int, budget: int | None = None) -> dict:
    """``dim HH_n(M_r(A)) = dim HH_n(A)`` for ``n <= N - 1``."""
    M = matrix_algebra(A, r)
    left, nl = _budgeted_betti(M, N, budget)
    right, _ = _budgeted_betti(A, nl, None)
    ok = left == right
    return {"check": "morita", "ok": ok, "algebra": algebra_id(A), "r": r, "N": N,
            "reached": nl - 1, "matrix_dims": left, "dims": right, "budget_exceeded": nl < N}


def convolution(a: list, b: list) -> list:
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def verify_kunneth(A: FiniteAlgebra, B: FiniteAlgebra, N: int, budget: int | None = None) -> dict:
    """``dim HH_n(A (x) B) = sum_{i+j=n} dim HH_i(A) dim HH_j(B)``."""
    T = tensor(A, B)
    left, nl = _budgeted_betti(T, N, budget)
    da, _ = _budgeted_betti(A, nl, None)
    db, _ = _budgeted_betti(B, nl, None)
    conv = convolution(da, db)
    return {"check": "kunneth", "ok": left == conv, "algebras": [algebra_id(A), algebra_id(B)], "N": N,
            "reached": nl - 1, "tensor_dims": left, "convolution": conv, "factor_dims": [da, db],
            "budget_exceeded": nl < N}


def identity_suite(A: FiniteAlgebra, N: int, seed: int = 0) -> list:
    """Every exact identity that makes sense for ``A`` at truncation ``N``."""
    recs = []
    for v in (NORMALIZED, UNNORMALIZED):
        recs += differential_identities(A, N, v)
    recs += variant_agreement(A, N)
    recs += center_check(A)
    recs += cochain_identities(A, N, seed)
    recs += contraction_identities(A, N, seed)
    return recs


def all_ok(records: list) -> bool:
    return all(r["ok"] for r in records)


def first_failure(records: list):
    for r in records:
        if not r["ok"]:
            return r
    return None


def homology_report(X: HochschildChains) -> dict:
    fld = X.field
    degrees = []
    for n in range(X.N + 1):
        H = X.homology(n)
        reps = []
        for z in H.representatives.vectors:
            reps.append([[list(X.labels(n)[k]), fld.render(v)] for k, v in sorted(z.items())])
        degrees.append({"degree": n, "dim": H.dim, "chain_dim": X.dim(n), "provisional": n == X.N,
                        "representatives": reps})
    return {"algebra": algebra_id(X.algebra), "N": X.N, "variant": X.variant,
            "dims": [d["dim"] for d in degrees if not d["provisional"]],
            "provisional_dim": degrees[-1]["dim"], "degrees": degrees}


def cohomology_report(Y: HochschildCochains) -> dict:
    A = Y.algebra
    fld = A.field
    degrees = []
    for n in range(Y.N + 1):
        degrees.append({"degree": n, "dim": Y.homology(n).dim, "cochain_dim": Y.dim(n),
                        "provisional": n == Y.N})
    center = [[fld.render(v.get(i, fld.zero)) for i in range(A.dim)] for v in A.center_basis()]
    return {"algebra": algebra_id(A), "N": Y.N, "variant": Y.variant,
            "dims": [d["dim"] for d in degrees if not d["provisional"]],
            "provisional_dim": degrees[-1]["dim"], "degrees": degrees, "center_basis": center,
            "labels": list(A.labels)}


def operation_matrices(A: FiniteAlgebra, N: int, which, max_class: int = 2) -> dict:
    """Homology matrices of the requested operations in the deterministic bases."""
    X = HochschildChains(A, N)
    Y = HochschildCochains(A, N)
    fld = A.field
    classes = class_list(Y, min(max_class, N))
    out: dict = {"algebra": algebra_id(A), "N": N}
    top = N - 1
    if "connes" in which:
        B = connes_B(X)
        out["connes"] = [{"degree": n, "matrix": render_matrix(fld, on_homology(B, n))} for n in range(top)]
    if "cap" in which:
        out["cap"] = []
        for m, i, f in classes:
            I = contraction(f, X)
            out["cap"] += [{"class": [m, i], "degree": n, "matrix": render_matrix(fld, on_homology(I, n))}
                           for n in range(m, top + 1)]
    if "lie" in which:
        out["lie"] = []
        for m, i, f in classes:
            L = lie_derivative_chain(f, X)
            out["lie"] += [{"class": [m, i], "degree": n, "matrix": render_matrix(fld, on_homology(L, n))}
                           for n in range(max(m - 1, 0), top + 1) if n + 1 - m <= top]
    if "cup" in which:
        out["cup"] = []
        for m, i, f in classes:
            for k, j, g in classes:
                if m + k <= N:
                    out["cup"].append({"classes": [[m, i], [k, j]],
                                       "coordinates": [fld.render(x) for x in Y.express(cup(f, g))]})
    if "bracket" in which:
        out["bracket"] = []
        for m, i, f in classes:
            for k, j, g in classes:
                if m + k >= 1 and m + k - 1 <= N:
                    h = gerstenhaber_bracket(f, g)
                    out["bracket"].append({"classes": [[m, i], [k, j]],
                                           "coordinates": [fld.render(x) for x in Y.express(h)]})
    return out


__all__ = [
    "BudgetExceeded", "algebra_id", "all_ok", "bar_model_check", "bracket_check", "cartan_check",
    "center_check", "cochain_identities", "cohomology_report", "contraction_identities", "convolution",
    "cup_commutativity_check", "differential_identities", "first_failure", "homology_report",
    "identity_suite", "module_axiom_check", "operation_matrices", "variant_agreement",
    "verify_kunneth", "verify_morita",
]
