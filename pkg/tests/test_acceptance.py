"""Acceptance criteria 1-12.

Each test prints one line ``criterion N [...]: PASS|FAIL detail`` (also when
run as ``python3 tests/test_acceptance.py``).  All comparisons are exact.
"""
import math
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from relations import module_relation_failures, morphism_relation_failures  # noqa: E402

from nccalc import preset, tensor  # noqa: E402
from nccalc import operadgeo as og  # noqa: E402
from nccalc.cli import RunConfig, cmd_hh, dump_records  # noqa: E402
from nccalc.cyclic import compose, cyclic_module_of, hom_set, identity, power, rotation  # noqa: E402
from nccalc.exactfield import GF  # noqa: E402
from nccalc.hochcalc import chains, cochains  # noqa: E402
from nccalc.hochcalc import verify as V  # noqa: E402
from nccalc.hochcalc.bar import BarResolution  # noqa: E402

CORPUS = {
    "Q": lambda: preset("ground_field"),
    "F7": lambda: preset("ground_field", field=GF(7)),
    "dual": lambda: preset("truncated_polynomial", 2),
    "x3": lambda: preset("truncated_polynomial", 3),
    "QZ3": lambda: preset("group_algebra_cyclic", 3),
    "M2": lambda: preset("matrix", 2),
    "T2": lambda: preset("upper_triangular", 2),
}

_report = None


@pytest.fixture(autouse=True)
def _announce(capsys):
    global _report

    def report(n, title, ok, detail=""):
        line = f"criterion {n:>2} [{title}]: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        with capsys.disabled():
            print("\n" + line)
    _report = report
    yield


def announce(n, title, ok, detail=""):
    if _report is not None:
        _report(n, title, ok, detail)
    else:
        print(f"criterion {n:>2} [{title}]: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def test_criterion_01_identity_suite():
    t0 = time.time()
    failures = []
    for name, build in CORPUS.items():
        A = build()
        N = 2 if name == "M2" else 4  # chain degrees up to N + 1
        for variant in ("normalized", "unnormalized"):
            recs = V.differential_identities(A, N, variant)
            failures += [(name, r) for r in recs if not r["ok"]]
    dt = time.time() - t0
    ok = not failures and dt < 120
    announce(1, "identity suite", ok, f"{len(failures)} failures, {dt:.1f}s")
    assert not failures, failures[:3]
    assert dt < 120


def test_criterion_02_variant_agreement():
    bad = []
    for name, build in CORPUS.items():
        N = 4 if name == "M2" else 5
        rec = V.variant_agreement(build(), N)[0]
        if not rec["ok"]:
            bad.append((name, rec))
    announce(2, "normalized = unnormalized", not bad, f"{len(CORPUS) - len(bad)}/{len(CORPUS)} algebras")
    assert not bad


def test_criterion_03_known_dimensions():
    dual, Q = CORPUS["dual"](), CORPUS["Q"]()
    got = {
        "HH(dual)": chains(dual, 5).betti(3),
        "HH(Q)": chains(Q, 4).betti(3),
        "Z(M2)": cochains(CORPUS["M2"](), 1).betti(0)[0],
        "Z(T2)": cochains(CORPUS["T2"](), 1).betti(0)[0],
        "Z(dual)": cochains(dual, 1).betti(0)[0],
    }
    frozen = {"HH(dual)": [2, 1, 1, 1], "HH(Q)": [1, 0, 0, 0], "Z(M2)": 1, "Z(T2)": 1, "Z(dual)": 2}
    brute = {
        "HH(dual)": oracles.hochschild_dims(dual, 3),
        "HH(Q)": oracles.hochschild_dims(Q, 3),
        "Z(M2)": oracles.center_dim(CORPUS["M2"]()),
        "Z(T2)": oracles.center_dim(CORPUS["T2"]()),
        "Z(dual)": oracles.center_dim(dual),
    }
    ok = got == frozen == brute
    announce(3, "known dimensions", ok, " ".join(f"{k}={v}" for k, v in got.items()))
    assert got == frozen
    assert brute == frozen


def test_criterion_04_morita():
    t0 = time.time()
    rec = V.verify_morita(CORPUS["Q"](), 2, 3)
    dt = time.time() - t0
    ok = rec["ok"] and rec["reached"] == 2 and rec["matrix_dims"] == [1, 0, 0] and dt < 60
    announce(4, "Morita M2(Q) ~ Q", ok, f"dims {rec['matrix_dims']} vs {rec['dims']}, {dt:.1f}s")
    assert ok


def test_criterion_05_kunneth():
    dual = CORPUS["dual"]()
    rec = V.verify_kunneth(dual, dual, 4)
    d = oracles.hochschild_dims(dual, 3)
    brute_tensor = oracles.hochschild_dims(tensor(dual, dual), 3)
    ok = rec["ok"] and rec["tensor_dims"] == [4, 4, 5, 6] == oracles.convolution(d, d) == brute_tensor
    announce(5, "Kunneth dual x dual", ok, f"tensor {rec['tensor_dims']} convolution {rec['convolution']}")
    assert ok


def test_criterion_06_cartan():
    bad, count = [], 0
    for name in ("dual", "x3"):
        recs = V.cartan_check(CORPUS[name](), 4, max_class=2, max_degree=3)
        count += len(recs)
        bad += [r for r in recs if not r["ok"]]
    announce(6, "Cartan formula", not bad, f"{count - len(bad)}/{count} (class, degree) pairs")
    assert count and not bad, bad[:2]


def test_criterion_07_module_axiom():
    bad, count = [], 0
    for name in ("dual", "x3"):
        recs = V.module_axiom_check(CORPUS[name](), 4, max_class=2, max_degree=3)
        count += len(recs)
        bad += [r for r in recs if not r["ok"]]
    announce(7, "module axiom", not bad, f"{count - len(bad)}/{count} (class pair, degree) cases")
    assert count and not bad, bad[:2]


def test_criterion_08_bar_model():
    t0 = time.time()
    recs = [r for r in V.bar_model_check(CORPUS["dual"](), 4, max_class=2, max_degree=3)
            if r["check"] == "bar contraction=contraction"]
    dt = time.time() - t0
    bad = [r for r in recs if not r["ok"]]
    ok = recs and not bad and dt < 120
    announce(8, "bar-model contraction", bool(ok), f"{len(recs) - len(bad)}/{len(recs)} matrices, {dt:.1f}s")
    assert ok


def test_criterion_09_bar_quasi_isomorphism():
    R = BarResolution(CORPUS["dual"](), 4)
    ok = R.cone_is_acyclic(3)
    dims = [R.augmented_complex().homology(n).dim for n in range(-1, 4)]
    announce(9, "augmentation quasi-iso", ok and not any(dims), f"cone homology {dims}")
    assert ok and not any(dims)


def test_criterion_10_cyclic_category():
    rot_ok = all(power(rotation(p), p + 1) == identity(p) for p in range(7))
    dual_mod = cyclic_module_of(CORPUS["dual"]())
    t_ok = True
    for p in range(7):
        T = dual_mod.action(identity(p))
        for _ in range(p + 1):
            T = dual_mod.tau(p) @ T
        t_ok &= T == dual_mod.action(identity(p))
    rel_bad = []
    for p in range(6):
        rel_bad += morphism_relation_failures(p)
        rel_bad += module_relation_failures(dual_mod, p)
    rng = random.Random(10)
    func_bad = 0
    pairs = 0
    for name, build in CORPUS.items():
        Vm = cyclic_module_of(build())
        top = 2 if name == "M2" else 3
        for _ in range(200):
            p, q, r = (rng.randint(0, top) for _ in range(3))
            f, g = rng.choice(hom_set(p, q)), rng.choice(hom_set(q, r))
            pairs += 1
            if Vm.action(compose(g, f)) != Vm.action(f) @ Vm.action(g):
                func_bad += 1
    ok = rot_ok and t_ok and not rel_bad and not func_bad
    announce(10, "cyclic category", ok,
             f"t^(p+1)=id {rot_ok and t_ok}, relation failures {len(rel_bad)}, functoriality {pairs - func_bad}/{pairs}")
    assert ok, rel_bad[:3]


def test_criterion_11_operads():
    rng = random.Random(11)
    ops = list(og.OPERADS)
    law_bad = cyl_bad = 0
    for k in range(1000):
        h, gs, fs = og.random_triple(rng, ops[k % len(ops)])
        perm = list(range(h.arity))
        rng.shuffle(perm)
        if not (og.associativity_holds(h, gs, fs) and og.unitality_holds(h) and og.equivariance_holds(h, gs, perm)):
            law_bad += 1
        if og.piece_of(h.target).angular:
            got = og.cylinder_invariant(og.compose(h, gs))
            exp = og.compose_cylinder_invariants(og.cylinder_invariant(h),
                                                 [og.cylinder_invariant_or_none(g) for g in gs],
                                                 h.source, [g.source for g in gs])
            if got[0] != exp[0] or any(e is not None and e != r for e, r in zip(exp[1], got[1])):
                cyl_bad += 1
    orders = [len(og.achievable_orders(n, samples=50, seed=n)) for n in range(5)]
    orders_ok = orders == [math.factorial(n) for n in range(5)]
    table_bad = [r for r in og.arity_table("KS", 4)
                 if r["nonempty"] != oracles.operad_word_nonempty(r["inputs"], r["output"])]
    ok = not law_bad and not cyl_bad and orders_ok and not table_bad
    announce(11, "operad suite", ok,
             f"laws {1000 - law_bad}/1000, cylinder invariant failures {cyl_bad}, orders {orders}, "
             f"KS table mismatches {len(table_bad)}")
    assert ok


def test_criterion_12_determinism(tmp_path):
    cfg = RunConfig(max_degree=3, fmt="records")
    A = CORPUS["x3"]()
    same_process = dump_records(cmd_hh(A, cfg)) == dump_records(cmd_hh(CORPUS["x3"](), cfg))
    outs = []
    for k in range(2):
        path = tmp_path / f"run{k}.report"
        subprocess.run([sys.executable, "-m", "nccalc.cli", "hh", "preset:truncated_polynomial:3", "-N", "3",
                        "--format", "records", "-o", str(path)], check=True, capture_output=True)
        outs.append(path.read_bytes())
    ok = same_process and outs[0] == outs[1] and len(outs[0]) > 0
    announce(12, "determinism", ok, f"{len(outs[0])} bytes, identical across processes: {outs[0] == outs[1]}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
