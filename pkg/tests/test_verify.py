import pytest

import oracles
from nccalc import preset
from nccalc.hochcalc import BudgetExceeded, identity_suite, verify_kunneth, verify_morita
from nccalc.hochcalc import verify as V


def test_identity_suite_small_corpus():
    for A in (preset("ground_field"), preset("truncated_polynomial", 2), preset("upper_triangular", 2)):
        recs = identity_suite(A, 3)
        assert V.all_ok(recs), V.first_failure(recs)
        assert {r["check"] for r in recs} >= {"b^2=0", "delta^2=0", "B^2=0", "bB+Bb=0"}


def test_homology_level_checks_on_dual(dual):
    for check in (V.cartan_check, V.module_axiom_check, V.bracket_check, V.bar_model_check):
        recs = check(dual, 4)
        assert recs and V.all_ok(recs), V.first_failure(recs)
    assert V.all_ok(V.cup_commutativity_check(dual, 4))


def test_morita_record():
    rec = verify_morita(preset("ground_field"), 2, 4)
    assert rec["ok"] and rec["matrix_dims"] == [1, 0, 0, 0]
    assert not rec["budget_exceeded"]


def test_morita_budget_lowers_reach():
    rec = verify_morita(preset("ground_field"), 2, 4, budget=3 ** 4)
    assert rec["ok"] and rec["budget_exceeded"]
    assert rec["reached"] < 3
    with pytest.raises(BudgetExceeded):
        verify_morita(preset("ground_field"), 2, 4, budget=1)


def test_kunneth_matches_oracle_convolution(dual):
    rec = verify_kunneth(dual, dual, 4)
    d = oracles.hochschild_dims(dual, 3)
    assert rec["tensor_dims"] == oracles.convolution(d, d) == [4, 4, 5, 6]
    assert rec["ok"]


def test_reports_separate_provisional_degree(dual):
    from nccalc.hochcalc import chains, cochains
    rep = V.homology_report(chains(dual, 3))
    assert rep["dims"] == [2, 1, 1]
    assert rep["degrees"][-1]["provisional"]
    crep = V.cohomology_report(cochains(dual, 2))
    assert crep["dims"] == [2, 1]
    assert len(crep["center_basis"]) == 2


def test_operation_matrices_shapes(dual):
    rep = V.operation_matrices(dual, 3, {"cup", "cap", "connes", "lie", "bracket"})
    assert {"cup", "cap", "connes", "lie", "bracket"} <= set(rep)
    # B: HH_0 -> HH_1 for dual numbers is a 1x2 matrix
    assert len(rep["connes"][0]["matrix"]) == 1
    assert len(rep["connes"][0]["matrix"][0]) == 2
