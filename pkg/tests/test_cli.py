import json

import pytest

from nccalc import GF, preset
from nccalc.cli import (AlgebraDescription, DescriptionError, RunConfig, cmd_hh, description_from_records,
                        description_of, dump_records, load_algebra, main, parse_description_text, run)

DUAL_F7 = """# dual numbers over F7
name: dual7
field: F7
dim: 2
basis: 1 x
unit: 1 mod 7  0 mod 7
c 1 1 1 1
c 1 2 2 1
c 2 1 2 1
"""


def test_parse_line_format():
    d = parse_description_text(DUAL_F7)
    A = d.build()
    assert A.field == GF(7) and A.dim == 2
    assert A == preset("truncated_polynomial", 2, field=GF(7))


def test_records_round_trip():
    A = preset("upper_triangular", 2)
    rec = description_of(A).to_records()
    again = description_from_records(json.loads(dump_records(rec)))
    assert again.to_records() == rec
    assert again.build() == A
    text = A.dump()
    assert parse_description_text(text).build() == A
    assert parse_description_text(dump_records(rec)).build() == A


def test_parse_errors_carry_line_context():
    with pytest.raises(DescriptionError, match=r"alg:3"):
        parse_description_text("field: Q\ndim: 1\nwhat is this\n", "alg")
    with pytest.raises(DescriptionError, match=r"alg:2: field 'dim'"):
        parse_description_text("field: Q\ndim: two\n", "alg")
    with pytest.raises(DescriptionError, match="c i j k value"):
        parse_description_text("dim: 1\nc 1 1\n", "alg")
    with pytest.raises(DescriptionError):
        parse_description_text("{not json", "alg")


def test_run_config_rejects_negative_degree():
    with pytest.raises(ValueError):
        RunConfig(max_degree=-1)


def test_hh_ground_field():
    code, out = run(["hh", "preset:ground_field", "-N", "4"])
    assert code == 0
    assert "dims: 1 0 0 0" in out


def test_hh_from_file(tmp_path):
    p = tmp_path / "dual7.alg"
    p.write_text(DUAL_F7)
    code, out = run(["hh", str(p), "-N", "3", "--format", "records"])
    assert code == 0
    assert json.loads(out)["dims"] == [2, 1, 1]


def test_records_output_is_deterministic(tmp_path):
    A = preset("truncated_polynomial", 3)
    cfg = RunConfig(max_degree=3, fmt="records")
    assert dump_records(cmd_hh(A, cfg)) == dump_records(cmd_hh(A, cfg))
    out1 = tmp_path / "a.report"
    out2 = tmp_path / "b.report"
    run(["hh", "preset:matrix:2", "-N", "2", "--format", "records", "-o", str(out1)])
    run(["hh", "preset:matrix:2", "-N", "2", "--format", "records", "-o", str(out2)])
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_truncated_polynomial_passes():
    code, out = run(["verify", "preset:truncated_polynomial:2", "--which", "identities"])
    assert code == 0, out


def test_verify_morita_and_kunneth_records():
    code, out = run(["verify", "preset:ground_field", "--which", "morita,kunneth",
                     "--kunneth-with", "preset:truncated_polynomial:2", "--format", "records"])
    assert code == 0
    rep = json.loads(out)
    assert [s["check"] for s in rep["sections"]] == ["morita", "kunneth"]


def test_verify_parallel_matches_serial():
    a = run(["verify", "preset:truncated_polynomial:2", "-N", "3", "--which", "identities,cartan",
             "--format", "records", "--jobs", "1"])
    b = run(["verify", "preset:truncated_polynomial:2", "-N", "3", "--which", "identities,cartan",
             "--format", "records", "--jobs", "2"])
    assert a == b


def test_ops_and_cyclic_commands():
    code, out = run(["ops", "preset:truncated_polynomial:2", "-N", "3", "--which", "connes,cap"])
    assert code == 0 and "connes" in out
    code, out = run(["cyclic", "preset:truncated_polynomial:2", "1->1:[-1,0]", "--format", "records"])
    assert code == 0
    rep = json.loads(out)
    assert rep["morphism"] == "1->1:[1,2]"
    # the rotation of (1) swaps the two tensor factors
    assert rep["entries"] == [[0, 0, "1"], [1, 2, "1"], [2, 1, "1"], [3, 3, "1"]]


def test_operad_command():
    code, out = run(["operad", "--which", "arity-table,pi0", "--operad", "KS", "--max-arity", "2",
                     "--format", "records"])
    assert code == 0
    rep = json.loads(out)
    assert all(r["ok"] for r in rep["pi0"])
    assert {r["operad"] for r in rep["arity_table"]} == {"KS"}


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("field: Q\ndim: 2\nunit: 1 0\nc 1 1 1 1\nc 1 2 2 1\n")
    code, out = run(["hh", str(bad)])
    assert code == 2 and "unit failure at i=2" in out
    assert run(["hh", "preset:nope"])[0] == 2
    assert run(["hh", str(tmp_path / "missing.alg")])[0] == 2
    assert run(["cyclic", "preset:ground_field", "1->1:[1,0]"])[0] == 2
    code, out = run(["verify", "preset:ground_field", "--which", "morita", "--budget", "1"])
    assert code == 3
    assert main(["hh", "preset:ground_field", "-N", "1"]) == 0
    assert "dims" in capsys.readouterr().out


def test_load_algebra_field_override():
    A = load_algebra("preset:truncated_polynomial:2", "F7")
    assert A.field == GF(7)
    assert isinstance(AlgebraDescription().to_records(), dict)
