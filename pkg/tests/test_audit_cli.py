import json
from fractions import Fraction as Fr

import pytest

from dioptuples.audit import (
    AGREE,
    DISAGREE,
    INCONCLUSIVE,
    auto_rset,
    exit_code_for,
    interval_precision,
    run_suite,
    smallest_nonresidue,
    verdict_for,
)
from dioptuples.cli import main
from dioptuples.zp_census import MeasureInterval


def test_smallest_nonresidue_and_auto_rset():
    assert smallest_nonresidue(3) == 2
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3
    assert auto_rset(3) == [1, 2, 3, 6, 9, 18, 27]
    assert auto_rset(7) == [1, 3, 7, 21, 49, 147, 343]


def test_interval_precision():
    assert interval_precision(3, 2) == 8  # 3^16 <= 1e8 < 3^18
    assert interval_precision(5, 2) == 5
    assert interval_precision(7, 2) == 4
    assert interval_precision(11, 2) == 3
    assert interval_precision(13, 2) == 3


def test_verdict_rules():
    box = MeasureInterval(Fr(1, 4), Fr(1, 2))
    assert verdict_for(Fr(1, 3), box) == AGREE
    assert verdict_for(Fr(2, 3), box) == DISAGREE
    assert verdict_for(Fr(1, 3), box, competitors=(Fr(1, 3), Fr(2, 5))) == INCONCLUSIVE
    assert verdict_for(Fr(1, 3), box, competitors=(Fr(1, 3), Fr(2, 3))) == AGREE
    assert verdict_for(Fr(1, 2), Fr(1, 2)) == AGREE
    assert verdict_for(Fr(1, 2), Fr(1, 3)) == DISAGREE


def test_suite_conic_all_agree():
    records = run_suite("conic", pmax=7)
    assert records and all(r.verdict == AGREE for r in records)
    assert exit_code_for(records) == 0


def test_suite_z2():
    records = run_suite("z2", N=8)
    assert all(r.verdict == AGREE for r in records)


def test_suite_pairs_zp_small():
    records = run_suite("pairs-zp", ps=(3,), cap=3**10)
    assert records and all(r.verdict == AGREE for r in records)
    quantities = {r.quantity for r in records}
    assert quantities == {"pair_density_zp", "pair_density_block_series"}


def test_suite_z3_adjudicate_documents_discrepancy():
    records = run_suite("z3-adjudicate")
    assert all(not r.must_agree for r in records)
    assert exit_code_for(records) == 0  # adjudication never gates
    by_key = {(r.quantity, r.params["m"]): r for r in records}
    stated_m2 = by_key[("mtuple_density_z3_stated", 2)]
    consistent_m2 = by_key[("mtuple_density_z3_consistent", 2)]
    assert stated_m2.verdict == DISAGREE
    assert consistent_m2.verdict == AGREE
    assert stated_m2.claimed_value == Fr(91, 162)
    assert consistent_m2.claimed_value == Fr(7, 12)
    # both candidate values ride along in the detail text
    assert "91/162" in stated_m2.detail and "7/12" in stated_m2.detail
    m3 = by_key[("mtuple_density_z3_stated", 3)]
    assert "43/162" in m3.detail and "31/108" in m3.detail
    assert m3.verdict in (DISAGREE, INCONCLUSIVE)


def test_suite_valuation_classes_gating_records_agree():
    records = run_suite("valuation-classes", ps=(3,), N=6)
    gating = [r for r in records if r.must_agree]
    assert gating and all(r.verdict == AGREE for r in gating)
    stated = [r for r in records if not r.must_agree]
    assert stated and all(r.verdict == DISAGREE for r in stated)


def test_suite_triples_fp_partition_and_boundary_gate():
    records = run_suite("triples-fp", pmax=7)
    assert exit_code_for(records) == 0
    for r in records:
        if r.quantity in ("triple_partition", "triple_boundary_count"):
            assert r.verdict == AGREE
    interior = {
        (r.params["p"], r.params["r"]): r
        for r in records
        if r.quantity == "triple_interior_density"
    }
    assert interior[(7, 1)].verdict == AGREE
    assert interior[(5, 1)].verdict == DISAGREE  # stated 1/250 vs census 0


def test_records_are_recomputable():
    # competing candidates travel inside params, so the verdict is a pure
    # function of the record's own fields
    for rec in run_suite("z3-adjudicate"):
        competitors = tuple(
            Fr(*map(int, c.split("/"))) if "/" in c else Fr(int(c))
            for c in rec.params["candidates"].split(",")
        )
        assert rec.verdict == verdict_for(rec.claimed_value, rec.oracle_value, competitors)
    for rec in run_suite("conic", pmax=5):
        assert rec.verdict == verdict_for(rec.claimed_value, rec.oracle_value)


def test_run_suite_unknown():
    with pytest.raises(KeyError):
        run_suite("unknown-suite")


# ---------------------------------------------------------------------------
# CLI


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_measure_examples(capsys):
    code, out, _ = run_cli(capsys, "measure", "pair", "--p", "3", "--r", "1")
    assert code == 0 and out.strip() == "7/12"
    code, out, _ = run_cli(capsys, "measure", "z2-pair")
    assert code == 0 and out.strip() == "1/3"
    code, out, _ = run_cli(capsys, "measure", "z3", "--m", "4")
    assert code == 0 and out.strip() == "28/243"
    code, out, _ = run_cli(capsys, "measure", "boundary-fp", "--p", "5", "--r", "1")
    assert code == 0 and out.strip() == "37"
    code, out, _ = run_cli(capsys, "measure", "pair", "--p", "3", "--r", "1", "--decimal")
    assert code == 0 and out.startswith("7/12 (0.58333")


def test_cli_measure_invalid_params(capsys):
    code, _, err = run_cli(capsys, "measure", "pair", "--p", "4", "--r", "1")
    assert code == 1 and "error" in err
    code, _, err = run_cli(capsys, "measure", "triple-fp", "--p", "5", "--r", "10")
    assert code == 1 and "error" in err


def test_cli_census_fp_json(capsys):
    code, out, _ = run_cli(capsys, "census", "fp", "--p", "5", "--r", "1", "--m", "3")
    assert code == 0
    row = json.loads(out)
    assert row == {
        "boundary": 37, "interior": 0, "m": 3, "offdiag": 8, "q": 5, "r": 1, "total": 45,
    }
    assert list(row) == sorted(row)


def test_cli_census_zp(capsys):
    code, out, _ = run_cli(capsys, "census", "zp", "--p", "2", "--r", "1", "--m", "2", "-N", "8")
    assert code == 0
    row = json.loads(out)
    lo = Fr(*map(int, row["lo"].split("/")))
    hi = Fr(*map(int, row["hi"].split("/")))
    assert lo <= Fr(1, 3) <= hi


def test_cli_census_budget_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "census", "fp", "--p", "101", "--r", "1", "--m", "4", "--budget", "1000",
    )
    assert code == 2 and "budget" in err


def test_cli_audit_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "audit", "no-such-suite")
    assert code == 1 and "unknown suite" in err


def test_cli_audit_json_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "audit", "conic", "--pmax", "5")
    code2, out2, _ = run_cli(capsys, "audit", "conic", "--pmax", "5")
    assert code1 == code2 == 0
    assert out1 == out2
    for line in out1.strip().splitlines():
        row = json.loads(line)
        assert list(row) == sorted(row)
        assert row["verdict"] == "Agree"


def test_cli_audit_csv(capsys):
    code, out, _ = run_cli(capsys, "audit", "z2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("claimed_value,")
    assert len(lines) == 3


def test_cli_audit_pairs_with_explicit_args(capsys):
    code, out, _ = run_cli(capsys, "audit", "pairs-zp", "--p", "3,5", "--rset", "1,2")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert all(r["verdict"] == "Agree" for r in rows)


def test_cli_ec_check(capsys):
    code, out, _ = run_cli(capsys, "ec-check", "--p", "13", "--a", "1", "--b", "3", "--c", "8", "--r", "1")
    assert code == 0
    row = json.loads(out)
    assert row["criterion_equal"] is True
    assert row["coset_identity_ok"] is True
    assert 3 in row["dset_nonboundary"]
    code, _, err = run_cli(capsys, "ec-check", "--p", "13", "--a", "1", "--b", "1", "--c", "8", "--r", "1")
    assert code == 1 and "error" in err


def test_suite_parallel_matches_serial():
    serial = run_suite("pairs-zp", ps=(3, 5), rset=(1, 2, 3))
    parallel = run_suite("pairs-zp", ps=(3, 5), rset=(1, 2, 3), jobs=3)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]
