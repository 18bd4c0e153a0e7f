"""Verdict assembly, the JSON report, table reproduction, the scan, and the
command-line interface."""

import json

import pytest

from bianchi.errors import InvalidFieldParameter
from bianchi.pipeline import (
    GroupStatus,
    TABLE_IDS,
    classify,
    reproduce_table,
    scan,
    to_json,
)
from bianchi.vinberg import Budget
from bianchi.cli import main


def test_classify_m33(scan_verdicts):
    v = scan_verdicts[33]
    assert v.hat_status == GroupStatus("reflective")
    assert v.bi_status == GroupStatus("not-reflective")
    assert len(v.roots) == 15 and v.cusps == 2
    assert v.run_status == "terminated"


def test_classify_m23(scan_verdicts):
    v = scan_verdicts[23]
    assert v.hat_status == GroupStatus("quasi-reflective", 2)
    assert v.bi_status == GroupStatus("quasi-reflective", 2)
    assert v.h2 == 1


def test_classify_m35(scan_verdicts):
    v = scan_verdicts[35]
    assert v.hat_status == GroupStatus("not-reflective")
    assert v.bi_status == GroupStatus("not-reflective")
    assert v.certificate is not None
    assert type(v.certificate).__name__ == "LoxodromicCertificate"


def test_classify_m3():
    v = classify(3)
    assert v.hat_status == v.bi_status == GroupStatus("reflective")
    assert v.run_status == "fixed" and v.note


def test_classify_rejects_bad_m():
    for bad in (0, -1, 8, 18):
        with pytest.raises(InvalidFieldParameter):
            classify(bad)


def test_h2_equal_implies_equal_statuses(scan_verdicts):
    for m, v in scan_verdicts.items():
        if v.h2 == 1:
            assert v.hat_status == v.bi_status, m


def test_hat_reflective_set(scan_verdicts):
    reflective = {m for m, v in scan_verdicts.items() if v.hat_status.verdict == "reflective"}
    assert reflective == {1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 30, 33, 39}


def test_verdicts_budget_monotone():
    small = classify(33, Budget(max_roots=50))
    assert small.hat_status == GroupStatus("reflective")
    assert len(small.roots) == 15
    tight = classify(26, Budget(max_roots=60))
    wide = classify(26, Budget(max_roots=120))
    if tight.hat_status.verdict != "unknown":
        assert tight.hat_status == wide.hat_status


def test_scan_skips_non_squarefree():
    verdicts, skipped = scan([4, 5, 6, 8, 9])
    assert skipped == [4, 8, 9]
    assert [v.m for v in verdicts] == [5, 6]


def test_json_report(scan_verdicts):
    payload = to_json(scan_verdicts[33])
    assert payload["schema"] == 1
    assert payload["m"] == "33" and payload["branch"] == "A"
    assert len(payload["roots"]) == 15
    root0 = payload["roots"][0]
    assert root0["coords"] == ["0", "0", "-1", "0"]
    assert root0["norm"] == "2"
    assert root0["weight_sq"] == {"num": "0", "den": "1"}
    assert isinstance(root0["in_bi"], bool)
    assert payload["cusps"] == "2"
    assert payload["hat_status"] == {"verdict": "reflective"}
    assert payload["bi_status"] == {"verdict": "not-reflective"}
    cg = payload["class_group"]
    assert cg == {"D": "-132", "h": "4", "factors": ["2", "2"], "h2": "4"}
    kinds = {e["kind"] for e in payload["diagram"]["edges"]}
    assert kinds <= {"angle", "cusp", "divergent"}
    json.dumps(payload)  # must be serializable as-is


def test_json_certificate(scan_verdicts):
    payload = to_json(scan_verdicts[23])
    cert = payload["certificate"]
    assert cert["type"] == "parabolic_rank2"
    assert len(cert["matrices"]) == 2
    assert all(isinstance(x, str) for row in cert["matrices"][0] for x in row)
    payload35 = to_json(scan_verdicts[35])
    assert payload35["certificate"]["type"] == "loxodromic_symmetry"


@pytest.mark.parametrize("which", TABLE_IDS)
def test_reproduce_tables(which):
    text, ok = reproduce_table(which)
    assert ok, text
    assert text.strip().endswith("PASS")


def test_reproduce_table_rejects_unknown():
    with pytest.raises(ValueError):
        reproduce_table("m5_vectors")


# -- CLI ---------------------------------------------------------------------


def test_cli_classify_json_dot(tmp_path, capsys):
    json_path = tmp_path / "m33.json"
    dot_path = tmp_path / "m33.dot"
    rc = main(["classify", "--m", "33", "--json", str(json_path), "--dot", str(dot_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "m=33" in out and "reflective" in out
    payload = json.loads(json_path.read_text())
    assert payload["m"] == "33"
    assert dot_path.read_text().startswith("graph coxeter {")


def test_cli_scan(tmp_path, capsys):
    rc = main(["scan", "--from", "5", "--to", "7", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "m5.json").exists()
    assert (tmp_path / "m7.json").exists()
    assert not (tmp_path / "m8.json").exists()
    out = capsys.readouterr().out
    assert out.count("m=") == 3


def test_cli_scan_list(tmp_path, capsys):
    listing = tmp_path / "fields.txt"
    listing.write_text("5\n# comment\n6\n")
    rc = main(["scan", "--list", str(listing)])
    assert rc == 0
    assert capsys.readouterr().out.count("m=") == 2


def test_cli_tables(capsys):
    rc = main(["tables", "--which", "m17_vectors"])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["tables", "--which", "bogus"])
    assert exc.value.code == 1
    assert main(["scan"]) == 1


def test_cli_classify_weight_cap(capsys):
    rc = main(["classify", "--m", "35", "--max-roots", "10", "--max-weight-sq", "121/22"])
    assert rc == 0
    assert "budget-exhausted" in capsys.readouterr().out
