import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from weightless.cli import CSV_HEADER, main, parse_qs
from weightless.errors import OddPrimePowerRequired

EXPERIMENTS = Path(__file__).resolve().parents[1] / "experiments"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_parse_qs():
    assert parse_qs("3, 5,9") == [3, 5, 9]
    for bad in ("4", "2", "6", "x", ""):
        with pytest.raises(OddPrimePowerRequired):
            parse_qs(bad)


def test_verify_lie_q3(capsys):
    code, out = run(capsys, "verify", "--q", "3", "--mode", "lie")
    report = json.loads(out.out)
    assert len(report["conjecture_reports"]) == 4
    assert all(r["containment_holds"] for r in report["conjecture_reports"])
    # exit status follows the lie-mode equality verdicts
    assert code == (1 if report["hard_failures"] else 0)
    assert len(report["determinism_hash"]) == 64


def test_verify_two_fields(capsys):
    code, out = run(capsys, "verify", "--q", "3,5", "--mode", "both", "--fourier-check", "3")
    report = json.loads(out.out)
    assert [f["q"] for f in report["fields"]] == [3, 5]
    assert {r["mode"] for r in report["conjecture_reports"]} == {"lie", "group"}
    assert [c["q"] for c in report["fourier_cross_checks"]] == [3]


def test_group_mode_never_fails(capsys):
    code, out = run(capsys, "verify", "--q", "3", "--mode", "group")
    report = json.loads(out.out)
    assert code == 0 and report["hard_failures"] == []


@pytest.mark.parametrize("q", ["4", "2"])
def test_verify_rejects_bad_q(capsys, q):
    code, out = run(capsys, "verify", "--q", q)
    assert code == 2 and "OddPrimePowerRequired" in out.err


def test_lemma_chi(capsys):
    code, out = run(capsys, "lemma-chi", "--q", "3")
    recs = json.loads(out.out)["lemma_chi"][0]["records"]
    assert code == 0
    assert [r["status"] for r in recs] == ["not covered by Lemma chi", "checked"]
    code, out = run(capsys, "lemma-chi", "--q", "7")
    recs = json.loads(out.out)["lemma_chi"][0]["records"]
    assert sum(r["status"] == "checked" for r in recs) == 5
    assert code == 0
    code, _ = run(capsys, "lemma-chi", "--q", "2")
    assert code == 2


def test_assertion_q3(capsys):
    code, out = run(capsys, "assertion", "--q", "3")
    block = json.loads(out.out)["assertion"][0]
    assert code == 0 and len(block["classes"]) == 5
    code, out = run(capsys, "assertion", "--q", "7", "--max-q", "5")
    assert "skipped" in json.loads(out.out)["assertion"][0]


def test_question2(capsys):
    code, out = run(capsys, "question2", str(EXPERIMENTS / "elliptic_curve_q5.json"))
    res = json.loads(out.out)["question2"][0]
    assert code == 0 and len(res["records"]) == 2
    code, out = run(capsys, "question2", str(EXPERIMENTS / "full_source_control.json"), "--n-max", "1")
    assert json.loads(out.out)["question2"][0]["first_surjective_n"] == 1
    code, out = run(capsys, "question2", "/no/such/file.json")
    assert code == 2 and "/no/such/file.json" in out.err


def test_json_roundtrip_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--q", "3", "--out", str(a)])
    main(["verify", "--q", "3", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert json.loads(json.dumps(report)) == report
    timings = json.loads(Path(str(a) + ".timings.json").read_text())
    assert timings and all(isinstance(v, float) for v in timings.values())
    assert "timings" not in report


def test_csv(capsys):
    run(capsys, "verify", "--q", "3", "--mode", "both", "--format", "csv")
    code, out = run(capsys, "verify", "--q", "3", "--mode", "both", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out.out)))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 1 + 4 + 5


def test_text_has_disclosures(capsys):
    _, out = run(capsys, "verify", "--q", "3", "--mode", "lie", "--format", "text")
    assert "Design decisions:" in out.out
    assert "Characteristic 2 is excluded" in out.out
    _, out = run(capsys, "question2", str(EXPERIMENTS / "elliptic_curve_q5.json"), "--format", "text")
    assert "unchecked hypotheses" in out.out


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out.out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "weightless", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip()
