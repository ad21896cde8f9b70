import json
import subprocess
import sys

import pytest

from tgscodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_p3_reports_witness(capsys):
    code, out, _ = run(capsys, "check", "fixtures/P3.json")
    assert code == 0
    assert "[a,a,1] = 1 but [a,1,1] = a" in out
    assert "A2" in out and "FAIL" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "M3", "--format", "json")
    doc = json.loads(out)
    assert doc["valid"] and doc["status"]["A5"] == "pass"


def test_code_params(capsys):
    code, out, _ = run(capsys, "code", "params", "--spec", "fixtures/mid-power.json", "--format", "json")
    doc = json.loads(out)
    assert (doc["n"], doc["|C|"], doc["d"], doc["t"], doc["|T/I|"]) == (3, 8, 1, 0, 2)
    assert doc["k"].startswith("1.892789")


def test_code_params_csv(capsys):
    _, out, _ = run(capsys, "code", "params", "--spec", "mid-power", "--format", "csv")
    assert out.splitlines() == ["construction,n,|T|,|I|,|C|,k,d,t", "ideal-power,3,3,2,8,1.89278926071,1,0"]


def test_decode_text(capsys):
    _, out, _ = run(capsys, "decode", "--code", "mid-power", "--word", "a,0,1")
    assert "-> (a,0,0)" in out
    assert "status=corrected" in out and "ambiguous-leader" in out


def test_simulate_csv(capsys):
    _, out, _ = run(capsys, "simulate", "--code", "mid-power", "--wmax", "1", "--mode", "exhaustive", "--format", "csv")
    assert out.splitlines() == ["decoder,w_max,mode,trials,successes,rate,seed",
                                "syndrome,1,exhaustive,56,24,0.428571428571,"]


def test_simulate_sampled_without_seed(capsys):
    code, _, err = run(capsys, "simulate", "--code", "mid-power", "--mode", "sampled")
    assert code != 0
    assert err.startswith("error: usage:")


def test_ideals_and_lattice(capsys):
    _, out, _ = run(capsys, "ideals", "M3", "--format", "json")
    assert [r["ideal"] for r in json.loads(out)["ideals"]] == [["0"], ["0", "a"], ["0", "a", "1"]]
    _, out, _ = run(capsys, "lattice", "M3xM3")
    assert "9 ideals, distributive" in out


def test_literal_flag(capsys):
    _, strict, _ = run(capsys, "ideals", "M3xM3", "--format", "json")
    _, loose, _ = run(capsys, "ideals", "M3xM3", "--format", "json", "--literal-ideals")
    assert len(json.loads(loose)["ideals"]) > len(json.loads(strict)["ideals"])


def test_force_gate(capsys):
    code, _, err = run(capsys, "ideals", "P3")
    assert code != 0 and err.startswith("error: invalid-structure:")
    code, out, _ = run(capsys, "ideals", "P3", "--force")
    assert code == 0 and "2 k-ideals" in out


def test_quotient_export(capsys, tmp_path):
    target = tmp_path / "q.json"
    code, out, _ = run(capsys, "quotient", "M3", "--ideal", "0,a", "--export", str(target))
    assert "2 classes" in out
    code, out, _ = run(capsys, "check", str(target))
    assert code == 0 and "valid" in out


def test_bounds_flag(capsys):
    code, _, err = run(capsys, "code", "params", "--spec", "mid-power", "--bounds", "max_words=4")
    assert code != 0 and err.startswith("error: bound-exceeded:")
    assert len(err.strip().splitlines()) == 1


def test_env_bounds(capsys, monkeypatch):
    monkeypatch.setenv("TGS_MAX_WORDS", "4")
    code, _, err = run(capsys, "code", "params", "--spec", "mid-power")
    assert code != 0 and "bound-exceeded" in err


def test_malformed_document(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"elements": ["0"]}')
    code, _, err = run(capsys, "check", str(p))
    assert code != 0 and err.startswith("error: malformed-input:")


def test_unknown_flag_is_single_line(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "M3", "--nope"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert err.startswith("error: usage:") and err.count("\n") == 1


def test_verify_claims_exit_zero_with_findings(capsys, tmp_path):
    report = tmp_path / "report.json"
    ces = tmp_path / "ce"
    code, out, _ = run(capsys, "verify-claims", "--out", str(report), "--counterexamples", str(ces))
    assert code == 0
    assert "FALSE" in out
    doc = json.loads(report.read_text())
    assert doc["matrix"]["interaction-join"]["mid-power"] == "falsified"
    assert (ces / "interaction-join__mid-power.json").is_file()


def test_verify_claims_on_directory(capsys, tmp_path):
    run(capsys, "fixtures", "export", str(tmp_path))
    (tmp_path / "broken.json").write_text("{")
    code, out, _ = run(capsys, "verify-claims", "--fixtures", str(tmp_path))
    assert code == 0
    assert "load failure: broken" in out


def test_fixtures_commands(capsys, tmp_path):
    _, out, _ = run(capsys, "fixtures", "list")
    assert out.splitlines()[0].startswith("M3")
    code, out, _ = run(capsys, "fixtures", "verify")
    assert code == 0 and "mid-power.json: ok" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tgscodes", "check", "M3", "--format", "csv"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("axiom,status,violations")
