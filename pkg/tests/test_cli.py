import json
import shutil
import subprocess
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from foliage.cli import main

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
PROB = "2305843009213693951,2"


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("foliage").joinpath("schemas/report.schema.json").read_text())


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--json", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, out


def outcomes(report):
    return {a["name"]: a["outcome"] for a in report["assertions"]}


def test_verify_counts(tmp_path, schema):
    code, rep, _ = run(tmp_path, "verify", "counts")
    jsonschema.validate(rep, schema)
    assert code == 0 and rep["exit_code"] == 0 and rep["seed"] == 0
    det = {a["name"]: a["detail"] for a in rep["assertions"]}
    assert det["counts/p2-d2"]["count"] == 7
    assert det["counts/bezout-nu2"]["witnessed"] == 8


def test_verify_all_exact_and_probabilistic_agree(tmp_path, schema):
    code_e, ex, _ = run(tmp_path, "verify", "all", "--exact")
    code_p, pr, _ = run(tmp_path, "verify", "all", "--prob", PROB)
    for r in (ex, pr):
        jsonschema.validate(r, schema)
    assert code_e == code_p == 0
    assert outcomes(ex) == outcomes(pr)
    assert pr["mode"] == {"kind": "probabilistic", "prime": PROB.split(",")[0], "trials": 2}
    modes = {a["mode"] for a in pr["assertions"] if a["name"].startswith("identities/")}
    assert "probabilistic" in modes


def test_reports_are_byte_identical(tmp_path):
    _, _, a = run(tmp_path, "verify", "identities", "--prob", PROB, "--seed", "42")
    first = a.read_bytes()
    _, _, b = run(tmp_path, "verify", "identities", "--prob", PROB, "--seed", "42")
    assert b.read_bytes() == first


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("FOLIAGE_SEED", "17")
    _, rep, _ = run(tmp_path, "verify", "degrees")
    assert rep["seed"] == 17
    _, rep, _ = run(tmp_path, "verify", "degrees", "--seed", "3")
    assert rep["seed"] == 3
    monkeypatch.setenv("FOLIAGE_SEED", "banana")
    assert main(["verify", "degrees"]) == 2


def test_timing_is_opt_in(tmp_path):
    _, rep, _ = run(tmp_path, "verify", "degrees")
    assert all("seconds" not in a for a in rep["assertions"])
    _, rep, _ = run(tmp_path, "verify", "degrees", "--timing")
    assert all(a["seconds"] >= 0 for a in rep["assertions"])


def test_pullback_command(tmp_path, schema):
    eta = tmp_path / "eta.json"
    code, rep, _ = run(tmp_path, "pullback", str(DATA / "quadric_map.json"), str(DATA / "foliation_d2.json"),
                       "-o", str(eta))
    jsonschema.validate(rep, schema)
    assert code == 0
    assert rep["metadata"]["degree"] == rep["metadata"]["predicted_degree"] == 6
    assert rep["metadata"]["prediction_matches"] and rep["metadata"]["removed_degree"] == 0
    assert set(outcomes(rep).values()) == {"pass"}
    assert json.loads(eta.read_text())["format"] == 1


def test_pullback_identity_map(tmp_path):
    code, rep, _ = run(tmp_path, "pullback", str(DATA / "identity_map.json"), str(DATA / "foliation_d3.json"))
    assert code == 0 and rep["metadata"]["degree"] == 3


def test_pullback_common_factor_is_input_error(tmp_path, capsys):
    code, rep, _ = run(tmp_path, "pullback", str(DATA / "common_factor_map.json"), str(DATA / "foliation_d2.json"))
    assert code == 2 and rep is None
    assert "common factor" in capsys.readouterr().err


def test_analyze_conic_and_kupka(tmp_path, schema):
    code, rep, _ = run(tmp_path, "analyze", str(DATA / "omega_d2.json"), "--point", "0,0,0", "--d", "2",
                       "--expect", "singular=true,conic=true,nilpotent=true")
    jsonschema.validate(rep, schema)
    assert code == 0
    pr = rep["point_report"]
    assert pr["conic_ngk"]["d"] == 2 and pr["conic_ngk"]["mode"] == "exact"
    assert pr["rot_linear_part"] == [["0"] * 3] * 3

    eta = tmp_path / "eta.json"
    main(["pullback", str(DATA / "quadric_map.json"), str(DATA / "foliation_d2.json"), "-o", str(eta),
          "--json", str(tmp_path / "x.json")])
    code, rep, _ = run(tmp_path, "analyze", str(eta), "--point", "1:1:1:2", "--expect", "kupka=true")
    assert code == 0 and rep["point_report"]["kupka"] is True


def test_analyze_regular_point_and_failed_expectation(tmp_path):
    code, rep, _ = run(tmp_path, "analyze", str(DATA / "omega_d2.json"), "--point", "1:2:3", "--d", "2")
    pr = rep["point_report"]
    assert code == 0 and not pr["singular"] and not pr["kupka"] and pr["conic_ngk"] is None
    code, rep, _ = run(tmp_path, "analyze", str(DATA / "omega_d2.json"), "--point", "1:2:3",
                       "--expect", "singular=true")
    assert code == 1 and rep["assertions"][0]["outcome"] == "fail"


def test_analyze_malformed_point(tmp_path):
    assert main(["analyze", str(DATA / "omega_d2.json"), "--point", "1:x:3"]) == 2
    assert main(["analyze", str(DATA / "omega_d2.json"), "--point", "1:2"]) == 2


def test_hypotheses_command(tmp_path, schema):
    code, rep, _ = run(tmp_path, "hypotheses", str(DATA / "worked_pair.json"))
    jsonschema.validate(rep, schema)
    assert code == 3
    got = outcomes(rep)
    assert got["04-Pt2"] == "inconclusive"
    assert [k for k, v in got.items() if v != "pass"] == ["04-Pt2"]
    assert [a["name"] for a in rep["assertions"]] == sorted(got)


def test_parse_command(tmp_path, capsys):
    code, rep, _ = run(tmp_path, "parse", "form", "(x0)*dx1^dx0")
    assert code == 0 and rep["value"]["text"] == "-(x0)*dx0^dx1"
    assert main(["parse", "poly", "x0^"]) == 2
    err = capsys.readouterr().err
    assert "line 1, column 4" in err


def test_input_errors(tmp_path):
    assert main(["verify", "nope"]) == 2
    assert main(["verify", "all", "--prob", "15,2"]) == 2
    assert main(["verify", "all", "--prob", "banana"]) == 2
    assert main(["pullback", str(tmp_path / "missing.json"), str(DATA / "foliation_d2.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["hypotheses", str(bad)]) == 2
    bad.write_text('{"format": 2}')
    assert main(["hypotheses", str(bad)]) == 2


def test_stdout_report_when_no_json(capsys):
    assert main(["verify", "degrees"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["command"] == "verify" and rep["format"] == 1


@pytest.mark.skipif(shutil.which("foliage") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["foliage", "verify", "counts"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["summary"]["fail"] == 0
