import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from bargmann.cli import main
from bargmann.counterexamples import prop_d4_w3, prop_qutrit_w2
from bargmann.states import StateFamily, family_to_dict, random_density, save_family


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def files(tmp_path):
    p1, p3 = prop_qutrit_w2(), prop_d4_w3()
    paths = {}
    for name, fam in [
        ("p1c", p1.commuting), ("p1q", p1.coherent), ("p3c", p3.commuting), ("p3q", p3.coherent),
        ("single", StateFamily([random_density(3, 0)])),
    ]:
        paths[name] = tmp_path / f"{name}.json"
        save_family(fam, paths[name])
    return paths


def test_certify_examples(capsys, files):
    rep = run_json(capsys, "certify", files["p1c"])
    assert rep["verdict"] == "incoherent" and rep["gap"]["total_gap"] == 0
    assert rep["threshold"] == 1e-18
    rep = run_json(capsys, "certify", files["p3q"])
    assert rep["verdict"] == "coherent"
    assert rep["pairs"][0]["gamma"] == pytest.approx(1 / 32, abs=1e-12)
    assert rep["gap"]["witness_pair"] == [1, 2]
    rep = run_json(capsys, "certify", files["single"])
    assert rep["verdict"] == "incoherent" and rep["pairs"] == []


def test_certify_exit_codes(capsys, files, tmp_path):
    assert run(capsys, "certify", files["p3q"], "--fail-on-coherent")[0] == 3
    assert run(capsys, "certify", files["p3c"], "--fail-on-coherent")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "certify", bad)[0] == 1
    doc = family_to_dict(StateFamily([np.eye(2) / 2]))
    doc["states"][0]["matrix"][1][1] = [-0.5, 0]
    (tmp_path / "inv.json").write_text(json.dumps(doc))
    code, _, err = run(capsys, "certify", tmp_path / "inv.json")
    assert code == 2 and "unit-trace" in err
    assert run(capsys, "certify", files["p1c"], "--method", "nope")[0] == 1


def test_certify_methods(capsys, files):
    rep = run_json(capsys, "certify", files["p1q"], "--method", "both")
    assert rep["gap"]["incoherent"] == rep["oracle"]["incoherent"] is False
    assert rep["warnings"] == []
    rep = run_json(capsys, "certify", files["p1q"], "--method", "both", "--threshold", "1")
    assert rep["warnings"] == ["gap and commutator-oracle verdicts disagree"]
    rep = run_json(capsys, "certify", files["p1q"], "--method", "oracle")
    assert "gap" not in rep and rep["verdict"] == "coherent"


def test_certify_csv(capsys, files):
    code, out, err = run(capsys, "certify", files["p3q"], "--csv", "--method", "both")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["i", "j", "gamma", "commutator_hs"]
    assert float(rows[1][2]) == pytest.approx(1 / 32, abs=1e-12)
    assert "verdict: coherent" in err


def test_invariants(capsys, files):
    expected = [1 / 2, 1 / 2, 1 / 4, 1 / 4, 1 / 4, 1 / 8, 1 / 8]
    for f in ("p3c", "p3q"):
        rep = run_json(capsys, "invariants", files[f], "--scenario", "w3")
        assert [v["word"] for v in rep["values"]] == ["11", "22", "12", "111", "222", "112", "122"]
        np.testing.assert_allclose([v["re"] for v in rep["values"]], expected, atol=1e-12)
    rep = run_json(capsys, "invariants", files["p3q"], "--words", "1212")
    assert rep["values"][0]["re"] == pytest.approx(1 / 32, abs=1e-12)
    rows = [run_json(capsys, "invariants", files[f], "--scenario", "w2")["values"] for f in ("p1c", "p1q")]
    assert rows[0] == rows[1]
    rep = run_json(capsys, "invariants", files["p3q"], "--words", "2,1,1,2", "21")
    assert [v["word"] for v in rep["values"]] == ["1122", "12"]


def test_invariants_errors(capsys, files):
    assert run(capsys, "invariants", files["p1c"], "--words", "123")[0] == 1
    assert run(capsys, "invariants", files["p1c"], "--words", "1x")[0] == 1
    assert run(capsys, "invariants", files["single"], "--scenario", "w4n")[0] == 1


def test_qutrit_test(capsys, files):
    rep = run_json(capsys, "qutrit-test", "--tuple", "0.5,0.5,0.25,0.25,0.25,0.125,0.125")
    assert rep["compatible"] and rep["assignment"] is not None
    rep = run_json(capsys, "qutrit-test", "--tuple", f"0.5,0.5,0.25,0.25,{19/64},0.125,{3/32}")
    assert not rep["compatible"] and rep["assignment"] is None
    assert run_json(capsys, "qutrit-test", "--tuple", "1,1,1,1,1,1,1")["compatible"]
    assert run_json(capsys, "qutrit-test", files["p1c"])["compatible"]
    assert not run_json(capsys, "qutrit-test", files["p1q"])["compatible"]
    code, _, err = run(capsys, "qutrit-test", "--tuple", "0.3,0.5,0.25,0.1,0.25,0.125,0.125")
    assert code == 2 and "residual" in err
    assert run(capsys, "qutrit-test", files["p3c"])[0] == 1
    assert run(capsys, "qutrit-test", "--tuple", "1,2,3")[0] == 1


@pytest.mark.parametrize(
    "t, region", [("0.5,0.5,0.5", "BoundaryC"), ("1,0.625,0.75", "BoundaryC"), ("1,1,0.75", "InteriorI")]
)
def test_qubit_test(capsys, t, region):
    assert run_json(capsys, "qubit-test", "--tuple", t)["region"] == region


def test_counterexample_prop_d4_padded(capsys, tmp_path):
    rep = run_json(capsys, "counterexample", "--which", "prop-d4-w3", "--pad-to", 6, "-o", tmp_path)
    assert rep["dimension"] == 6 and rep["max_abs_difference"] <= 1e-12
    assert rep["families"]["commuting"]["verdict"] == "incoherent"
    assert rep["families"]["coherent"]["verdict"] == "coherent"
    assert rep["separates"]
    assert json.loads((tmp_path / "prop-d4-w3-report.json").read_text()) == rep


def test_counterexample_appendix(capsys, tmp_path):
    rep = run_json(capsys, "counterexample", "--which", "appendix-qutrit", "--n", 4, "-o", tmp_path)
    assert rep["n_states"] == 4 and len(rep["scenario"]) == 10
    assert rep["max_abs_difference"] <= 1e-12 and rep["separates"]
    rep = run_json(capsys, "counterexample", "--which", "appendix-d4", "--n", 2, "-o", tmp_path)
    assert rep["max_abs_difference"] <= 1e-12 and rep["separates"]
    rep = run_json(
        capsys, "counterexample", "--which", "appendix-d4", "--r-vectors", "1,0;0,1;1,1",
        "--epsilon", "0.05", "-o", tmp_path,
    )
    assert rep["n_states"] == 3 and rep["epsilon"] == 0.05


def test_counterexample_warnings_and_rejections(capsys, tmp_path):
    code, out, err = run(capsys, "counterexample", "--which", "appendix-qutrit",
                         "--r-vectors", "1,0;2,0", "-o", tmp_path)
    assert code == 0 and "collinear" in err
    rep = json.loads(out)
    assert rep["warnings"] and not rep["separates"]
    assert run(capsys, "counterexample", "--which", "appendix-qutrit", "--epsilon", "5", "-o", tmp_path)[0] == 1


def test_counterexample_roundtrip_through_certify(capsys, tmp_path):
    rep = run_json(capsys, "counterexample", "--which", "prop-qutrit-w2", "-o", tmp_path)
    for role in ("commuting", "coherent"):
        back = run_json(capsys, "certify", rep["families"][role]["file"])
        assert back["verdict"] == rep["families"][role]["verdict"]
        assert back["gap"]["total_gap"] == rep["families"][role]["total_gap"]


def _sample(capsys, *argv):
    code, out, _ = run(capsys, "sample", *argv)
    assert code == 0
    return out


def test_sample_qubit_commuting_on_boundary(capsys):
    rows = list(csv.DictReader(io.StringIO(_sample(capsys, "--dim", 2, "--count", 50, "--commuting"))))
    assert len(rows) == 50
    for r in rows:
        x, y, z = float(r["w11"]), float(r["w22"]), float(r["w12"])
        assert abs((2 * z - 1) ** 2 - (2 * x - 1) * (2 * y - 1)) <= 1e-8
        assert r["oracle_incoherent"] == "true"


def test_sample_is_deterministic(capsys, tmp_path):
    a = _sample(capsys, "--dim", 3, "--n", 3, "--count", 20, "--seed", 11)
    b = _sample(capsys, "--dim", 3, "--n", 3, "--count", 20, "--seed", 11)
    assert a == b
    assert a != _sample(capsys, "--dim", 3, "--n", 3, "--count", 20, "--seed", 12)
    run(capsys, "sample", "--dim", 3, "--n", 3, "--count", 20, "--seed", 11, "--csv", tmp_path / "s.csv")
    assert (tmp_path / "s.csv").read_text() == a


def test_sample_d4_commuting_gaps(capsys):
    rows = list(csv.DictReader(io.StringIO(_sample(capsys, "--dim", 4, "--count", 200, "--commuting"))))
    assert all(float(r["gamma_1_2"]) <= 1e-18 for r in rows)


def test_sample_rejects_small_dims(capsys):
    assert run(capsys, "sample", "--dim", 1)[0] == 1


def test_module_entry_point(files):
    res = subprocess.run(
        [sys.executable, "-m", "bargmann", "certify", str(files["p3q"]), "--fail-on-coherent"],
        capture_output=True, text=True,
    )
    assert res.returncode == 3
    assert json.loads(res.stdout)["verdict"] == "coherent"
