import json
import math
import subprocess
import sys

import pytest

from finite_qm.cli import main, parse_angle


def run(capsys, *argv):
    code = main(["--no-meta", *argv])
    out = capsys.readouterr().out
    return code, out


def test_free_all_methods(capsys):
    code, out = run(capsys, "free", "--a", "2", "--x0", "0", "--x1", "1", "--N", "4", "--method", "all")
    d = json.loads(out)
    assert code == 0 and d["schema_version"] == 1
    assert d["outputs"]["value"]["re"] == pytest.approx(0.5) and d["outputs"]["value"]["im"] == pytest.approx(0.5)
    assert d["deviations"]["max_cross_method"] < 1e-12
    assert set(d["outputs"]["methods"]) == {"full_sum", "reduced_sum", "closed_form", "matrix"}


@pytest.mark.parametrize("argv,msg", [
    (["free", "--a", "3"], "a must be even"),
    (["free", "--a", "2", "--x0", "0", "--x1", "0.5"], "x1 - x0 must be an integer"),
    (["free", "--a", "4", "--x1", "1", "--N", "6"], "minimal admissible N is 4"),
    (["gauss", "--c", "1", "--d", "1", "--g", "2", "--check"], "even"),
    (["gauss", "--c", "1", "--d", "0", "--g", "0"], "nonzero"),
    (["weyl", "--t", "3/10", "--N", "4"], "nearest admissible"),
])
def test_validation_exit_code(capsys, argv, msg):
    code, out = run(capsys, *argv)
    d = json.loads(out)
    assert code == 2 and d["error"]["kind"] == "validation" and msg in d["error"]["message"]


def test_free_singular_time(capsys):
    code, out = run(capsys, "free", "--a", "0")
    assert code == 3


def test_rational_snapping_echoed(capsys):
    code, out = run(capsys, "free", "--a", "4", "--x0", "0.5", "--x1", "2.5")
    d = json.loads(out)
    assert d["inputs"]["x0"] == {"raw": "0.5", "snapped": "1/2"}
    assert d["inputs"]["N"] == 8  # minimal admissible


def test_free_physical_mode(capsys):
    code, out = run(capsys, "free", "--particle", "electron", "--time", "1", "--unit", "mm", "--x1", "3")
    d = json.loads(out)
    assert code == 0
    assert d["inputs"]["a"]["snapped"] == "728"
    assert d["warnings"] and "snapped" in d["warnings"][0]
    assert d["outputs"]["modulus"] == pytest.approx(728**-0.5)


def test_oscillator_mehler_only(capsys):
    code, out = run(capsys, "oscillator", "--m", "1", "--omega", "1", "--t", "pi/2")
    d = json.loads(out)
    assert code == 0
    assert d["outputs"]["modulus"] == pytest.approx(math.sqrt(1 / (2 * math.pi)), rel=1e-12)
    assert d["outputs"]["phase"] == pytest.approx(-math.pi / 4, abs=1e-12)
    assert d["warnings"]


def test_oscillator_singular(capsys):
    code, out = run(capsys, "oscillator", "--m", "1", "--omega", "1", "--t", "pi")
    d = json.loads(out)
    assert code == 3 and "sin" in d["error"]["message"]


def test_oscillator_all_methods(capsys):
    code, out = run(capsys, "oscillator", "--a", "4", "--omega-t", "pi/6", "--x0", "1/2", "--x1", "7/2", "--N", "32")
    d = json.loads(out)
    assert code == 0
    assert d["deviations"]["max_cross_method"] < 1e-8
    assert max(d["deviations"]["vs_reference"].values()) < 1e-10


def test_gauss_check(capsys):
    code, out = run(capsys, "gauss", "--c", "-1", "--d", "0", "--g", "2", "--check")
    d = json.loads(out)
    assert d["outputs"]["value"] == {"re": 1.0, "im": -1.0}
    assert d["deviations"]["direct_vs_reciprocity"] < 1e-12


def test_space_size(capsys):
    code, out = run(capsys, "space-size", "--particle", "electron", "--time", "3600", "--unit", "cm")
    assert json.loads(out)["outputs"]["length_m"] == pytest.approx(262, rel=0.01)


def test_weyl(capsys):
    code, out = run(capsys, "weyl", "--a", "1", "--N", "64", "--t", "1/2", "--s", "0.7")
    d = json.loads(out)
    assert code == 0 and d["outputs"]["violation_fraction"] == 0.5


def test_sweep_json_and_csv(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"quantity": "free_propagator", "params": {"a": 2, "x1": 1},
                                "chain": [2, 8, 64], "tolerance": 1e-12}))
    code, out = run(capsys, "sweep", str(spec), "--csv", str(tmp_path / "out.csv"))
    assert code == 0 and json.loads(out)["outputs"]["stabilized_at"] == 2
    assert (tmp_path / "out.csv").read_text().startswith("N,value_re,value_im,deviation\n")
    code, out = run(capsys, "sweep", str(spec), "--csv", "-")
    assert out.splitlines()[0] == "N,value_re,value_im,deviation"


def test_sweep_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "sweep", str(bad))[0] == 2


def test_verify(capsys):
    code, out = run(capsys, "verify")
    d = json.loads(out)
    assert code == 0 and d["outputs"]["passed"]
    assert len(d["outputs"]["families"]) >= 6


def test_deterministic_output():
    cmd = [sys.executable, "-m", "finite_qm", "--no-meta", "oscillator", "--a", "2", "--omega-t", "pi/4",
           "--x1", "1", "--N", "8"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_meta_block_present_by_default(capsys):
    main(["gauss", "--c", "1", "--d", "0", "--g", "3"])
    d = json.loads(capsys.readouterr().out)
    assert list(d)[-1] == "meta" and "timestamp" in d["meta"]


@pytest.mark.parametrize("text,value", [("pi/2", math.pi / 2), ("3pi/4", 3 * math.pi / 4), ("0.5*pi", math.pi / 2),
                                        ("-pi/6", -math.pi / 6), ("1.25", 1.25), ("pi", math.pi)])
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, rel=1e-15)
