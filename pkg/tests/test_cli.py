import json
import subprocess
import sys

import pytest

from contclosure import __version__
from contclosure.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def verify(capsys, tmp_path, payload, name="cert.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return run(capsys, "verify", "--certificate", str(path))


def test_closure_text_and_json(capsys):
    code, out, _ = run(capsys, "closure", "--ideal", "z^3,w^3")
    assert code == 0 and out.split() == ["z^3", "z^2*w^2", "w^3"]
    code, payload = run_json(capsys, "closure", "--ideal", "z^2,w^5")
    assert payload["generators"] == [[2, 0], [1, 3], [0, 5]]
    assert payload["version"] == __version__


@pytest.mark.parametrize("ideal, cand, kind, code, ctype", [
    ("z^3,w^3", "z^2*w^2", "cont", 0, "InteriorWitness"),
    ("z^3,w^3", "z^2*w^2", "ax", 0, "InteriorWitness"),
    ("z^3,w^3", "z*w", "cont", 1, "OutsideHull"),
    ("z^2,w^2", "z*w", "integral", 0, "InteriorWitness"),
    ("z^2,w^2", "z*w", "axes", 1, "BoundaryExclusion"),
    ("z^2,w^2", "z^3*w", "cont", 0, "AlreadyInIdeal"),
    ("z^2 + z*w, z*w + w^2", "z^2 - w^2", "axes", 0, "SpanCoefficients"),
    ("z^2, w^2", "z*w + z^2", "axes", 1, "EqualDegreeExclusion"),
    ("z^2, w^3", "z + w^2", "cont", 2, "NoCertificate"),
])
def test_member_verdicts_replay(capsys, tmp_path, ideal, cand, kind, code, ctype):
    got, payload = run_json(capsys, "member", "--ideal", ideal, "--candidate", cand, "--kind", kind)
    assert got == code
    assert payload["certificate"]["type"] == ctype
    vcode, out, _ = verify(capsys, tmp_path, payload)
    assert vcode == 0, out
    assert out.strip().endswith("replay passed")


def test_tampered_span_coefficient_fails_replay(capsys, tmp_path):
    _, payload = run_json(capsys, "member", "--ideal", "z^2 + z*w, z*w + w^2", "--candidate", "z^2 - w^2")
    assert payload["certificate"]["coefficients"] == ["1", "-1"]
    payload["certificate"]["coefficients"][0] = "5"
    code, out, _ = verify(capsys, tmp_path, payload)
    assert code == 1
    assert "replay failed at span-check" in out


def test_tampered_closure_fails_replay(capsys, tmp_path):
    _, payload = run_json(capsys, "closure", "--ideal", "z^3,w^3")
    assert verify(capsys, tmp_path, payload)[0] == 0
    payload["generators"] = [[3, 0], [0, 3]]
    code, out, _ = verify(capsys, tmp_path, payload)
    assert code == 1 and "complete" in out


def test_represent(capsys, tmp_path):
    code, payload = run_json(capsys, "represent", "--ideal", "z^3,w^3", "--candidate", "z^2*w^2", "--n", "3")
    assert code == 0
    assert payload["verdict"]["result"] == "ContMember"
    assert payload["certificate"]["theta"] == 4
    assert verify(capsys, tmp_path, payload)[0] == 0
    code, payload = run_json(capsys, "represent", "--ideal", "z^3,z^2*w,w^3", "--candidate", "z*w^2", "--n", "4")
    assert code == 2 and payload["verdict"]["result"] == "NoConclusion"
    assert verify(capsys, tmp_path, payload)[0] == 0
    code, _, _ = run(capsys, "represent", "--ideal", "z^2", "--candidate", "z", "--n", "1", "--theta", "2")
    assert code == 1


def test_witness_commands(capsys, tmp_path):
    code, payload = run_json(capsys, "witness", "--ideal", "z^3,w^3", "--candidate", "z^2*w^2",
                             "--construction", "homogeneous")
    assert code == 0 and payload["report"]["max_residual"] < 1e-9
    csv = tmp_path / "psi.csv"
    code, payload = run_json(capsys, "witness", "--ideal", "z^3,w^3", "--candidate", "z^2*w^2",
                             "--construction", "psi", "--csv", str(csv))
    assert code == 0 and payload["report"]["max_residual"] < 1e-10
    assert len(csv.read_text().splitlines()) == payload["report"]["sample_count"] + 1
    code, out, _ = run(capsys, "witness", "--ideal", "z,w", "--candidate", "z", "--construction", "phi-probe")
    assert code == 0 and "phi_1: NoLimit" in out


def test_witness_output_is_reproducible(capsys):
    argv = ["witness", "--ideal", "z^3,w^3", "--candidate", "z^2*w^2", "--construction", "psi",
            "--samples", "300", "--seed", "11", "--json"]
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


@pytest.mark.parametrize("argv, code", [
    (["member", "--ideal", "z^2,z*w", "--candidate", "z*w^3"], 67),
    (["closure", "--ideal", "z^3,,w^3"], 65),
    (["closure", "--ideal", "z^3 + w^3, w^4"], 66),
    (["member", "--ideal", "z^3"], 64),
    (["frobnicate"], 64),
    (["witness", "--ideal", "z^2,w^2", "--candidate", "z*w", "--construction", "homogeneous"], 69),
    (["witness", "--ideal", "z^3,w^3", "--candidate", "z^2*w", "--construction", "psi"], 69),
    (["member", "--ideal", "z^2,w^2", "--candidate", "z*w", "--kind", "tight"], 69),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_malformed_certificates(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "--certificate", str(bad))[0] == 68
    assert verify(capsys, tmp_path, {"command": "member"})[0] == 68
    assert verify(capsys, tmp_path, [1, 2])[0] == 68
    _, payload = run_json(capsys, "member", "--ideal", "z^3,w^3", "--candidate", "z*w")
    payload["certificate"]["type"] = "Magic"
    assert verify(capsys, tmp_path, payload)[0] == 68


def test_explicit_variable_order(capsys):
    code, payload = run_json(capsys, "member", "--ideal", "w^5,z^2", "--candidate", "z*w^3", "--vars", "z,w")
    assert code == 0 and payload["input"]["candidate_exponent"] == [1, 3]
    assert payload["certificate"]["power_witness"] == {"n": 10, "theta": 11, "alpha": [5, 6]}


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "contclosure", "member", "--ideal", "z^2,w^2",
                          "--candidate", "z*w", "--kind", "integral"],
                         capture_output=True, text=True, cwd=tmp_path)
    assert res.returncode == 0
    assert res.stdout.startswith("Member (integral)")
