import json
import subprocess
import sys

import pytest

from metaline.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr() if capsys else ("", "")
    return code, out, err


def test_verify_passes_and_emits_json(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, _, _ = run_cli(
        "verify", "builtin:veronese-2-3", "--samples", "20", "--out", str(out),
        capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "pass"
    assert payload["dims"] == {
        "dimW": 4, "dimU": 1, "dimWprime": 5, "d": 1, "n": 5, "familyDim": 5,
    }
    assert payload["seed"] == 42
    names = [c["name"] for c in payload["checks"]]
    assert "slide-identity" in names and "boundary-cosets" in names


def test_verify_is_byte_identical_across_runs(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run_cli("verify", "builtin:flat-conic", "--samples", "15", "--out", str(a), capsys=capsys)
    run_cli("verify", "builtin:flat-conic", "--samples", "15", "--out", str(b), capsys=capsys)
    assert a.read_bytes() == b.read_bytes()


def test_verify_adversarial_exits_one(tmp_path, capsys):
    out = tmp_path / "adv.json"
    code, _, _ = run_cli(
        "verify", "builtin:nonisotropic-cubic", "--samples", "5", "--out", str(out),
        capsys=capsys,
    )
    assert code == 1
    payload = json.loads(out.read_text())
    assert payload["verdict"] == "fail"
    isotropy = next(c for c in payload["checks"] if c["name"] == "isotropy")
    assert isotropy["failures"] == 1
    assert "frame pair" in isotropy["witness"]


def test_verify_text_format(capsys):
    code, out, _ = run_cli(
        "verify", "builtin:flat-conic", "--samples", "10", "--format", "text",
        capsys=capsys,
    )
    assert code == 0
    assert "verdict: pass" in out
    assert "wall time:" not in out


def test_verify_checks_filter(tmp_path, capsys):
    out = tmp_path / "f.json"
    code, _, _ = run_cli(
        "verify", "builtin:veronese-2-3", "--samples", "10",
        "--checks", "group-law,levi-tensor", "--out", str(out), capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert [c["name"] for c in payload["checks"]] == ["group-law", "levi-tensor"]


def test_unknown_builtin_exits_two(capsys):
    code, _, err = run_cli("verify", "builtin:unknown", capsys=capsys)
    assert code == 2
    assert "unknown builtin" in err


def test_malformed_fixture_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"label": "x", "variables": ["s"], "coordinates": ["s +* 1"]}')
    code, _, err = run_cli("verify", str(bad), capsys=capsys)
    assert code == 2
    assert "malformed" in err


def test_missing_file_exits_two(capsys):
    code, _, err = run_cli("info", "no-such-file.json", capsys=capsys)
    assert code == 2
    assert "cannot read" in err


def test_fixture_file_with_explicit_omega(tmp_path, capsys):
    fixture = tmp_path / "heis.json"
    fixture.write_text(json.dumps({
        "label": "heis-line",
        "variables": ["s"],
        "coordinates": ["1", "s"],
        "omega": {"dimU": 1, "entries": [{"i": 0, "j": 1, "uVector": ["1"]}]},
    }))
    out = tmp_path / "r.json"
    code, _, _ = run_cli(
        "verify", str(fixture), "--samples", "5", "--out", str(out), capsys=capsys
    )
    assert code == 1
    payload = json.loads(out.read_text())
    assert payload["dims"]["dimWprime"] is None
    isotropy = next(c for c in payload["checks"] if c["name"] == "isotropy")
    assert isotropy["failures"] == 1


def test_info_output(capsys):
    code, out, _ = run_cli("info", "builtin:veronese-3-3", capsys=capsys)
    assert code == 0
    assert "dimW:        10" in out
    assert "d:           2" in out
    assert "dimLambda2W: 45" in out
    assert "dimWprime:   35" in out
    assert "familyDim:   21" in out


def test_info_quartic(capsys):
    code, out, _ = run_cli("info", "builtin:veronese-2-4", capsys=capsys)
    assert code == 0
    assert "dimW:        5" in out
    assert "dimLambda2W: 10" in out


def test_build_omega_golden(capsys):
    code, out, _ = run_cli("build-omega", "builtin:veronese-2-3", capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["dimW"] == 4
    assert payload["dimU"] == 1
    assert payload["dimWprime"] == 5
    assert len(payload["wPrimeBasis"]) == 5
    assert len(payload["omegaTable"]) == 6
    # frozen table of the twisted cubic's invariant pairing
    assert payload["omegaTable"] == [["0"], ["0"], ["-1/3"], ["1"], ["0"], ["0"]]


def test_sample_line_output(capsys):
    code, out, _ = run_cli(
        "sample-line", "builtin:veronese-2-3", "--param", "1",
        "--base", "1,0,0,0,0", capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["canonicalDirection"] == ["1", "1", "1", "1"]
    assert payload["parametrization"][0] == "t + 1"
    assert payload["boundaryPoint"]["param"] == ["1"]
    assert len(payload["plueckerVector"]) == 15


def test_sample_line_defaults_are_deterministic(capsys):
    code_a, out_a, _ = run_cli("sample-line", "builtin:flat-conic", capsys=capsys)
    code_b, out_b, _ = run_cli("sample-line", "builtin:flat-conic", capsys=capsys)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_sample_line_rejects_bad_arity(capsys):
    code, _, err = run_cli(
        "sample-line", "builtin:veronese-2-3", "--param", "1,2", capsys=capsys
    )
    assert code == 2
    assert "coordinates" in err or "parameter" in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "metaline.cli", "info", "builtin:flat-conic"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "dimU:        0" in proc.stdout


def test_jobs_flag_is_byte_identical(tmp_path, capsys):
    a = tmp_path / "serial.json"
    b = tmp_path / "parallel.json"
    run_cli("verify", "builtin:veronese-2-3", "--samples", "12", "--out", str(a), capsys=capsys)
    run_cli(
        "verify", "builtin:veronese-2-3", "--samples", "12", "--jobs", "2",
        "--out", str(b), capsys=capsys,
    )
    assert a.read_bytes() == b.read_bytes()
