import json

from iqhecke.bundle import DEFAULT_BUNDLE_DIR
from iqhecke.cli import main
from iqhecke.eigensystem import eigensystem_from_json, eigensystem_to_json


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_command(capsys):
    code, out, _ = run_cli(capsys, "field", "17")
    assert code == 0
    assert "disc -68" in out and "C4" in out and "r2 = 1" in out
    code, out, _ = run_cli(capsys, "field", "1")
    assert code == 0 and "h = 1" in out
    code, out, _ = run_cli(capsys, "field", "21")
    assert code == 0 and "C2 x C2" in out and "r2 = 2" in out


def test_field_command_rejects_bad_input(capsys):
    code, _, err = run_cli(capsys, "field", "12")
    assert code == 2 and "squarefree" in err


def test_recover_command(capsys):
    oracle = str(DEFAULT_BUNDLE_DIR / "oracle_2.1.json")
    code, out, _ = run_cli(
        capsys, "recover", "--field", "17", "--level", "2.1",
        "--oracle", oracle, "--bound", "13",
    )
    assert code == 0
    assert "alpha(3.1) = 2*sqrt2" in out
    assert "alpha(3.2) = -2*sqrt2" in out
    assert "alpha(13.1) = -2" in out
    assert "eps(2.1) = -1" in out
    assert "oracle gaps" in out


def test_recover_json_reingests_losslessly(capsys, G17):
    oracle = str(DEFAULT_BUNDLE_DIR / "oracle_2.1.json")
    code, out, _ = run_cli(
        capsys, "recover", "--field", "17", "--oracle", oracle,
        "--bound", "13", "--json",
    )
    assert code == 0
    blob = json.loads(out)
    F = eigensystem_from_json(G17, blob)
    again = eigensystem_to_json(F)
    for key in ("level", "character", "alpha", "al"):
        assert again[key] == blob[key]
    assert blob["alpha_gaps"]


def test_recover_level_mismatch(capsys):
    oracle = str(DEFAULT_BUNDLE_DIR / "oracle_2.1.json")
    code, _, err = run_cli(
        capsys, "recover", "--field", "17", "--level", "4.1", "--oracle", oracle
    )
    assert code == 2 and "2.1" in err


def test_verify_command(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "class-groups", "--check", "compare-ap-7.2")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL", "SKIP"))]
    assert len(lines) == 2 and all(l.startswith("PASS") for l in lines)


def test_verify_json_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "genus-character-law", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["status"] == "PASS"


def test_verify_bad_bundle_is_schema_error(capsys, tmp_path):
    code, _, err = run_cli(capsys, "verify", "--bundle", str(tmp_path / "missing"))
    assert code == 2 and "schema error" in err


def test_verify_bundle_env_var(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("IQHECKE_BUNDLE", str(tmp_path / "nowhere"))
    code, _, err = run_cli(capsys, "verify")
    assert code == 2
    monkeypatch.setenv("IQHECKE_BUNDLE", str(DEFAULT_BUNDLE_DIR))
    code, out, _ = run_cli(capsys, "verify", "--check", "class-groups")
    assert code == 0 and "PASS" in out


def test_compare_ap_command(capsys):
    code, out, _ = run_cli(
        capsys, "compare-ap", "--field", "17",
        "--eigensystem", str(DEFAULT_BUNDLE_DIR / "eigensystems_7.2.json"),
        "--name", "a",
        "--curve", str(DEFAULT_BUNDLE_DIR / "curve_7.2a2.json"),
    )
    assert code == 0
    assert "result: match" in out
    assert "bad prime 7.2" in out and "agree" in out


def test_compare_ap_detects_mismatch(capsys, tmp_path):
    curve = json.loads((DEFAULT_BUNDLE_DIR / "curve_7.2a2.json").read_text())
    curve["ap"]["11.1"] = 5
    path = tmp_path / "curve.json"
    path.write_text(json.dumps(curve))
    code, out, _ = run_cli(
        capsys, "compare-ap", "--field", "17",
        "--eigensystem", str(DEFAULT_BUNDLE_DIR / "eigensystems_7.2.json"),
        "--name", "a", "--curve", str(path),
    )
    assert code == 1
    assert "MISMATCH at 11.1" in out
    assert "result: mismatch" in out


def test_verify_output_is_deterministic(capsys):
    args = ("verify", "--check", "class-groups", "--check", "dimension-table",
            "--check", "structure-detectors")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_compare_ap_empty_overlap_warns(capsys, tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps({"curve": "x", "conductor": "7.2", "ap": {}}))
    code, out, _ = run_cli(
        capsys, "compare-ap", "--field", "17",
        "--eigensystem", str(DEFAULT_BUNDLE_DIR / "eigensystems_7.2.json"),
        "--name", "a", "--curve", str(path),
    )
    assert code == 0 and "no primes compared" in out
