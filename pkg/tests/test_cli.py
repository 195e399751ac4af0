import json
import subprocess
import sys
from importlib import resources

import pytest

from ameb_forge.cli import CliConfig, UsageError, default_tolerance, main
from ameb_forge.verify import VerificationReport

DATA = resources.files("ameb_forge").joinpath("data")


def data(name):
    return str(DATA.joinpath(f"{name}.txt"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lsq_check(capsys, tmp_path):
    code, out, _ = run(capsys, "lsq", "check", data("fig1_left"), "--mwols", data("fig1_right"))
    assert code == 0 and "PASS mwols" in out
    bad = tmp_path / "notlatin.txt"
    bad.write_text("2\n0 1\n0 1\n")
    code, out, _ = run(capsys, "lsq", "check", bad)
    assert code == 1 and "FAIL latin" in out
    code, out, _ = run(capsys, "lsq", "check", data("ex4_L1"), "--mols", data("ex4_L2"))
    assert code == 1 and "FAIL mols" in out
    mal = tmp_path / "mal.txt"
    mal.write_text("3\n0 1\n")
    assert run(capsys, "lsq", "check", mal)[0] == 2
    assert run(capsys, "lsq", "check", tmp_path / "missing.txt")[0] == 2


def test_lsq_gen(capsys, tmp_path):
    out = tmp_path / "gf4.txt"
    code, _, err = run(capsys, "lsq", "gen", "--order", 4, "--method", "gf", "--out", out)
    assert code == 0 and "wrote 3" in err
    assert out.read_text().count("\n\n") == 2
    code, text, _ = run(capsys, "lsq", "gen", "--order", 5, "--method", "companion")
    assert code == 0 and text.count("\n\n") == 1
    f3, f5 = tmp_path / "f3.txt", tmp_path / "f5.txt"
    run(capsys, "lsq", "gen", "--order", 3, "--method", "gf", "--out", f3)
    run(capsys, "lsq", "gen", "--order", 5, "--method", "gf", "--out", f5)
    p = tmp_path / "p15.txt"
    code, _, _ = run(capsys, "lsq", "gen", "--order", 15, "--method", "product", "--factors", f3, f5, "--out", p)
    assert code == 0
    code, out, _ = run(capsys, "lsq", "check", p)
    assert code == 0 and out.count("PASS latin") == 2
    assert run(capsys, "lsq", "gen", "--order", 2, "--method", "companion")[0] == 1
    assert run(capsys, "lsq", "gen", "--order", 6, "--method", "gf")[0] == 2
    assert run(capsys, "lsq", "gen", "--order", 6, "--method", "bogus")[0] == 2


def test_build_and_verify_example1(capsys, tmp_path):
    assert run(capsys, "build", "--kind", "equal", "--dims", 3, 3, 3,
               "--square", data("fig1_left"), "--out-dir", tmp_path)[0] == 0
    coeffs = tmp_path / "a.txt"
    coeffs.write_text("1 0\n1 0\n-0.5 0.8660254037844386\n")
    assert run(capsys, "build", "--kind", "weighted", "--dims", 3, 3, 3, "--square",
               data("fig1_right"), "--coeffs", coeffs, "--out-dir", tmp_path)[0] == 0
    files = sorted(tmp_path.glob("*.json"))
    assert len(files) == 2
    code, out, _ = run(capsys, "verify", *files, "--ame")
    assert code == 0 and "target=0.1924500897" in out
    code, out, _ = run(capsys, "verify", files[0], files[0])
    assert code == 1


def test_build_weighted_auto(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--kind", "weighted", "--dims", 3, 3, 3,
                       "--square", data("fig1_right"), "--coeffs", "auto", "--out-dir", tmp_path)
    assert code == 0 and "27 vectors" in out


def test_build_errors(capsys, tmp_path):
    assert run(capsys, "build", "--kind", "mixed", "--dims", 2, 3, "--square", data("fig2_a"))[0] == 2
    assert run(capsys, "build", "--kind", "equal", "--dims", 4, 4, 4, "--square", data("fig1_left"))[0] == 2
    assert run(capsys, "build", "--kind", "weighted", "--dims", 3, 3, 3, "--square", data("fig1_left"))[0] == 2
    flat = tmp_path / "c.txt"
    flat.write_text("1\n1\n1\n")
    assert run(capsys, "build", "--kind", "weighted", "--dims", 3, 3, 3, "--square",
               data("fig1_left"), "--coeffs", flat, "--out-dir", tmp_path)[0] == 2


def test_example3_ame_scoping(capsys, tmp_path):
    for name in ("fig2_a", "fig2_b", "fig2_c"):
        assert run(capsys, "build", "--kind", "mixed", "--dims", 2, 2, "--square", data(name),
                   "--out-dir", tmp_path)[0] == 0
    code, out, _ = run(capsys, "build", "--kind", "product", "--dims", 2, 5, "--out-dir", tmp_path)
    assert code == 0 and "100 vectors" in out
    (tmp_path / "product_2x5.json").unlink()
    assert run(capsys, "build", "--kind", "product", "--dims", 2, 2, "--out-dir", tmp_path)[0] == 0
    files = sorted(str(p) for p in tmp_path.glob("*.json"))
    amebs = [f for f in files if "mixed" in f]
    assert run(capsys, "verify", *files)[0] == 0
    assert run(capsys, "verify", *files, "--ame")[0] == 1
    code, out, _ = run(capsys, "verify", *files, "--ame-only", *amebs, "--report", "json", "--workers", 3)
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] and len(doc["reports"]) == 4 + 6 + 3
    for r in doc["reports"]:
        assert VerificationReport.from_dict(r).to_dict() == r


def test_verify_dims_mismatch(capsys, tmp_path):
    run(capsys, "build", "--kind", "product", "--dims", 2, 2, "--out-dir", tmp_path)
    run(capsys, "build", "--kind", "product", "--dims", 1, 3, "--out-dir", tmp_path)
    files = sorted(tmp_path.glob("*.json"))
    assert run(capsys, "verify", *files)[0] == 2
    assert run(capsys, "verify", tmp_path / "nope.json")[0] == 2


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "--example", 1)
    assert code == 0 and out.strip().endswith("PASS")
    code, out, _ = run(capsys, "reproduce", "--example", 4)
    assert code == 0 and "3 bases, 300 vectors" in out
    code, out, _ = run(capsys, "reproduce", "--table", "--rows", 4, 8, 9, 16, "--workers", 4)
    assert code == 0 and out.count("verified") == 4
    code, out, err = run(capsys, "reproduce", "--table", "--rows", 18, "--budget", 1000,
                         "--report", "json")
    assert code == 0 and "unresolved" in err
    assert json.loads(out)["rows"][0]["status"] == "unresolved"
    assert run(capsys, "reproduce", "--table", "--rows", 7)[0] == 2
    assert run(capsys, "reproduce")[0] == 2


def test_tolerance_env(monkeypatch, capsys):
    monkeypatch.setenv("AMEB_FORGE_TOL", "1e-20")
    assert default_tolerance() == 1e-20
    assert run(capsys, "reproduce", "--example", 1)[0] == 1  # rounding exceeds 1e-20
    monkeypatch.setenv("AMEB_FORGE_TOL", "1e-6")
    assert run(capsys, "reproduce", "--example", 1)[0] == 0
    monkeypatch.setenv("AMEB_FORGE_TOL", "abc")
    assert run(capsys, "reproduce", "--example", 1)[0] == 2
    monkeypatch.delenv("AMEB_FORGE_TOL")
    assert run(capsys, "reproduce", "--example", 1, "--tol", 0)[0] == 2
    with pytest.raises(UsageError):
        CliConfig(budget=-1)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ameb_forge", "reproduce", "--example", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "PASS" in res.stdout
