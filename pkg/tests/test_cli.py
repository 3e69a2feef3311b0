import json

import pytest

from padic_twoterm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "-p", "5", "-N", "40", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["characters"]) == 2


def test_p2_is_out_of_scope(capsys):
    code, _, err = run(capsys, "verify", "-p", "2")
    assert code == 1 and "out of scope" in err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "-p", "5", "--bogus")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "verify", "-p", "9")[0] == 1
    assert run(capsys, "verify", "-p", "101")[0] == 1
    assert run(capsys, "gauss", "-p", "7", "-a", "9")[0] == 1


def test_flag_order_independent(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["table", "-p", "5", "-N", "30", "-o", str(a)]) == 0
    assert main(["table", "-o", str(b), "-N", "30", "-p", "5"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gauss_trivial_character(capsys):
    code, out, _ = run(capsys, "gauss", "-p", "7", "-a", "6", "-N", "20")
    assert code == 0
    assert "valuation = 0" in out and "integer = -1" in out


def test_gamma_and_lfun(capsys):
    code, out, _ = run(capsys, "gamma", "-p", "5", "--num", "1", "--den", "4", "-M", "6")
    assert code == 0 and out.startswith("Gamma_5(1/4) = 5^0 *")
    code, out, _ = run(capsys, "lfun", "-p", "5", "-k", "1", "-N", "20")
    assert code == 0 and "L_p'(0)" in out
    assert run(capsys, "lfun", "-p", "5", "-k", "2")[0] == 1


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "-p", "7", "-N", "30")
    assert code == 0 and "U1" in out


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("PADIC_TWOTERM_DIGITS", "25")
    code, out, _ = run(capsys, "table", "-p", "5")
    assert code == 0 and out.splitlines()[1].startswith("5,25,2,")


def test_strict_exit_is_deterministic(tmp_path):
    codes = set()
    files = []
    for i in range(2):
        f = tmp_path / f"r{i}.json"
        codes.add(main(["verify", "-p", "5", "-N", "40", "--strict", "-o", str(f)]))
        files.append(f.read_bytes())
    assert len(codes) == 1 and codes <= {0, 3}
    assert files[0] == files[1]
