import json

import pytest

from hopfinv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def built(tmp_path, capsys):
    paths = {}
    for name in ("C3", "Q8", "D8", "S3"):
        p = tmp_path / f"{name}.json"
        assert main(["build", "group-algebra", name, "-o", str(p)]) == 0
        paths[name] = str(p)
    capsys.readouterr()
    return paths


def test_lambda_of_integral(tmp_path, built, capsys):
    expr = tmp_path / "lam-l.inv"
    expr.write_text("gens: L, Lam;\nop: pair 1 1;\n")
    code, out, _ = run(capsys, "invariant", "eval", str(expr), "--hopf", built["C3"])
    assert code == 0 and out.strip() == "3"


def test_distinguish_q8_d8(built, capsys):
    code, out, _ = run(capsys, "distinguish", built["Q8"], built["D8"], "--budget", "3")
    assert code == 2
    assert "16" in out and "48" in out


def test_distinguish_equal_exits_zero(capsys):
    code, out, _ = run(capsys, "distinguish", "C3", "C3", "--budget", "2")
    assert code == 0


def test_homs(built, capsys):
    code, out, _ = run(capsys, "homs", "gens:x;rels:x^2;", built["S3"])
    assert code == 0 and out.strip() == "4"


def test_validate_and_corrupt(tmp_path, built, capsys):
    code, out, _ = run(capsys, "validate", built["C3"])
    assert code == 0 and out.rstrip().endswith("valid")
    data = json.loads(open(built["C3"]).read())
    data["antipode"] = [e for e in data["antipode"] if e != data["antipode"][-1]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2 and "INVALID" in out


def test_usage_errors(tmp_path, capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 1
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert code == 1 and "hopfinv: error [" in err
    code, _, err = run(capsys, "braid-trace", "S4", "s1")
    assert code == 1 and "BudgetExceeded" in err
    code, _, err = run(capsys, "homs", "gens:x;rels:y;", "C2")
    assert code == 1


def test_json_output(capsys):
    code, out, _ = run(capsys, "--json", "integrals", "S3")
    data = json.loads(out)
    assert code == 0 and data["lam_l"] == 6
    code, out, _ = run(capsys, "--json", "kaplansky", "Q8")
    data = json.loads(out)
    assert data["verdict"] == "pass" and data["irrep_dims"] == [1, 1, 1, 1, 2]


def test_other_commands(capsys):
    assert run(capsys, "exponent", "S3")[1].strip() == "6"
    code, out, _ = run(capsys, "enumerate", "0", "0", "2")
    assert code == 0 and out.rstrip().endswith("data")
    code, out, _ = run(capsys, "gram", "C3", "1", "0", "--budget", "3")
    assert "non-degenerate" in out
    code, out, _ = run(capsys, "saturate", "C3", "1", "0", "--budget", "3")
    assert code == 0
    code, out, _ = run(capsys, "indicators", "S3", "--n-max", "3")
    assert "lam(l_1...l_2) = 24" in out
    code, out, _ = run(capsys, "braid-trace", "C2", "s1", "--strands", "2", "--relations")
    assert "= 2" in out.splitlines()[0] and "FAILS" not in out
    code, out, _ = run(capsys, "k0", "dual:S3", "--budget", "2")
    assert code == 0 and out.strip()
    code, out, _ = run(capsys, "span", "C2", "1", "0", "--budget", "2")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ("span", "S3", "1", "0", "--budget", "3"),
    ("distinguish", "C4", "C2xC2", "--budget", "2"),
    ("--json", "indicators", "dual:S3"),
])
def test_determinism(capsys, argv):
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first
    assert run(capsys, "--workers", "2", *argv) == first
