import json
import subprocess
import sys

import pytest

from hetg2.cli import EXIT_INADMISSIBLE, EXIT_OK, EXIT_USAGE, QUANTITIES, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--only", "C26")
    assert code == EXIT_OK
    assert out.startswith("C26 trace-I  PASS")
    assert "summary: 1 pass, 0 fail, 0 error" in out


def test_verify_unknown(capsys):
    code, _, err = run(capsys, "verify", "--only", "NOPE")
    assert code == EXIT_USAGE and "unknown check" in err


def test_verify_fail_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--only", "C31")
    assert code == 1 and "FAIL" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--only", "C13,C26", "--format", "json")
    data = json.loads(out)
    assert [c["name"] for c in data["checks"]] == ["C13 FA-relations", "C26 trace-I"]
    assert data["checks"][0]["needed_ideal"] is True
    assert all(c["elapsed_ms"] == 0.0 for c in data["checks"])
    assert len(data["notes"]) == 1


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "--only", "C01,C13,C34")[1]
    b = run(capsys, "verify", "--only", "C01,C13,C34")[1]
    assert a == b


def test_regime_case1(capsys):
    code, out, _ = run(capsys, "regime", "--case", "1", "--delta", "1", "--alpha", "0.01")
    assert code == EXIT_OK
    assert "k = 1000\n" in out
    assert "eps^2 = 1/5000000000" in out
    assert "alpha' * lambda0 = 8" in out


def test_regime_inadmissible(capsys):
    code, _, err = run(capsys, "regime", "--case", "1", "--delta", "-1", "--alpha", "0.01")
    assert code == EXIT_INADMISSIBLE and "delta != 0, -1" in err


def test_regime_case3_json(capsys):
    code, out, _ = run(capsys, "regime", "--case", "3", "--m", "0", "--alpha", "0.1",
                       "--format", "json")
    assert json.loads(out)["lambda2"] == "0"


def test_regime_missing_args(capsys):
    assert run(capsys, "regime", "--case", "2", "--alpha", "0.1")[0] == EXIT_USAGE
    assert run(capsys, "regime", "--case", "7")[0] == EXIT_USAGE


def test_sweep_case1(capsys):
    code, out, _ = run(capsys, "sweep", "--case", "1", "--delta", "1", "--alpha", "1e-1:1e-4:log4")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "# slope lambda1: exact zero"
    assert lines[1] == "# slope lambda2: 2.000000000000"
    assert lines[3] == "alpha_prime,eps,k,delta,m,lambda0,lambda1,lambda2,lambda3"
    assert len(lines) == 8


def test_sweep_case2_monotone(capsys):
    code, out, _ = run(capsys, "sweep", "--case", "2", "--m", "-2", "--alpha", "1e-1:1e-3:log3",
                       "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == EXIT_OK and len(rows) == 3
    eps = [float(r["eps"]) for r in rows]
    k = [float(r["k"]) for r in rows]
    assert eps == sorted(eps, reverse=True) and k == sorted(k)


def test_sweep_single_alpha(capsys):
    code, out, _ = run(capsys, "sweep", "--case", "1", "--delta", "1", "--alpha", "0.1")
    assert code == EXIT_OK and "# slope lambda2: n/a" in out


def test_eval_examples(capsys):
    assert run(capsys, "eval", "tau0")[1] == "(6/7)*eps\n"
    out = run(capsys, "eval", "residual", "--delta", "0", "--k", "1", "--m", "0", "--eps", "1")[1]
    assert out == "lambda1 = 7/4\nlambda2 = 1/4\nlambda3 = -1/4\n"
    assert run(capsys, "eval", "lambda0", "--eps", "1", "--k", "2", "--delta", "1",
               "--m", "0")[1] == "64\n"
    assert "eps^2" in run(capsys, "eval", "dflux")[1]


@pytest.mark.parametrize("q", QUANTITIES)
def test_eval_all_quantities(capsys, q):
    code, out, _ = run(capsys, "eval", q, "--delta", "1", "--k", "1", "--m", "0")
    assert code == EXIT_OK and out.strip()


def test_eval_unknown(capsys):
    assert run(capsys, "eval", "nonsense")[0] == EXIT_USAGE


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "--help")[0] == EXIT_OK


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"case": 1, "delta": "1", "alpha": "0.1", "format": "json"}))
    code, out, _ = run(capsys, "--config", str(cfg), "regime", "--alpha", "0.01")
    assert code == EXIT_OK
    assert json.loads(out)["k"] == "1000"


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "--config", str(cfg), "verify")[0] == EXIT_USAGE


def test_output_file(tmp_path, capsys):
    path = tmp_path / "out.txt"
    code, out, _ = run(capsys, "eval", "tau0", "--output", str(path))
    assert code == EXIT_OK and out == ""
    assert path.read_text() == "(6/7)*eps\n"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hetg2", "eval", "tau0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "(6/7)*eps\n"
