from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from operadkit import checks
from operadkit.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue().rstrip("\n"), err.getvalue()


def test_compose():
    assert call("compose", "--gamma", "5", "20413", "1", "304") == (0, "3240413", "")


def test_dims():
    code, out, _ = call("dims", "--operad", "dendr", "--gamma", "2", "--max-n", "5")
    assert (code, out) == (0, "1 4 20 112 672")


def test_critical_pairs_report():
    code, out, _ = call("cp", "--rules", "dup:1")
    assert code == 0
    assert "critical pairs: 4 (chain 4, fork 0)" in out
    assert out.count(": joinable") == 4
    assert out.endswith("confluent: yes")
    code, out, _ = call("cp", "--rules", "dup:2", "--format", "json")
    rep = json.loads(out)
    assert rep["chain"] == 32 and rep["confluent"] is True


def test_kbasis_commands():
    assert call("kbasis", "expand", "102", "--gamma", "2")[1] == "+1*102 -1*202"
    assert call("kbasis", "contract", "+1*102", "--gamma", "2")[1] == "+1*102 +1*202"
    code, out, _ = call("kbasis", "compose", "20413", "5", "304", "--gamma", "5")
    assert out == "+1*2041334 +1*2041344 +1*2041354"
    code, out, _ = call("kbasis", "compose", "20413", "3", "304", "--gamma", "5", "--format", "json")
    assert json.loads(out)["terms"] == []


def test_normal_form():
    code, out, _ = call("nf", "--rules", "dias:1", "(l1 _ (r1 _ _))")
    assert (code, out) == (0, "(l1 (l1 _ _) _)")
    code, out, _ = call("nf", "--rules", "dias:1", "(l1 _ (r1 _ _))", "--format", "json")
    assert json.loads(out) == {"gens": "dias:1", "tree": "(l1 (l1 _ _) _)"}
    code, out, _ = call("nf", "--rules", "dias:1", "(l1 _ (r1 _ _))", "--format", "dot")
    assert out.startswith("digraph")


def test_dual_qdim_series():
    code, out, _ = call("dual", "--operad", "dias", "--gamma", "2")
    assert code == 0 and "equivalent: yes" in out and "dual_dim: 12" in out
    assert call("qdim", "--operad", "tdendr", "--gamma", "1", "-n", "3")[1] == "11"
    code, out, _ = call("series", "--operad", "das", "--gamma", "4", "--max-n", "5", "--format", "json")
    rep = json.loads(out)
    assert rep["coefficients"] == [1, 4, 28, 244, 2380]
    assert rep["inverse_identity"] is True and rep["koszul_partner"] == "as"
    code, out, _ = call("series", "--operad", "dendr", "--gamma", "2", "--max-n", "3", "--format", "tsv")
    assert out == "1\t1\n2\t4\n3\t20"


def test_freealg_products():
    assert call("freealg", "pluri", "left", "2", "101241", "203", "--gamma", "4")[1] == "101241223"
    assert call("freealg", "sets", "left", "3", "{2,4}", "{1,3,5}", "--gamma", "5")[1] == "{2,3,4,5}"
    assert call("freealg", "mwords", "left", "3", "3 2' 5", "4 4' 1", "--gamma", "5")[1] == "3 4' 5 4 4' 3"
    assert call("freealg", "pos", "right", "3", "1", "2", "--gamma", "5")[1] == "3"
    code, out, _ = call("freealg", "dendr", "left", "1", "( _ :inf _ :inf )", "( _ :inf _ :inf )", "--gamma", "1")
    assert out == "+1*( _ :inf ( _ :inf _ :inf ) :1 )"
    code, out, _ = call("freealg", "dup", "over", "1", "( _ :inf _ :inf )", "( _ :inf _ :inf )",
                        "--gamma", "1", "--format", "dot")
    assert out.count("digraph") == 1


def test_check_suite_output():
    code, out, _ = call("check", "composition", "--gamma", "2")
    assert code == 0 and all(line.startswith("pass") for line in out.splitlines())


def test_exit_codes():
    assert call("nosuch")[0] == 1
    assert call()[0] == 1
    code, _, err = call("compose", "--gamma", "2", "0a", "1", "0")
    assert code == 1 and err.startswith("error:")
    assert call("compose", "--gamma", "2", "01", "5", "0")[0] == 1
    assert call("dims", "--operad", "quad", "--gamma", "1")[0] == 1
    assert call("nf", "--rules", "dias:1", "(l1 _ (r1 _ _")[0] == 1
    assert call("check", "nosuch", "--gamma", "1")[0] == 1


def test_verification_failure_exit_code(monkeypatch):
    monkeypatch.setitem(checks.SUITES, "composition", lambda gamma: [checks.Check("always fails", False)])
    code, out, err = call("check", "composition", "--gamma", "1")
    assert code == 2
    assert "FAIL" in out and "verification failed" in err


def test_seed_precedence(monkeypatch):
    seen = []

    def fake(gamma, seed):
        seen.append(seed)
        return [checks.Check("ok", True)]

    monkeypatch.setitem(checks.SUITES, "freealg", fake)
    monkeypatch.delenv("OPERADKIT_SEED", raising=False)
    call("check", "freealg", "--gamma", "1")
    monkeypatch.setenv("OPERADKIT_SEED", "17")
    call("check", "freealg", "--gamma", "1")
    call("check", "freealg", "--gamma", "1", "--seed", "0x10")
    assert seen == [0xD1A5, 17, 16]


def test_output_is_deterministic():
    a = call("cp", "--rules", "dias:2", "--format", "json")
    b = call("cp", "--rules", "dias:2", "--format", "json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "operadkit", "compose", "--gamma", "3", "1013", "2", "210"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "121013"


@pytest.mark.parametrize("suite", sorted(checks.SUITES))
def test_every_suite_passes_at_gamma_two(suite):
    assert call("check", suite, "--gamma", "2")[0] == 0
