import json

import numpy as np
import pytest
from click.testing import CliRunner

from octeig.cli import main, run
from octeig.octonion import parse

DOC_2X2 = {"version": "1", "kind": "hermitian2", "payload": {"p": 1, "m": 1, "a": [0, -1, 0, 0, 0, 0, 0, 0]}}
NON_A_DOC = {"version": "1", "kind": "hermitian2", "payload": {"p": 0, "m": 1, "a": [0, 0.6, 0, 0, 0, -0.3, 0, 0]}}


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="doc.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return _write


def invoke(args, env=None, stdin=None):
    result = CliRunner().invoke(main, args, env=env or {}, input=stdin)
    records = [json.loads(line) for line in result.stdout.splitlines() if line.startswith("{")]
    return result.exit_code, records, result


def test_mul_and_associator():
    code, recs, _ = invoke(["mul", "i", "j"])
    assert code == 0 and recs[0]["text"] == "k"
    code, recs, _ = invoke(["associator", "i", "j", "l"])
    assert code == 0 and np.array_equal(recs[0]["value"], parse("2kl"))


def test_eigen2_jl_right(write):
    code, recs, _ = invoke(["eigen2", write(DOC_2X2), "--side", "right", "--lambda", "1+kl"])
    assert code == 0
    assert recs[0]["residual"] <= 1e-12 and recs[0]["lambda_text"] == "1+kl"


def test_eigen2_left_and_stdin(write):
    code, recs, _ = invoke(["eigen2", "-", "--side", "left"], stdin=json.dumps(DOC_2X2))
    assert code == 0 and all(r["pass"] for r in recs)


def test_non_A_matrix_exits_1(write):
    code, recs, _ = invoke(["eigen2", write(NON_A_DOC)])
    assert code == 1
    assert recs[0]["error"] == "NotInA" and "p = m" in recs[0]["message"]


def test_decompose_and_real(write):
    path = write(DOC_2X2)
    for args in (["decompose", path], ["decompose", path, "--side", "left"], ["real-eigen2", path]):
        code, recs, _ = invoke(args)
        assert code == 0 and all(r["pass"] for r in recs)


def test_eigen3_diagonal(write):
    doc = {"version": "1", "kind": "hermitian3",
           "payload": {"p": 1, "m": 2, "n": 3, "a": [0] * 8, "b": [0] * 8, "c": [0] * 8}}
    code, recs, _ = invoke(["eigen3", write(doc), "--restarts", "10", "--seed", "1"])
    assert code == 0
    lams = sorted({round(r["lambda"][0], 6) for r in recs if r.get("record") == "pair"})
    assert lams == [1, 2, 3]


@pytest.mark.parametrize("args", [
    ["mul", "i", "q"],
    ["mul", "i"],
    ["nosuch"],
    ["verify", "--suite", "bogus"],
    ["verify", "--samples", "0"],
    ["eigen2", "/nonexistent/file.json"],
])
def test_usage_errors_exit_2(args):
    assert invoke(args)[0] == 2


def test_parse_errors_exit_2(write):
    bad = dict(DOC_2X2, payload={"p": 1, "m": 1, "a": [0, 1, 0, 0, 0, 0, 0]})
    code, _, result = invoke(["eigen2", write(bad)])
    assert code == 2 and "payload.a" in result.output
    code, _, result = invoke(["eigen2", write(dict(DOC_2X2, version="9"))])
    assert code == 2
    vec = {"version": "1", "kind": "vector", "payload": [[0] * 8, [0] * 8]}
    assert invoke(["eigen2", write(vec)])[0] == 2


def test_tolerance_env_echoed():
    code, recs, _ = invoke(["spin"], env={"OCTEIG_TOLERANCE": "1e-11"})
    assert code == 0 and all(r["tolerance"] == 1e-11 for r in recs if "tolerance" in r)
    code, recs, _ = invoke(["verify", "--suite", "core", "--samples", "20"], env={"OCTEIG_TOLERANCE": "1e-11"})
    assert code == 0 and recs[-1]["tolerance"] == 1e-11
    assert invoke(["spin"], env={"OCTEIG_TOLERANCE": "abc"})[0] == 2


def test_tight_tolerance_fails_with_residual():
    code, recs, _ = invoke(["verify", "--suite", "core", "--samples", "50"], env={"OCTEIG_TOLERANCE": "1e-30"})
    assert code == 1
    failing = [r for r in recs if not r["pass"] and r["record"] == "check"]
    assert failing and all(r["residual"] > 1e-30 for r in failing)


def test_verify_deterministic():
    a = invoke(["verify", "--suite", "spin", "--samples", "50", "--seed", "3"])[2].stdout
    b = invoke(["verify", "--suite", "spin", "--samples", "50", "--seed", "3"])[2].stdout
    assert a == b


def test_run_returns_code(capsys):
    assert run(["mul", "i", "j"]) == 0
    assert run(["mul", "i"]) == 2
