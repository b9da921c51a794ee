import json
import subprocess
import sys

import pytest

from bsarr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def test_bfunction_complete(capsys):
    code, rep, err = run(capsys, "bfunction", "quadrangle-d6")
    assert code == 0 and rep["status"] == "complete"
    assert rep["result"]["factorization"]["text"] == "(s+1/2)(s+2/3)^2(s+5/6)(s+1)^3(s+7/6)(s+4/3)^2(s+3/2)"
    assert "b_f(s) =" in err
    assert len(rep["input"]["sha256"]) == 64


def test_bfunction_incomplete(capsys):
    code, rep, err = run(capsys, "bfunction", "nine-lines-d9")
    assert code == 10 and rep["status"] == "incomplete"
    unknown = [c["root"] for c in rep["result"]["certificates"] if c["status"] == "UNKNOWN"]
    assert unknown == ["16/9"]
    assert "16/9" in err


def test_every_status_has_evidence(capsys):
    _, rep, _ = run(capsys, "bfunction", "triple6-d7")
    for c in rep["result"]["certificates"]:
        assert any(e.get("status") == c["status"] for e in c["evidence"])
        assert all(e["citation"] for e in c["evidence"])


def test_euler_decomposable_warning(capsys):
    code, rep, err = run(capsys, "euler", "decomposable-xy")
    assert code == 0 and rep["result"]["chi"] == 0
    assert rep["result"]["warnings"] and "decomposable" in err


def test_decomposable_bfunction_is_input_error(capsys):
    code, rep, _ = run(capsys, "bfunction", "decomposable-xy")
    assert code == 2 and rep["error"]["code"] == "DECOMPOSABLE_INPUT"


@pytest.mark.parametrize("argv, key", [
    (["lattice", "generic-n2-d3"], "edges"),
    (["dense-edges", "quadrangle-d6"], "dense_edges"),
    (["betti", "nine-lines-d9"], "betti"),
    (["multiplicities", "quadrangle-d6"], "nu"),
    (["cohomology", "quadrangle-d6", "--k", "2"], "dims"),
    (["eigenspace", "quadrangle-d6", "--k", "2"], "dims"),
    (["vsubspace", "nine-lines-d9", "--k", "6", "--I", "1,3,4,6,8"], "V"),
    (["candidates", "nine-lines-d9"], "candidates"),
    (["certify", "triple6-d7", "--root", "5/7"], "status"),
    (["spectrum", "triple6-d7"], "jumping"),
])
def test_commands(capsys, argv, key):
    code, rep, _ = run(capsys, *argv)
    assert code == 0, rep
    assert key in rep["result"]


def test_vsubspace_report(capsys):
    _, rep, _ = run(capsys, "vsubspace", "nine-lines-d9", "--k", "6", "--I", "1,3,4,6,8")
    r = rep["result"]
    assert r["V"]["dim_VIprime"] == 10 and r["normal_crossing"] and not r["full_image_criterion"]
    assert r["choice"]["Ic"] == [2, 5, 7]


def test_cohomology_with_weights(capsys):
    w = ",".join(["1/2", "-1/2", "1/3", "-1/3", "1/5", "-1/5"])
    code, rep, _ = run(capsys, "cohomology", "quadrangle-d6", "--weights", w)
    assert code == 0 and rep["result"]["euler"] == rep["result"]["chi"] == 2


def test_certify_unknown_exit(capsys):
    code, rep, _ = run(capsys, "certify", "nine-lines-d9", "--root", "16/9")
    assert code == 10 and rep["result"]["status"] == "UNKNOWN"


@pytest.mark.parametrize("root", ["0.5", "2/4", "1/0", "x", "-1/3"])
def test_certify_rejects_bad_rationals(capsys, root):
    code, rep, _ = run(capsys, "certify", "triple6-d7", f"--root={root}")
    assert code == 2 and rep["error"]["code"] == "BAD_RATIONAL"


def test_bad_file_diagnostics(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 3,\n "forms": [["1", "0", "0"],\n  ["0", "1", "0.5"]]}')
    code, rep, err = run(capsys, "euler", str(p))
    assert code == 2
    assert rep["error"]["details"] == {"line": 3, "column": 14}
    assert "bad.json:3:14" in err


def test_malformed_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"n": 2 "forms": []}')
    code, rep, _ = run(capsys, "euler", str(p))
    assert code == 2 and rep["error"]["code"] == "BAD_JSON"


def test_duplicate_hyperplane_location(tmp_path, capsys):
    p = tmp_path / "dup.json"
    p.write_text('{"n": 2, "forms": [["1", "0"],\n ["2", "0"]]}')
    code, rep, _ = run(capsys, "euler", str(p))
    assert code == 2 and rep["error"]["code"] == "DUPLICATE_HYPERPLANE"
    assert rep["error"]["details"]["line"] == 2


def test_unknown_input(capsys):
    code, rep, _ = run(capsys, "euler", "no-such-thing")
    assert code == 2 and rep["error"]["code"] == "UNKNOWN_CORPUS"


def test_pivot_flag(capsys):
    _, a, _ = run(capsys, "bfunction", "quadrangle-d6", "--pivot", "1")
    _, b, _ = run(capsys, "bfunction", "quadrangle-d6")
    assert a["result"]["factorization"] == b["result"]["factorization"]
    code, rep, _ = run(capsys, "bfunction", "quadrangle-d6", "--pivot", "9")
    assert code == 2


def test_shift_budget_exhaustion(capsys):
    code, rep, _ = run(capsys, "eigenspace", "quadrangle-d6", "--k", "2", "--shift-budget", "0")
    assert code == 10 and rep["error"]["code"] == "NO_ADMISSIBLE_SHIFT"


def test_corpus_listing(capsys):
    code, rep, _ = run(capsys, "corpus")
    names = {e["name"] for e in rep["result"]["examples"]}
    assert "triple6-d7" in names and code == 0


def test_byte_identical_output(tmp_path):
    cmd = [sys.executable, "-m", "bsarr", "bfunction", "nine-lines-d9", "--quiet"]
    a = subprocess.run(cmd, capture_output=True, check=False).stdout
    b = subprocess.run(cmd, capture_output=True, check=False).stdout
    assert a == b and a


def test_file_input_matches_corpus(tmp_path, capsys):
    from importlib import resources
    src = (resources.files("bsarr") / "corpus" / "triple6-d7.json").read_text()
    p = tmp_path / "t.json"
    p.write_text(src)
    _, a, _ = run(capsys, "bfunction", str(p))
    _, b, _ = run(capsys, "bfunction", "triple6-d7")
    assert a == b
