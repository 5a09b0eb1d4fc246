"""Command-line behaviour: verdicts, exit codes, JSON reports."""

from __future__ import annotations

import json

from permdeflate.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_human(capsys):
    code, out, _ = invoke(capsys, "classify", "123456")
    assert code == 0
    assert out.strip() == "non_deflatable (T3.1 three-sum)"


def test_contains_exit_codes(capsys):
    code, out, _ = invoke(capsys, "contains", "312", "2531647")
    assert code == 0
    assert out.strip() == "occurrence at positions 2 3 6"
    code, out, _ = invoke(capsys, "contains", "2413", "3142")
    assert code == 1
    assert "does not occur" in out


def test_usage_errors_exit_2(capsys):
    assert invoke(capsys, "no-such-command")[0] == 2
    assert invoke(capsys, "contains", "312")[0] == 2
    assert invoke(capsys, "contains", "2 2 1", "123")[0] == 2
    assert invoke(capsys, "shade", "--perm", "2531647", "--basis", "312")[0] == 2


def test_json_report_shape_and_round_trip(capsys):
    code, out, _ = invoke(capsys, "classify", "2413", "--json")
    assert code == 0
    report = json.loads(out)
    assert list(report.keys()) == ["command", "inputs", "results", "timing_ms"]
    assert report["command"] == "classify"
    assert report["results"]["status"] == "non_deflatable"
    assert report["results"]["rule"] == "P5.1"
    assert isinstance(report["timing_ms"], int)
    assert json.dumps(report) == out.strip()


def test_json_has_no_floats(capsys):
    for argv in (
        ["classify", "1432", "--json"],
        ["contains", "312", "2531647", "--json"],
        ["witness", "check", "--perm", "25173486", "--basis", "251364", "--json"],
        ["enumerate", "--basis", "231", "--max-len", "4", "--json"],
        ["family", "--theta", "12", "--json"],
    ):
        _, out, _ = invoke(capsys, *argv)
        def no_floats(node):
            if isinstance(node, float):
                return False
            if isinstance(node, dict):
                return all(no_floats(v) for v in node.values())
            if isinstance(node, list):
                return all(no_floats(v) for v in node)
            return True
        assert no_floats(json.loads(out))


def test_json_and_human_verdicts_agree(capsys):
    code_h, out_h, _ = invoke(capsys, "classify", "25314")
    code_j, out_j, _ = invoke(capsys, "classify", "25314", "--json")
    assert code_h == code_j == 0
    assert json.loads(out_j)["results"]["status"] in out_h

    code_h, out_h, _ = invoke(capsys, "witness", "check", "--perm", "25173486", "--basis", "251364")
    code_j, out_j, _ = invoke(capsys, "witness", "check", "--perm", "25173486", "--basis", "251364", "--json")
    assert code_h == code_j == 0
    assert json.loads(out_j)["results"]["certified"] is True
    assert "certified" in out_h

    code_h, out_h, _ = invoke(capsys, "family", "--theta", "21")
    code_j, out_j, _ = invoke(capsys, "family", "--theta", "21", "--json")
    assert code_h == code_j == 0
    report = json.loads(out_j)
    assert report["results"]["verified"] is True and "verified: yes" in out_h
    assert report["results"]["omega_star"] in out_h

    code_h, out_h, _ = invoke(capsys, "contains", "2413", "3142")
    code_j, out_j, _ = invoke(capsys, "contains", "2413", "3142", "--json")
    assert code_h == code_j == 1
    assert json.loads(out_j)["results"]["contained"] is False and "does not occur" in out_h

    code_h, out_h, _ = invoke(capsys, "extend", "--perm", "12", "--basis", "321", "--max-len", "6")
    code_j, out_j, _ = invoke(
        capsys, "extend", "--perm", "12", "--basis", "321", "--max-len", "6", "--json"
    )
    assert code_h == code_j == 0
    assert json.loads(out_j)["results"]["simple"] in out_h


def test_decompose_output(capsys):
    code, out, _ = invoke(capsys, "decompose", "4371265")
    assert code == 0
    assert out.strip() == "2413[21, 1, 12, 21]"
    _, out_j, _ = invoke(capsys, "decompose", "4371265", "--json")
    tree = json.loads(out_j)["results"]["tree"]
    assert tree["skeleton"] == "2 4 1 3"
    assert len(tree["children"]) == 4


def test_shade_grid_layout(capsys):
    code, out, _ = invoke(capsys, "shade", "--perm", "1", "--basis", "12")
    assert code == 0
    assert out.splitlines() == [". #", " o", "# ."]


def test_witness_check_negative_exit(capsys):
    code, out, _ = invoke(capsys, "witness", "check", "--perm", "123", "--basis", "321")
    assert code == 1
    assert "no bond" in out


def test_witness_search(capsys):
    code, out, _ = invoke(
        capsys, "witness", "search", "--basis", "251364", "--max-len", "8", "--limit", "1"
    )
    assert code == 0
    assert "2 5 1 7 3 4 8 6" in out
    code, _, _ = invoke(capsys, "witness", "search", "--basis", "321", "--max-len", "6")
    assert code == 1


def test_extend_exit_codes(capsys):
    code, out, _ = invoke(capsys, "extend", "--perm", "12", "--basis", "321", "--max-len", "6")
    assert code == 0 and "simple extension" in out
    code, out, _ = invoke(
        capsys, "extend", "--perm", "25173486", "--basis", "251364", "--max-len", "10"
    )
    assert code == 1 and "no simple member" in out


def test_enumerate_and_simples(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--basis", "21", "--max-len", "3")
    assert code == 0
    assert out.splitlines() == ["1", "1 2", "1 2 3"]
    code, out, _ = invoke(capsys, "simples", "--basis", "231", "--max-len", "6")
    assert code == 0
    assert set(out.splitlines()) == {"1", "1 2", "2 1"}


def test_thread_cap_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("DEFLATE_THREADS", "not-a-number")
    code, _, err = invoke(capsys, "classify", "2413")
    assert code == 2 and "DEFLATE_THREADS" in err
    monkeypatch.setenv("DEFLATE_THREADS", "2")
    assert invoke(capsys, "classify", "2413")[0] == 0


def test_verify_paper_subset(capsys, tmp_path):
    subset = tmp_path / "rows.txt"
    subset.write_text("2 5 1 3 6 4 | 2 5 1 7 3 4 8 6\n")
    code, out, _ = invoke(capsys, "verify-paper", "--corpus", str(subset))
    assert code == 0
    assert "1/1 rows passed" in out
    _, out_j, _ = invoke(capsys, "verify-paper", "--corpus", str(subset), "--json")
    report = json.loads(out_j)
    assert report["results"]["all_passed"] is True
    assert report["results"]["rows"][0]["cross_check"] == "ok"
