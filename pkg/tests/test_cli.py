import json
import pathlib
import subprocess
import sys

import pytest

from cli_cases import CASES
from conolly import __version__
from conolly.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


@pytest.mark.parametrize("name, argv, code", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, code, capsys):
    assert main(argv) == code
    assert capsys.readouterr().out == (GOLDEN / f"{name}.txt").read_text()


def test_json_envelope(capsys):
    assert main(["eval", "<0;1:1;2>[1,2]", "--n", "5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {"command", "result", "timing", "version"}
    assert doc["result"] == {"spec": "<0;1:1;2>[1,2]", "values": [1, 2, 2, 3, 4], "death": None}
    assert doc["version"] == __version__


def test_death_json(capsys):
    assert main(["eval", "<0;1:0;1>[2]", "--n", "3", "--format", "json"]) == 1
    assert json.loads(capsys.readouterr().out)["result"]["death"] == {"index": 2, "term": 0, "argument": 0}


@pytest.mark.parametrize("argv", [
    ["eval", "<0;x:1;2>"],
    ["eval", "<0;1:1;2>"],
    ["nosuch"],
    ["search", "--order", "2"],
    ["search", "--order", "2", "--alpha", "0", "--beta", "1"],
    ["ceiling", "check", "--p", "1"],
    ["reference", "--alpha", "1", "--beta", "-3"],
    ["construct", "perturb", "<0;1:1;2>[1,2]", "--alphas", "1,0", "--betas", "0,0"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_expect_false(capsys):
    assert main(["ceiling", "oracle", "<0;1:1;2>", "--p", "1", "--expect", "false"]) == 0
    assert main(["ceiling", "oracle", "<0;1:1;2>", "--p", "1", "--expect", "true"]) == 1


def test_analyze_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO("1 2 2 3 4 4 4 5 6 6 7 8 8 8 8 9"))
    assert main(["analyze", "--stdin", "--format", "json"]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["fit"]["alpha"] == 0 and result["fit"]["beta"] == 1


def test_search_out_and_config(tmp_path, capsys):
    cfg = tmp_path / "s.ini"
    cfg.write_text("[search]\norder = 1\nalpha = 0\nbeta = 1\n")
    out = tmp_path / "hits.csv"
    assert main(["search", "--config", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "spec,matched_len,alpha,beta"
    assert len(lines) == 3


def test_jobs_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("CONOLLY_JOBS", "2")
    assert main(["search", "--order", "1", "--alpha", "0", "--beta", "1", "--box", "t=0..3,b=1..8"]) == 0
    assert capsys.readouterr().out.strip().endswith("2 hits")


def test_dot_to_file(tmp_path, capsys):
    path = tmp_path / "t.dot"
    assert main(["tree", "build", "--n", "9", "--dot", str(path)]) == 0
    assert path.read_text().startswith("digraph")


def test_logs_go_to_stderr(tmp_path):
    out = tmp_path / "hits.csv"
    proc = subprocess.run([sys.executable, "-m", "conolly.cli", "-v", "search", "--order", "1",
                           "--alpha", "0", "--beta", "1", "--out", str(out)],
                          capture_output=True, text=True, check=True)
    assert "INFO" in proc.stderr
    assert "INFO" not in proc.stdout
